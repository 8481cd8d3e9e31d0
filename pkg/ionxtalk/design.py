"""Synthesis of crosstalk-insensitive pulse schedules.

Two methods are provided:

* :py:func:`design_linearized` builds one mode-closing loop per motional
  sideband and combines them with nonnegative weights, since loop phases add.

* :py:func:`design_quadratic` optimizes the amplitudes of a single long loop
  directly, minimizing the summed target-neighbor couplings subject to the
  target angle.
"""
from collections import namedtuple

import numpy as np
import scipy.optimize

from . import coupling
from . import parallel
from . import pulses
from . import util


LINEARIZED = 'linearized'
QUADRATIC = 'quadratic'

DEFAULT_DETUNING_OFFSET = -2 * np.pi * 1e3
DEFAULT_RESTARTS = 32

MIRROR_LOOP_NOTE = (
    'Negative phase components are realized by mirror loops detuned by the '
    'opposite offset from their sideband and shaped for negative phase on it; '
    'loop weights are squared amplitude scales and are kept nonnegative.')


class DesignBudget(namedtuple(
    'DesignBudget',
    ['max_rabi', 'gate_time', 'num_loops', 'segments', 'detuning_offset',
     'sidebands', 'detuning'])):
    """Resources available to a design.

    Args:
        ``max_rabi``: Largest allowed segment Rabi frequency in rad/s.

        ``gate_time``: Total gate time in s.

        ``num_loops``: Loop count ``L`` of the linearized method; each loop
        lasts ``gate_time / num_loops``.  Ignored by the quadratic method.

        ``segments``: Segments per loop (linearized) or of the single loop
        (quadratic).

    Kwargs:
        ``detuning_offset``: Signed offset of each linearized loop from its
        sideband in rad/s; mirror loops use the opposite sign.

        ``sidebands``: 1-based modes to build loops on, default all.

        ``detuning``: Drive frequency of the quadratic method in rad/s,
        default the mean mode frequency.
    """
    __slots__ = ()

    def __new__(cls, max_rabi, gate_time, num_loops, segments,
                detuning_offset=DEFAULT_DETUNING_OFFSET, sidebands=None,
                detuning=None):
        if not (max_rabi > 0 and gate_time > 0):
            raise ValueError('Power and time budgets must be positive')
        if int(num_loops) != num_loops or num_loops < 1:
            raise ValueError('Need a positive loop count, got %r' % num_loops)
        if int(segments) != segments or segments < 1:
            raise ValueError('Need a positive segment count, got %r'
                             % segments)
        if sidebands is not None:
            sidebands = tuple(int(l) for l in sidebands)
        return super(DesignBudget, cls).__new__(
            cls, float(max_rabi), float(gate_time), int(num_loops),
            int(segments), float(detuning_offset), sidebands, detuning)

    @property
    def loop_duration(self):
        return self.gate_time / self.num_loops


class DesignProblem(namedtuple(
    'DesignProblem',
    ['modes', 'spec', 'budget', 'chi_direction', 'tolerance'])):
    """A design request.

    Kwargs:
        ``chi_direction``: Explicit phase-vector direction to realize instead
        of the minimum-norm insensitive vector.

        ``tolerance``: Largest accepted crosstalk leakage
        :math:`\\max |J_{t,n} / J_{t_1,t_2}|`.  Pass ``numpy.inf`` to build
        deliberately crosstalk-sensitive reference gates.
    """
    __slots__ = ()

    def __new__(cls, modes, spec, budget, chi_direction=None, tolerance=1e-6):
        if chi_direction is not None:
            chi_direction = np.array(chi_direction, dtype=float)
            if chi_direction.shape != (modes.num_modes,):
                raise ValueError('chi_direction needs %d entries'
                                 % modes.num_modes)
        return super(DesignProblem, cls).__new__(
            cls, modes, spec, budget, chi_direction, tolerance)


DesignResult = namedtuple(
    'DesignResult',
    ['schedule', 'chi', 'achieved_theta', 'crosstalk_leakage', 'peak_rabi',
     'coefficients', 'loop_labels', 'method', 'notes'])

LoopBasis = namedtuple('LoopBasis', ['loops', 'chis', 'labels'])

FeasibilityEntry = namedtuple(
    'FeasibilityEntry',
    ['t1', 't2', 'independence', 'is_feasible', 'peak_rabi'])


def base_loop(modes, sideband, offset, duration, segments, sign=None):
    """Builds the normalized loop driving one sideband.

    Args:
        ``modes``: :py:class:`modes.ModeSet`.

        ``sideband``: 1-based mode ``l`` the loop is tuned near.

        ``offset``: Drive frequency minus :math:`\\nu_l`, in rad/s.

        ``duration``: Loop duration in s.

        ``segments``: Number of segments.

    Kwargs:
        ``sign``: Sign of the phase on mode ``l``.  Default +1 for loops at or
        below the sideband (``offset <= 0``) and -1 for mirror loops above it.

    Returns:
        ``loop``: Mode-closing :py:class:`pulses.PulseLoop` whose phase on
        mode ``l`` is exactly ``sign``.

        ``chi``: The loop's phase vector.

    The amplitudes are the closing shape with the largest phase of the
    requested sign on mode ``l`` per unit power, i.e. the extremal eigenvector
    of :math:`K^T P^{(l)} K` on that side of the spectrum.
    """
    if sign is None:
        sign = 1 if offset <= 0 else -1
    if sign not in (1, -1):
        raise ValueError('Phase sign must be +1 or -1, got %r' % sign)
    detuning = modes.freqs[sideband - 1] + offset
    K = pulses.closure_basis(modes, detuning, duration, segments)
    P = pulses.phase_matrix(modes, detuning, duration, segments)
    eigvals, eigvecs = util.eigh(
        K.T.dot(P[sideband - 1]).dot(K), atol=None)
    # Eigenvalues come ordered by magnitude; take the largest of this sign
    matching = np.flatnonzero(sign * eigvals > 0)
    if matching.size == 0 or (
            abs(eigvals[matching[0]]) <= 1e-12 * abs(eigvals[0])):
        raise util.DesignError(
            'No closing loop accumulates %s phase on mode %d'
            % ('positive' if sign > 0 else 'negative', sideband))
    index = matching[0]
    amplitudes = K.dot(eigvecs[:, index]) / np.sqrt(abs(eigvals[index]))
    # Fix the overall sign so the construction is reproducible
    if amplitudes[np.argmax(np.abs(amplitudes))] < 0:
        amplitudes = -amplitudes
    loop = pulses.PulseLoop(
        detuning, duration, amplitudes, offset=offset, reference_mode=sideband)
    chi = np.einsum('i,mij,j->m', amplitudes, P, amplitudes)
    return loop, chi


def loop_basis(modes, budget):
    """Builds the loop and mirror loop of every budgeted sideband.

    Returns:
        ``basis``: :py:class:`LoopBasis`; ``labels`` are
        ``(sideband, offset, sign)`` triples.  The loop at
        ``budget.detuning_offset`` adds positive phase to its sideband and
        its mirror at the opposite offset adds negative phase.
    """
    sidebands = budget.sidebands or tuple(range(1, modes.num_modes + 1))
    loops, chis, labels = [], [], []
    for sideband in sidebands:
        if not 1 <= sideband <= modes.num_modes:
            raise ValueError('Sideband %d out of range' % sideband)
        for offset, sign in ((budget.detuning_offset, 1),
                             (-budget.detuning_offset, -1)):
            loop, chi = base_loop(
                modes, sideband, offset, budget.loop_duration,
                budget.segments, sign=sign)
            loops.append(loop)
            chis.append(chi)
            labels.append((sideband, offset, sign))
    return LoopBasis(loops=loops, chis=np.column_stack(chis), labels=labels)


def _target_chi(problem, analysis):
    spec = problem.spec
    if problem.chi_direction is None:
        try:
            return coupling.target_chi(problem.modes, spec, analysis=analysis)
        except ValueError as exc:
            raise util.InfeasibleDesignError(str(exc), residual=1.)
    overlap = analysis.g_target.dot(problem.chi_direction)
    if abs(overlap) < 1e-12 * np.linalg.norm(problem.chi_direction):
        raise util.InfeasibleDesignError(
            'Phase direction %s does not couple targets (%d, %d)'
            % (problem.chi_direction, spec.t1, spec.t2), residual=1.)
    return problem.chi_direction * (spec.theta / 2.) / overlap


def crosstalk_leakage(J, spec):
    """Returns :math:`\\max |J_{t,n} / J_{t_1,t_2}|` over crosstalk pairs."""
    pairs = coupling.crosstalk_pairs(spec)
    if not pairs:
        return 0.
    J_target = J[spec.t1 - 1, spec.t2 - 1]
    leaks = np.array([abs(J[t - 1, n - 1]) for t, n in pairs])
    if J_target == 0:
        return np.inf if np.any(leaks > 0) else 0.
    return leaks.max() / abs(J_target)


def _finalize(problem, schedule, method, coefficients, labels, notes,
              angle_tol=1e-6):
    # Re-derive everything from the schedule alone
    modes, spec = problem.modes, problem.spec
    chi = pulses.accumulate_chi(schedule, modes)
    J = coupling.coupling_matrix(modes, chi)
    achieved_theta = 2 * J[spec.t1 - 1, spec.t2 - 1]
    leakage = crosstalk_leakage(J, spec)
    peak_rabi = schedule.peak_rabi
    if leakage > problem.tolerance:
        raise util.InfeasibleDesignError(
            'Crosstalk leakage %.3e exceeds tolerance %.1e'
            % (leakage, problem.tolerance), leakage=leakage)
    if abs(achieved_theta - spec.theta) > angle_tol:
        raise util.InfeasibleDesignError(
            'Achieved angle %.9f differs from target %.9f'
            % (achieved_theta, spec.theta),
            residual=abs(achieved_theta - spec.theta))
    if peak_rabi > problem.budget.max_rabi:
        raise util.PowerBudgetError(
            'Peak Rabi frequency 2pi x %.4g MHz exceeds budget 2pi x %.4g MHz'
            % (peak_rabi / (2e6 * np.pi),
               problem.budget.max_rabi / (2e6 * np.pi)),
            peak_rabi=peak_rabi, max_rabi=problem.budget.max_rabi)
    return DesignResult(
        schedule=schedule, chi=chi, achieved_theta=achieved_theta,
        crosstalk_leakage=leakage, peak_rabi=peak_rabi,
        coefficients=np.asarray(coefficients, dtype=float),
        loop_labels=list(labels), method=method, notes=list(notes))


def _keep_sidebands(basis, analysis, num_loops):
    # Rank sidebands by how much of their loop phase is crosstalk-insensitive
    null = analysis.null_basis
    scores = {}
    for label, chi in zip(basis.labels, basis.chis.T):
        projection = np.linalg.norm(null.T.dot(chi)) / np.linalg.norm(chi)
        scores[label[0]] = max(scores.get(label[0], 0.), projection)
    if num_loops >= len(scores):
        return set(scores)
    ranked = sorted(scores, key=lambda l: (-scores[l], l))
    return set(ranked[:num_loops])


def design_linearized(problem, basis=None, residual_tol=1e-9, verbosity=0):
    """Designs a schedule of independently closing loops.

    Args:
        ``problem``: :py:class:`DesignProblem`.

    Kwargs:
        ``basis``: Precomputed :py:func:`loop_basis` for ``problem.modes`` and
        ``problem.budget``, reused across target pairs.

        ``residual_tol``: Largest relative residual of the nonnegative solve.

        ``verbosity``: 1 prints progress and warnings, 0 prints almost
        nothing.

    Returns:
        ``result``: :py:class:`DesignResult`.

    The loop weights :math:`c_l \\geq 0` solve
    :math:`\\sum_l c_l \\chi^{(l)} = \\chi^*` by nonnegative least squares and
    the loop amplitudes are scaled by :math:`\\sqrt{c_l}`.  When the budget
    keeps fewer sidebands than modes, :math:`\\chi^*` is generally out of
    reach; the weights then only null the crosstalk couplings and set the
    target angle.  An explicit ``problem.chi_direction`` is never traded
    away: it must be met, or only its angle with ``tolerance=inf``.

    Raises :py:class:`util.InfeasibleDesignError` or
    :py:class:`util.PowerBudgetError`.
    """
    modes, spec, budget = problem.modes, problem.spec, problem.budget
    notes = [MIRROR_LOOP_NOTE]
    analysis = coupling.crosstalk_analysis(modes, spec)
    if spec.theta == 0:
        return _finalize(problem, pulses.PulseSchedule(), LINEARIZED, [], [],
                         notes)
    chi_star = _target_chi(problem, analysis)
    if basis is None:
        basis = loop_basis(modes, budget)
    kept = _keep_sidebands(basis, analysis, budget.num_loops)
    columns = [i for i, label in enumerate(basis.labels) if label[0] in kept]
    B = basis.chis[:, columns]

    weights, rnorm = scipy.optimize.nnls(B, chi_star)
    residual = rnorm / np.linalg.norm(chi_star)
    if residual > residual_tol and not np.isfinite(problem.tolerance):
        # Reference gates only need the target angle
        overlap = analysis.g_target.dot(B.dot(weights))
        if overlap * spec.theta <= 0:
            raise util.InfeasibleDesignError(
                'Loops on sidebands %s cannot drive targets (%d, %d)'
                % (sorted(kept), spec.t1, spec.t2), residual=residual)
        weights = weights * (spec.theta / 2.) / overlap
        notes.append('Phase direction matched to relative residual %.2e.'
                     % residual)
    elif residual > residual_tol and problem.chi_direction is not None:
        raise util.InfeasibleDesignError(
            'Phase direction %s out of reach of sidebands %s, relative '
            'residual %.3e' % (problem.chi_direction, sorted(kept), residual),
            residual=residual)
    elif residual > residual_tol:
        if verbosity:
            util.print_msg(
                'Phase vector out of reach of %d sidebands (residual %.2e), '
                'solving for crosstalk nulls and target angle only'
                % (len(kept), residual))
        g_norm = np.linalg.norm(analysis.g_target)
        A = np.vstack((analysis.range_basis.T.dot(B),
                       analysis.g_target.dot(B) / g_norm))
        rhs = np.zeros(A.shape[0])
        rhs[-1] = spec.theta / (2 * g_norm)
        weights, rnorm = scipy.optimize.nnls(A, rhs)
        residual = rnorm / abs(rhs[-1])
        notes.append(
            'Phase vector out of reach of sidebands %s; weights only null '
            'the crosstalk and set the angle.' % sorted(kept))
        if residual > residual_tol:
            raise util.InfeasibleDesignError(
                'No nonnegative loop combination nulls the crosstalk for '
                'targets (%d, %d), residual %.3e'
                % (spec.t1, spec.t2, residual), residual=residual)

    cutoff = 1e-12 * weights.max()
    loops, coefficients, labels = [], [], []
    for col, weight in zip(columns, weights):
        if weight > cutoff:
            loops.append(basis.loops[col].scaled(np.sqrt(weight)))
            coefficients.append(weight)
            labels.append(basis.labels[col])
    schedule = pulses.PulseSchedule(loops)
    if verbosity:
        util.print_msg(
            'Linearized design for (%d, %d): %d loops, peak 2pi x %.4g MHz'
            % (spec.t1, spec.t2, len(loops),
               schedule.peak_rabi / (2e6 * np.pi)))
    return _finalize(problem, schedule, LINEARIZED, coefficients, labels,
                     notes)


class _QuadraticModel(object):
    """Phases of a single loop as quadratic forms in closing coordinates."""
    def __init__(self, problem, detuning, analysis, chi_star):
        modes, budget, spec = problem.modes, problem.budget, problem.spec
        self.K = pulses.closure_basis(
            modes, detuning, budget.gate_time, budget.segments)
        P = pulses.phase_matrix(
            modes, detuning, budget.gate_time, budget.segments)
        reduced = np.einsum('dk,mde,el->mkl', self.K, P, self.K)
        scale = max(np.linalg.norm(Q, 2) for Q in reduced)
        if scale == 0:
            raise util.DesignError('Loop accumulates no phase at detuning '
                                   '%g rad/s' % detuning)
        # Amplitude unit making the phases of order one
        self.w_ref = 1. / np.sqrt(scale)
        self.Q = reduced / scale
        self.P = P
        self.g = analysis.g_target
        self.R = analysis.crosstalk_matrix.T
        self.range_basis = analysis.range_basis
        self.J_star = spec.theta / 2.
        self.chi_star = chi_star

    def chi(self, x):
        return np.einsum('k,mkl,l->m', x, self.Q, x)

    def chi_jacobian(self, x):
        return 2 * self.Q.dot(x)

    def penalty(self, x, mu, smoothing):
        chi = self.chi(x)
        dchi = self.chi_jacobian(x)
        norm = abs(self.J_star)
        r = self.R.dot(chi) / norm
        dr = self.R.dot(dchi) / norm
        c = (self.g.dot(chi) - self.J_star) / norm
        dc = self.g.dot(dchi) / norm
        soft = np.sqrt(r ** 2 + smoothing ** 2)
        value = soft.sum() + mu * c ** 2
        grad = (r / soft).dot(dr) + 2 * mu * c * dc
        return value, grad

    def residuals(self, x):
        chi = self.chi(x)
        if self.chi_star is not None:
            return (chi - self.chi_star) / np.linalg.norm(self.chi_star)
        norm = abs(self.J_star)
        return np.concatenate((
            self.range_basis.T.dot(chi) / norm,
            [(self.g.dot(chi) - self.J_star) / norm]))

    def residual_jacobian(self, x):
        dchi = self.chi_jacobian(x)
        if self.chi_star is not None:
            return dchi / np.linalg.norm(self.chi_star)
        norm = abs(self.J_star)
        return np.vstack((self.range_basis.T.dot(dchi) / norm,
                          self.g.dot(dchi)[np.newaxis, :] / norm))


# (penalty weight, smoothing) continuation of the l1 objective
_CONTINUATION = [(1., 1e-1), (10., 1e-2), (1e2, 1e-3), (1e3, 1e-4),
                 (1e4, 1e-6)]


def _quadratic_restart(model, problem, detuning, seed, restart):
    spec, budget = problem.spec, problem.budget
    rng = np.random.default_rng([seed, restart])
    x = model.K.T.dot(rng.uniform(-1., 1., budget.segments))
    target = model.g.dot(model.chi(x))
    if target != 0:
        x *= np.sqrt(abs(model.J_star / target))
    for mu, smoothing in _CONTINUATION:
        res = scipy.optimize.minimize(
            model.penalty, x, args=(mu, smoothing), jac=True, method='BFGS',
            options={'maxiter': 500, 'gtol': 1e-10})
        x = res.x
    res = scipy.optimize.least_squares(
        model.residuals, x, jac=model.residual_jacobian, method='trf',
        xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=2000)
    x = res.x
    amplitudes = model.w_ref * model.K.dot(x)
    chi = np.einsum('i,mij,j->m', amplitudes, model.P, amplitudes)
    J = coupling.coupling_matrix(problem.modes, chi)
    leakage = crosstalk_leakage(J, spec)
    angle_error = abs(2 * J[spec.t1 - 1, spec.t2 - 1] - spec.theta)
    return leakage, angle_error, np.abs(amplitudes).max(), amplitudes


def design_quadratic(problem, restarts=DEFAULT_RESTARTS, seed=0,
                     verbosity=0):
    """Optimizes the amplitudes of a single closing loop.

    Args:
        ``problem``: :py:class:`DesignProblem`; the loop lasts
        ``budget.gate_time`` with ``budget.segments`` segments.

    Kwargs:
        ``restarts``: Number of random starting points, spread over MPI
        workers.

        ``seed``: Seed of the restart generator; restart ``r`` draws from
        ``numpy.random.default_rng([seed, r])``.

        ``verbosity``: 1 prints progress and warnings, 0 prints almost
        nothing.

    Returns:
        ``result``: :py:class:`DesignResult` of the restart with the lowest
        peak Rabi frequency among those meeting the tolerance.

    Each restart minimizes a smoothed :math:`\\ell_1` norm of the crosstalk
    couplings plus a growing quadratic penalty on the target angle, then
    polishes the constraints with a least-squares solve.  With
    ``problem.chi_direction`` the polish matches the whole phase vector.
    """
    modes, spec, budget = problem.modes, problem.spec, problem.budget
    detuning = budget.detuning
    if detuning is None:
        detuning = float(np.mean(modes.freqs))
    notes = []
    if spec.theta == 0:
        schedule = pulses.PulseSchedule([pulses.PulseLoop(
            detuning, budget.gate_time, np.zeros(budget.segments))])
        return _finalize(problem, schedule, QUADRATIC, [1.], [(None, 0., 0)],
                         notes)
    analysis = coupling.crosstalk_analysis(modes, spec)
    chi_star = None
    if problem.chi_direction is not None:
        chi_star = _target_chi(problem, analysis)
        notes.append('Matched the full phase vector %s.' % (chi_star,))
    model = _QuadraticModel(problem, detuning, analysis, chi_star)

    results = parallel.map_tasks(
        lambda restart: _quadratic_restart(
            model, problem, detuning, seed, restart),
        list(range(restarts)))
    good = [r for r in results
            if r[0] < problem.tolerance and r[1] < 1e-6]
    if not good:
        best_leakage = min(r[0] for r in results)
        raise util.InfeasibleDesignError(
            'No restart out of %d met the crosstalk tolerance; best leakage '
            '%.3e' % (restarts, best_leakage), leakage=best_leakage)
    leakage, angle_error, peak, amplitudes = min(good, key=lambda r: r[2])
    if verbosity:
        util.print_msg(
            '%d of %d restarts converged, best peak 2pi x %.4g MHz'
            % (len(good), restarts, peak / (2e6 * np.pi)))
    schedule = pulses.PulseSchedule([pulses.PulseLoop(
        detuning, budget.gate_time, amplitudes,
        offset=None, reference_mode=None)])
    return _finalize(problem, schedule, QUADRATIC, [1.], [(None, 0., 0)],
                     notes)


def single_mode_chi(modes, spec, mode):
    """Returns the phase vector of a gate driven on one mode only.

    The phase :math:`\\chi_m = \\Theta / (2 g^{(t_1,t_2)}_m)` sits on mode
    ``mode`` (1-based); such gates ignore crosstalk and serve as references.
    Raises ``ValueError`` if the mode does not couple the targets.
    """
    g = coupling.g_vector(modes, spec.t1, spec.t2)
    if abs(g[mode - 1]) < 1e-12:
        raise ValueError('Mode %d does not couple targets (%d, %d)'
                         % (mode, spec.t1, spec.t2))
    chi = np.zeros(modes.num_modes)
    chi[mode - 1] = spec.theta / (2 * g[mode - 1])
    return chi


def feasibility_report(modes, budget, threshold=coupling.DEFAULT_THRESHOLD,
                       theta=np.pi / 4, verbosity=0):
    """Tabulates which target pairs admit an insensitive gate.

    Args:
        ``modes``: :py:class:`modes.ModeSet`.

        ``budget``: :py:class:`DesignBudget` of the reference linearized
        design.

    Kwargs:
        ``threshold``: Independence above which a pair counts as feasible.

    Returns:
        ``entries``: List of :py:class:`FeasibilityEntry`, one per pair;
        ``peak_rabi`` is ``nan`` for infeasible pairs and for pairs whose
        reference design fails.
    """
    basis = loop_basis(modes, budget)
    relaxed = budget._replace(max_rabi=np.inf)

    def evaluate(pair):
        spec = coupling.GateSpec.for_string(
            modes.num_ions, pair[0], pair[1], theta=theta)
        independence = coupling.crosstalk_analysis(modes, spec).independence
        is_feasible = independence > threshold
        peak = np.nan
        if is_feasible:
            try:
                peak = design_linearized(
                    DesignProblem(modes, spec, relaxed), basis=basis).peak_rabi
            except util.DesignError as exc:
                if verbosity:
                    util.print_msg('Pair %s: %s' % (pair, exc), 'stderr')
        return FeasibilityEntry(pair[0], pair[1], independence, is_feasible,
                                peak)

    return parallel.map_tasks(evaluate, coupling.all_pairs(modes.num_ions))


def save_design_report(result, file_name, header=None):
    """Writes the achieved angle, leakage, peak power and loop weights of a
    design as structured text."""
    lines = list(header or [])
    lines += [
        'method: %s' % result.method,
        'achieved_theta_over_pi: %r' % float(result.achieved_theta / np.pi),
        'crosstalk_leakage: %r' % float(result.crosstalk_leakage),
        'peak_rabi_mhz: %r' % float(result.peak_rabi / (2e6 * np.pi)),
        'total_duration_us: %r'
        % float(result.schedule.total_duration * 1e6),
        'chi: %s' % ', '.join(repr(float(c)) for c in result.chi),
        'loops:',
    ]
    for num, (label, weight) in enumerate(
            zip(result.loop_labels, result.coefficients), start=1):
        sideband, offset, sign = label
        lines.append(
            '  %d: sideband=%s offset_hz=%r sign=%+d weight=%r'
            % (num, sideband, float(offset / (2 * np.pi)), sign,
               float(weight)))
    for note in result.notes:
        lines.append('note: %s' % note)
    with open(file_name, 'w') as f:
        f.write('\n'.join(lines) + '\n')
