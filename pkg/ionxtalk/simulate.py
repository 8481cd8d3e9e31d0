"""Qubit-level action of a gate under optical crosstalk.

Gates act on the qubits as products of commuting :math:`X_{j_1} X_{j_2}`
rotations, so they are diagonal in the product :math:`X` basis.  Dense
unitaries use the computational (:math:`Z`) basis with ion 1 as the most
significant bit.
"""
from collections import namedtuple
import itertools

import numpy as np
import scipy.integrate
import scipy.linalg
import scipy.stats

from . import coupling
from . import parallel
from . import pulses
from . import util


MAX_DENSE_IONS = 12
MAX_ORACLE_IONS = 3
MAX_FOCK_CUTOFF = 8
DEFAULT_PHI_SAMPLES = 64

_PAULI_X = np.array([[0., 1.], [1., 0.]], dtype=complex)
_PAULI_Y = np.array([[0., -1j], [1j, 0.]])


class IlluminationProfile(namedtuple(
    'IlluminationProfile', ['factors', 'base_rabi'])):
    """Fraction of the target Rabi frequency seen by every ion.

    Args:
        ``factors``: 1D array :math:`c_j` in [0, 1].

    Kwargs:
        ``base_rabi``: Dimensionless scale :math:`s` applied to every designed
        amplitude; 1 plays the schedule as designed.
    """
    __slots__ = ()

    def __new__(cls, factors, base_rabi=1.):
        factors = np.array(factors, dtype=float).ravel()
        if np.any(factors < 0) or np.any(factors > 1):
            raise ValueError('Illumination factors must lie in [0, 1], got %s'
                             % factors)
        return super(IlluminationProfile, cls).__new__(
            cls, factors, float(base_rabi))

    @classmethod
    def for_spec(cls, num_ions, spec, epsilon=None, overrides=None,
                 base_rabi=1.):
        """Targets fully lit, neighbors at ``epsilon``, others dark.

        Kwargs:
            ``epsilon``: Uniform neighbor fraction, default ``spec.epsilon``.

            ``overrides``: Dict of 1-based neighbor ion to its own fraction,
            which may not exceed ``epsilon``.
        """
        if epsilon is None:
            epsilon = spec.epsilon
        if not 0 <= epsilon < 1:
            raise ValueError('Crosstalk fraction must be in [0, 1), got %r'
                             % epsilon)
        factors = np.zeros(num_ions)
        factors[spec.t1 - 1] = factors[spec.t2 - 1] = 1.
        for n in spec.neighbors:
            factors[n - 1] = epsilon
        for ion, value in (overrides or {}).items():
            if ion not in spec.neighbors:
                raise ValueError('Override for ion %d, which is not a neighbor'
                                 % ion)
            if not 0 <= value <= epsilon:
                raise ValueError(
                    'Neighbor %d fraction %r exceeds epsilon %r'
                    % (ion, value, epsilon))
            factors[ion - 1] = value
        return cls(factors, base_rabi=base_rabi)

    @property
    def num_ions(self):
        return self.factors.size

    def lit_ions(self):
        """Returns the 1-based ions with nonzero illumination."""
        return [int(j) + 1 for j in np.flatnonzero(self.factors)]


GateReport = namedtuple(
    'GateReport',
    ['J', 'angles', 'fidelity', 'bell_fidelity', 'parity_scans',
     'closure_residuals', 'chi'])

EpsilonSweep = namedtuple(
    'EpsilonSweep',
    ['epsilons', 'fidelity', 'bell_fidelity', 'neighbor_amplitudes'])

OracleResult = namedtuple(
    'OracleResult',
    ['unitary', 'closed_form', 'discrepancy', 'step_discrepancy', 'entropy',
     'phonon_numbers', 'snapshot_times', 'snapshot_entropies',
     'snapshot_negativities'])


def x_eigenvalues(num_ions):
    """Returns the :math:`2^N \\times N` array of :math:`X_j` eigenvalues of
    each product basis state, ion 1 as the most significant bit."""
    bits = (np.arange(2 ** num_ions)[:, np.newaxis] >>
            np.arange(num_ions - 1, -1, -1)[np.newaxis, :]) & 1
    return 1 - 2 * bits


def _hadamard(num_ions):
    return scipy.linalg.hadamard(2 ** num_ions) / np.sqrt(2. ** num_ions)


def rotation_angles(J, illumination):
    """Returns :math:`\\theta_{j_1,j_2} = 2 s^2 c_{j_1} c_{j_2} J_{j_1,j_2}`
    with a zero diagonal."""
    c = illumination.factors
    angles = 2 * illumination.base_rabi ** 2 * np.outer(c, c) * np.asarray(J)
    np.fill_diagonal(angles, 0.)
    return angles


def xx_unitary(angles):
    """Returns :math:`\\prod_{j_1<j_2} \\exp(i \\theta_{j_1,j_2} X_{j_1}
    X_{j_2})` for a symmetric angle array."""
    angles = np.asarray(angles, dtype=float)
    num_ions = angles.shape[0]
    if num_ions > MAX_DENSE_IONS:
        raise ValueError(
            'Dense unitaries are limited to %d ions, got %d; use '
            'reduced_qubit_unitary for the illuminated ions'
            % (MAX_DENSE_IONS, num_ions))
    x = x_eigenvalues(num_ions)
    upper = np.triu(angles, 1)
    phases = np.einsum('bi,ij,bj->b', x, upper, x)
    H = _hadamard(num_ions)
    return (H * np.exp(1j * phases)).dot(H)


def qubit_unitary(J, illumination):
    """Returns the dense :math:`2^N \\times 2^N` gate unitary.

    Args:
        ``J``: Coupling matrix, e.g. from :py:func:`coupling.coupling_matrix`.

        ``illumination``: :py:class:`IlluminationProfile`.

    Raises ``ValueError`` above :py:data:`MAX_DENSE_IONS` ions.
    """
    return xx_unitary(rotation_angles(J, illumination))


def reduced_qubit_unitary(J, illumination):
    """Returns the gate restricted to the illuminated ions.

    Returns:
        ``U``: Unitary on the illuminated ions, in ascending ion order.

        ``ions``: The 1-based ions ``U`` acts on.  Every other ion is
        untouched.
    """
    ions = illumination.lit_ions()
    idx = np.array(ions) - 1
    angles = rotation_angles(J, illumination)[np.ix_(idx, idx)]
    return xx_unitary(angles), ions


def _ideal_angles(num_ions, theta, targets):
    angles = np.zeros((num_ions, num_ions))
    t1, t2 = targets
    angles[t1 - 1, t2 - 1] = angles[t2 - 1, t1 - 1] = theta
    return angles


def fidelity(U, theta, targets):
    """Returns :math:`|\\langle \\psi_{ideal} | U | 0 \\dots 0 \\rangle|^2`.

    Args:
        ``U``: Dense gate unitary.

        ``theta``: Ideal target angle :math:`\\Theta`.

        ``targets``: 1-based target pair.

    The ideal state is the :math:`\\exp(i \\Theta X_{t_1} X_{t_2})` gate
    applied to the ground state with every other ion left alone.
    """
    num_ions = int(np.log2(U.shape[0]))
    ideal = xx_unitary(_ideal_angles(num_ions, theta, targets))[:, 0]
    return abs(np.vdot(ideal, U[:, 0])) ** 2


def _crosstalk_angles(J, spec, illumination):
    angles = rotation_angles(J, illumination)
    J_target = J[spec.t1 - 1, spec.t2 - 1]
    if J_target == 0:
        raise ValueError('Targets (%d, %d) are uncoupled, crosstalk ratios '
                         'are undefined' % spec.targets)
    num_ions = illumination.num_ions
    achieved = angles[spec.t1 - 1, spec.t2 - 1]
    c = illumination.factors
    crosstalk = np.zeros((num_ions, num_ions))
    for t, n in coupling.crosstalk_pairs(spec):
        value = (c[n - 1] / c[t - 1]) * (J[t - 1, n - 1] / J_target) * achieved
        crosstalk[t - 1, n - 1] = crosstalk[n - 1, t - 1] = value
    return angles, crosstalk, achieved


def crosstalk_unitary(J, spec, illumination):
    """Returns the target-neighbor error unitary
    :math:`\\prod_{(t,n)} \\exp(i (c_n/c_t)(J_{t,n}/J_{t_1,t_2}) \\Theta X_t
    X_n)`, where :math:`\\Theta` is the achieved target angle.

    Raises ``ValueError`` if the targets are uncoupled.
    """
    return xx_unitary(_crosstalk_angles(J, spec, illumination)[1])


def decompose_unitary(J, spec, illumination):
    """Splits the gate into commuting crosstalk, ideal and spectator parts.

    Returns:
        ``U_crosstalk``: See :py:func:`crosstalk_unitary`.

        ``U_ideal``: Target-pair rotation alone.

        ``U_spectator``: Every remaining pair, e.g. neighbor-neighbor terms of
        order :math:`\\epsilon^2`.

    The product of the three equals :py:func:`qubit_unitary`.
    """
    angles, crosstalk, achieved = _crosstalk_angles(J, spec, illumination)
    ideal = _ideal_angles(illumination.num_ions, achieved, spec.targets)
    spectator = angles - crosstalk - ideal
    return xx_unitary(crosstalk), xx_unitary(ideal), xx_unitary(spectator)


def _apply_single_qubit(state, op, ion, num_ions):
    tensor = state.reshape((2,) * num_ions)
    tensor = np.tensordot(op, tensor, axes=([1], [ion - 1]))
    return np.moveaxis(tensor, 0, ion - 1).reshape(-1)


def _z_signs(num_ions, ions):
    bits = (np.arange(2 ** num_ions)[:, np.newaxis] >>
            (num_ions - np.array(ions))[np.newaxis, :]) & 1
    return np.prod(1 - 2 * bits, axis=1)


def parity_scan(U, pair, phis):
    """Samples the two-ion parity after a phase-scanned analysis pulse.

    Args:
        ``U``: Dense gate unitary.

        ``pair``: 1-based ions ``(a, b)``.

        ``phis``: 1D array of analysis phases in radians.

    Returns:
        ``parity``: :math:`\\langle Z_a Z_b \\rangle` after :math:`U` acts on
        the ground state followed by :math:`\\pi/2` rotations about
        :math:`\\cos\\phi X + \\sin\\phi Y` on both ions.

    An ideal :math:`\\pi/4` gate gives :math:`-\\sin 2\\phi`.
    """
    num_ions = int(np.log2(U.shape[0]))
    state = U[:, 0]
    signs = _z_signs(num_ions, pair)
    parity = np.empty(len(phis))
    for i, phi in enumerate(phis):
        rotation = (np.eye(2) - 1j * (np.cos(phi) * _PAULI_X +
                                      np.sin(phi) * _PAULI_Y)) / np.sqrt(2)
        rotated = state
        for ion in pair:
            rotated = _apply_single_qubit(rotated, rotation, ion, num_ions)
        parity[i] = np.real(np.vdot(rotated, signs * rotated))
    return parity


def parity_amplitude(phis, parity):
    """Fits :math:`a_0 + a_1 \\cos 2\\phi + a_2 \\sin 2\\phi` by least squares
    and returns :math:`\\sqrt{a_1^2 + a_2^2}`."""
    phis = np.asarray(phis)
    basis = np.column_stack(
        (np.ones(phis.size), np.cos(2 * phis), np.sin(2 * phis)))
    coeffs = np.linalg.lstsq(basis, parity, rcond=None)[0]
    return np.hypot(coeffs[1], coeffs[2])


def analytic_parity_amplitude(angles, a, b):
    """Closed-form parity amplitude of ions ``a``, ``b`` after an XX-type gate
    on the ground state.

    Args:
        ``angles``: Symmetric array :math:`\\theta` of the gate.

        ``a``, ``b``: 1-based ions.

    With :math:`\\langle X_a X_b \\rangle = 0` the amplitude is
    :math:`\\frac{1}{2}\\sqrt{\\langle Y_a Y_b\\rangle^2 + (\\langle X_a Y_b
    \\rangle + \\langle Y_a X_b \\rangle)^2}`, where each expectation value is
    a product of cosines over the remaining ions.
    """
    angles = np.asarray(angles)
    others = [k for k in range(angles.shape[0]) if k not in (a - 1, b - 1)]
    ta = 2 * angles[a - 1, others]
    tb = 2 * angles[b - 1, others]
    sin_ab = np.sin(2 * angles[a - 1, b - 1])
    xy = sin_ab * np.prod(np.cos(tb))
    yx = sin_ab * np.prod(np.cos(ta))
    yy = 0.5 * (np.prod(np.cos(ta - tb)) - np.prod(np.cos(ta + tb)))
    return 0.5 * np.hypot(yy, xy + yx)


def reduced_density_matrix(state, ions):
    """Returns the density matrix of ``ions`` (1-based, in the given order)
    from a state vector or a density matrix of all ions."""
    state = np.asarray(state)
    num_ions = int(np.log2(state.shape[0]))
    keep = [j - 1 for j in ions]
    rest = [j for j in range(num_ions) if j not in keep]
    dim_keep, dim_rest = 2 ** len(keep), 2 ** len(rest)
    if state.ndim == 1:
        tensor = np.transpose(state.reshape((2,) * num_ions), keep + rest)
        M = tensor.reshape(dim_keep, dim_rest)
        return M.dot(M.conj().T)
    tensor = state.reshape((2,) * (2 * num_ions))
    order = keep + [num_ions + j for j in keep] + rest + [
        num_ions + j for j in rest]
    tensor = np.transpose(tensor, order).reshape(
        dim_keep, dim_keep, dim_rest, dim_rest)
    return np.einsum('ijkk->ij', tensor)


def von_neumann_entropy(rho):
    """Entropy of a density matrix in bits."""
    eigvals = np.clip(np.linalg.eigvalsh(rho), 0., None)
    if eigvals.sum() == 0:
        return 0.
    return scipy.stats.entropy(eigvals, base=2)


def negativity(state, pair):
    """Returns the negativity of the reduced state of two ions, the summed
    magnitude of the negative eigenvalues of its partial transpose."""
    rho = reduced_density_matrix(state, pair)
    transposed = rho.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)
    eigvals = np.linalg.eigvalsh(transposed)
    return -eigvals[eigvals < 0].sum()


def bell_fidelity(U, pair, phi_samples=DEFAULT_PHI_SAMPLES):
    """Returns :math:`(P_{00} + P_{11} + A)/2` for a pair, with populations
    from the reduced state and :math:`A` fitted to a parity scan."""
    rho = reduced_density_matrix(U[:, 0], pair)
    phis = np.linspace(0., 2 * np.pi, phi_samples, endpoint=False)
    amplitude = parity_amplitude(phis, parity_scan(U, pair, phis))
    return 0.5 * (np.real(rho[0, 0] + rho[3, 3]) + amplitude)


def _local_spec(spec, ions):
    # Renumber targets and neighbors into the reduced ion list
    index = {ion: k + 1 for k, ion in enumerate(ions)}
    return coupling.GateSpec(
        index[spec.t1], index[spec.t2],
        [index[n] for n in spec.neighbors if n in index],
        theta=spec.theta, epsilon=spec.epsilon)


def epsilon_sweep(chi, modes, spec, eps_grid, base_rabi=1.):
    """Tracks gate quality as neighbor illumination grows.

    Args:
        ``chi``: Phase vector of the gate.

        ``modes``: :py:class:`modes.ModeSet`.

        ``spec``: :py:class:`coupling.GateSpec`; neighbors get each ``eps``.

        ``eps_grid``: Crosstalk fractions to evaluate.

    Returns:
        ``sweep``: :py:class:`EpsilonSweep` with target state fidelity,
        parity-derived Bell fidelity of the targets, and a dict of
        analytic parity amplitudes keyed by each (target, neighbor) pair.

    Only the illuminated ions are simulated.  Grid points are spread over MPI
    workers.
    """
    J = coupling.coupling_matrix(modes, chi)
    pairs = coupling.crosstalk_pairs(spec)

    def evaluate(eps):
        illumination = IlluminationProfile.for_spec(
            modes.num_ions, spec, epsilon=eps, base_rabi=base_rabi)
        # Keep neighbors in the simulation even when dark
        lit = sorted(set(spec.targets) | set(spec.neighbors))
        idx = np.array(lit) - 1
        local = IlluminationProfile(illumination.factors[idx], base_rabi)
        local_spec = _local_spec(spec, lit)
        U = qubit_unitary(J[np.ix_(idx, idx)], local)
        angles = rotation_angles(J[np.ix_(idx, idx)], local)
        position = {ion: k + 1 for k, ion in enumerate(lit)}
        amplitudes = [
            analytic_parity_amplitude(angles, position[t], position[n])
            for t, n in pairs]
        return (fidelity(U, spec.theta, local_spec.targets),
                bell_fidelity(U, local_spec.targets), amplitudes)

    eps_grid = np.asarray(eps_grid, dtype=float)
    results = parallel.map_tasks(evaluate, list(eps_grid))
    amplitudes = np.array([r[2] for r in results]).reshape(
        len(results), len(pairs))
    return EpsilonSweep(
        epsilons=eps_grid,
        fidelity=np.array([r[0] for r in results]),
        bell_fidelity=np.array([r[1] for r in results]),
        neighbor_amplitudes={
            pair: amplitudes[:, k] for k, pair in enumerate(pairs)})


def simulate_gate(schedule, modes, spec, illumination=None,
                  phi_samples=DEFAULT_PHI_SAMPLES, method=pulses.RWA):
    """Plays a schedule and analyzes the resulting qubit gate.

    Args:
        ``schedule``: :py:class:`pulses.PulseSchedule`.

        ``modes``: :py:class:`modes.ModeSet`.

        ``spec``: :py:class:`coupling.GateSpec`.

    Kwargs:
        ``illumination``: :py:class:`IlluminationProfile`, default from
        ``spec``.

        ``phi_samples``: Number of analysis phases per parity scan.

        ``method``: Phase evaluation, see :py:func:`pulses.chi_loop`.

    Returns:
        ``report``: :py:class:`GateReport`.  ``parity_scans`` maps each pair
        (targets first, then every target-neighbor pair) to ``(phis,
        parity)``; ``closure_residuals`` holds each mode's largest relative
        residual over the loops.

    Raises :py:class:`util.ClosureError` if a loop does not close.
    """
    if illumination is None:
        illumination = IlluminationProfile.for_spec(modes.num_ions, spec)
    chi = pulses.accumulate_chi(schedule, modes, method=method)
    J = coupling.coupling_matrix(modes, chi)
    residuals = np.zeros(modes.num_modes)
    for loop in schedule.loops:
        scale = loop.peak_rabi * loop.duration
        if scale > 0:
            residuals = np.maximum(
                residuals,
                np.abs(pulses.closure_residual(loop, modes)) / scale)

    ions = sorted(set(illumination.lit_ions()) | set(spec.targets) |
                  set(spec.neighbors))
    idx = np.array(ions) - 1
    local = IlluminationProfile(illumination.factors[idx],
                                illumination.base_rabi)
    local_spec = _local_spec(spec, ions)
    U = qubit_unitary(J[np.ix_(idx, idx)], local)

    phis = np.linspace(0., 2 * np.pi, phi_samples, endpoint=False)
    scans = {}
    for pair in [spec.targets] + coupling.crosstalk_pairs(spec):
        local_pair = (ions.index(pair[0]) + 1, ions.index(pair[1]) + 1)
        scans[pair] = (phis, parity_scan(U, local_pair, phis))
    return GateReport(
        J=J, angles=rotation_angles(J, illumination),
        fidelity=fidelity(U, spec.theta, local_spec.targets),
        bell_fidelity=bell_fidelity(U, local_spec.targets, phi_samples),
        parity_scans=scans, closure_residuals=residuals, chi=chi)


class _FockPropagator(object):
    """Spin-conditioned displaced oscillators, one per (X state, mode)."""
    def __init__(self, modes, illumination, fock_cutoff):
        num_ions = illumination.num_ions
        self.x = x_eigenvalues(num_ions)
        # s[b, m]: eigenvalue of sum_j c_j b_mj X_j on state b
        self.s = illumination.base_rabi * self.x.dot(
            (modes.participation * illumination.factors).T)
        self.coupling = self.s * modes.lamb_dicke
        self.freqs = modes.freqs
        self.shape = self.s.shape + (fock_cutoff + 1,)
        n = np.arange(fock_cutoff + 1)
        self.sqrt_n = np.sqrt(n)
        self.n = n

    def initial(self):
        psi = np.zeros(self.shape, dtype=complex)
        psi[..., 0] = 1.
        return psi

    def rhs(self, t, y, amplitude, detuning, t0):
        psi = y.reshape(self.shape)
        force = amplitude * np.sin(detuning * (t - t0))
        phase = np.exp(1j * self.freqs * t)
        # a^dag psi and a psi along the Fock axis
        raised = np.zeros_like(psi)
        raised[..., 1:] = self.sqrt_n[1:] * psi[..., :-1]
        lowered = np.zeros_like(psi)
        lowered[..., :-1] = self.sqrt_n[1:] * psi[..., 1:]
        coef = (force * self.coupling)[..., np.newaxis]
        H_psi = coef * (phase[np.newaxis, :, np.newaxis] * raised +
                        phase.conj()[np.newaxis, :, np.newaxis] * lowered)
        return (-1j * H_psi).ravel()


def _integrate_schedule(schedule, propagator, max_step, rtol):
    psi = propagator.initial()
    times, states = [0.], [psi.copy()]
    for loop, t0 in zip(schedule.loops, schedule.start_times()):
        edges = t0 + loop.segment_edges()
        for seg, amplitude in enumerate(loop.amplitudes):
            if amplitude == 0:
                continue
            sol = scipy.integrate.solve_ivp(
                propagator.rhs, (edges[seg], edges[seg + 1]), psi.ravel(),
                method='DOP853', max_step=max_step, rtol=rtol,
                atol=rtol * 1e-2, args=(amplitude, loop.detuning, t0))
            if not sol.success:
                raise util.OracleError(
                    'Integration failed in segment %d: %s'
                    % (seg + 1, sol.message))
            psi = sol.y[:, -1].reshape(propagator.shape)
        times.append(t0 + loop.duration)
        states.append(psi.copy())
    return np.array(times), states


def _spin_density_matrix(psi):
    # X-basis spin state of the ground spin state entangled with motion
    num_states = psi.shape[0]
    overlaps = np.prod(np.einsum('amn,bmn->abm', psi, psi.conj()), axis=2)
    return overlaps / num_states


def full_hamiltonian_oracle(
    schedule, modes, illumination, fock_cutoff=MAX_FOCK_CUTOFF,
    rtol=1e-10, step_tol=1e-6, verbosity=0):
    """Integrates the spin-motion Hamiltonian on a truncated Fock space.

    Args:
        ``schedule``: :py:class:`pulses.PulseSchedule`.

        ``modes``: :py:class:`modes.ModeSet` of at most 3 ions.

        ``illumination``: :py:class:`IlluminationProfile`.

    Kwargs:
        ``fock_cutoff``: Highest phonon number kept per mode, at most 8.

        ``rtol``: Relative tolerance of the ``DOP853`` integrator.

        ``step_tol``: Largest accepted change of the spin unitary when the
        step bound is halved.

    Returns:
        ``result``: :py:class:`OracleResult` with

        * ``unitary``: Spin operator left on the motional ground state.

        * ``closed_form``: :py:func:`qubit_unitary` of the exact
          (non-RWA) phases of the schedule.

        * ``discrepancy``: Operator-norm distance of the two, minimized over
          a global phase.

        * ``entropy``: Spin-motion entanglement entropy (bits) at the end,
          starting from the qubit ground state.

        * ``phonon_numbers``: Mean phonon number per mode at the end.

        * ``snapshot_times``: Start and end of every loop.

        * ``snapshot_entropies``: Per-ion entropies at each snapshot.

        * ``snapshot_negativities``: Pair negativities at each snapshot,
          ``nan`` on the diagonal.

    In the :math:`X` basis every spin state drives each mode independently,
    so the oscillators are integrated for all of them at once.  The step is
    bounded by 1/40 of the period of the fastest frequency present and the
    run is repeated with half that bound; a disagreement above ``step_tol``
    raises :py:class:`util.OracleError`.
    """
    num_ions = illumination.num_ions
    if num_ions > MAX_ORACLE_IONS or modes.num_ions != num_ions:
        raise ValueError(
            'The oracle handles at most %d ions matching the mode set'
            % MAX_ORACLE_IONS)
    if not 0 < fock_cutoff <= MAX_FOCK_CUTOFF:
        raise ValueError('Fock cutoff must be in 1..%d, got %r'
                         % (MAX_FOCK_CUTOFF, fock_cutoff))
    propagator = _FockPropagator(modes, illumination, fock_cutoff)
    max_detuning = max([abs(loop.detuning) for loop in schedule.loops] +
                       [0.])
    max_freq = (modes.freqs.max() + max_detuning) / (2 * np.pi)
    max_step = 1. / (40 * max_freq)

    runs = []
    for step in (max_step, max_step / 2):
        if verbosity:
            util.print_msg('Integrating with steps up to %.3g ns'
                           % (step * 1e9))
        runs.append(_integrate_schedule(schedule, propagator, step, rtol))
    times, states = runs[1]
    vacuum = [np.prod(run[1][-1][:, :, 0], axis=1) for run in runs]
    step_discrepancy = np.abs(vacuum[0] - vacuum[1]).max()
    if step_discrepancy > step_tol:
        raise util.OracleError(
            'Halving the step changed the spin unitary by %.3e'
            % step_discrepancy, discrepancy=step_discrepancy)

    H = _hadamard(num_ions)
    unitary = (H * vacuum[1]).dot(H)
    chi = pulses.accumulate_chi(schedule, modes, method=pulses.EXACT)
    closed_form = qubit_unitary(
        coupling.coupling_matrix(modes, chi), illumination)
    overlap = np.vdot(closed_form, unitary)
    phase = overlap / abs(overlap) if abs(overlap) > 0 else 1.
    discrepancy = np.linalg.norm(unitary - phase * closed_form, 2)

    final = states[-1]
    rho_x = _spin_density_matrix(final)
    entropy = von_neumann_entropy(rho_x)
    phonons = np.einsum('bmn,n->m', np.abs(final) ** 2, propagator.n) / (
        final.shape[0])

    snapshot_entropies = np.empty((len(states), num_ions))
    snapshot_negativities = np.full((len(states), num_ions, num_ions), np.nan)
    for k, psi in enumerate(states):
        rho = H.dot(_spin_density_matrix(psi)).dot(H)
        for ion in range(1, num_ions + 1):
            snapshot_entropies[k, ion - 1] = von_neumann_entropy(
                reduced_density_matrix(rho, [ion]))
        for a, b in itertools.combinations(range(1, num_ions + 1), 2):
            snapshot_negativities[k, a - 1, b - 1] = \
                snapshot_negativities[k, b - 1, a - 1] = negativity(
                    rho, (a, b))
    if verbosity:
        util.print_msg('Oracle discrepancy %.3e, final entropy %.3e bits'
                       % (discrepancy, entropy))
    return OracleResult(
        unitary=unitary, closed_form=closed_form, discrepancy=discrepancy,
        step_discrepancy=step_discrepancy, entropy=entropy,
        phonon_numbers=phonons, snapshot_times=times,
        snapshot_entropies=snapshot_entropies,
        snapshot_negativities=snapshot_negativities)
