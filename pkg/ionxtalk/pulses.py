"""Segmented amplitude-modulated pulses, mode closure and spin-dependent
phases.

A loop drives every ion with :math:`f(t) = w_s \\sin(\\omega_d t)` on segment
``s``, with ``t`` measured from the start of the loop.  The spin-dependent
phase of mode ``m`` is

.. math::

  \\chi_m = \\eta_m^2 \\int_0^{\\tau} dt_1 \\int_0^{t_1} dt_2 \\,
  f(t_1) f(t_2) \\sin(\\nu_m (t_1 - t_2)).

Within the rotating-wave approximation it becomes the quadratic form
:math:`w^T P^{(m)} w`.
"""
from collections import namedtuple
import configparser

import numpy as np
import scipy.integrate
import scipy.linalg

from . import util


RWA = 'rwa'
EXACT = 'exact'

# Relative closure residual accepted when accumulating phases
DEFAULT_CLOSURE_TOL = 1e-8


class PulseLoop(namedtuple(
    'PulseLoop',
    ['detuning', 'duration', 'amplitudes', 'offset', 'reference_mode'])):
    """One mode-closing sub-pulse.

    Args:
        ``detuning``: Drive frequency :math:`\\omega_d` in rad/s.

        ``duration``: Loop duration in s.

        ``amplitudes``: Rabi frequencies :math:`w_s` in rad/s, one per equal
        segment.

    Kwargs:
        ``offset``: Signed offset from the reference sideband in rad/s, if the
        loop was built around one.

        ``reference_mode``: 1-based mode the offset refers to.
    """
    __slots__ = ()

    def __new__(cls, detuning, duration, amplitudes, offset=None,
                reference_mode=None):
        amplitudes = np.array(amplitudes, dtype=float).ravel()
        if not duration > 0:
            raise ValueError('Loop duration must be positive, got %r'
                             % duration)
        if amplitudes.size < 1:
            raise ValueError('A loop needs at least one segment')
        return super(PulseLoop, cls).__new__(
            cls, float(detuning), float(duration), amplitudes, offset,
            reference_mode)

    @property
    def num_segments(self):
        return self.amplitudes.size

    @property
    def peak_rabi(self):
        return np.abs(self.amplitudes).max()

    def segment_edges(self):
        return segment_edges(self.duration, self.num_segments)

    def scaled(self, factor):
        """Returns the loop with every amplitude multiplied by ``factor``."""
        return self._replace(amplitudes=factor * self.amplitudes)


class PulseSchedule(namedtuple('PulseSchedule', ['loops'])):
    """Ordered sequence of :py:class:`PulseLoop`."""
    __slots__ = ()

    def __new__(cls, loops=()):
        return super(PulseSchedule, cls).__new__(cls, tuple(loops))

    @property
    def total_duration(self):
        return sum(loop.duration for loop in self.loops)

    @property
    def peak_rabi(self):
        if not self.loops:
            return 0.
        return max(loop.peak_rabi for loop in self.loops)

    def start_times(self):
        """Returns the start time of each loop in s."""
        durations = [loop.duration for loop in self.loops]
        return np.concatenate(([0.], np.cumsum(durations)[:-1]))[
            :len(durations)]

    def scaled(self, factor):
        return PulseSchedule([loop.scaled(factor) for loop in self.loops])


def segment_edges(duration, segments):
    """Returns the ``segments + 1`` boundaries ``k * duration / segments``."""
    return np.arange(segments + 1) * duration / segments


def _exp_integral(k, a, b):
    # int_a^b exp(i k t) dt, broadcasting over k, a and b
    width = b - a
    return width * np.exp(0.5j * k * (a + b)) * np.sinc(
        k * width / (2 * np.pi))


def _drive_integral(freqs, detuning, a, b):
    # int_a^b exp(i nu t) sin(omega_d t) dt for nu in freqs (leading axis)
    freqs = np.asarray(freqs, dtype=float)[:, np.newaxis]
    return (_exp_integral(freqs + detuning, a, b) -
            _exp_integral(freqs - detuning, a, b)) / 2j


def closure_array(modes, detuning, duration, segments):
    """Returns the complex :math:`N \\times D` array whose product with the
    amplitudes gives :py:func:`closure_residual`."""
    edges = segment_edges(duration, segments)
    return _drive_integral(modes.freqs, detuning, edges[:-1], edges[1:])


def closure_residual(loop, modes):
    """Returns :math:`\\int_0^{\\tau} e^{i \\nu_m t} f(t) dt` for every mode.

    The integrals are evaluated in closed form per segment.
    """
    return closure_array(
        modes, loop.detuning, loop.duration, loop.num_segments).dot(
            loop.amplitudes)


def closure_basis(modes, detuning, duration, segments):
    """Computes the amplitude vectors that close every mode.

    Args:
        ``modes``: :py:class:`modes.ModeSet` with ``N`` modes.

        ``detuning``: Drive frequency in rad/s.

        ``duration``: Loop duration in s.

        ``segments``: Number of equal segments ``D``.

    Returns:
        ``K``: Array with ``D`` rows and orthonormal columns spanning the null
        space of the ``2N`` real closure constraints (``D - 2N`` columns for
        generic parameters).
    """
    num_constraints = 2 * modes.num_modes
    if segments <= num_constraints:
        raise util.InsufficientSegmentsError(
            'Closing %d modes needs more than %d segments, got %d'
            % (modes.num_modes, num_constraints, segments),
            segments=segments, required=num_constraints + 1)
    closure = closure_array(modes, detuning, duration, segments)
    constraints = np.vstack((closure.real, closure.imag))
    row_norms = np.linalg.norm(constraints, axis=1)
    row_norms[row_norms == 0] = 1.
    return scipy.linalg.null_space(constraints / row_norms[:, np.newaxis])


def _triangle_integral(delta, width):
    # int_0^W dt1 int_0^t1 sin(delta (t1 - t2)) dt2 = W^2 (x - sin x) / x^2
    x = delta * width
    small = np.abs(x) < 1e-3
    x_safe = np.where(small, 1., x)
    series = x / 6. - x ** 3 / 120. + x ** 5 / 5040.
    return width ** 2 * np.where(small, series, (x_safe - np.sin(x_safe)) /
                                 x_safe ** 2)


def phase_matrix(modes, detuning, duration, segments):
    """Computes the rotating-wave phase matrices :math:`P^{(m)}`.

    Args:
        ``modes``: :py:class:`modes.ModeSet`.

        ``detuning``: Drive frequency :math:`\\omega_d` in rad/s.

        ``duration``: Loop duration in s.

        ``segments``: Number of equal segments ``D``.

    Returns:
        ``P``: Array of shape ``(N, D, D)``, symmetric in its last two
        indices, such that :math:`\\chi_m = w^T P^{(m)} w`.

    With :math:`\\delta_m = \\omega_d - \\nu_m` and segment width
    :math:`\\Delta`, the time-ordered block integrals of
    :math:`\\sin(\\delta_m (t_1 - t_2))` are a triangle
    :math:`(\\delta\\Delta - \\sin \\delta\\Delta)/\\delta^2` on the diagonal
    and :math:`\\Delta^2 \\mathrm{sinc}^2 \\sin(\\delta (c_1 - c_2))` between
    segments centered at :math:`c_1 > c_2`, split evenly between the two
    symmetric entries.  The prefactor is :math:`-\\eta_m^2 / 4`.
    """
    width = duration / segments
    centers = segment_edges(duration, segments)[:-1] + 0.5 * width
    deltas = detuning - np.asarray(modes.freqs)
    separations = np.abs(centers[:, np.newaxis] - centers[np.newaxis, :])

    P = np.empty((modes.num_modes, segments, segments))
    for mode_index, delta in enumerate(deltas):
        block = (0.5 * width ** 2 *
                 np.sinc(delta * width / (2 * np.pi)) ** 2 *
                 np.sin(delta * separations))
        np.fill_diagonal(block, _triangle_integral(delta, width))
        P[mode_index] = -0.25 * modes.lamb_dicke[mode_index] ** 2 * block
    return P


def _partial_drive_integral(freq, detuning, edges, amplitudes, cumulative, t):
    # int_0^t exp(i nu t') f(t') dt' for a scalar time t
    seg = min(max(np.searchsorted(edges, t, side='right') - 1, 0),
              amplitudes.size - 1)
    a = edges[seg]
    partial = (_exp_integral(freq + detuning, a, t) -
               _exp_integral(freq - detuning, a, t)) / 2j
    return cumulative[seg] + amplitudes[seg] * partial


def _exact_loop_chi(loop, modes, epsrel=1e-10):
    edges = loop.segment_edges()
    w = loop.amplitudes
    chi = np.zeros(modes.num_modes)
    for mode_index, freq in enumerate(modes.freqs):
        seg_integrals = _drive_integral(
            [freq], loop.detuning, edges[:-1], edges[1:])[0] * w
        cumulative = np.concatenate(([0.], np.cumsum(seg_integrals)))

        def integrand(t):
            partial = _partial_drive_integral(
                freq, loop.detuning, edges, w, cumulative, t)
            return np.sin(loop.detuning * t) * np.imag(
                np.exp(1j * freq * t) * np.conj(partial))

        total = 0.
        for seg in range(loop.num_segments):
            if w[seg] == 0:
                continue
            value, abserr = scipy.integrate.quad(
                integrand, edges[seg], edges[seg + 1], epsabs=0.,
                epsrel=epsrel, limit=1000)
            total += w[seg] * value
        chi[mode_index] = modes.lamb_dicke[mode_index] ** 2 * total
    return chi


def chi_loop(loop, modes, method=RWA):
    """Returns the spin-dependent phase vector of one loop.

    Kwargs:
        ``method``: ``'rwa'`` for the quadratic form of
        :py:func:`phase_matrix`, ``'exact'`` for adaptive quadrature of the
        full double integral (no rotating-wave approximation).
    """
    if method == RWA:
        P = phase_matrix(
            modes, loop.detuning, loop.duration, loop.num_segments)
        return np.einsum('i,mij,j->m', loop.amplitudes, P, loop.amplitudes)
    elif method == EXACT:
        return _exact_loop_chi(loop, modes)
    raise ValueError('Unknown method %r, choose %r or %r'
                     % (method, RWA, EXACT))


def relative_closure_residual(loop, modes):
    """Returns the largest closure residual divided by ``peak * duration``."""
    scale = loop.peak_rabi * loop.duration
    if scale == 0:
        return 0.
    return np.abs(closure_residual(loop, modes)).max() / scale


def accumulate_chi(schedule, modes, method=RWA, tol=DEFAULT_CLOSURE_TOL):
    """Sums the spin-dependent phases of every loop of a schedule.

    Args:
        ``schedule``: :py:class:`PulseSchedule`.

        ``modes``: :py:class:`modes.ModeSet`.

    Kwargs:
        ``method``: See :py:func:`chi_loop`.

        ``tol``: Largest relative closure residual accepted per loop.

    Returns:
        ``chi``: 1D array of phases, one per mode.

    Raises :py:class:`util.ClosureError` naming the first loop (1-based) that
    does not close.  Cross terms between loops vanish only if every loop
    closes, which is why closure is checked here.
    """
    chi = np.zeros(modes.num_modes)
    for loop_num, loop in enumerate(schedule.loops, start=1):
        residual = relative_closure_residual(loop, modes)
        if residual > tol:
            raise util.ClosureError(
                'Loop %d does not close the modes, relative residual %.3e'
                % (loop_num, residual), loop_index=loop_num,
                residual=residual)
        chi += chi_loop(loop, modes, method=method)
    return chi


def trajectory(loop, modes, samples):
    """Samples the phase-space path of every mode during a loop.

    Args:
        ``loop``: :py:class:`PulseLoop`.

        ``modes``: :py:class:`modes.ModeSet`.

        ``samples``: Number of equally spaced times, at least 2, including
        both ends.

    Returns:
        ``times``: 1D array of loop-local times in s.

        ``alphas``: Complex array of shape ``(N, samples)`` with
        :math:`\\alpha_m(t) = \\eta_m \\int_0^t f(t') e^{i \\nu_m t'} dt'`.
    """
    if samples < 2:
        raise ValueError('Need at least 2 samples, got %r' % samples)
    edges = loop.segment_edges()
    times = np.linspace(0., loop.duration, samples)
    seg = np.clip(np.searchsorted(edges, times, side='right') - 1, 0,
                  loop.num_segments - 1)
    seg_integrals = _drive_integral(
        modes.freqs, loop.detuning, edges[:-1], edges[1:]) * loop.amplitudes
    cumulative = np.concatenate(
        (np.zeros((modes.num_modes, 1)), np.cumsum(seg_integrals, axis=1)),
        axis=1)
    partial = _drive_integral(
        modes.freqs, loop.detuning, edges[seg],
        np.clip(times, edges[seg], edges[seg + 1]))
    alphas = cumulative[:, seg] + loop.amplitudes[seg] * partial
    return times, np.asarray(modes.lamb_dicke)[:, np.newaxis] * alphas


_HZ_PER_RAD = 1. / (2 * np.pi)


def save_schedule(schedule, file_name, header=None):
    """Writes a schedule to a structured text (INI) file.

    Args:
        ``schedule``: :py:class:`PulseSchedule`.

        ``file_name``: Path to write.

    Kwargs:
        ``header``: List of ``#`` comment lines written first.

    Frequencies are written as ordinary frequencies (not angular): drive
    frequency and offset in Hz, amplitudes in MHz, durations in us.
    """
    parser = configparser.ConfigParser()
    parser['schedule'] = {
        'num_loops': str(len(schedule.loops)),
        'convention': 'non-angular frequencies; f(t) = w sin(2 pi detuning '
                      't) with t from loop start',
    }
    for loop_num, loop in enumerate(schedule.loops, start=1):
        section = {
            'detuning_hz': repr(float(loop.detuning * _HZ_PER_RAD)),
            'duration_us': repr(float(loop.duration * 1e6)),
            'amplitudes_mhz': ', '.join(
                repr(float(w * _HZ_PER_RAD * 1e-6)) for w in loop.amplitudes),
        }
        if loop.offset is not None:
            section['offset_hz'] = repr(float(loop.offset * _HZ_PER_RAD))
        if loop.reference_mode is not None:
            section['reference_mode'] = str(loop.reference_mode)
        parser['loop %d' % loop_num] = section
    with open(file_name, 'w') as f:
        for line in (header or []):
            f.write(line + '\n')
        parser.write(f)


def load_schedule(file_name):
    """Reads a schedule written by :py:func:`save_schedule`.

    Raises :py:class:`util.ConfigError` on malformed files.
    """
    parser = configparser.ConfigParser()
    try:
        with open(file_name) as f:
            parser.read_file(f)
    except (IOError, OSError) as exc:
        raise util.ConfigError('Cannot read schedule %s: %s'
                               % (file_name, exc))
    except configparser.Error as exc:
        raise util.ConfigError(
            'Cannot parse schedule %s: %s' % (file_name, exc),
            line=getattr(exc, 'lineno', None))
    if not parser.has_section('schedule'):
        raise util.ConfigError('Schedule %s has no [schedule] section'
                               % file_name)
    try:
        num_loops = parser.getint('schedule', 'num_loops')
    except (configparser.Error, ValueError) as exc:
        raise util.ConfigError('Bad [schedule] in %s: %s' % (file_name, exc))
    loops = []
    for loop_num in range(1, num_loops + 1):
        name = 'loop %d' % loop_num
        if not parser.has_section(name):
            raise util.ConfigError('Schedule %s is missing [%s]'
                                   % (file_name, name))
        section = parser[name]
        try:
            amplitudes = [
                float(value) * 2 * np.pi * 1e6
                for value in section['amplitudes_mhz'].split(',')]
            offset = section.get('offset_hz')
            reference_mode = section.get('reference_mode')
            loops.append(PulseLoop(
                detuning=float(section['detuning_hz']) * 2 * np.pi,
                duration=float(section['duration_us']) * 1e-6,
                amplitudes=amplitudes,
                offset=None if offset is None else float(offset) * 2 * np.pi,
                reference_mode=None if reference_mode is None else int(
                    reference_mode)))
        except (KeyError, ValueError) as exc:
            raise util.ConfigError('Bad [%s] in %s: %s'
                                   % (name, file_name, exc))
    return PulseSchedule(loops)
