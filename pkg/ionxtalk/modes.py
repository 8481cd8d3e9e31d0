"""Transverse motional modes of a linear ion string.

Positions are solved in the dimensionless length unit
:math:`\\ell = (e^2 / (4 \\pi \\epsilon_0 M \\omega_z^2))^{1/3}`, where the
axial force on ion ``j`` is
:math:`-u_j + \\sum_{k<j} (u_j-u_k)^{-2} - \\sum_{k>j} (u_k-u_j)^{-2}`.
"""
from collections import namedtuple

import numpy as np
import scipy.constants
import scipy.linalg

from . import util


# Masses in atomic mass units for the species presets
SPECIES_MASS_AMU = {'Yb171': 170.936}

# Counter-propagating Raman beams at 355 nm
DEFAULT_RAMAN_WAVELENGTH = 355e-9
DEFAULT_RAMAN_GEOMETRY = np.sqrt(2.)

HARMONIC = 'harmonic'
SINUSOIDAL = 'sinusoidal'


class TrapConfig(namedtuple(
    'TrapConfig',
    ['num_ions', 'ion_mass', 'axial_freq', 'radial_freq', 'raman_delta_k'])):
    """Physical parameters of a linear string.

    Args:
        ``num_ions``: Number of ions :math:`N \\geq 2`.

        ``ion_mass``: Ion mass in kg.

        ``axial_freq``: Axial trap frequency :math:`\\omega_z` in rad/s.

        ``radial_freq``: Radial trap frequency :math:`\\omega_x` in rad/s;
        must exceed ``axial_freq``.

        ``raman_delta_k``: Effective Raman wavevector difference in 1/m.

    Use :py:meth:`from_species` for the built-in species presets.
    """
    __slots__ = ()

    def __new__(cls, num_ions, ion_mass, axial_freq, radial_freq,
                raman_delta_k):
        if int(num_ions) != num_ions or num_ions < 2:
            raise ValueError(
                'A string needs an integer number of ions >= 2, got %r'
                % (num_ions,))
        for name, value in [
            ('ion_mass', ion_mass), ('axial_freq', axial_freq),
            ('radial_freq', radial_freq), ('raman_delta_k', raman_delta_k)]:
            if not value > 0:
                raise ValueError('%s must be positive, got %r' % (name, value))
        if not radial_freq > axial_freq:
            raise ValueError(
                'Radial frequency %g rad/s must exceed axial frequency %g '
                'rad/s for a linear string' % (radial_freq, axial_freq))
        return super(TrapConfig, cls).__new__(
            cls, int(num_ions), float(ion_mass), float(axial_freq),
            float(radial_freq), float(raman_delta_k))

    @classmethod
    def from_species(
        cls, species, num_ions, axial_freq, radial_freq,
        raman_geometry=DEFAULT_RAMAN_GEOMETRY,
        wavelength=DEFAULT_RAMAN_WAVELENGTH):
        """Builds a config from a species preset.

        Args:
            ``species``: Key of :py:data:`SPECIES_MASS_AMU`, e.g. ``'Yb171'``.

            ``num_ions``, ``axial_freq``, ``radial_freq``: As for the
            constructor (frequencies in rad/s).

        Kwargs:
            ``raman_geometry``: Factor multiplying the single-beam wavenumber,
            :math:`\\sqrt{2}` for beams crossing at 90 degrees.

            ``wavelength``: Raman laser wavelength in m.
        """
        try:
            mass_amu = SPECIES_MASS_AMU[species]
        except KeyError:
            raise ValueError(
                'Unknown species %r, choose from %s'
                % (species, sorted(SPECIES_MASS_AMU)))
        return cls(
            num_ions, mass_amu * scipy.constants.atomic_mass, axial_freq,
            radial_freq, raman_geometry * 2 * np.pi / wavelength)


class ModeSet(namedtuple(
    'ModeSet', ['freqs', 'lamb_dicke', 'participation', 'source'])):
    """Transverse mode structure.

    Attributes:
        ``freqs``: 1D array of angular mode frequencies :math:`\\nu_m` in
        rad/s, ascending.

        ``lamb_dicke``: 1D array of Lamb-Dicke parameters :math:`\\eta_m`.

        ``participation``: Array :math:`b_{m,j}` with rows as modes and
        columns as ions.  Rows are orthonormal and :math:`b_{m,1} \\geq 0`.

        ``source``: ``'harmonic'`` or ``'sinusoidal'``.

    Mode and ion numbers used throughout the package are 1-based; row
    ``m - 1`` holds mode ``m``.
    """
    __slots__ = ()

    @property
    def num_ions(self):
        return self.participation.shape[1]

    @property
    def num_modes(self):
        return self.participation.shape[0]


def length_scale(config):
    """Returns the Coulomb length unit :math:`\\ell` in m."""
    return (scipy.constants.e ** 2 / (
        4 * np.pi * scipy.constants.epsilon_0 * config.ion_mass *
        config.axial_freq ** 2)) ** (1. / 3)


def _pair_distances(u):
    # diff[j, k] = u_j - u_k, infinite on the diagonal so self terms vanish
    diff = u[:, np.newaxis] - u[np.newaxis, :]
    np.fill_diagonal(diff, np.inf)
    return diff


def _axial_force(u):
    diff = _pair_distances(u)
    return -u + np.sum(np.sign(diff) / diff ** 2, axis=1)


def _axial_force_jacobian(u):
    inv_cubed = 1. / np.abs(_pair_distances(u)) ** 3
    jac = 2 * inv_cubed
    np.fill_diagonal(jac, -1 - 2 * inv_cubed.sum(axis=1))
    return jac


def dimensionless_positions(num_ions, tol=1e-12, max_iters=100):
    """Solves the axial force balance in units of :math:`\\ell`.

    Args:
        ``num_ions``: Number of ions.

    Kwargs:
        ``tol``: Largest allowed force residual on any ion.

        ``max_iters``: Iteration budget of the damped Newton solve.

    Returns:
        ``u``: 1D array of ascending positions, symmetric about zero.
    """
    # Quasi-uniform initial guess from the empirical minimum spacing
    spacing = 2.018 * num_ions ** -0.559
    u = spacing * (np.arange(1, num_ions + 1) - (num_ions + 1) / 2.)
    force = _axial_force(u)
    residual = np.abs(force).max()
    for num_iters in range(1, max_iters + 1):
        if residual < tol:
            break
        step = np.linalg.solve(_axial_force_jacobian(u), -force)
        alpha = 1.
        while True:
            u_new = u + alpha * step
            # Equilibrium is mirror symmetric, project onto that subspace
            u_new = 0.5 * (u_new - u_new[::-1])
            if np.all(np.diff(u_new) > 0):
                force_new = _axial_force(u_new)
                residual_new = np.abs(force_new).max()
                if residual_new < residual or alpha < 1e-8:
                    break
            alpha *= 0.5
            if alpha < 1e-12:
                raise util.ConvergenceError(
                    'Line search failed for %d ions, residual %.3e'
                    % (num_ions, residual), residual=residual,
                    num_iters=num_iters)
        u, force, residual = u_new, force_new, residual_new
    if residual >= tol:
        raise util.ConvergenceError(
            'Equilibrium of %d ions not converged after %d iterations, '
            'residual %.3e' % (num_ions, max_iters, residual),
            residual=residual, num_iters=max_iters)
    return u


def equilibrium_positions(config, tol=1e-12, max_iters=100):
    """Computes axial equilibrium positions of the string.

    Args:
        ``config``: :py:class:`TrapConfig`.

    Kwargs:
        ``tol``: Largest allowed dimensionless force residual.

        ``max_iters``: Iteration budget.

    Returns:
        ``positions``: 1D array of ascending positions in m.
    """
    return length_scale(config) * dimensionless_positions(
        config.num_ions, tol=tol, max_iters=max_iters)


def min_spacing(config):
    """Returns the smallest inter-ion distance in m."""
    return np.diff(equilibrium_positions(config)).min()


def transverse_coupling_array(u, freq_ratio):
    """Returns the transverse Hessian in units of :math:`M \\omega_z^2`.

    Args:
        ``u``: Dimensionless equilibrium positions.

        ``freq_ratio``: :math:`\\beta = \\omega_x / \\omega_z`.
    """
    inv_cubed = 1. / np.abs(_pair_distances(u)) ** 3
    hessian = inv_cubed.copy()
    np.fill_diagonal(hessian, freq_ratio ** 2 - inv_cubed.sum(axis=1))
    return hessian


def _fix_signs(participation):
    signs = np.where(participation[:, 0] < 0, -1., 1.)
    return participation * signs[:, np.newaxis]


def lamb_dicke_params(config, freqs):
    """Returns :math:`\\eta_m = \\Delta k \\sqrt{\\hbar / (2 M \\nu_m)}`."""
    return config.raman_delta_k * np.sqrt(
        scipy.constants.hbar / (2 * config.ion_mass * np.asarray(freqs)))


def harmonic_modes(config):
    """Computes the transverse modes of a string in a harmonic trap.

    Args:
        ``config``: :py:class:`TrapConfig`.

    Returns:
        ``modes``: :py:class:`ModeSet` with ascending frequencies; the top mode
        is the center-of-mass mode at ``config.radial_freq``.

    Raises :py:class:`util.UnstableStringError` if some eigenvalue of the
    transverse Hessian is not positive (the string would buckle into a
    zigzag).
    """
    u = dimensionless_positions(config.num_ions)
    hessian = transverse_coupling_array(
        u, config.radial_freq / config.axial_freq)
    eigvals, eigvecs = scipy.linalg.eigh(hessian)
    if eigvals[0] <= 0:
        raise util.UnstableStringError(
            'String of %d ions is transversely unstable at radial/axial '
            'ratio %.4g (lowest eigenvalue %.4g)'
            % (config.num_ions, config.radial_freq / config.axial_freq,
               eigvals[0]), eigvals=eigvals)
    freqs = config.axial_freq * np.sqrt(eigvals)
    participation = _fix_signs(eigvecs.T)
    # The all-equal eigenvector sits exactly at beta^2, pin it there
    if np.allclose(np.abs(participation[-1]), 1. / np.sqrt(config.num_ions)):
        freqs[-1] = config.radial_freq
    return ModeSet(
        freqs=freqs, lamb_dicke=lamb_dicke_params(config, freqs),
        participation=participation, source=HARMONIC)


def sinusoidal_participation(num_ions, m, j):
    """Evaluates :math:`b_{m,j} = \\sqrt{(2-\\delta_{m,1})/N}
    \\cos((2j-1)(m-1)\\pi/(2N))`.

    ``m`` and ``j`` are 1-based and may be arrays (broadcast together); ``j``
    may lie outside ``1..N``.
    """
    m = np.asarray(m)
    j = np.asarray(j)
    norm = np.sqrt(np.where(m == 1, 1., 2.) / num_ions)
    return norm * np.cos((2 * j - 1) * (m - 1) * np.pi / (2. * num_ions))


def extended_participation(num_ions):
    """Returns the :math:`N \\times 3N` array of sinusoidal participations for
    ions ``j = 1-N, ..., 2N`` (column ``j + N - 1``)."""
    m = np.arange(1, num_ions + 1)[:, np.newaxis]
    j = np.arange(1 - num_ions, 2 * num_ions + 1)[np.newaxis, :]
    return sinusoidal_participation(num_ions, m, j)


def sinusoidal_modes(
    num_ions, freqs=None, lamb_dicke=None, base_freq=2 * np.pi * 2.5e6,
    freq_step=2 * np.pi * 20e3, default_lamb_dicke=0.1):
    """Builds the ideal sinusoidal mode set of an equally spaced string.

    Args:
        ``num_ions``: Number of ions, at least 2.

    Kwargs:
        ``freqs``: Mode frequencies in rad/s, ascending with ``m``.  Defaults
        to ``base_freq + freq_step * (m - 1)``.

        ``lamb_dicke``: Lamb-Dicke parameters.  Defaults to
        ``default_lamb_dicke`` for every mode.

    Returns:
        ``modes``: :py:class:`ModeSet` whose row ``m - 1`` is formula mode
        ``m``; mode 1 is uniform.
    """
    if int(num_ions) != num_ions or num_ions < 2:
        raise ValueError('Need at least 2 ions, got %r' % (num_ions,))
    m = np.arange(1, num_ions + 1)
    participation = sinusoidal_participation(
        num_ions, m[:, np.newaxis], m[np.newaxis, :])
    if freqs is None:
        freqs = base_freq + freq_step * (m - 1)
    freqs = np.array(freqs, dtype=float)
    if freqs.shape != (num_ions,) or np.any(np.diff(freqs) <= 0):
        raise ValueError('Need %d strictly ascending frequencies' % num_ions)
    if lamb_dicke is None:
        lamb_dicke = default_lamb_dicke * np.ones(num_ions)
    return ModeSet(
        freqs=freqs, lamb_dicke=np.array(lamb_dicke, dtype=float),
        participation=participation, source=SINUSOIDAL)
