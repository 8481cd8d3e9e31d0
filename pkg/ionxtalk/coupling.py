"""Mode-dependence vectors, crosstalk null spaces and independence maps.

The coupling between ions ``j1`` and ``j2`` produced by a vector of
spin-dependent mode phases :math:`\\chi` is
:math:`J_{j1,j2} = g^{(j1,j2)} \\cdot \\chi` with
:math:`g^{(j1,j2)}_m = b_{m,j1} b_{m,j2}`.
"""
from collections import namedtuple
import itertools

import numpy as np

from . import parallel
from . import util


DEFAULT_THRESHOLD = 0.1


class GateSpec(namedtuple(
    'GateSpec', ['t1', 't2', 'neighbors', 'theta', 'epsilon'])):
    """Target pair and crosstalk model of an entangling gate.

    Args:
        ``t1``, ``t2``: 1-based target ions, ``t1 < t2``.

        ``neighbors``: Ions receiving spillover light, disjoint from the
        targets.  Stored as a sorted tuple.

        ``theta``: Target rotation angle :math:`\\Theta` in radians.

        ``epsilon``: Crosstalk fraction, ``0 <= epsilon < 1``.
    """
    __slots__ = ()

    def __new__(cls, t1, t2, neighbors, theta=np.pi / 4, epsilon=0.):
        t1, t2 = int(t1), int(t2)
        if t1 == t2:
            raise ValueError('Targets must differ, got %d twice' % t1)
        if t1 > t2:
            raise ValueError('Targets must be ordered, got (%d, %d)' % (t1, t2))
        if t1 < 1:
            raise ValueError('Ions are numbered from 1, got %d' % t1)
        neighbors = tuple(sorted(set(int(n) for n in neighbors)))
        if set(neighbors) & {t1, t2}:
            raise ValueError(
                'Neighbors %s overlap targets (%d, %d)' % (neighbors, t1, t2))
        if len(neighbors) > 4:
            raise ValueError('At most 4 neighbors, got %s' % (neighbors,))
        if neighbors and min(neighbors) < 1:
            raise ValueError('Ions are numbered from 1, got %s' % (neighbors,))
        if not 0 <= epsilon < 1:
            raise ValueError('Crosstalk fraction must be in [0, 1), got %r'
                             % epsilon)
        return super(GateSpec, cls).__new__(
            cls, t1, t2, neighbors, float(theta), float(epsilon))

    @classmethod
    def for_string(
        cls, num_ions, t1, t2, theta=np.pi / 4, epsilon=0., neighbors=None):
        """Builds a spec with the nearest-neighbor default neighbor set.

        The default is :math:`\\{t_1 \\pm 1, t_2 \\pm 1\\} \\cap [1, N]`
        without the targets, so it shrinks at the string edges.
        """
        if not 1 <= t1 < t2 <= num_ions:
            raise ValueError(
                'Targets (%d, %d) invalid for %d ions' % (t1, t2, num_ions))
        if neighbors is None:
            neighbors = set(
                n for n in (t1 - 1, t1 + 1, t2 - 1, t2 + 1)
                if 1 <= n <= num_ions) - {t1, t2}
        elif max(neighbors, default=1) > num_ions:
            raise ValueError(
                'Neighbors %s invalid for %d ions' % (sorted(neighbors),
                                                      num_ions))
        return cls(t1, t2, neighbors, theta=theta, epsilon=epsilon)

    @property
    def targets(self):
        return (self.t1, self.t2)


CouplingAnalysis = namedtuple(
    'CouplingAnalysis',
    ['g_target', 'crosstalk_matrix', 'null_basis', 'range_basis',
     'independence'])


def crosstalk_pairs(spec):
    """Returns the list of (target, neighbor) pairs of ``spec``."""
    return [(t, n) for t in spec.targets for n in spec.neighbors]


def g_vector(modes, j1, j2):
    """Returns the mode-dependence vector :math:`g^{(j1,j2)}`.

    Args:
        ``modes``: :py:class:`modes.ModeSet`.

        ``j1``, ``j2``: 1-based ion numbers (may be equal).
    """
    num_ions = modes.num_ions
    for j in (j1, j2):
        if not 1 <= j <= num_ions:
            raise ValueError('Ion %r out of range 1..%d' % (j, num_ions))
    b = modes.participation
    return b[:, j1 - 1] * b[:, j2 - 1]


def coupling_matrix(modes, chi):
    """Returns the symmetric array :math:`J = B^T \\mathrm{diag}(\\chi) B`."""
    b = modes.participation
    return b.T.dot(np.asarray(chi)[:, np.newaxis] * b)


def _check_spec(modes, spec):
    if spec.t2 > modes.num_ions or (
        spec.neighbors and max(spec.neighbors) > modes.num_ions):
        raise ValueError(
            'Gate spec %s refers to ions beyond %d' % (spec, modes.num_ions))


def crosstalk_analysis(modes, spec, rtol=1e-9):
    """Finds the crosstalk-insensitive space of a gate.

    Args:
        ``modes``: :py:class:`modes.ModeSet`.

        ``spec``: :py:class:`GateSpec`.

    Kwargs:
        ``rtol``: Relative singular value threshold used to rank the crosstalk
        matrix.

    Returns:
        ``analysis``: :py:class:`CouplingAnalysis` with

        * ``g_target``: :math:`g^{(t_1,t_2)}`.

        * ``crosstalk_matrix``: Array whose columns are :math:`g^{(t,n)}` in
          the order of :py:func:`crosstalk_pairs`.

        * ``null_basis``: Orthonormal columns :math:`v` with
          :math:`R^T v = 0`.

        * ``range_basis``: Orthonormal basis of the column span of :math:`R`.

        * ``independence``: Norm of the projection of the unit vector along
          ``g_target`` onto the null space, in [0, 1].
    """
    _check_spec(modes, spec)
    g_target = g_vector(modes, spec.t1, spec.t2)
    columns = [g_vector(modes, t, n) for t, n in crosstalk_pairs(spec)]
    if columns:
        crosstalk_matrix = np.column_stack(columns)
    else:
        crosstalk_matrix = np.zeros((modes.num_modes, 0))
    range_basis, null_basis = util.column_space_split(
        crosstalk_matrix, rtol=rtol)
    g_norm = np.linalg.norm(g_target)
    if g_norm == 0:
        independence = 0.
    else:
        independence = min(
            1., np.linalg.norm(null_basis.T.dot(g_target)) / g_norm)
    return CouplingAnalysis(
        g_target=g_target, crosstalk_matrix=crosstalk_matrix,
        null_basis=null_basis, range_basis=range_basis,
        independence=independence)


def target_chi(modes, spec, analysis=None):
    """Returns the minimum-norm crosstalk-insensitive phase vector giving the
    target angle.

    The vector is the projection of :math:`g^{(t_1,t_2)}` onto the
    insensitive space, scaled so that :math:`J_{t_1,t_2} = \\Theta / 2`.
    Raises ``ValueError`` if the projection vanishes.
    """
    if analysis is None:
        analysis = crosstalk_analysis(modes, spec)
    direction = analysis.null_basis.dot(
        analysis.null_basis.T.dot(analysis.g_target))
    overlap = analysis.g_target.dot(direction)
    if overlap <= 1e-14 * max(1., np.linalg.norm(analysis.g_target)):
        raise ValueError(
            'Targets (%d, %d) have no crosstalk-insensitive coupling'
            % spec.targets)
    return direction * (spec.theta / 2.) / overlap


def all_pairs(num_ions):
    """Returns every ordered pair ``(t1, t2)``, ``t1 < t2``."""
    return list(itertools.combinations(range(1, num_ions + 1), 2))


def independence_map(modes, theta=np.pi / 4):
    """Computes the independence of every target pair with default
    neighbors.

    Args:
        ``modes``: :py:class:`modes.ModeSet` with at least 3 ions.

    Returns:
        ``independence``: :math:`N \\times N` array whose entry
        ``[t1 - 1, t2 - 1]`` (``t1 < t2``) is the pair's independence; the
        diagonal and lower triangle are ``nan``.

    Pairs are spread over MPI workers.
    """
    num_ions = modes.num_ions
    if num_ions < 3:
        raise ValueError('Independence maps need at least 3 ions')
    pairs = all_pairs(num_ions)
    values = parallel.map_tasks(
        lambda pair: crosstalk_analysis(
            modes, GateSpec.for_string(num_ions, pair[0], pair[1],
                                       theta=theta)).independence,
        pairs)
    independence = np.full((num_ions, num_ions), np.nan)
    for (t1, t2), value in zip(pairs, values):
        independence[t1 - 1, t2 - 1] = value
    return independence


def feasible_pairs(independence, threshold=DEFAULT_THRESHOLD):
    """Lists the pairs of an independence map above ``threshold``."""
    rows, cols = np.nonzero(np.nan_to_num(independence, nan=-1.) > threshold)
    return sorted((int(r) + 1, int(c) + 1) for r, c in zip(rows, cols))


def analytic_insensitive_chi(num_ions, t1, t2):
    """Returns the closed-form insensitive vector for sinusoidal modes,
    :math:`C_m = 2 \\cos((t_2 - t_1)(m-1)\\pi/N)`.

    Args:
        ``num_ions``: Number of ions ``N``.

        ``t1``, ``t2``: Interior target ions, ``2 <= t1 < t2 <= N - 1``.

    Returns:
        ``C``: 1D array with :math:`C \\cdot g^{(t_1,t_2)} = 1`.

    For any ions ``j1 < j2`` the sinusoidal modes give
    :math:`C^{(h)} \\cdot g^{(j1,j2)} = \\delta_{h,j2-j1} +
    \\delta_{h,j1+j2-1} + \\delta_{h,2N+1-j1-j2}`, so an edge target would
    alias onto one of its own crosstalk pairs.  Note that same-side neighbor
    pairs can still alias for particular spacings (e.g. ``t2 = 3 t1 - 2``
    against the pair ``(t1 - 1, t1)``).
    """
    if not 1 <= t1 < t2 <= num_ions:
        raise ValueError(
            'Targets (%d, %d) invalid for %d ions' % (t1, t2, num_ions))
    if t1 == 1 or t2 == num_ions:
        raise ValueError(
            'Targets (%d, %d) include an edge ion; the closed form is only '
            'orthogonal to the crosstalk pairs of interior targets'
            % (t1, t2))
    m = np.arange(1, num_ions + 1)
    return 2 * np.cos((t2 - t1) * (m - 1) * np.pi / num_ions)
