"""A group of useful functions and the package's error types"""
import logging
import sys

import numpy as np

from . import parallel


class ConvergenceError(RuntimeError):
    """An iterative solve did not reach its tolerance."""
    def __init__(self, msg, residual=None, num_iters=None):
        RuntimeError.__init__(self, msg)
        self.residual = residual
        self.num_iters = num_iters


class UnstableStringError(ValueError):
    """The linear ion string is not transversely stable."""
    def __init__(self, msg, eigvals=None):
        ValueError.__init__(self, msg)
        self.eigvals = eigvals


class InsufficientSegmentsError(ValueError):
    """Too few pulse segments to close every motional mode."""
    def __init__(self, msg, segments=None, required=None):
        ValueError.__init__(self, msg)
        self.segments = segments
        self.required = required


class ClosureError(RuntimeError):
    """A pulse loop leaves residual spin-motion displacement."""
    def __init__(self, msg, loop_index=None, residual=None):
        RuntimeError.__init__(self, msg)
        self.loop_index = loop_index
        self.residual = residual


class DesignError(RuntimeError): pass


class InfeasibleDesignError(DesignError):
    def __init__(self, msg, residual=None, leakage=None):
        DesignError.__init__(self, msg)
        self.residual = residual
        self.leakage = leakage


class PowerBudgetError(DesignError):
    def __init__(self, msg, peak_rabi=None, max_rabi=None):
        DesignError.__init__(self, msg)
        self.peak_rabi = peak_rabi
        self.max_rabi = max_rabi


class OracleError(RuntimeError):
    """Brute-force integration disagrees with itself or with the closed
    form."""
    def __init__(self, msg, discrepancy=None):
        RuntimeError.__init__(self, msg)
        self.discrepancy = discrepancy


class ConfigError(ValueError):
    def __init__(self, msg, line=None):
        if line is not None:
            msg = 'line %d: %s' % (line, msg)
        ValueError.__init__(self, msg)
        self.line = line


_logger = logging.getLogger('ionxtalk')


class _ChannelHandler(logging.StreamHandler):
    """Writes INFO and below to the current stdout, the rest to stderr."""
    def emit(self, record):
        if record.levelno >= logging.WARNING:
            self.stream = sys.stderr
        else:
            self.stream = sys.stdout
        logging.StreamHandler.emit(self, record)


def _ensure_handler():
    if not _logger.handlers:
        handler = _ChannelHandler()
        handler.setFormatter(logging.Formatter('%(message)s'))
        _logger.addHandler(handler)
        _logger.propagate = False
        if _logger.level == logging.NOTSET:
            _logger.setLevel(logging.INFO)


def set_verbosity(verbosity):
    """Sets how much the ``ionxtalk`` logger reports.

    Args:
        ``verbosity``: 0 (or ``None``) shows warnings only, 1 shows progress,
        2 and above show debugging detail.
    """
    _ensure_handler()
    if not verbosity:
        _logger.setLevel(logging.WARNING)
    elif verbosity == 1:
        _logger.setLevel(logging.INFO)
    else:
        _logger.setLevel(logging.DEBUG)


def print_msg(msg, output_channel='stdout'):
    """Reports ``msg`` from the rank zero MPI worker only.

    The ``stdout`` channel logs at INFO level, ``stderr`` at WARNING level.
    """
    if not parallel.is_rank_zero():
        return
    _ensure_handler()
    if output_channel.upper() == 'STDOUT':
        _logger.info(msg)
    elif output_channel.upper() == 'STDERR':
        _logger.warning(msg)
    else:
        raise ValueError(
            'Invalid output channel.  Choose from the strings STDOUT, STDERR.')


def column_space_split(array, rtol=1e-9):
    """Splits space into the column span of ``array`` and its orthogonal
    complement.

    Args:
        ``array``: 2D array whose columns are the spanning vectors.  May have
        zero columns.

    Kwargs:
        ``rtol``: Singular values below ``rtol`` times the largest one count
        as zero.

    Returns:
        ``range_basis``: Array with orthonormal columns spanning the column
        space.

        ``null_basis``: Array with orthonormal columns spanning the
        complement, i.e. every column ``v`` has ``array.T.dot(v) == 0``.

    An empty or identically zero ``array`` has an empty range and the
    identity as its complement.
    """
    array = np.atleast_2d(np.array(array, dtype=float))
    num_rows = array.shape[0]
    if array.size == 0 or not np.any(array):
        return np.zeros((num_rows, 0)), np.eye(num_rows)
    U, S, V_conj_T = np.linalg.svd(array, full_matrices=True)
    rank = int((S > rtol * S[0]).sum())
    return U[:, :rank], U[:, rank:]


def eigh(array, atol=1e-13, rtol=None):
    """Wrapper for ``numpy.linalg.eigh``. Computes eigendecomposition of a
    Hermitian array.

    Args:
        ``array``: Array to take eigendecomposition of.

    Kwargs:
        ``atol``: Value below which eigenvalues (and corresponding
        eigenvectors) are truncated.

        ``rtol``: Maximum relative difference between largest and smallest
        eigenvalues.  Smaller ones are truncated.

    Returns:
        ``eigvals``: 1D array of eigenvalues, sorted in descending order (of
        magnitude).

        ``eigvecs``: Array whose columns are eigenvectors.

    Unlike ``numpy.linalg.eigh``, an indefinite array keeps its eigenvalues of
    either sign, ordered by magnitude only.
    """
    eigvals, eigvecs = np.linalg.eigh(np.array(array))

    sort_indices = np.argsort(np.abs(eigvals))[::-1]
    eigvals = eigvals[sort_indices]
    eigvecs = eigvecs[:, sort_indices]

    if atol is not None:
        num_nonzeros_atol = (abs(eigvals) > atol).sum()
    else:
        num_nonzeros_atol = eigvals.size
    if rtol is not None and eigvals.size > 0:
        num_nonzeros_rtol = (
            abs(eigvals[:num_nonzeros_atol]) / abs(eigvals[0]) > rtol).sum()
        num_nonzeros = min(num_nonzeros_atol, num_nonzeros_rtol)
    else:
        num_nonzeros = num_nonzeros_atol
    return eigvals[:num_nonzeros], eigvecs[:, :num_nonzeros]


def provenance_lines(config_hash=None, seed=None):
    """Returns the ``# key: value`` header lines stamped into output files.

    No timestamps are included, so reruns produce identical files.
    """
    from ._version import __version__
    lines = ['# ionxtalk version: %s' % __version__]
    if config_hash is not None:
        lines.append('# config sha256: %s' % config_hash)
    if seed is not None:
        lines.append('# seed: %d' % seed)
    return lines


def save_csv(file_name, columns, rows, header=None):
    """Saves a table to a comma-separated text file.

    Args:
        ``file_name``: Path of file to write.

        ``columns``: List of column names (with units, e.g. ``freq_MHz``).

        ``rows``: Iterable of numeric row sequences.

    Kwargs:
        ``header``: List of comment lines (each starting with ``#``) written
        before the column names, e.g. from :py:func:`provenance_lines`.

    Format of saved files is::

      # ionxtalk version: ...
      mode,freq_MHz,value
      1,2.2596...,0.33333333333333331
      ...

    Values are written with 17 significant digits so they read back exactly;
    integral values print without a decimal point.
    """
    array = np.array([list(row) for row in rows], dtype=float)
    array = array.reshape(-1, len(columns))
    np.savetxt(
        file_name, array, fmt='%.17g', delimiter=',',
        header='\n'.join(list(header or []) + [','.join(columns)]),
        comments='')


def load_csv(file_name):
    """Reads a file written by :py:func:`save_csv`.

    Returns:
        ``columns``: List of column names.

        ``array``: 2D float array of the table body (missing values become
        ``nan``).
    """
    with open(file_name) as f:
        lines = [line for line in f if not line.startswith('#')]
    columns = lines[0].strip().split(',')
    if len(lines) == 1:
        return columns, np.empty((0, len(columns)))
    array = np.genfromtxt(lines[1:], delimiter=',', dtype=float)
    return columns, array.reshape(-1, len(columns))
