"""Run configuration files for the command line.

A run is described by an INI file with the sections ``[run]``, ``[trap]``,
``[gate]`` and optionally ``[design]`` and ``[sweep]``, e.g.::

  [run]
  units = MHz
  seed = 0
  mode_source = harmonic

  [trap]
  species = Yb171
  num_ions = 3
  axial_freq = 0.7
  radial_freq = 2.506

  [gate]
  targets = 1, 3
  theta_over_pi = 0.25

Frequencies are ordinary (not angular) and given in the ``units`` of the
``[run]`` section; times are in microseconds.
"""
from collections import namedtuple
import configparser
import hashlib
import re

import numpy as np
import scipy.constants

from . import coupling
from . import design
from . import modes
from . import util


FREQUENCY_UNITS = {'Hz': 1., 'kHz': 1e3, 'MHz': 1e6}
SECONDS_PER_US = 1e-6

DEFAULT_EPSILONS = (0., 0.05, 0.1, 0.15, 0.2, 0.25)

SweepConfig = namedtuple(
    'SweepConfig', ['epsilons', 'phi_samples', 'threshold'])


class RunConfig(namedtuple(
    'RunConfig',
    ['units', 'seed', 'mode_source', 'num_ions', 'trap', 'sinusoidal',
     'gate', 'budget', 'method', 'restarts', 'chi_direction', 'sweep',
     'config_hash'])):
    """A parsed run configuration, in angular SI units.

    Attributes:
        ``trap``: :py:class:`modes.TrapConfig` for harmonic mode sources,
        else ``None``.

        ``sinusoidal``: Dict of :py:func:`modes.sinusoidal_modes` keyword
        arguments for sinusoidal sources, else ``None``.

        ``gate``: :py:class:`coupling.GateSpec`.

        ``budget``: :py:class:`design.DesignBudget` or ``None`` without a
        ``[design]`` section.

        ``config_hash``: SHA-256 of the file contents.
    """
    __slots__ = ()

    def header(self):
        """Returns the provenance lines stamped into output files."""
        return util.provenance_lines(
            config_hash=self.config_hash, seed=self.seed)


def to_angular(value, units):
    """Converts an ordinary frequency in ``units`` to rad/s.

    This is the only place the factor :math:`2\\pi` enters configured
    frequencies.
    """
    try:
        scale = FREQUENCY_UNITS[units]
    except KeyError:
        raise util.ConfigError('Unknown units %r, choose from %s'
                               % (units, sorted(FREQUENCY_UNITS)))
    return 2 * np.pi * scale * np.asarray(value, dtype=float)


def _key_lines(text):
    # (section, key) -> 1-based line number, for diagnostics
    lines = {}
    section = None
    for num, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        match = re.match(r'^\[(.+)\]$', stripped)
        if match:
            section = match.group(1).strip()
            lines[(section, None)] = num
        elif section and '=' in stripped and not stripped.startswith(
                ('#', ';')):
            key = stripped.split('=', 1)[0].strip().lower()
            lines[(section, key)] = num
    return lines


class _Reader(object):
    """Typed access to a parsed file that reports line numbers."""
    def __init__(self, parser, key_lines):
        self.parser = parser
        self.key_lines = key_lines

    def error(self, msg, section, key=None):
        line = self.key_lines.get((section, key),
                                  self.key_lines.get((section, None)))
        return util.ConfigError('[%s] %s' % (section, msg), line=line)

    def has(self, section, key=None):
        if key is None:
            return self.parser.has_section(section)
        return self.parser.has_option(section, key)

    def raw(self, section, key, default=None, required=False):
        if not self.parser.has_section(section):
            if required:
                raise util.ConfigError('Missing section [%s]' % section)
            return default
        if not self.parser.has_option(section, key):
            if required:
                raise self.error('missing required key %r' % key, section)
            return default
        return self.parser.get(section, key).strip()

    def typed(self, section, key, cast, default=None, required=False):
        value = self.raw(section, key, required=required)
        if value is None:
            return default
        try:
            return cast(value)
        except ValueError:
            raise self.error('cannot read %s = %r' % (key, value), section,
                             key)

    def floats(self, section, key, default=None, required=False):
        return self.typed(
            section, key,
            lambda s: [float(v) for v in s.replace(',', ' ').split()],
            default=default, required=required)

    def ints(self, section, key, default=None, required=False):
        return self.typed(
            section, key,
            lambda s: [int(v) for v in s.replace(',', ' ').split()],
            default=default, required=required)


def _parse_trap(reader, units, mode_source):
    num_ions = reader.typed('trap', 'num_ions', int, required=True)
    if mode_source == modes.SINUSOIDAL:
        kwargs = {}
        freqs = reader.floats('trap', 'mode_freqs')
        if freqs is not None:
            kwargs['freqs'] = to_angular(freqs, units)
        for key in ('base_freq', 'freq_step'):
            value = reader.typed('trap', key, float)
            if value is not None:
                kwargs[key] = float(to_angular(value, units))
        lamb_dicke = reader.floats('trap', 'lamb_dicke')
        if lamb_dicke is not None:
            if len(lamb_dicke) == 1:
                kwargs['default_lamb_dicke'] = lamb_dicke[0]
            else:
                kwargs['lamb_dicke'] = lamb_dicke
        try:
            modes.sinusoidal_modes(num_ions, **kwargs)
        except ValueError as exc:
            raise reader.error(str(exc), 'trap')
        return num_ions, None, kwargs

    axial = reader.typed('trap', 'axial_freq', float, required=True)
    radial = reader.typed('trap', 'radial_freq', float, required=True)
    geometry = reader.typed('trap', 'raman_geometry', float,
                            default=modes.DEFAULT_RAMAN_GEOMETRY)
    wavelength = reader.typed(
        'trap', 'wavelength_nm', float,
        default=modes.DEFAULT_RAMAN_WAVELENGTH * 1e9) * 1e-9
    try:
        if reader.has('trap', 'ion_mass_amu'):
            mass = reader.typed('trap', 'ion_mass_amu', float) * \
                scipy.constants.atomic_mass
            delta_k = reader.typed(
                'trap', 'raman_delta_k', float,
                default=geometry * 2 * np.pi / wavelength)
            trap = modes.TrapConfig(
                num_ions, mass, to_angular(axial, units),
                to_angular(radial, units), delta_k)
        else:
            trap = modes.TrapConfig.from_species(
                reader.raw('trap', 'species', default='Yb171'), num_ions,
                to_angular(axial, units), to_angular(radial, units),
                raman_geometry=geometry, wavelength=wavelength)
    except ValueError as exc:
        raise reader.error(str(exc), 'trap', 'radial_freq'
                           if radial <= axial else None)
    return num_ions, trap, None


def _parse_gate(reader, num_ions):
    targets = reader.ints('gate', 'targets', required=True)
    if len(targets) != 2:
        raise reader.error('targets needs two ions, got %s' % targets,
                           'gate', 'targets')
    neighbors = reader.ints('gate', 'neighbors')
    theta = np.pi * reader.typed('gate', 'theta_over_pi', float, default=0.25)
    epsilon = reader.typed('gate', 'epsilon', float, default=0.)
    try:
        return coupling.GateSpec.for_string(
            num_ions, min(targets), max(targets), theta=theta,
            epsilon=epsilon, neighbors=neighbors)
    except ValueError as exc:
        raise reader.error(str(exc), 'gate')


def _parse_design(reader, units):
    if not reader.has('design'):
        return None, design.LINEARIZED, design.DEFAULT_RESTARTS, None
    method = reader.raw('design', 'method', default=design.LINEARIZED)
    if method not in (design.LINEARIZED, design.QUADRATIC):
        raise reader.error('unknown method %r' % method, 'design', 'method')
    gate_time = reader.typed('design', 'gate_time', float, required=True)
    offset = reader.typed('design', 'detuning_offset', float)
    detuning = reader.typed('design', 'detuning', float)
    max_rabi = reader.typed('design', 'max_rabi', float, default=np.inf)
    kwargs = {}
    if offset is not None:
        kwargs['detuning_offset'] = float(to_angular(offset, units))
    if detuning is not None:
        kwargs['detuning'] = float(to_angular(detuning, units))
    try:
        budget = design.DesignBudget(
            max_rabi=float(to_angular(max_rabi, units)),
            gate_time=gate_time * SECONDS_PER_US,
            num_loops=reader.typed('design', 'num_loops', int, default=1),
            segments=reader.typed('design', 'segments', int, required=True),
            sidebands=reader.ints('design', 'sidebands'), **kwargs)
    except ValueError as exc:
        raise reader.error(str(exc), 'design')
    restarts = reader.typed('design', 'restarts', int,
                            default=design.DEFAULT_RESTARTS)
    chi_direction = reader.floats('design', 'chi_direction')
    return budget, method, restarts, chi_direction


def _parse_sweep(reader):
    epsilons = reader.floats('sweep', 'epsilons',
                             default=list(DEFAULT_EPSILONS))
    if any(not 0 <= eps < 1 for eps in epsilons):
        raise reader.error('epsilons must lie in [0, 1)', 'sweep', 'epsilons')
    phi_samples = reader.typed('sweep', 'phi_samples', int, default=64)
    if phi_samples < 3:
        raise reader.error('phi_samples must be at least 3', 'sweep',
                           'phi_samples')
    threshold = reader.typed('sweep', 'threshold', float,
                             default=coupling.DEFAULT_THRESHOLD)
    return SweepConfig(np.array(epsilons), phi_samples, threshold)


def parse_config_text(text):
    """Parses the contents of a run configuration file.

    Returns:
        ``run_config``: :py:class:`RunConfig`.

    Raises :py:class:`util.ConfigError` naming the offending line when it is
    known.
    """
    parser = configparser.ConfigParser(inline_comment_prefixes=('#', ';'))
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise util.ConfigError(str(exc).splitlines()[0],
                               line=getattr(exc, 'lineno', None))
    reader = _Reader(parser, _key_lines(text))
    units = reader.raw('run', 'units', default='MHz')
    if units not in FREQUENCY_UNITS:
        raise reader.error('unknown units %r, choose from %s'
                           % (units, sorted(FREQUENCY_UNITS)), 'run', 'units')
    seed = reader.typed('run', 'seed', int, default=0)
    mode_source = reader.raw('run', 'mode_source', default=modes.HARMONIC)
    if mode_source not in (modes.HARMONIC, modes.SINUSOIDAL):
        raise reader.error('unknown mode_source %r' % mode_source, 'run',
                           'mode_source')
    num_ions, trap, sinusoidal = _parse_trap(reader, units, mode_source)
    gate = _parse_gate(reader, num_ions)
    budget, method, restarts, chi_direction = _parse_design(reader, units)
    if chi_direction is not None and len(chi_direction) != num_ions:
        raise reader.error('chi_direction needs %d entries' % num_ions,
                           'design', 'chi_direction')
    return RunConfig(
        units=units, seed=seed, mode_source=mode_source, num_ions=num_ions,
        trap=trap, sinusoidal=sinusoidal, gate=gate, budget=budget,
        method=method, restarts=restarts, chi_direction=chi_direction,
        sweep=_parse_sweep(reader),
        config_hash=hashlib.sha256(text.encode('utf-8')).hexdigest())


def load_config(file_name):
    """Reads and parses a run configuration file."""
    try:
        with open(file_name) as f:
            text = f.read()
    except (IOError, OSError) as exc:
        raise util.ConfigError('Cannot read config %s: %s' % (file_name, exc))
    return parse_config_text(text)


def build_modes(run_config):
    """Returns the :py:class:`modes.ModeSet` a configuration describes."""
    if run_config.mode_source == modes.SINUSOIDAL:
        return modes.sinusoidal_modes(
            run_config.num_ions, **run_config.sinusoidal)
    return modes.harmonic_modes(run_config.trap)


def design_problem(run_config, mode_set=None):
    """Returns the :py:class:`design.DesignProblem` of a configuration.

    Raises :py:class:`util.ConfigError` without a ``[design]`` section.
    """
    if run_config.budget is None:
        raise util.ConfigError('Config has no [design] section')
    if mode_set is None:
        mode_set = build_modes(run_config)
    return design.DesignProblem(
        mode_set, run_config.gate, run_config.budget,
        chi_direction=run_config.chi_direction)
