"""Command line entry point.

Usage::

  ionxtalk modes --config run.cfg --out results
  ionxtalk independence --config run.cfg --out results
  ionxtalk design --config run.cfg --out results [--method quadratic]
  ionxtalk simulate --config run.cfg --out results [--schedule FILE]
  ionxtalk oracle-check --config run.cfg --out results [--schedule FILE]

Each command writes plot-ready CSV or structured-text files whose first lines
are ``#`` provenance comments.  The exit status is 0 on success, 1 when a
design is infeasible, a loop does not close or the oracle disagrees, and 2 on
configuration errors.
"""
from argparse import ArgumentParser
import os
import sys

import numpy as np

from . import config
from . import coupling
from . import design
from . import modes
from . import parallel
from . import pulses
from . import simulate
from . import util


EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2

SCHEDULE_FILE = 'schedule.ini'
ORACLE_TOL = 1e-3
ORACLE_ENTROPY_TOL = 1e-4

_MHZ = 2e6 * np.pi


def _out_path(args, name):
    return os.path.join(args.out, name)


def cmd_modes(run_config, args):
    """Writes mode frequencies, Lamb-Dicke parameters and participations."""
    mode_set = config.build_modes(run_config)
    header = run_config.header()
    if run_config.trap is not None:
        header.append('# min spacing um: %r'
                      % float(modes.min_spacing(run_config.trap) * 1e6))
    columns = ['mode', 'freq_MHz', 'lamb_dicke'] + [
        'b_%d' % j for j in range(1, mode_set.num_ions + 1)]
    rows = [
        [m + 1, mode_set.freqs[m] / _MHZ, mode_set.lamb_dicke[m]] +
        list(mode_set.participation[m])
        for m in range(mode_set.num_modes)]
    parallel.call_from_rank_zero(
        util.save_csv, _out_path(args, 'modes.csv'), columns, rows,
        header=header)
    return EXIT_OK


def cmd_independence(run_config, args):
    """Writes the independence of every pair and the feasible pairs."""
    mode_set = config.build_modes(run_config)
    independence = coupling.independence_map(
        mode_set, theta=run_config.gate.theta)
    threshold = run_config.sweep.threshold
    rows = [
        [t1, t2, independence[t1 - 1, t2 - 1],
         int(independence[t1 - 1, t2 - 1] > threshold)]
        for t1, t2 in coupling.all_pairs(mode_set.num_ions)]
    header = run_config.header() + ['# threshold: %r' % float(threshold)]
    feasible = coupling.feasible_pairs(independence, threshold)
    if parallel.is_rank_zero():
        util.save_csv(
            _out_path(args, 'independence.csv'),
            ['t1', 't2', 'independence', 'feasible'], rows, header=header)
        with open(_out_path(args, 'feasible_pairs.txt'), 'w') as f:
            f.write('\n'.join(header) + '\n')
            f.write('num_feasible: %d\n' % len(feasible))
            for t1, t2 in feasible:
                f.write('%d %d\n' % (t1, t2))
    util.print_msg('%d of %d pairs above threshold %g'
                   % (len(feasible), len(rows), threshold))
    return EXIT_OK


def cmd_design(run_config, args):
    """Designs a schedule and writes it with its report."""
    problem = config.design_problem(run_config)
    method = args.method or run_config.method
    seed = run_config.seed if args.seed is None else args.seed
    if method == design.QUADRATIC:
        result = design.design_quadratic(
            problem, restarts=run_config.restarts, seed=seed,
            verbosity=args.verbosity)
    else:
        result = design.design_linearized(problem, verbosity=args.verbosity)
    header = util.provenance_lines(run_config.config_hash, seed)
    if parallel.is_rank_zero():
        pulses.save_schedule(
            result.schedule, _out_path(args, SCHEDULE_FILE), header=header)
        design.save_design_report(
            result, _out_path(args, 'design_report.txt'), header=header)
        J = coupling.coupling_matrix(problem.modes, result.chi)
        util.save_csv(
            _out_path(args, 'design_J.csv'),
            ['ion'] + ['J_%d' % j for j in range(1, J.shape[0] + 1)],
            [[j + 1] + list(J[j]) for j in range(J.shape[0])], header=header)
    util.print_msg(
        'Angle %.6f pi, leakage %.2e, peak 2pi x %.4g MHz'
        % (result.achieved_theta / np.pi, result.crosstalk_leakage,
           result.peak_rabi / _MHZ))
    return EXIT_OK


def _schedule_path(args):
    return args.schedule or _out_path(args, SCHEDULE_FILE)


def cmd_simulate(run_config, args):
    """Plays a schedule file and writes J, parity curves and an epsilon
    sweep."""
    mode_set = config.build_modes(run_config)
    schedule = pulses.load_schedule(_schedule_path(args))
    spec = run_config.gate
    phi_samples = args.phi_samples or run_config.sweep.phi_samples
    eps_grid = run_config.sweep.epsilons
    if args.eps_grid:
        eps_grid = np.array([float(v) for v in args.eps_grid.split(',')])
    report = simulate.simulate_gate(
        schedule, mode_set, spec, phi_samples=phi_samples)
    sweep = simulate.epsilon_sweep(report.chi, mode_set, spec, eps_grid)
    if not parallel.is_rank_zero():
        return EXIT_OK
    header = run_config.header()
    J = report.J
    util.save_csv(
        _out_path(args, 'J.csv'),
        ['ion'] + ['J_%d' % j for j in range(1, J.shape[0] + 1)],
        [[j + 1] + list(J[j]) for j in range(J.shape[0])], header=header)
    for (a, b), (phis, parity) in sorted(report.parity_scans.items()):
        util.save_csv(
            _out_path(args, 'parity_%d_%d.csv' % (a, b)),
            ['phi_rad', 'parity'], zip(phis, parity),
            header=header + ['# epsilon: %r' % float(spec.epsilon)])
    pairs = sorted(sweep.neighbor_amplitudes)
    util.save_csv(
        _out_path(args, 'epsilon_sweep.csv'),
        ['epsilon', 'fidelity', 'bell_fidelity'] + [
            'amplitude_%d_%d' % pair for pair in pairs],
        [[eps, sweep.fidelity[k], sweep.bell_fidelity[k]] + [
            sweep.neighbor_amplitudes[pair][k] for pair in pairs]
         for k, eps in enumerate(sweep.epsilons)], header=header)
    with open(_out_path(args, 'gate_report.txt'), 'w') as f:
        f.write('\n'.join(header) + '\n')
        f.write('fidelity: %r\n' % float(report.fidelity))
        f.write('bell_fidelity: %r\n' % float(report.bell_fidelity))
        f.write('theta_over_pi: %r\n'
                % float(report.angles[spec.t1 - 1, spec.t2 - 1] / np.pi))
        f.write('closure_residuals: %s\n' % ', '.join(
            repr(float(r)) for r in report.closure_residuals))
    util.print_msg('Fidelity %.10f at epsilon %g'
                   % (report.fidelity, spec.epsilon))
    return EXIT_OK


def cmd_oracle_check(run_config, args):
    """Compares the spin-motion integration with the closed-form gate."""
    mode_set = config.build_modes(run_config)
    if mode_set.num_ions > simulate.MAX_ORACLE_IONS:
        raise util.ConfigError(
            'oracle-check handles at most %d ions, config has %d'
            % (simulate.MAX_ORACLE_IONS, mode_set.num_ions))
    if not 0 < args.fock_cutoff <= simulate.MAX_FOCK_CUTOFF:
        raise util.ConfigError(
            '--fock-cutoff must be in 1..%d' % simulate.MAX_FOCK_CUTOFF)
    schedule = pulses.load_schedule(_schedule_path(args))
    illumination = simulate.IlluminationProfile.for_spec(
        mode_set.num_ions, run_config.gate)
    result = simulate.full_hamiltonian_oracle(
        schedule, mode_set, illumination, fock_cutoff=args.fock_cutoff,
        verbosity=args.verbosity)
    passed = (result.discrepancy < ORACLE_TOL and
              result.entropy < ORACLE_ENTROPY_TOL)
    if parallel.is_rank_zero():
        with open(_out_path(args, 'oracle_report.txt'), 'w') as f:
            f.write('\n'.join(run_config.header()) + '\n')
            f.write('discrepancy: %r\n' % float(result.discrepancy))
            f.write('step_discrepancy: %r\n'
                    % float(result.step_discrepancy))
            f.write('entropy_bits: %r\n' % float(result.entropy))
            f.write('phonon_numbers: %s\n' % ', '.join(
                repr(float(n)) for n in result.phonon_numbers))
            f.write('passed: %s\n' % bool(passed))
        rows = [[t] + list(ent) for t, ent in zip(
            result.snapshot_times * 1e6, result.snapshot_entropies)]
        util.save_csv(
            _out_path(args, 'oracle_snapshots.csv'),
            ['time_us'] + ['entropy_%d' % j for j in
                           range(1, mode_set.num_ions + 1)],
            rows, header=run_config.header())
    if not passed:
        util.print_msg(
            'Oracle disagrees with the closed form: discrepancy %.3e, '
            'entropy %.3e' % (result.discrepancy, result.entropy), 'stderr')
        return EXIT_FAILURE
    return EXIT_OK


COMMANDS = {
    'modes': cmd_modes,
    'independence': cmd_independence,
    'design': cmd_design,
    'simulate': cmd_simulate,
    'oracle-check': cmd_oracle_check,
}


def parse_args(argv=None):
    """Parses command line arguments."""
    parser = ArgumentParser(
        prog='ionxtalk',
        description='Design and check crosstalk-insensitive entangling gates '
                    'for trapped-ion strings.')
    parser.add_argument('command', choices=sorted(COMMANDS))
    required = parser.add_argument_group('required arguments')
    required.add_argument(
        '-c', '--config', metavar='CONFIGFILE', required=True,
        help='Run configuration file.')
    parser.add_argument(
        '-o', '--out', metavar='DIR', default='.',
        help='Directory for output files, created if missing.')
    parser.add_argument(
        '--method', choices=[design.LINEARIZED, design.QUADRATIC],
        help='Design method, overrides the config.')
    parser.add_argument(
        '--seed', type=int, help='Optimizer seed, overrides the config.')
    parser.add_argument(
        '--schedule', metavar='FILE',
        help='Schedule file to simulate, default DIR/%s.' % SCHEDULE_FILE)
    parser.add_argument(
        '--eps-grid', metavar='EPS,EPS,...',
        help='Comma separated crosstalk fractions, overrides the config.')
    parser.add_argument(
        '--phi-samples', type=int, help='Analysis phases per parity scan.')
    parser.add_argument(
        '--fock-cutoff', type=int, default=simulate.MAX_FOCK_CUTOFF,
        help='Highest phonon number kept by oracle-check.')
    parser.add_argument(
        '-v', '--verbosity', action='count', default=0,
        help='Repeat for more output.')
    return parser.parse_args(argv)


def main(argv=None):
    """Runs one command and returns its exit status."""
    args = parse_args(argv)
    util.set_verbosity(args.verbosity + 1)
    try:
        run_config = config.load_config(args.config)
        if parallel.is_rank_zero() and not os.path.isdir(args.out):
            os.makedirs(args.out)
        parallel.barrier()
        return COMMANDS[args.command](run_config, args)
    except util.ConfigError as exc:
        util.print_msg('%s: %s' % (args.config, exc), 'stderr')
        return EXIT_CONFIG
    except (util.DesignError, util.ClosureError, util.OracleError,
            util.UnstableStringError, util.ConvergenceError,
            util.InsufficientSegmentsError) as exc:
        util.print_msg('%s failed: %s' % (args.command, exc), 'stderr')
        return EXIT_FAILURE


if __name__ == '__main__':
    sys.exit(main())
