#!/usr/bin/env python
"""Test cli module"""
import unittest
from shutil import rmtree
import os
from os.path import join

import numpy as np

from ionxtalk import cli, examples, parallel, pulses, util
from ionxtalk.tests.testconfig import QSCOUT_TEXT


@unittest.skipIf(parallel.is_distributed(), 'Only run commands serially')
class TestCommands(unittest.TestCase):
    def setUp(self):
        self.test_dir = 'files_cli_DELETE_ME'
        if not os.path.exists(self.test_dir):
            os.mkdir(self.test_dir)
        self.config_file = self.write_config('run.cfg', QSCOUT_TEXT)
        self.out = join(self.test_dir, 'out')


    def tearDown(self):
        rmtree(self.test_dir, ignore_errors=True)


    def write_config(self, name, text):
        file_name = join(self.test_dir, name)
        with open(file_name, 'w') as f:
            f.write(text)
        return file_name


    def run_command(self, command, *extra, **kwargs):
        config_file = kwargs.get('config_file', self.config_file)
        out = kwargs.get('out', self.out)
        return cli.main([command, '-c', config_file, '-o', out] +
                        list(extra))


    def test_modes(self):
        self.assertEqual(self.run_command('modes'), cli.EXIT_OK)
        columns, table = util.load_csv(join(self.out, 'modes.csv'))
        self.assertEqual(columns, ['mode', 'freq_MHz', 'lamb_dicke', 'b_1',
                                   'b_2', 'b_3'])
        self.assertEqual(table.shape, (3, 6))
        self.assertAlmostEqual(table[-1, 1], 2.506)
        with open(join(self.out, 'modes.csv')) as f:
            text = f.read()
        self.assertIn('# min spacing um: ', text)


    def test_independence(self):
        self.assertEqual(self.run_command('independence'), cli.EXIT_OK)
        columns, table = util.load_csv(join(self.out, 'independence.csv'))
        self.assertEqual(columns, ['t1', 't2', 'independence', 'feasible'])
        np.testing.assert_array_equal(table[:, 3], [0, 1, 0])
        self.assertAlmostEqual(table[1, 2], np.sqrt(27. / 28), places=6)
        with open(join(self.out, 'feasible_pairs.txt')) as f:
            lines = [line for line in f.read().splitlines()
                     if not line.startswith('#')]
        self.assertEqual(lines, ['num_feasible: 1', '1 3'])


    def test_design_then_simulate(self):
        self.assertEqual(self.run_command('design'), cli.EXIT_OK)
        schedule = pulses.load_schedule(join(self.out, cli.SCHEDULE_FILE))
        self.assertGreater(len(schedule.loops), 0)
        self.assertEqual(self.run_command('simulate'), cli.EXIT_OK)
        for name in ['J.csv', 'parity_1_3.csv', 'parity_1_2.csv',
                     'parity_3_2.csv', 'epsilon_sweep.csv', 'gate_report.txt']:
            self.assertTrue(os.path.exists(join(self.out, name)), name)
        design_J = util.load_csv(join(self.out, 'design_J.csv'))[1]
        simulated_J = util.load_csv(join(self.out, 'J.csv'))[1]
        np.testing.assert_allclose(simulated_J, design_J, rtol=1e-9,
                                   atol=1e-12)
        columns, sweep = util.load_csv(join(self.out, 'epsilon_sweep.csv'))
        self.assertEqual(columns[:3], ['epsilon', 'fidelity', 'bell_fidelity'])
        np.testing.assert_allclose(sweep[:, 0], [0., 0.1, 0.2])
        np.testing.assert_allclose(sweep[:, 1], 1., atol=1e-9)
        phis, parity = util.load_csv(join(self.out, 'parity_1_3.csv'))[1].T
        self.assertEqual(phis.size, 32)
        np.testing.assert_allclose(parity, -np.sin(2 * phis), atol=1e-5)

        # Explicit schedule path and epsilon grid
        other = join(self.test_dir, 'other')
        self.assertEqual(self.run_command(
            'simulate', '--schedule', join(self.out, cli.SCHEDULE_FILE),
            '--eps-grid', '0,0.3', '--phi-samples', '8', out=other),
            cli.EXIT_OK)
        sweep = util.load_csv(join(other, 'epsilon_sweep.csv'))[1]
        np.testing.assert_allclose(sweep[:, 0], [0., 0.3])


    def test_oracle_check(self):
        schedule_file = join(self.test_dir, 'idle.ini')
        pulses.save_schedule(pulses.PulseSchedule(
            [pulses.PulseLoop(2 * np.pi * 2.4e6, 10e-6, np.zeros(10))]),
            schedule_file)
        self.assertEqual(self.run_command(
            'oracle-check', '--schedule', schedule_file, '--fock-cutoff', '2'),
            cli.EXIT_OK)
        with open(join(self.out, 'oracle_report.txt')) as f:
            self.assertIn('passed: True', f.read())
        columns, snapshots = util.load_csv(
            join(self.out, 'oracle_snapshots.csv'))
        self.assertEqual(columns, ['time_us', 'entropy_1', 'entropy_2',
                                   'entropy_3'])
        np.testing.assert_allclose(snapshots[:, 0], [0., 10.])

        self.assertEqual(self.run_command(
            'oracle-check', '--schedule', schedule_file, '--fock-cutoff',
            '20'), cli.EXIT_CONFIG)
        four_ions = self.write_config(
            'four.cfg', QSCOUT_TEXT.replace('num_ions = 3', 'num_ions = 4'))
        self.assertEqual(self.run_command(
            'oracle-check', '--schedule', schedule_file,
            config_file=four_ions), cli.EXIT_CONFIG)


    def test_shipped_composite_config(self):
        config_file = join(os.path.dirname(examples.__file__),
                           'qscout_composite.cfg')
        self.assertEqual(self.run_command('design', config_file=config_file),
                         cli.EXIT_OK)
        schedule = pulses.load_schedule(join(self.out, cli.SCHEDULE_FILE))
        self.assertEqual(
            set(loop.reference_mode for loop in schedule.loops), {1, 3})
        J = util.load_csv(join(self.out, 'design_J.csv'))[1][:, 1:]
        self.assertAlmostEqual(J[0, 2], np.pi / 8, places=6)
        self.assertLess(abs(J[0, 1]), 1e-6)
        self.assertLess(abs(J[1, 2]), 1e-6)


    def test_reruns_identical(self):
        second = join(self.test_dir, 'second')
        self.assertEqual(self.run_command('design'), cli.EXIT_OK)
        self.assertEqual(self.run_command('design', out=second), cli.EXIT_OK)
        for name in [cli.SCHEDULE_FILE, 'design_report.txt', 'design_J.csv']:
            with open(join(self.out, name), 'rb') as f:
                first_bytes = f.read()
            with open(join(second, name), 'rb') as f:
                self.assertEqual(f.read(), first_bytes, name)


    def test_exit_codes(self):
        infeasible = self.write_config(
            'infeasible.cfg', QSCOUT_TEXT.replace('targets = 3, 1',
                                                  'targets = 1, 2'))
        self.assertEqual(self.run_command('design', config_file=infeasible),
                         cli.EXIT_FAILURE)
        bad = self.write_config(
            'bad.cfg', QSCOUT_TEXT.replace('radial_freq = 2.506',
                                           'radial_freq = 0.5'))
        self.assertEqual(self.run_command('modes', config_file=bad),
                         cli.EXIT_CONFIG)
        self.assertEqual(
            self.run_command('modes',
                             config_file=join(self.test_dir, 'missing.cfg')),
            cli.EXIT_CONFIG)
        # No schedule has been written yet
        self.assertEqual(self.run_command('simulate'), cli.EXIT_CONFIG)
        self.assertRaises(SystemExit, cli.main, ['modes'])
        self.assertRaises(SystemExit, cli.main,
                          ['teleport', '-c', self.config_file])


    def test_parse_args(self):
        args = cli.parse_args(['design', '-c', 'run.cfg', '--method',
                               'quadratic', '--seed', '7', '-vv'])
        self.assertEqual(args.command, 'design')
        self.assertEqual(args.method, 'quadratic')
        self.assertEqual(args.seed, 7)
        self.assertEqual(args.verbosity, 2)
        self.assertEqual(args.out, '.')


if __name__ == '__main__':
    unittest.main()
