#!/usr/bin/env python
"""Test config module"""
import unittest
from shutil import rmtree
import os
from os.path import join

import numpy as np

from ionxtalk import config, design, modes, parallel, util


QSCOUT_TEXT = """\
[run]
units = MHz
seed = 4
mode_source = harmonic

[trap]
species = Yb171
num_ions = 3
axial_freq = 0.7
radial_freq = 2.506

[gate]
targets = 3, 1
theta_over_pi = 0.25
epsilon = 0.1

[design]
method = linearized
gate_time = 750
num_loops = 3
segments = 10
detuning_offset = -0.015
max_rabi = 5

[sweep]
epsilons = 0, 0.1, 0.2
phi_samples = 32
"""

SINUSOIDAL_TEXT = """\
[run]
units = kHz
mode_source = sinusoidal

[trap]
num_ions = 4
base_freq = 2500
freq_step = 20
lamb_dicke = 0.08

[gate]
targets = 2, 3
neighbors = 1
"""


class TestUnits(unittest.TestCase):
    def test_to_angular(self):
        self.assertAlmostEqual(config.to_angular(1., 'MHz'), 2e6 * np.pi)
        self.assertAlmostEqual(config.to_angular(15., 'kHz'),
                               2 * np.pi * 15e3)
        np.testing.assert_allclose(config.to_angular([1., 2.], 'Hz'),
                                   [2 * np.pi, 4 * np.pi])
        self.assertRaises(util.ConfigError, config.to_angular, 1., 'GHz')


class TestParse(unittest.TestCase):
    def test_harmonic(self):
        run_config = config.parse_config_text(QSCOUT_TEXT)
        self.assertEqual(run_config.seed, 4)
        self.assertEqual(run_config.num_ions, 3)
        self.assertAlmostEqual(run_config.trap.axial_freq, 2 * np.pi * 0.7e6)
        self.assertAlmostEqual(run_config.trap.radial_freq,
                               2 * np.pi * 2.506e6)
        self.assertEqual(run_config.gate.targets, (1, 3))
        self.assertEqual(run_config.gate.neighbors, (2,))
        self.assertAlmostEqual(run_config.gate.theta, np.pi / 4)
        self.assertEqual(run_config.gate.epsilon, 0.1)
        budget = run_config.budget
        self.assertAlmostEqual(budget.gate_time, 750e-6)
        self.assertAlmostEqual(budget.loop_duration, 250e-6)
        self.assertAlmostEqual(budget.detuning_offset, -2 * np.pi * 15e3)
        self.assertAlmostEqual(budget.max_rabi, 2 * np.pi * 5e6)
        self.assertEqual(run_config.method, design.LINEARIZED)
        np.testing.assert_array_equal(run_config.sweep.epsilons,
                                      [0., 0.1, 0.2])
        self.assertEqual(run_config.sweep.phi_samples, 32)
        self.assertEqual(len(run_config.config_hash), 64)
        header = run_config.header()
        self.assertIn('# seed: 4', header)
        self.assertIn('# config sha256: %s' % run_config.config_hash, header)

        mode_set = config.build_modes(run_config)
        self.assertEqual(mode_set.source, modes.HARMONIC)
        self.assertAlmostEqual(mode_set.freqs[-1] / (2 * np.pi * 2.506e6), 1.)
        problem = config.design_problem(run_config, mode_set=mode_set)
        self.assertIs(problem.modes, mode_set)
        self.assertIsNone(problem.chi_direction)


    def test_sinusoidal(self):
        run_config = config.parse_config_text(SINUSOIDAL_TEXT)
        self.assertIsNone(run_config.trap)
        self.assertIsNone(run_config.budget)
        self.assertEqual(run_config.gate.neighbors, (1,))
        mode_set = config.build_modes(run_config)
        self.assertEqual(mode_set.source, modes.SINUSOIDAL)
        np.testing.assert_allclose(
            mode_set.freqs, 2 * np.pi * np.array([2.5e6, 2.52e6, 2.54e6,
                                                  2.56e6]))
        np.testing.assert_allclose(mode_set.lamb_dicke, 0.08)
        self.assertRaises(util.ConfigError, config.design_problem,
                          run_config)


    def test_hash_tracks_contents(self):
        first = config.parse_config_text(QSCOUT_TEXT)
        second = config.parse_config_text(QSCOUT_TEXT)
        self.assertEqual(first.config_hash, second.config_hash)
        changed = config.parse_config_text(
            QSCOUT_TEXT.replace('seed = 4', 'seed = 5'))
        self.assertNotEqual(first.config_hash, changed.config_hash)


    def check_error_line(self, text, line):
        try:
            config.parse_config_text(text)
        except util.ConfigError as exc:
            self.assertEqual(exc.line, line)
            self.assertTrue(str(exc).startswith('line %d: ' % line))
        else:
            self.fail('Expected ConfigError')


    def test_error_lines(self):
        # radial_freq sits on line 10
        self.check_error_line(
            QSCOUT_TEXT.replace('radial_freq = 2.506', 'radial_freq = 0.5'),
            10)
        self.check_error_line(
            QSCOUT_TEXT.replace('num_ions = 3', 'num_ions = three'), 8)
        self.check_error_line(
            QSCOUT_TEXT.replace('targets = 3, 1', 'targets = 1'), 13)
        self.check_error_line(
            QSCOUT_TEXT.replace('method = linearized', 'method = magic'), 18)
        self.check_error_line(
            QSCOUT_TEXT.replace('units = MHz', 'units = THz'), 2)
        self.check_error_line(
            QSCOUT_TEXT.replace('phi_samples = 32', 'phi_samples = 2'), 27)


    def test_errors(self):
        self.assertRaises(util.ConfigError, config.parse_config_text,
                          QSCOUT_TEXT.replace('[gate]', '[gates]'))
        self.assertRaises(util.ConfigError, config.parse_config_text,
                          'not an ini file')
        self.assertRaises(
            util.ConfigError, config.parse_config_text,
            QSCOUT_TEXT.replace('epsilons = 0, 0.1, 0.2', 'epsilons = 1.5'))
        self.assertRaises(
            util.ConfigError, config.parse_config_text,
            QSCOUT_TEXT.replace('max_rabi = 5',
                                'max_rabi = 5\nchi_direction = 1, 0'))
        self.assertRaises(
            util.ConfigError, config.parse_config_text,
            SINUSOIDAL_TEXT.replace('num_ions = 4', 'num_ions = 1'))


class TestLoad(unittest.TestCase):
    def setUp(self):
        if parallel.is_rank_zero() and not os.path.exists(
                'files_config_DELETE_ME'):
            os.mkdir('files_config_DELETE_ME')
        parallel.barrier()
        self.test_dir = 'files_config_DELETE_ME'


    def tearDown(self):
        parallel.barrier()
        if parallel.is_rank_zero():
            rmtree(self.test_dir, ignore_errors=True)
        parallel.barrier()


    @unittest.skipIf(parallel.is_distributed(), 'Only load serially')
    def test_load(self):
        file_name = join(self.test_dir, 'run.cfg')
        with open(file_name, 'w') as f:
            f.write(QSCOUT_TEXT)
        run_config = config.load_config(file_name)
        self.assertEqual(run_config.trap.num_ions, 3)
        self.assertEqual(run_config.config_hash,
                         config.parse_config_text(QSCOUT_TEXT).config_hash)
        self.assertRaises(util.ConfigError, config.load_config,
                          join(self.test_dir, 'missing.cfg'))


if __name__ == '__main__':
    unittest.main()
