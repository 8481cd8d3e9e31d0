#!/usr/bin/env python
"""Test coupling module"""
import unittest

import numpy as np

from ionxtalk import coupling, modes, parallel


def three_ion_modes():
    return modes.harmonic_modes(modes.TrapConfig.from_species(
        'Yb171', 3, 2 * np.pi * 0.7e6, 2 * np.pi * 2.506e6))


def twelve_ion_modes():
    return modes.harmonic_modes(modes.TrapConfig.from_species(
        'Yb171', 12, 2 * np.pi * 0.5e6, 2 * np.pi * 3e6))


class TestGateSpec(unittest.TestCase):
    def test_default_neighbors(self):
        self.assertEqual(coupling.GateSpec.for_string(3, 1, 3).neighbors,
                         (2,))
        self.assertEqual(coupling.GateSpec.for_string(12, 1, 12).neighbors,
                         (2, 11))
        self.assertEqual(coupling.GateSpec.for_string(12, 4, 7).neighbors,
                         (3, 5, 6, 8))
        # Adjacent targets are not each other's neighbors
        self.assertEqual(coupling.GateSpec.for_string(12, 5, 6).neighbors,
                         (4, 7))
        spec = coupling.GateSpec.for_string(12, 4, 7)
        self.assertEqual(coupling.crosstalk_pairs(spec), [
            (4, 3), (4, 5), (4, 6), (4, 8), (7, 3), (7, 5), (7, 6), (7, 8)])


    def test_invalid(self):
        self.assertRaises(ValueError, coupling.GateSpec, 2, 2, [])
        self.assertRaises(ValueError, coupling.GateSpec, 3, 1, [2])
        self.assertRaises(ValueError, coupling.GateSpec, 1, 3, [3])
        self.assertRaises(ValueError, coupling.GateSpec, 1, 3, [2],
                          epsilon=1.)
        self.assertRaises(ValueError, coupling.GateSpec.for_string, 3, 1, 4)
        self.assertRaises(ValueError, coupling.GateSpec.for_string, 3, 1, 3,
                          neighbors=[5])


class TestCoupling(unittest.TestCase):
    def setUp(self):
        self.modes = three_ion_modes()


    def test_g_vectors(self):
        np.testing.assert_allclose(
            coupling.g_vector(self.modes, 1, 3), [1. / 6, -0.5, 1. / 3],
            atol=1e-9)
        np.testing.assert_allclose(
            coupling.g_vector(self.modes, 1, 2), [-1. / 3, 0., 1. / 3],
            atol=1e-9)
        self.assertRaises(ValueError, coupling.g_vector, self.modes, 0, 2)


    def test_coupling_matrix(self):
        chi = np.array([0.3, -0.2, 0.7])
        J = coupling.coupling_matrix(self.modes, chi)
        np.testing.assert_allclose(J, J.T)
        for j1 in range(1, 4):
            for j2 in range(1, 4):
                self.assertAlmostEqual(
                    J[j1 - 1, j2 - 1],
                    coupling.g_vector(self.modes, j1, j2).dot(chi))


    def test_three_ion_outer_pair(self):
        spec = coupling.GateSpec.for_string(3, 1, 3)
        analysis = coupling.crosstalk_analysis(self.modes, spec)
        self.assertEqual(analysis.null_basis.shape, (3, 2))
        np.testing.assert_allclose(
            analysis.crosstalk_matrix.T.dot(analysis.null_basis), 0.,
            atol=1e-12)
        self.assertAlmostEqual(analysis.independence, np.sqrt(27. / 28),
                               places=9)

        chi = coupling.target_chi(self.modes, spec, analysis=analysis)
        np.testing.assert_allclose(
            chi, [np.pi / 12, -np.pi / 6, np.pi / 12], atol=1e-9)
        J = coupling.coupling_matrix(self.modes, chi)
        self.assertAlmostEqual(J[0, 2], np.pi / 8)
        self.assertAlmostEqual(J[0, 1], 0.)
        self.assertAlmostEqual(J[1, 2], 0.)


    def test_tilt_and_composite_directions(self):
        # Tilt mode alone and COM + mode 1 in equal parts are insensitive
        spec = coupling.GateSpec.for_string(3, 1, 3)
        R = coupling.crosstalk_analysis(self.modes, spec).crosstalk_matrix
        for chi in ([0., 1., 0.], [1., 0., 1.]):
            np.testing.assert_allclose(R.T.dot(chi), 0., atol=1e-12)


    def test_no_insensitive_coupling(self):
        decoupled = modes.ModeSet(
            freqs=2 * np.pi * np.array([1e6, 2e6, 3e6]),
            lamb_dicke=0.1 * np.ones(3), participation=np.eye(3),
            source='custom')
        spec = coupling.GateSpec.for_string(3, 1, 3)
        self.assertEqual(
            coupling.crosstalk_analysis(decoupled, spec).independence, 0.)
        self.assertRaises(ValueError, coupling.target_chi, decoupled, spec)


    def test_no_neighbors(self):
        spec = coupling.GateSpec(1, 3, [])
        analysis = coupling.crosstalk_analysis(self.modes, spec)
        self.assertEqual(analysis.independence, 1.)
        np.testing.assert_array_equal(analysis.null_basis, np.eye(3))


class TestSinusoidalInsensitivity(unittest.TestCase):
    def test_cosine_identity(self):
        """C^(h).g^(j1,j2) counts h among j2-j1, j1+j2-1, 2N+1-j1-j2."""
        for num_ions in range(4, 17):
            mode_set = modes.sinusoidal_modes(num_ions)
            m = np.arange(1, num_ions + 1)
            for j1, j2 in coupling.all_pairs(num_ions):
                g = coupling.g_vector(mode_set, j1, j2)
                for h in range(num_ions + 1):
                    C = 2 * np.cos(h * (m - 1) * np.pi / num_ions)
                    expected = ((h == j2 - j1) + (h == j1 + j2 - 1) +
                                (h == 2 * num_ions + 1 - j1 - j2))
                    self.assertAlmostEqual(C.dot(g), expected, places=10)


    def test_analytic_vector(self):
        for num_ions in range(4, 17):
            mode_set = modes.sinusoidal_modes(num_ions)
            for t1 in range(2, num_ions - 1):
                for t2 in range(t1 + 1, num_ions):
                    C = coupling.analytic_insensitive_chi(num_ions, t1, t2)
                    self.assertAlmostEqual(
                        C.dot(coupling.g_vector(mode_set, t1, t2)), 1.,
                        places=10)
        self.assertRaises(ValueError, coupling.analytic_insensitive_chi,
                          6, 1, 4)
        self.assertRaises(ValueError, coupling.analytic_insensitive_chi,
                          6, 3, 6)


    def test_analytic_vector_nulls_crosstalk(self):
        mode_set = modes.sinusoidal_modes(12)
        spec = coupling.GateSpec.for_string(12, 4, 7)
        R = coupling.crosstalk_analysis(mode_set, spec).crosstalk_matrix
        C = coupling.analytic_insensitive_chi(12, 4, 7)
        self.assertLess(np.abs(R.T.dot(C)).max(), 1e-10)


    @unittest.skipIf(parallel.is_distributed(), 'Serial only')
    def test_twelve_ion_interior_pairs(self):
        independence = coupling.independence_map(modes.sinusoidal_modes(12))
        interior = [(t1, t2) for t1 in range(2, 11)
                    for t2 in range(t1 + 1, 12)]
        for t1, t2 in interior:
            self.assertGreater(independence[t1 - 1, t2 - 1], 0.1, (t1, t2))
        # Three edge pairs are feasible as well, though the closed form
        # excludes them
        self.assertEqual(coupling.feasible_pairs(independence),
                         sorted(interior + [(1, 2), (1, 12), (11, 12)]))


class TestIndependenceMap(unittest.TestCase):
    def test_three_ions(self):
        independence = coupling.independence_map(three_ion_modes())
        self.assertEqual(independence.shape, (3, 3))
        self.assertTrue(np.all(np.isnan(independence[np.tril_indices(3)])))
        self.assertGreater(independence[0, 2], 0.1)
        self.assertIn((1, 3), coupling.feasible_pairs(independence))
        self.assertRaises(ValueError, coupling.independence_map,
                          modes.sinusoidal_modes(2))


    def test_twelve_ion_harmonic(self):
        independence = coupling.independence_map(twelve_ion_modes())
        self.assertTrue(np.all((independence[~np.isnan(independence)] >= 0) &
                               (independence[~np.isnan(independence)] <=
                                1)))
        expected = set([(t1, t1 + 1) for t1 in range(1, 12)] +
                       [(t1, 13 - t1) for t1 in range(1, 7)])
        self.assertEqual(coupling.feasible_pairs(independence),
                         sorted(expected))


    def test_mirror_symmetry(self):
        for mode_set in [twelve_ion_modes(), modes.sinusoidal_modes(9)]:
            num_ions = mode_set.num_ions
            independence = coupling.independence_map(mode_set)
            for t1, t2 in coupling.all_pairs(num_ions):
                self.assertAlmostEqual(
                    independence[t1 - 1, t2 - 1],
                    independence[num_ions - t2, num_ions - t1], places=9)


    def test_rank_nullity(self):
        mode_set = twelve_ion_modes()
        for t1, t2 in [(1, 2), (1, 12), (4, 7), (6, 7), (2, 11)]:
            analysis = coupling.crosstalk_analysis(
                mode_set, coupling.GateSpec.for_string(12, t1, t2))
            rank = np.linalg.matrix_rank(analysis.crosstalk_matrix)
            self.assertEqual(analysis.range_basis.shape[1], rank)
            self.assertEqual(analysis.null_basis.shape[1] + rank, 12)
            np.testing.assert_allclose(
                analysis.null_basis.T.dot(analysis.range_basis), 0.,
                atol=1e-12)


    @unittest.skipIf(parallel.is_distributed(), 'Serial only')
    def test_null_space_chi_nulls_crosstalk(self):
        for num_ions in range(3, 21):
            mode_set = modes.harmonic_modes(modes.TrapConfig.from_species(
                'Yb171', num_ions, 2 * np.pi * 0.1e6, 2 * np.pi * 2e6))
            independence = coupling.independence_map(mode_set)
            for t1, t2 in coupling.feasible_pairs(independence):
                spec = coupling.GateSpec.for_string(num_ions, t1, t2)
                J = coupling.coupling_matrix(
                    mode_set, coupling.target_chi(mode_set, spec))
                self.assertAlmostEqual(J[t1 - 1, t2 - 1], np.pi / 8)
                for t, n in coupling.crosstalk_pairs(spec):
                    self.assertLess(abs(J[t - 1, n - 1]), 1e-10)


    def test_feasible_pairs(self):
        independence = np.full((4, 4), np.nan)
        independence[0, 1] = 0.5
        independence[0, 3] = 0.05
        independence[2, 3] = 0.11
        self.assertEqual(coupling.feasible_pairs(independence),
                         [(1, 2), (3, 4)])
        self.assertEqual(coupling.feasible_pairs(independence, 0.01),
                         [(1, 2), (1, 4), (3, 4)])


if __name__ == '__main__':
    unittest.main()
