"""Modes of a three-ion string and which pairs can be protected."""
import numpy as np

import ionxtalk as ix


trap = ix.TrapConfig.from_species(
    'Yb171', 3, 2 * np.pi * 0.7e6, 2 * np.pi * 2.506e6)
modes = ix.harmonic_modes(trap)
for m, (freq, eta) in enumerate(zip(modes.freqs, modes.lamb_dicke), start=1):
    ix.print_msg('Mode %d: 2pi x %.4f MHz, eta %.4f, b = %s'
                 % (m, freq / (2e6 * np.pi), eta,
                    np.round(modes.participation[m - 1], 4)))
ix.print_msg('Min spacing %.3f um' % (ix.min_spacing(trap) * 1e6))

independence = ix.independence_map(modes)
for t1, t2 in ix.all_pairs(modes.num_ions):
    ix.print_msg('Pair (%d, %d): independence %.4f'
                 % (t1, t2, independence[t1 - 1, t2 - 1]))

spec = ix.GateSpec.for_string(3, 1, 3)
chi = ix.target_chi(modes, spec)
ix.print_msg('Minimum-norm insensitive phases / pi: %s' % (chi / np.pi))
