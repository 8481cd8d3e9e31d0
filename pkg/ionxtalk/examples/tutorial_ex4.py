"""Check a composite gate against the spin-motion Hamiltonian."""
import numpy as np

import ionxtalk as ix


modes = ix.harmonic_modes(ix.TrapConfig.from_species(
    'Yb171', 3, 2 * np.pi * 0.7e6, 2 * np.pi * 2.506e6))
spec = ix.GateSpec.for_string(3, 1, 3)
budget = ix.DesignBudget(
    max_rabi=2 * np.pi * 5e6, gate_time=100e-6, num_loops=2, segments=10,
    detuning_offset=-2 * np.pi * 15e3, sidebands=[1, 3])
result = ix.design_linearized(ix.DesignProblem(
    modes, spec, budget, chi_direction=[1., 0., 1.]))

oracle = ix.full_hamiltonian_oracle(
    result.schedule, modes,
    ix.IlluminationProfile.for_spec(3, spec, epsilon=0.), verbosity=1)
ix.print_msg('Discrepancy %.2e, spin-motion entropy %.2e bits'
             % (oracle.discrepancy, oracle.entropy))
for t, entropies in zip(oracle.snapshot_times, oracle.snapshot_entropies):
    ix.print_msg('t = %6.1f us: ion entropies %s'
                 % (t * 1e6, np.round(entropies, 4)))
