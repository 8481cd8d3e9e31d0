"""Design an insensitive gate and compare it with a COM-only gate."""
import numpy as np

import ionxtalk as ix


modes = ix.harmonic_modes(ix.TrapConfig.from_species(
    'Yb171', 3, 2 * np.pi * 0.7e6, 2 * np.pi * 2.506e6))
spec = ix.GateSpec.for_string(3, 1, 3, epsilon=0.2)
budget = ix.DesignBudget(
    max_rabi=2 * np.pi * 5e6, gate_time=750e-6, num_loops=3, segments=10,
    detuning_offset=-2 * np.pi * 15e3)
result = ix.design_linearized(ix.DesignProblem(modes, spec, budget))
ix.print_msg('%d loops, peak 2pi x %.1f kHz, leakage %.1e'
             % (len(result.schedule.loops), result.peak_rabi / (2e3 * np.pi),
                result.crosstalk_leakage))

report = ix.simulate_gate(result.schedule, modes, spec)
ix.print_msg('Fidelity at epsilon %.2f: %.10f'
             % (spec.epsilon, report.fidelity))

eps_grid = np.linspace(0., 0.25, 6)
insensitive = ix.epsilon_sweep(result.chi, modes, spec, eps_grid)
com = ix.epsilon_sweep(ix.single_mode_chi(modes, spec, 3), modes, spec,
                       eps_grid)
for eps, f_ins, f_com in zip(eps_grid, insensitive.fidelity, com.fidelity):
    ix.print_msg('epsilon %.2f: insensitive %.6f, COM %.6f'
                 % (eps, f_ins, f_com))
