"""Single-loop quadratic design for the center pair of four ions."""
import numpy as np

import ionxtalk as ix
from ionxtalk import parallel


modes = ix.harmonic_modes(ix.TrapConfig.from_species(
    'Yb171', 4, 2 * np.pi * 0.5e6, 2 * np.pi * 3e6))
spec = ix.GateSpec.for_string(4, 2, 3)
budget = ix.DesignBudget(
    max_rabi=2 * np.pi * 10e6, gate_time=100e-6, num_loops=1, segments=20)
result = ix.design_quadratic(
    ix.DesignProblem(modes, spec, budget), restarts=8, seed=0, verbosity=1)
ix.print_msg('Peak 2pi x %.3f MHz, leakage %.1e'
             % (result.peak_rabi / (2e6 * np.pi), result.crosstalk_leakage))
parallel.call_from_rank_zero(
    ix.save_schedule, result.schedule, 'four_ion_schedule.ini')
