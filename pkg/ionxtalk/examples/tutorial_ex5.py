"""Which pairs of a twelve-ion string admit an insensitive gate.

Pairs are spread over MPI workers, e.g. ``mpiexec -n 4 python
tutorial_ex5.py``.
"""
import numpy as np

import ionxtalk as ix
from ionxtalk import parallel


modes = ix.harmonic_modes(ix.TrapConfig.from_species(
    'Yb171', 12, 2 * np.pi * 0.5e6, 2 * np.pi * 3e6))
budget = ix.DesignBudget(
    max_rabi=2 * np.pi * 20e6, gate_time=500e-6, num_loops=9, segments=26)
entries = ix.feasibility_report(modes, budget, threshold=0.1)
if parallel.is_rank_zero():
    for entry in entries:
        if entry.is_feasible:
            ix.print_msg('(%2d, %2d): independence %.3f, peak 2pi x %.3f MHz'
                         % (entry.t1, entry.t2, entry.independence,
                            entry.peak_rabi / (2e6 * np.pi)))
    ix.print_msg('%d of %d pairs feasible'
                 % (sum(e.is_feasible for e in entries), len(entries)))
