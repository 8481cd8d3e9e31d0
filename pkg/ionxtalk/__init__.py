"""This file makes the ionxtalk directory a python package."""
from ._version import __version__


# The public functions and types of every module are imported below, so
# that e.g. "ionxtalk.harmonic_modes(config)" works without naming the
# module.  The library is small and the names do not collide.

from .modes import (
    TrapConfig, ModeSet,
    length_scale, dimensionless_positions, equilibrium_positions,
    min_spacing, transverse_coupling_array, lamb_dicke_params,
    harmonic_modes, sinusoidal_participation, extended_participation,
    sinusoidal_modes
)

from .coupling import (
    GateSpec, CouplingAnalysis,
    crosstalk_pairs, g_vector, coupling_matrix, crosstalk_analysis,
    target_chi, all_pairs, independence_map, feasible_pairs,
    analytic_insensitive_chi
)

from .pulses import (
    PulseLoop, PulseSchedule,
    segment_edges, closure_array, closure_residual, closure_basis,
    phase_matrix, chi_loop, accumulate_chi, trajectory,
    save_schedule, load_schedule
)

from .design import (
    DesignBudget, DesignProblem, DesignResult, FeasibilityEntry,
    base_loop, loop_basis, design_linearized, design_quadratic,
    single_mode_chi, crosstalk_leakage, feasibility_report,
    save_design_report
)

from .simulate import (
    IlluminationProfile, GateReport, EpsilonSweep, OracleResult,
    rotation_angles, xx_unitary, qubit_unitary, reduced_qubit_unitary,
    fidelity, crosstalk_unitary, decompose_unitary, parity_scan,
    parity_amplitude, analytic_parity_amplitude, bell_fidelity, negativity,
    epsilon_sweep, simulate_gate, full_hamiltonian_oracle
)

from .config import RunConfig, to_angular, load_config, build_modes

from . import parallel

from .util import (
    ConvergenceError, UnstableStringError, InsufficientSegmentsError,
    ClosureError, DesignError, InfeasibleDesignError, PowerBudgetError,
    OracleError, ConfigError,
    set_verbosity, print_msg,
    eigh, column_space_split, save_csv, load_csv
)

from ionxtalk import tests
