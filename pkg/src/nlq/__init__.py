"""Nonlinear single-qubit dynamics applied to Boolean satisfiability.

Designed velocity fields on the Bloch sphere are turned into state-dependent
Hamiltonians; an amplitude-encoding circuit maps a CNF formula's solution
count into an ancilla qubit; three discrimination gates then answer
unique-SAT, satisfiability, and exact counting questions, all validated
against numerical integration and a brute-force oracle.
"""

from .bloch import (
    BlochVector,
    EncodedState,
    SphericalPoint,
    bloch_distance,
    bloch_from_statevector,
    bloch_to_spherical,
    encode_state,
    rotate_y,
    spherical_to_bloch,
    statevector_from_bloch,
    theta_of_s,
)
from .encoder import (
    PostselectionResult,
    postselection_probability,
    run_encoding_circuit,
    sample_preparation,
)
from .errors import (
    DimacsParseError,
    GenerationError,
    PromiseError,
    ResourceLimitError,
    SolverInternalError,
    TangencyError,
    UnsupportedModelError,
)
from .fields import (
    HamiltonianCoefficients,
    TangentField,
    UField,
    check_div_curl_identity,
    curl_s,
    diagnostics_csv,
    div_s,
    energy,
    gauge_invariance_check,
    grid_diagnostics,
    hamiltonian_from_u,
    tangency_residuals,
    u_from_v,
    v_from_u,
    validation_grid,
)
from .integrator import (
    Trajectory,
    monotonicity_violation_demo,
    propagate,
    propagate_wavefunction,
)
from .models import (
    GatePlan,
    GateTime,
    LinearModel,
    MorseSmaleModel,
    PitchforkModel,
    TorsionModel,
    elliptic_K,
    elliptic_K_from_complement,
    elliptic_K_imag,
    morse_smale_gate_time,
    morse_smale_height,
    pitchfork_gate_time,
    pitchfork_height,
    torsion_choose_B,
    torsion_gate_time,
    torsion_trajectory_xy,
)
from .sat import (
    CnfFormula,
    count_solutions,
    emit_dimacs,
    evaluate,
    generate_promise_instance,
    generate_random_3cnf,
    parse_dimacs,
    truth_table,
)
from .solvers import (
    CountTimeBudget,
    ReadoutPolicy,
    SolveReport,
    count_sat,
    readout,
    solve_decision,
    solve_unique_sat,
    total_time_report,
)

__version__ = "0.1.0"
