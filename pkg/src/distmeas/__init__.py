"""distmeas: distant effects of unitary subsystem measurements.

Simulates exact (unitary premeasurement) measurements on one half of an
entangled bipartite pure state and verifies, numerically and at pinned
tolerances, how the other half responds: nonselective measurement leaves
it untouched, selective measurement steers it to the conditional state,
and measuring one member of a twin-observable pair applies the ideal
project-and-renormalize update of its twin, however intricate the actual
coupling is.
"""

__version__ = "0.1.0"

from .errors import (
    DimensionCapError,
    DistmeasError,
    NonHermitianError,
    NotAMeasurementError,
    NotOrthonormalError,
    ScenarioInputError,
    ShapeMismatchError,
    TwinGroupingError,
    ZeroProbabilityError,
)
from .linalg import (
    DIM_CAP,
    DimSpec,
    complete_to_unitary,
    eig_hermitian,
    frobenius_distance,
    make_rng,
    matrix_from_json,
    matrix_to_json,
    operator_norm_estimate,
    partial_trace,
    random_complex_matrix,
    random_hermitian,
    random_unitary,
    tensor,
)
from .measurement import (
    MeasurementModel,
    SubsystemMeasurementOutcome,
    build_ideal,
    build_intricate,
    luders_nonselective,
    luders_update,
    measure_subsystem,
    verify_calibration,
    verify_dynamical,
)
from .observables import (
    SpectralForm,
    TwinPair,
    build_twins,
    random_degenerate_observable,
    spectral_decompose,
    verify_twins,
)
from .reports import ResidualReport
from .runner import (
    ScenarioResult,
    SweepOutcome,
    generate_scenarios,
    run_payload,
    run_scenario,
    run_sweep,
)
from .scenario import Scenario, SweepRequest
from .states import (
    PROBABILITY_FLOOR,
    BipartiteState,
    DensityOperator,
    SchmidtDecomposition,
    born_probabilities,
    conditional_state,
    random_state,
    random_state_with_schmidt,
    reduced_state,
    schmidt,
    state_from_json,
    state_to_json,
)
from .theorems import (
    CHECK_ALIASES,
    CHECK_IDS,
    CheckReport,
    check_calibration_dynamics,
    check_certainty,
    check_distant_luders,
    check_mixture_decomposition,
    check_no_signaling,
    check_nonselective_twin_invariance,
    check_probability_consistency,
    check_selective_equals_conditional,
    check_under_trace_commutativity,
)

__all__ = [
    "__version__",
    "DIM_CAP",
    "PROBABILITY_FLOOR",
    "CHECK_ALIASES",
    "CHECK_IDS",
    "BipartiteState",
    "CheckReport",
    "DensityOperator",
    "DimSpec",
    "DimensionCapError",
    "DistmeasError",
    "MeasurementModel",
    "NonHermitianError",
    "NotAMeasurementError",
    "NotOrthonormalError",
    "ResidualReport",
    "ScenarioInputError",
    "Scenario",
    "ScenarioResult",
    "SchmidtDecomposition",
    "ShapeMismatchError",
    "SpectralForm",
    "SubsystemMeasurementOutcome",
    "SweepOutcome",
    "SweepRequest",
    "TwinGroupingError",
    "TwinPair",
    "ZeroProbabilityError",
    "born_probabilities",
    "build_ideal",
    "build_intricate",
    "build_twins",
    "check_calibration_dynamics",
    "check_certainty",
    "check_distant_luders",
    "check_mixture_decomposition",
    "check_no_signaling",
    "check_nonselective_twin_invariance",
    "check_probability_consistency",
    "check_selective_equals_conditional",
    "check_under_trace_commutativity",
    "complete_to_unitary",
    "conditional_state",
    "eig_hermitian",
    "frobenius_distance",
    "generate_scenarios",
    "luders_nonselective",
    "luders_update",
    "make_rng",
    "matrix_from_json",
    "matrix_to_json",
    "measure_subsystem",
    "operator_norm_estimate",
    "partial_trace",
    "random_complex_matrix",
    "random_degenerate_observable",
    "random_hermitian",
    "random_state",
    "random_state_with_schmidt",
    "random_unitary",
    "reduced_state",
    "run_payload",
    "run_scenario",
    "run_sweep",
    "schmidt",
    "spectral_decompose",
    "state_from_json",
    "state_to_json",
    "tensor",
    "verify_calibration",
    "verify_dynamical",
    "verify_twins",
]
