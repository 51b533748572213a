"""Unit-vector and projective formulations of quantum mechanics, with
manually normalized (general linear) time evolution."""

from .composite import (
    DensityMatrix,
    QubitRegister,
    bell_state,
    density_from_state,
    embed_local,
    partial_trace,
    tensor_ops,
    tensor_states,
)
from .errors import (
    DimensionMismatchError,
    InvalidInputError,
    NonUnitaryOperatorError,
    NumericContractError,
    QAxiomsError,
    SingularOperatorError,
    ZeroProbabilityError,
    ZeroStateError,
)
from .evolution import (
    EvolutionOperator,
    TheoremReport,
    evolve_linear_B,
    evolve_manual_norm_A,
    evolve_unitary,
    linearity_defect,
    theorem1_lab,
)
from .linalg_core import (
    OperatorClass,
    OperatorTag,
    adjoint,
    apply,
    classify_operator,
    hermitian_eigendecomposition,
    inner_product,
    matmul,
    norm,
    polarization_reconstruct,
)
from .measurement import (
    MeasurementRecord,
    Observable,
    OutcomeDistribution,
    born_probabilities_A,
    born_probabilities_B,
    collapse,
    make_observable,
    sample_measurement,
)
from .signaling import (
    NoCommReport,
    SignalingConfig,
    SignalingReport,
    alice_gate,
    error_rate_sweep,
    no_communication_check,
    run_protocol,
)
from .states import (
    CanonicalRay,
    RawState,
    UnitState,
    canonicalize,
    equivalent_A,
    equivalent_B,
    normalize,
)

__version__ = "0.1.0"
