"""Entanglement-cost lower bound and negativity checks for the Tiles bound entangled state."""

__version__ = "0.1.0"

from .config import DEFAULT_CONFIG, ToleranceConfig  # noqa: E402
from .cost import (  # noqa: E402
    CostBoundReport,
    ec_lower_bound,
    entropy_floor_check,
    induction_inequality_check,
    run_theorem1_pipeline,
)
from .errors import (  # noqa: E402
    BoundentError,
    ConsistencyError,
    ContractViolation,
    ConvergenceError,
    InvalidEstimateError,
    SizeLimitError,
)
from .linalg import EigenDecomposition, hermitian_eig, kron, trace_norm_hermitian  # noqa: E402
from .negativity import NegativityReport, additivity_check, log_negativity, theorem2_ceiling  # noqa: E402
from .seesaw import SeesawOutcome, grid_oracle, multicopy_overlap, sample_product_state, seesaw_maximize  # noqa: E402
from .tensor import (  # noqa: E402
    HermitianOperator,
    TensorSpace,
    contract_party_A,
    partial_transpose,
    permute_factors,
)
from .tiles import (  # noqa: E402
    ProductState,
    SeparabilityCertificate,
    complement_certificate,
    rho_b,
    singlet,
    tiles_projector,
    tiles_upb,
)
