"""Analysis and bi-stochastic dilation of stochastic matrices."""

from .coarse_grain import (
    CoarseGrainDilation,
    Partition,
    RightInverse,
    coarse_grain,
    product_right_inverse,
    projection_matrix,
    uniform_dilation,
    uniform_right_inverse,
)
from .core import (
    EXACT,
    FLOAT,
    FixedPointResult,
    ProbVec,
    StochMatrix,
    StochasticityReport,
    apply,
    fixed_point,
    is_irreducible,
    iterate,
    matrix_from_json,
    matrix_to_json,
    validate,
    vector_from_json,
    vector_to_json,
)
from .entropy import (
    BirkhoffDecomposition,
    BoundaryPoint,
    EntropyLedger,
    birkhoff_decompose,
    entropy_ledger,
    in_decreasing_region,
    region_boundary_scan,
    shannon_entropy,
)
from .env_dilation import (
    EnvDilation,
    KrausSet,
    UnitaryDilation,
    as_coarse_graining,
    extract_dilated,
    flat_index,
    kraus_from_stochastic,
    noisy_dilation,
    stochastic_from_kraus,
    unistochastic_dilation,
    unistochastic_env_dilation,
    verify_env_dilation,
)
from .matrices import maxwell_demon, maxwell_demon_dilation, two_state
from .sinkhorn import SinkhornResult, sinkhorn_2x2, sinkhorn_knopp

__version__ = "0.1.0"
