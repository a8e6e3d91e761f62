"""SVD-centred numerics for quantum states and small tensor networks."""

from .errors import (
    ConvergenceFailure,
    FormatError,
    InvalidInput,
    IoError,
    NotNormalized,
    NotPositiveSemidefinite,
    ParseError,
    QsvdError,
    ShapeError,
)
from .io import load, random_state, save
from .linalg import (
    EigResult,
    SvdResult,
    frobenius_norm,
    frobenius_norm_via_svd,
    hermitian_eig,
    matrix_sqrt_psd,
    svd,
    trace,
    trace_via_singular_values,
)
from .metrics import (
    DensityMatrix,
    fidelity,
    fidelity_pure,
    spectral_diff_report,
    trace_distance,
    trace_distance_spectral_diff,
)
from .schmidt import SchmidtDecomposition, StateVector, is_entangled, schmidt_decompose, schmidt_rank
from .tensor import ContractionSpec, contract, matricize, parse_contraction, reshape, tensordot
from .truncation import MatrixProductState, TruncationReport, mps_from_state, mps_to_state, truncated_svd

__version__ = "0.1.0"
