"""Schmidt decomposition of bipartite pure states."""

from dataclasses import InitVar, dataclass

import numpy as np

from .errors import InvalidInput, NotNormalized, ShapeError
from .linalg import RANK_TOL, numerical_rank, svd

NORM_TOL = 1e-10


@dataclass(frozen=True)
class StateVector:
    """Pure state on a two-party system, amplitudes row-major over (a, b).

    Construction rejects states whose norm is off by more than 1e-10 unless
    ``normalize=True`` is passed, in which case the amplitudes are rescaled.
    """

    dims: tuple
    amplitudes: np.ndarray
    normalize: InitVar[bool] = False

    def __post_init__(self, normalize):
        dims = tuple(int(d) for d in self.dims)
        if len(dims) != 2 or min(dims) < 1:
            raise ShapeError(f"dims must be a pair of positive integers, got {self.dims}")
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.size != dims[0] * dims[1]:
            raise ShapeError(f"{amps.size} amplitudes do not fit dims {dims}")
        if not np.all(np.isfinite(amps)):
            raise InvalidInput("state has non-finite amplitudes")
        norm = float(np.linalg.norm(amps))
        if norm == 0:
            raise InvalidInput("state is the zero vector")
        if normalize:
            amps = amps / norm
        elif abs(norm - 1) > NORM_TOL:
            raise NotNormalized(f"state norm is {norm!r}, expected 1 within {NORM_TOL}")
        amps.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amplitudes", amps)

    def as_matrix(self) -> np.ndarray:
        return self.amplitudes.reshape(self.dims)

    def swapped(self) -> "StateVector":
        """Same state with the two subsystems exchanged."""
        return StateVector(self.dims[::-1], self.as_matrix().T)


@dataclass(frozen=True)
class SchmidtDecomposition:
    coefficients: np.ndarray
    left_vectors: np.ndarray
    right_vectors: np.ndarray
    rank: int
    weights: np.ndarray
    tol: float

    def reconstruct(self) -> np.ndarray:
        """Flat amplitude vector sum_i c_i u_i (x) v_i."""
        m = (self.left_vectors * self.coefficients) @ self.right_vectors.T
        return m.reshape(-1)


def _check_tol(tol):
    if not 0 < tol < 1:
        raise InvalidInput(f"tol must lie in (0, 1), got {tol}")


def schmidt_decompose(state: StateVector, tol: float = RANK_TOL) -> SchmidtDecomposition:
    """Schmidt coefficients and vectors of ``state``.

    Coefficients at or below ``tol * max`` are dropped. Weights are the
    squared coefficients, i.e. the spectrum of either reduced density matrix.
    """
    _check_tol(tol)
    res = svd(state.as_matrix())
    r = numerical_rank(res.singular_values, tol)
    coeffs = res.singular_values[:r].copy()
    left = res.u[:, :r].copy()
    right = res.v_dagger[:r, :].T.copy()
    return SchmidtDecomposition(coeffs, left, right, r, coeffs**2, tol)


def schmidt_rank(state: StateVector, tol: float = RANK_TOL) -> int:
    _check_tol(tol)
    return numerical_rank(svd(state.as_matrix()).singular_values, tol)


def is_entangled(state: StateVector, tol: float = RANK_TOL) -> bool:
    return schmidt_rank(state, tol) > 1


def product_state(u, v) -> StateVector:
    u = np.asarray(u, dtype=np.complex128).reshape(-1)
    v = np.asarray(v, dtype=np.complex128).reshape(-1)
    return StateVector((u.size, v.size), np.outer(u, v), normalize=True)


def bell_state() -> StateVector:
    """(|00> + |11>) / sqrt(2)."""
    return StateVector((2, 2), np.array([1, 0, 0, 1]) / np.sqrt(2))
