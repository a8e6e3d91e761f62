"""Truncated SVD with exact error bookkeeping, and left-canonical MPS factorisation."""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput, NotNormalized, ShapeError
from .linalg import SvdResult, numerical_rank, svd
from .tensor import as_tensor, tensordot


@dataclass(frozen=True)
class TruncationReport:
    kept_rank: int
    discarded_weight: float
    relative_error: float


def _check_options(max_rank, tol):
    if max_rank is not None and max_rank < 1:
        raise InvalidInput(f"max_rank must be >= 1, got {max_rank}")
    if tol is not None and not 0 < tol < 1:
        raise InvalidInput(f"tol must lie in (0, 1), got {tol}")


def choose_rank(s: np.ndarray, max_rank=None, tol=None) -> int:
    """Number of leading singular values to keep.

    ``tol`` drops trailing values for as long as the root of the dropped
    squared weight stays within ``tol * ||A||_F``; ``max_rank`` caps the
    result. With both given the smaller rank wins.
    """
    k = s.size
    if tol is not None:
        sq = s**2
        budget = (tol * math.sqrt(float(np.sum(sq)))) ** 2
        tail = np.cumsum(sq[::-1])
        # tail[j] is the weight of the last j+1 values
        k = s.size - int(np.count_nonzero(tail <= budget))
    if max_rank is not None:
        k = min(k, max_rank)
    return k


def _cut(res: SvdResult, k: int) -> tuple:
    s = res.singular_values
    total = float(np.sum(s**2))
    dropped = float(np.sum(s[k:] ** 2))
    rel = math.sqrt(dropped / total) if total > 0 else 0.0
    kept = SvdResult(res.u[:, :k].copy(), s[:k].copy(), res.v_dagger[:k, :].copy())
    return kept, TruncationReport(k, dropped, rel)


def truncated_svd(a, max_rank=None, tol=None) -> tuple:
    """Leading singular triplets of ``a`` plus a :class:`TruncationReport`.

    At least one of ``max_rank`` and ``tol`` is required.
    """
    if max_rank is None and tol is None:
        raise InvalidInput("give max_rank, tol, or both")
    _check_options(max_rank, tol)
    res = svd(a)
    return _cut(res, choose_rank(res.singular_values, max_rank, tol))


@dataclass(frozen=True)
class MatrixProductState:
    """Open-boundary MPS; core ``k`` has shape (left bond, physical, right bond)."""

    site_dims: tuple
    cores: tuple

    @property
    def bond_dims(self) -> tuple:
        return tuple(c.shape[2] for c in self.cores[:-1])

    def validate(self) -> None:
        if len(self.cores) != len(self.site_dims) or not self.cores:
            raise ShapeError(f"{len(self.cores)} cores for {len(self.site_dims)} sites")
        left = 1
        for k, (core, d) in enumerate(zip(self.cores, self.site_dims)):
            if core.ndim != 3:
                raise ShapeError(f"core {k} has rank {core.ndim}, expected 3")
            if core.shape[0] != left or core.shape[1] != d:
                raise ShapeError(f"core {k} shape {core.shape} does not continue bond {left}, site dim {d}")
            left = core.shape[2]
        if left != 1:
            raise ShapeError(f"last core has right bond {left}, expected 1")


def mps_from_state(amplitudes, max_bond=None, tol=None) -> tuple:
    """Left-to-right sequential SVD of a state tensor.

    Returns the MPS and one :class:`TruncationReport` per cut. Singular values
    below the shared relative rank threshold are always discarded, so an
    untruncated bond dimension equals the Schmidt rank of its cut.
    """
    _check_options(max_bond, tol)
    psi = as_tensor(amplitudes)
    if psi.ndim < 2:
        raise ShapeError(f"need a tensor of rank >= 2, got rank {psi.ndim}")
    norm = float(np.linalg.norm(psi))
    if norm == 0:
        raise InvalidInput("state tensor is zero")
    if max_bond is None and tol is None and abs(norm - 1) > 1e-10:
        raise NotNormalized(f"state norm is {norm!r}, expected 1 when not truncating")

    dims = psi.shape
    cores, reports = [], []
    bond = 1
    rest = psi.reshape(1, -1)
    for d in dims[:-1]:
        res = svd(rest.reshape(bond * d, -1))
        s = res.singular_values
        k = min(choose_rank(s, max_bond, tol), numerical_rank(s))
        kept, report = _cut(res, max(k, 1))
        reports.append(report)
        cores.append(kept.u.reshape(bond, d, report.kept_rank))
        rest = kept.singular_values[:, None] * kept.v_dagger
        bond = report.kept_rank
    cores.append(rest.reshape(bond, dims[-1], 1))
    return MatrixProductState(tuple(dims), tuple(cores)), reports


def mps_to_state(mps: MatrixProductState) -> np.ndarray:
    """Contract the cores in order; the result has shape ``site_dims``."""
    mps.validate()
    out = mps.cores[0]
    for core in mps.cores[1:]:
        out = tensordot(out, core, 1)
    return out.reshape(mps.site_dims)
