"""Dense complex linear algebra written from Jacobi rotations.

Matrices are plain ``numpy`` complex128 arrays. Nothing here calls into
LAPACK: the SVD is a one-sided Jacobi iteration, the Hermitian eigensolver a
two-sided (classical) Jacobi iteration. Both visit column pairs in a
round-robin order so that each round consists of disjoint rotations that can
be applied as whole-array operations.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConvergenceFailure, InvalidInput, NotPositiveSemidefinite, ShapeError

JACOBI_TOL = 1e-14
MAX_SWEEPS = 60
RANK_TOL = 1e-12
HERMITIAN_TOL = 1e-10
PSD_TOL = 1e-10
# off-diagonals this small are treated as zero; inputs are scaled to O(1)
# first, so this only guards against denormal arithmetic
_OFFDIAG_FLOOR = 1e-280
# columns shorter than this (scaled units) are flushed to exact zero, so any two
# surviving columns have a Gram threshold above the floor
_NULL_COLUMN = 1e-130


@dataclass(frozen=True)
class SvdResult:
    """Thin SVD ``a = u @ diag(singular_values) @ v_dagger``."""

    u: np.ndarray
    singular_values: np.ndarray
    v_dagger: np.ndarray

    @property
    def rank(self) -> int:
        return numerical_rank(self.singular_values)

    def reconstruct(self) -> np.ndarray:
        return (self.u * self.singular_values) @ self.v_dagger


@dataclass(frozen=True)
class EigResult:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(a) -> np.ndarray:
    """Validate ``a`` as a finite 2-D complex matrix and return a complex128 copy."""
    m = np.array(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ShapeError(f"expected a matrix, got array of rank {m.ndim}")
    if m.shape[0] < 1 or m.shape[1] < 1:
        raise ShapeError(f"matrix dimensions must be positive, got {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InvalidInput("matrix has non-finite entries")
    return m


def _as_square(a) -> np.ndarray:
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise ShapeError(f"expected a square matrix, got {m.shape[0]}x{m.shape[1]}")
    return m


def numerical_rank(singular_values, tol: float = RANK_TOL) -> int:
    """Count singular values above ``tol * max``; zero for an all-zero spectrum."""
    s = np.asarray(singular_values, dtype=float)
    if s.size == 0:
        return 0
    smax = s.max()
    if smax <= 0:
        return 0
    return int(np.count_nonzero(s > tol * smax))


@lru_cache(maxsize=None)
def _round_robin(n: int) -> tuple:
    """Pairings of ``range(n)`` in which every pair occurs exactly once per sweep.

    Circle method: returns ``n - 1`` (or ``n`` when odd) rounds of disjoint
    ``(p, q)`` index arrays with ``p < q``.
    """
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = []
        for i in range(m // 2):
            a, b = players[i], players[m - 1 - i]
            if a < n and b < n:
                pairs.append((min(a, b), max(a, b)))
        pairs.sort()
        p = np.array([x for x, _ in pairs], dtype=np.intp)
        q = np.array([y for _, y in pairs], dtype=np.intp)
        rounds.append((p, q))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(rounds)


def _pow2_scale(a: np.ndarray):
    """Return ``a`` scaled by an exact power of two so that max |a_ij| is in [0.5, 1)."""
    big = float(np.max(np.abs(a)))
    if big == 0:
        return a, 1.0
    e = math.frexp(big)[1]
    return a * math.ldexp(1.0, -e), math.ldexp(1.0, e)


def _rotation(alpha, beta, g):
    """Cosine and sine of the real rotation zeroing a 2x2 Hermitian off-diagonal ``g``.

    ``alpha``/``beta`` are the diagonal entries, ``g`` the modulus of the
    off-diagonal. Uses the smaller root so that ``|t| <= 1``.
    """
    zeta = (beta - alpha) / (2.0 * g)
    sign = np.where(zeta >= 0, 1.0, -1.0)
    t = sign / (np.abs(zeta) + np.hypot(1.0, zeta))
    c = 1.0 / np.hypot(1.0, t)
    return c, c * t, t


def _one_sided_jacobi(w: np.ndarray):
    """Orthogonalise the columns of ``w`` (m >= n) in place; return the accumulated V."""
    n = w.shape[1]
    v = np.eye(n, dtype=np.complex128)
    if n == 1:
        return v
    rounds = _round_robin(n)
    for _ in range(MAX_SWEEPS):
        rotated = False
        for p, q in rounds:
            wp, wq = w[:, p], w[:, q]
            alpha = np.einsum("ij,ij->j", wp.real, wp.real) + np.einsum("ij,ij->j", wp.imag, wp.imag)
            beta = np.einsum("ij,ij->j", wq.real, wq.real) + np.einsum("ij,ij->j", wq.imag, wq.imag)
            gamma = np.sum(wp.conj() * wq, axis=0)
            g = np.abs(gamma)
            active = (g > JACOBI_TOL * np.sqrt(alpha * beta)) & (g > _OFFDIAG_FLOOR)
            if not active.any():
                continue
            rotated = True
            p, q = p[active], q[active]
            alpha, beta, gamma, g = alpha[active], beta[active], gamma[active], g[active]
            c, s, _ = _rotation(alpha, beta, g)
            phase = (gamma / g).conj()
            for mat in (w, v):
                xp = mat[:, p]
                xq = mat[:, q] * phase
                mat[:, p] = c * xp - s * xq
                mat[:, q] = s * xp + c * xq
        if not rotated:
            return v
    raise ConvergenceFailure(f"one-sided Jacobi did not converge in {MAX_SWEEPS} sweeps")


def _complete_columns(u: np.ndarray, missing: np.ndarray) -> None:
    """Fill columns ``missing`` of ``u`` with unit vectors orthogonal to every other column."""
    m = u.shape[0]
    have = np.ones(u.shape[1], dtype=bool)
    have[missing] = False
    basis = [u[:, j] for j in np.flatnonzero(have)]
    k = 0
    for j in missing:
        while True:
            e = np.zeros(m, dtype=np.complex128)
            e[k] = 1.0
            k += 1
            x = e
            for _ in range(2):
                for b in basis:
                    x = x - b * np.vdot(b, x)
            nrm = np.linalg.norm(x)
            if nrm > 0.5:
                x = x / nrm
                break
        u[:, j] = x
        basis.append(x)


def _fix_phases(u: np.ndarray, vh: np.ndarray | None = None) -> None:
    """Rotate each column of ``u`` so its largest-magnitude entry is real and >= 0.

    The compensating phase is applied to the matching row of ``vh``.
    """
    if u.shape[1] == 0:
        return
    idx = np.argmax(np.abs(u), axis=0)
    cols = np.arange(u.shape[1])
    pivot = u[idx, cols]
    mag = np.abs(pivot)
    phase = np.where(mag > 0, pivot / np.where(mag > 0, mag, 1.0), 1.0)
    u *= phase.conj()
    u[idx, cols] = mag
    if vh is not None:
        vh *= phase[:, None]


def svd(a) -> SvdResult:
    """Thin singular value decomposition by one-sided Jacobi.

    Returns ``u`` (m x r), descending ``singular_values`` (r) and ``v_dagger``
    (r x n) with r = min(m, n). Columns of ``u`` are phase-fixed so that the
    largest-magnitude entry of each is real and non-negative.
    """
    a, scale = _pow2_scale(as_matrix(a))
    m, n = a.shape
    wide = m < n
    w = a.conj().T.copy() if wide else a.copy()
    v = _one_sided_jacobi(w)

    s = np.sqrt(np.einsum("ij,ij->j", w.real, w.real) + np.einsum("ij,ij->j", w.imag, w.imag))
    order = np.argsort(-s, kind="stable")
    s = s[order]
    w = w[:, order]
    v = v[:, order]

    nz = s > _NULL_COLUMN
    s = np.where(nz, s, 0.0)
    left = np.zeros_like(w)
    left[:, nz] = w[:, nz] / s[nz]
    if not nz.all():
        _complete_columns(left, np.flatnonzero(~nz))

    if wide:
        # a^H = left diag(s) v^H  =>  a = v diag(s) left^H
        u, vh = v, left.conj().T
    else:
        u, vh = left, v.conj().T
    u = np.ascontiguousarray(u)
    vh = np.ascontiguousarray(vh)
    _fix_phases(u, vh)
    return SvdResult(u, s * scale, vh)


def singular_values(a) -> np.ndarray:
    return svd(a).singular_values


def is_hermitian(a: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    return a.shape[0] == a.shape[1] and float(np.max(np.abs(a - a.conj().T))) <= tol


def hermitian_eig(a) -> EigResult:
    """Eigendecomposition of a Hermitian matrix by cyclic two-sided Jacobi.

    Eigenvalues come back non-increasing; eigenvectors are the columns of
    ``eigenvectors``, phase-fixed like the SVD's left vectors.
    """
    a = _as_square(a)
    if not is_hermitian(a):
        raise InvalidInput(
            f"matrix is not Hermitian: max |A - A^H| = {np.max(np.abs(a - a.conj().T)):.3g}"
        )
    h, scale = _pow2_scale((a + a.conj().T) / 2)
    n = h.shape[0]
    v = np.eye(n, dtype=np.complex128)
    if n > 1:
        _two_sided_jacobi(h, v)
    lam = h.diagonal().real * scale
    order = np.argsort(-lam, kind="stable")
    lam = lam[order]
    v = np.ascontiguousarray(v[:, order])
    _fix_phases(v)
    return EigResult(lam, v)


def _two_sided_jacobi(h: np.ndarray, v: np.ndarray) -> None:
    n = h.shape[0]
    rounds = _round_robin(n)
    for _ in range(MAX_SWEEPS):
        rotated = False
        for p, q in rounds:
            hpq = h[p, q]
            g = np.abs(hpq)
            app, aqq = h[p, p].real, h[q, q].real
            active = (g > JACOBI_TOL * np.sqrt(np.abs(app * aqq))) & (g > _OFFDIAG_FLOOR)
            if not active.any():
                continue
            rotated = True
            p, q = p[active], q[active]
            hpq, g, app, aqq = hpq[active], g[active], app[active], aqq[active]
            c, s, t = _rotation(app, aqq, g)
            phase = (hpq / g).conj()
            # columns: H <- H J, with J[p,p]=c, J[q,p]=-s*phase, J[p,q]=s, J[q,q]=c*phase
            for mat in (h, v):
                xp = mat[:, p]
                xq = mat[:, q] * phase
                mat[:, p] = c * xp - s * xq
                mat[:, q] = s * xp + c * xq
            # rows: H <- J^H H
            xp = h[p, :]
            xq = h[q, :] * phase.conj()[:, None]
            h[p, :] = c[:, None] * xp - s[:, None] * xq
            h[q, :] = s[:, None] * xp + c[:, None] * xq
            h[p, q] = 0
            h[q, p] = 0
            h[p, p] = app - t * g
            h[q, q] = aqq + t * g
        if not rotated:
            return
    raise ConvergenceFailure(f"Jacobi eigensolver did not converge in {MAX_SWEEPS} sweeps")


def _psd_floor(lam: np.ndarray) -> float:
    return -PSD_TOL * max(float(lam[0]) if lam.size else 0.0, 1.0)


def matrix_sqrt_psd(a) -> np.ndarray:
    """Principal square root of a Hermitian PSD matrix.

    Eigenvalues down to ``-1e-10 * max(lambda_max, 1)`` are treated as roundoff
    and clamped to zero; anything more negative raises.
    """
    eig = hermitian_eig(a)
    lam = eig.eigenvalues
    if lam[-1] < _psd_floor(lam):
        raise NotPositiveSemidefinite(f"smallest eigenvalue {lam[-1]!r} is negative")
    root = np.sqrt(np.clip(lam, 0.0, None))
    vecs = eig.eigenvectors
    b = (vecs * root) @ vecs.conj().T
    return (b + b.conj().T) / 2


def trace(a) -> complex:
    """Sum of the diagonal entries."""
    a = _as_square(a)
    return complex(np.sum(np.diagonal(a)))


def trace_via_singular_values(a) -> float:
    """Trace as the sum of singular values.

    The identity only holds for Hermitian positive semidefinite matrices, so
    anything else is rejected with :class:`NotPositiveSemidefinite`.
    """
    a = _as_square(a)
    if not is_hermitian(a):
        raise NotPositiveSemidefinite("matrix is not Hermitian, singular values do not sum to the trace")
    lam = hermitian_eig(a).eigenvalues
    if lam[-1] < _psd_floor(lam):
        raise NotPositiveSemidefinite(f"smallest eigenvalue {lam[-1]!r} is negative")
    return float(np.sum(svd(a).singular_values))


def frobenius_norm(a) -> float:
    """sqrt(sum |a_ij|^2) straight from the entries."""
    a = as_matrix(a)
    return float(np.sqrt(np.sum(a.real**2 + a.imag**2)))


def frobenius_norm_via_svd(a) -> float:
    s = svd(a).singular_values
    return float(np.sqrt(np.sum(s**2)))
