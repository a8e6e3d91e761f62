"""Trace distance and fidelity between density matrices.

Trace distance follows the unhalved convention ``Tr|rho - sigma|`` (range
[0, 2]); pass ``halved=True`` for the textbook value in [0, 1]. Fidelity is
the root (not squared) Uhlmann fidelity ``Tr sqrt(sqrt(rho) sigma sqrt(rho))``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceFailure, InvalidInput, NotNormalized, ShapeError
from .linalg import (
    HERMITIAN_TOL,
    PSD_TOL,
    as_matrix,
    hermitian_eig,
    matrix_sqrt_psd,
    svd,
    trace,
)

TRACE_TOL = 1e-10
FIDELITY_OVERSHOOT = 1e-9


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace matrix (checked on construction)."""

    matrix: np.ndarray

    def __post_init__(self):
        m = as_matrix(self.matrix)
        if m.shape[0] != m.shape[1]:
            raise ShapeError(f"density matrix must be square, got {m.shape}")
        herm = float(np.max(np.abs(m - m.conj().T)))
        if herm > HERMITIAN_TOL:
            raise InvalidInput(f"density matrix is not Hermitian: max |rho - rho^H| = {herm:.3g}")
        m = (m + m.conj().T) / 2
        lam_min = hermitian_eig(m).eigenvalues[-1]
        if lam_min < -PSD_TOL:
            raise InvalidInput(f"density matrix is not PSD: smallest eigenvalue {lam_min!r}")
        tr = trace(m)
        if abs(tr - 1) > TRACE_TOL:
            raise InvalidInput(f"density matrix trace is {tr.real!r}, expected 1")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def from_pure(cls, psi) -> "DensityMatrix":
        psi = np.asarray(psi, dtype=np.complex128).reshape(-1)
        return cls(np.outer(psi, psi.conj()))


def _pair(rho: DensityMatrix, sigma: DensityMatrix):
    if rho.dim != sigma.dim:
        raise ShapeError(f"dimension mismatch: {rho.dim} vs {sigma.dim}")
    return rho.matrix, sigma.matrix


def trace_distance(rho: DensityMatrix, sigma: DensityMatrix, halved: bool = False) -> float:
    """Sum of the singular values of ``rho - sigma`` (halved on request)."""
    a, b = _pair(rho, sigma)
    d = float(np.sum(svd(a - b).singular_values))
    return d / 2 if halved else d


def trace_distance_spectral_diff(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Sum of |s_i(rho) - s_i(sigma)| over the two sorted singular-value lists.

    Agrees with :func:`trace_distance` only when the states commute with
    aligned eigenbases; in general it is a lower bound.
    """
    a, b = _pair(rho, sigma)
    return float(np.sum(np.abs(svd(a).singular_values - svd(b).singular_values)))


@dataclass(frozen=True)
class SpectralDiffReport:
    trace_distance: float
    spectral_diff: float

    @property
    def discrepancy(self) -> float:
        return abs(self.trace_distance - self.spectral_diff)


def spectral_diff_report(rho: DensityMatrix, sigma: DensityMatrix) -> SpectralDiffReport:
    return SpectralDiffReport(trace_distance(rho, sigma), trace_distance_spectral_diff(rho, sigma))


def fidelity(rho: DensityMatrix, sigma: DensityMatrix, squared: bool = False) -> float:
    """Uhlmann fidelity ``Tr sqrt(sqrt(rho) sigma sqrt(rho))``.

    ``sqrt(rho) sigma sqrt(rho)`` equals ``X^H X`` with ``X = sqrt(sigma) sqrt(rho)``,
    so its root has trace equal to the sum of the singular values of ``X``.
    That route avoids taking square roots of roundoff-level eigenvalues, which
    would otherwise cost ~1e-8 per null direction.
    """
    a, b = _pair(rho, sigma)
    x = matrix_sqrt_psd(b) @ matrix_sqrt_psd(a)
    f = float(np.sum(svd(x).singular_values))
    if f > 1 + FIDELITY_OVERSHOOT:
        raise ConvergenceFailure(f"fidelity {f!r} exceeds 1 beyond roundoff")
    f = min(max(f, 0.0), 1.0)
    return f * f if squared else f


def fidelity_pure(psi, phi) -> float:
    """|<psi|phi>| for unit vectors."""
    psi = np.asarray(psi, dtype=np.complex128).reshape(-1)
    phi = np.asarray(phi, dtype=np.complex128).reshape(-1)
    if psi.size != phi.size:
        raise ShapeError(f"length mismatch: {psi.size} vs {phi.size}")
    for name, v in (("psi", psi), ("phi", phi)):
        n = float(np.linalg.norm(v))
        if abs(n - 1) > 1e-10:
            raise NotNormalized(f"{name} has norm {n!r}")
    return float(abs(np.vdot(psi, phi)))
