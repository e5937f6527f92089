"""Exact spectral engine for real symmetric tridiagonal (Jacobi) matrices.

A Jacobi matrix with strictly positive off-diagonal entries is irreducible,
so its eigenvalues are simple and every eigenvector has nonzero first and
last components.  That makes the decomposition reproducible: eigenvalues are
returned in strictly increasing order and each eigenvector is sign-fixed so
its first component is positive.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import ConvergenceFailure, ValidationError

RESIDUAL_RTOL = 1e-12
ORTHO_TOL = 1e-12


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class JacobiMatrix:
    """Real symmetric tridiagonal matrix with positive off-diagonal.

    diag has length n, offdiag length n-1; offdiag entries must be > 0.
    """

    diag: tuple[float, ...]
    offdiag: tuple[float, ...]

    def __post_init__(self):
        diag = tuple(float(x) for x in self.diag)
        offdiag = tuple(float(x) for x in self.offdiag)
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "offdiag", offdiag)
        if len(diag) < 1:
            raise ValidationError("matrix dimension must be at least 1")
        if len(offdiag) != len(diag) - 1:
            raise ValidationError(
                f"offdiag length {len(offdiag)} != n-1 = {len(diag) - 1}"
            )
        if not all(np.isfinite(diag)) or not all(np.isfinite(offdiag)):
            raise ValidationError("matrix entries must be finite")
        if any(b <= 0.0 for b in offdiag):
            raise ValidationError("offdiag entries must be strictly positive")

    @property
    def n(self) -> int:
        return len(self.diag)

    def to_dense(self) -> np.ndarray:
        d = np.asarray(self.diag)
        b = np.asarray(self.offdiag)
        return np.diag(d) + np.diag(b, 1) + np.diag(b, -1)

    def frobenius_norm(self) -> float:
        d = np.asarray(self.diag)
        b = np.asarray(self.offdiag)
        return float(np.sqrt(np.sum(d * d) + 2.0 * np.sum(b * b)))


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """Sorted eigenvalues with orthonormal, sign-normalized eigenvectors.

    Column m of `eigenvectors` belongs to `eigenvalues[m]`.  The sign of
    each column is fixed so that its first nonzero component is positive;
    relative phases of 0 or pi between mirror-related components therefore
    show up as component signs.
    """

    eigenvalues: np.ndarray = field(repr=False)
    eigenvectors: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "eigenvalues", _readonly(self.eigenvalues))
        object.__setattr__(self, "eigenvectors", _readonly(self.eigenvectors))

    @property
    def n(self) -> int:
        return self.eigenvalues.shape[0]


def char_poly(matrix: JacobiMatrix) -> list[float]:
    """Coefficients of det(xI - J), monic, highest degree first.

    Uses the three-term recursion
    p_k(x) = (x - diag_k) p_{k-1}(x) - offdiag_{k-1}^2 p_{k-2}(x).
    """
    n = matrix.n
    # coefficient arrays aligned lowest-degree-last, grown per step
    p_prev = np.array([1.0])  # p_0
    p_curr = np.array([1.0, -matrix.diag[0]])  # p_1
    for k in range(1, n):
        a = matrix.diag[k]
        b2 = matrix.offdiag[k - 1] ** 2
        shifted = np.concatenate([p_curr, [0.0]])  # x * p_curr
        nxt = shifted.copy()
        nxt[1:] -= a * p_curr
        nxt[2:] -= b2 * p_prev
        p_prev, p_curr = p_curr, nxt
    return [float(c) for c in p_curr]


def eval_char_poly(matrix: JacobiMatrix, x: float) -> float:
    """Evaluate det(xI - J) by the recursion itself (no coefficient blowup)."""
    p_prev, p_curr = 1.0, x - matrix.diag[0]
    for k in range(1, matrix.n):
        p_prev, p_curr = p_curr, (
            (x - matrix.diag[k]) * p_curr - matrix.offdiag[k - 1] ** 2 * p_prev
        )
    return p_curr


def eigen_decompose(matrix: JacobiMatrix) -> EigenDecomposition:
    """Full eigendecomposition meeting the residual/orthogonality contract.

    Raises ConvergenceFailure if the LAPACK solver fails or the result does
    not satisfy the accuracy bounds (pathological conditioning).
    """
    d = np.asarray(matrix.diag)
    b = np.asarray(matrix.offdiag)
    try:
        vals, vecs = eigh_tridiagonal(d, b)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise ConvergenceFailure(f"tridiagonal eigensolver failed: {exc}") from exc

    order = np.argsort(vals)
    vals = np.ascontiguousarray(vals[order])
    vecs = np.ascontiguousarray(vecs[:, order])

    # sign convention: first nonzero component positive
    for m in range(matrix.n):
        col = vecs[:, m]
        nz = np.flatnonzero(np.abs(col) > 1e-14 * np.max(np.abs(col)))
        if col[nz[0]] < 0.0:
            vecs[:, m] = -col

    _check_contract(matrix, vals, vecs)
    return EigenDecomposition(eigenvalues=vals, eigenvectors=vecs)


def _check_contract(matrix: JacobiMatrix, vals: np.ndarray, vecs: np.ndarray) -> None:
    n = matrix.n
    scale = max(1.0, matrix.frobenius_norm())
    residual = matrix.to_dense() @ vecs - vecs * vals
    if np.max(np.sqrt(np.sum(residual * residual, axis=0))) > RESIDUAL_RTOL * scale:
        raise ConvergenceFailure("eigenpair residual exceeds tolerance")
    gram = vecs.T @ vecs - np.eye(n)
    if np.max(np.abs(gram)) > ORTHO_TOL:
        raise ConvergenceFailure("eigenvectors lost orthonormality")
    if n > 1 and np.min(np.diff(vals)) <= 0.0:
        raise ConvergenceFailure("eigenvalues not strictly increasing")


def spectrum_is_antisymmetric(decomp: EigenDecomposition, tol: float) -> bool:
    """True iff the sorted eigenvalues satisfy E_m = -E_{n+1-m} within tol."""
    e = decomp.eigenvalues
    return bool(np.all(np.abs(e + e[::-1]) <= tol))
