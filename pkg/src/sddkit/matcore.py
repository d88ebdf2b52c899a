"""Dense symmetric-matrix kernels.

Construction and validation of symmetric matrices, diagonal-dominance
diagnostics, an LU-based inversion oracle, infinity norms, a cyclic Jacobi
eigensolver, rank-one Sherman-Morrison-Woodbury inverse updates, and the
Loewner (positive semidefinite) partial order.

All operations are pure functions of their inputs.  Matrix values are
immutable after construction and safe to share across threads.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

__all__ = [
    "SymMatrix",
    "DominanceReport",
    "MatrixError",
    "AsymmetricMatrixError",
    "SingularMatrixError",
    "SingularUpdateError",
    "EigenConvergenceError",
    "MatrixFormatError",
    "symmetrize",
    "delta",
    "classify",
    "inverse_dense",
    "det_dense",
    "inf_norm",
    "eigen_sym",
    "smw_update",
    "loewner_geq",
    "load_matrix",
    "save_matrix",
]


class MatrixError(ValueError):
    """Base error for invalid matrix inputs."""


class AsymmetricMatrixError(MatrixError):
    """Input matrix is not symmetric (or drifted beyond the skew guard)."""


class SingularMatrixError(MatrixError):
    """Matrix is singular to working precision.

    Carries the magnitude of the smallest LU pivot in ``pivot``.
    """

    def __init__(self, message: str, pivot: float):
        super().__init__(message)
        self.pivot = pivot


class SingularUpdateError(MatrixError):
    """Rank-one update denominator 1 + t*u'Ku is (numerically) zero."""


class EigenConvergenceError(RuntimeError):
    """Jacobi iteration did not reach the residual target.

    Carries the attained worst per-pair residual in ``residual``.
    """

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class MatrixFormatError(MatrixError):
    """Malformed matrix text file.  ``line`` is the offending 1-based line."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True, eq=False)
class SymMatrix:
    """Dense symmetric real matrix, the universal numeric carrier.

    The entry array is validated (square, n >= 1, exactly symmetric) and
    frozen read-only at construction.  Asymmetric input is rejected; use
    :func:`symmetrize` for results of floating-point arithmetic that are
    symmetric only up to roundoff.
    """

    entries: np.ndarray

    def __post_init__(self):
        a = np.array(self.entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise MatrixError(f"expected a square 2-d array, got shape {a.shape}")
        if a.shape[0] < 1:
            raise MatrixError("matrix dimension must be >= 1")
        if not np.array_equal(a, a.T):
            raise AsymmetricMatrixError("matrix entries are not symmetric")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def identity(cls, n: int) -> "SymMatrix":
        return cls(np.eye(n))


@dataclass(frozen=True)
class DominanceReport:
    """Diagonal-dominance diagnostics for one symmetric matrix.

    ``min_offdiag``/``max_offdiag`` are ``None`` for n == 1 (no off-diagonal
    entries exist); callers must treat that as an explicit marker.
    """

    deltas: np.ndarray
    is_dominant: bool
    is_balanced: bool
    is_strictly_dominant: bool
    min_offdiag: float | None
    max_offdiag: float | None
    max_delta: float


def symmetrize(entries: np.ndarray, max_skew: float = 1e-8) -> SymMatrix:
    """Average a nearly-symmetric array with its transpose.

    Restores the exact-symmetry invariant after floating-point arithmetic.
    Raises :class:`AsymmetricMatrixError` if the largest skew exceeds
    ``max_skew * max(1, |entries|_max)``: asymmetry that large signals a
    genuinely asymmetric input, not roundoff.
    """
    a = np.asarray(entries, dtype=float)
    skew = float(np.abs(a - a.T).max()) if a.size else 0.0
    scale = max(1.0, float(np.abs(a).max())) if a.size else 1.0
    if skew > max_skew * scale:
        raise AsymmetricMatrixError(
            f"asymmetry {skew:.3e} exceeds guard {max_skew:.1e} * {scale:.3e}"
        )
    return SymMatrix((a + a.T) / 2.0)


def delta(J: SymMatrix) -> np.ndarray:
    """Per-row dominance margins |J_ii| - sum_{j != i} |J_ij|."""
    a = np.abs(J.entries)
    return 2.0 * a.diagonal() - a.sum(axis=1)


def default_dominance_tol(J: SymMatrix) -> float:
    # Floating balanced matrices rarely have exact zero margins.
    return 1e-12 * inf_norm(J)


def classify(J: SymMatrix, tol: float | None = None) -> DominanceReport:
    """Classify dominance with an explicit tolerance on the margins.

    dominant iff delta_i >= -tol for all i; balanced iff |delta_i| <= tol for
    all i; strictly dominant iff delta_i > tol for all i.  ``tol`` defaults to
    ``1e-12 * inf_norm(J)``.
    """
    if tol is None:
        tol = default_dominance_tol(J)
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    d = delta(J)
    a = J.entries
    n = J.n
    if n >= 2:
        off = a[~np.eye(n, dtype=bool)]
        min_off: float | None = float(off.min())
        max_off: float | None = float(off.max())
    else:
        min_off = max_off = None
    return DominanceReport(
        deltas=d,
        is_dominant=bool((d >= -tol).all()),
        is_balanced=bool((np.abs(d) <= tol).all()),
        is_strictly_dominant=bool((d > tol).all()),
        min_offdiag=min_off,
        max_offdiag=max_off,
        max_delta=float(d.max()),
    )


def inf_norm(M: SymMatrix) -> float:
    """Maximum absolute row sum."""
    return float(np.abs(M.entries).sum(axis=1).max())


def _lu(a: np.ndarray):
    with warnings.catch_warnings():
        # Exactly singular input triggers a scipy warning before our own
        # pivot check runs; the check below raises in that case.
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        return scipy.linalg.lu_factor(a, check_finite=False)


def inverse_dense(J: SymMatrix) -> SymMatrix:
    """Invert via pivoted LU and re-symmetrize the result.

    Pivoted LU (rather than Cholesky) so the same oracle inverts indefinite
    matrices.  Raises :class:`SingularMatrixError` carrying the smallest
    pivot magnitude when the matrix is singular to working precision.
    """
    a = J.entries
    n = J.n
    lu, piv = _lu(a)
    pivots = np.abs(lu.diagonal())
    floor = n * np.finfo(float).eps * max(inf_norm(J), np.finfo(float).tiny)
    smallest = float(pivots.min())
    if smallest <= floor:
        raise SingularMatrixError(
            f"matrix singular to working precision (pivot {smallest:.3e})",
            pivot=smallest,
        )
    inv = scipy.linalg.lu_solve((lu, piv), np.eye(n), check_finite=False)
    return symmetrize(inv)


def det_dense(J: SymMatrix) -> float:
    """Determinant from the pivoted LU factorization."""
    lu, piv = _lu(J.entries)
    sign = 1.0
    for i, p in enumerate(piv):
        if p != i:
            sign = -sign
    return sign * float(np.prod(lu.diagonal()))


def _jacobi(a0: np.ndarray, max_sweeps: int):
    """Cyclic Jacobi rotations; returns (eigenvalues asc, eigenvectors)."""
    n = a0.shape[0]
    a = a0.copy()
    v = np.eye(n)
    if n == 1:
        return a.diagonal().copy(), v
    scale = float(np.abs(a0).sum(axis=1).max())
    stop = 1e-12 * scale
    skip = stop / (10.0 * n)
    iu = np.triu_indices(n, 1)
    for _ in range(max_sweeps):
        if float(np.abs(a[iu]).max()) <= stop:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= skip:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    lams = a.diagonal().copy()
    order = np.argsort(lams, kind="stable")
    return lams[order], v[:, order]


def eigen_sym(M: SymMatrix, max_sweeps: int = 100) -> np.ndarray:
    """All eigenvalues, ascending, by cyclic Jacobi rotations.

    Each computed pair satisfies |M v - lam v|_2 <= 1e-10 * inf_norm(M);
    otherwise :class:`EigenConvergenceError` reports the attained residual.
    """
    lams, vecs, residual = _eigen_sym_full(M, max_sweeps)
    return lams


def _eigen_sym_full(M: SymMatrix, max_sweeps: int = 100):
    lams, vecs = _jacobi(M.entries, max_sweeps)
    resid_cols = M.entries @ vecs - vecs * lams
    residual = float(np.sqrt((resid_cols * resid_cols).sum(axis=0)).max())
    bound = 1e-10 * inf_norm(M)
    if residual > bound:
        raise EigenConvergenceError(
            f"Jacobi iteration stalled: residual {residual:.3e} > {bound:.3e} "
            f"after {max_sweeps} sweeps",
            residual=residual,
        )
    return lams, vecs, residual


def smw_update(K: SymMatrix, u: np.ndarray, t: float, tol: float = 1e-12) -> SymMatrix:
    """Inverse of J + t*uu' given K = J^{-1}.

    Returns K - (t / (1 + t*u'Ku)) (Ku)(Ku)'.  Raises
    :class:`SingularUpdateError` when the denominator is below tolerance.
    """
    u = np.asarray(u, dtype=float)
    if u.shape != (K.n,):
        raise MatrixError(f"update vector has shape {u.shape}, expected ({K.n},)")
    Ku = K.entries @ u
    uKu = float(u @ Ku)
    denom = 1.0 + t * uKu
    if abs(denom) <= tol * max(1.0, abs(t * uKu)):
        raise SingularUpdateError(
            f"update denominator 1 + t*u'Ku = {denom:.3e} is numerically zero"
        )
    return SymMatrix(K.entries - (t / denom) * np.outer(Ku, Ku))


def loewner_geq(A: SymMatrix, B: SymMatrix, tol: float = 1e-10) -> bool:
    """True iff A - B is positive semidefinite up to -tol on its spectrum."""
    if A.n != B.n:
        raise MatrixError(f"dimension mismatch: {A.n} vs {B.n}")
    lams = eigen_sym(SymMatrix(A.entries - B.entries))
    return bool(lams[0] >= -tol)


# Matrix text format: first line "n", then n whitespace-separated rows of n
# decimal reals.  Symmetry is validated on load with 1e-9 relative tolerance.

def load_matrix(path) -> SymMatrix:
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise MatrixFormatError("empty file", line=1)
    head = lines[0].split()
    if len(head) != 1:
        raise MatrixFormatError(f"expected a single dimension, got {lines[0]!r}", line=1)
    try:
        n = int(head[0])
    except ValueError:
        raise MatrixFormatError(f"bad dimension {head[0]!r}", line=1) from None
    if n < 1:
        raise MatrixFormatError(f"dimension must be >= 1, got {n}", line=1)
    rows = []
    lineno = 1
    for raw in lines[1:]:
        lineno += 1
        if not raw.strip():
            continue
        if len(rows) == n:
            raise MatrixFormatError(f"unexpected content after {n} rows", line=lineno)
        parts = raw.split()
        if len(parts) != n:
            raise MatrixFormatError(f"expected {n} entries, got {len(parts)}", line=lineno)
        try:
            rows.append([float(p) for p in parts])
        except ValueError:
            raise MatrixFormatError(f"bad number in row {raw!r}", line=lineno) from None
    if len(rows) != n:
        raise MatrixFormatError(f"expected {n} rows, found {len(rows)}", line=lineno)
    a = np.array(rows, dtype=float)
    skew = float(np.abs(a - a.T).max())
    scale = max(float(np.abs(a).max()), np.finfo(float).tiny)
    if skew > 1e-9 * scale:
        raise AsymmetricMatrixError(
            f"matrix file is not symmetric: relative skew {skew / scale:.3e} > 1e-9"
        )
    return SymMatrix((a + a.T) / 2.0)


def save_matrix(M: SymMatrix, path) -> None:
    # 17 significant digits round-trips float64 exactly.
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{M.n}\n")
        for row in M.entries:
            fh.write(" ".join(format(v, ".17g") for v in row) + "\n")
