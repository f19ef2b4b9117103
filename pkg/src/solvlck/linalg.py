"""Dense elimination over a :class:`~solvlck.scalars.Field`.

Exact matrices are numpy object arrays of Fractions and are reduced with
plain Gaussian elimination. Float matrices use pivoting with a pivot
threshold relative to the largest entry, so ranks are decided the same way
everywhere in the package.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch
from .scalars import Field


def _threshold(M: np.ndarray, field: Field) -> float:
    if field.exact or M.size == 0:
        return 0.0
    return field.tol * float(np.max(np.abs(M)))


def _is_small(x, thr: float, field: Field) -> bool:
    return x == 0 if field.exact else abs(x) <= thr


def rank(M: np.ndarray, field: Field) -> int:
    if M.size == 0:
        return 0
    A = M.copy() if field.exact else np.array(M, dtype=float)
    thr = _threshold(A, field)
    nrows, ncols = A.shape
    r = 0
    if field.exact:
        for c in range(ncols):
            piv = next((i for i in range(r, nrows) if A[i, c] != 0), None)
            if piv is None:
                continue
            A[[r, piv]] = A[[piv, r]]
            for i in range(r + 1, nrows):
                if A[i, c] != 0:
                    A[i, c:] = A[i, c:] - (A[i, c] / A[r, c]) * A[r, c:]
            r += 1
            if r == nrows:
                break
        return r
    # complete pivoting
    while r < min(nrows, ncols):
        sub = np.abs(A[r:, r:])
        i, j = np.unravel_index(np.argmax(sub), sub.shape)
        if sub[i, j] <= thr:
            break
        i += r
        j += r
        A[[r, i]] = A[[i, r]]
        A[:, [r, j]] = A[:, [j, r]]
        A[r + 1:, r:] -= np.outer(A[r + 1:, r] / A[r, r], A[r, r:])
        r += 1
    return r


def rref(M: np.ndarray, field: Field) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns (partial pivoting for floats)."""
    A = M.copy() if field.exact else np.array(M, dtype=float)
    nrows, ncols = A.shape
    thr = _threshold(A, field)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        if field.exact:
            piv = next((i for i in range(r, nrows) if A[i, c] != 0), None)
        else:
            i = r + int(np.argmax(np.abs(A[r:, c])))
            piv = i if abs(A[i, c]) > thr else None
        if piv is None:
            continue
        A[[r, piv]] = A[[piv, r]]
        A[r] = A[r] / A[r, c]
        for i in range(nrows):
            if i != r and not _is_small(A[i, c], 0.0, field):
                A[i] = A[i] - A[i, c] * A[r]
        if not field.exact:
            A[np.abs(A) <= thr] = 0.0
        pivots.append(c)
        r += 1
    return A, pivots


def nullspace(M: np.ndarray, field: Field) -> np.ndarray:
    """Basis of the right kernel as columns; one column per free variable, in column order."""
    ncols = M.shape[1]
    R, pivots = rref(M, field)
    free = [c for c in range(ncols) if c not in pivots]
    N = field.zeros((ncols, len(free)))
    for k, f in enumerate(free):
        N[f, k] = field.one
        for row, p in enumerate(pivots):
            N[p, k] = -R[row, f]
    return N


def solve(M: np.ndarray, b, field: Field):
    """A solution x of M x = b with free variables set to zero, or None if inconsistent."""
    b = np.asarray(b, dtype=M.dtype).reshape(-1, 1)
    if b.shape[0] != M.shape[0]:
        raise DimensionMismatch(f"right-hand side has length {b.shape[0]}, expected {M.shape[0]}")
    ncols = M.shape[1]
    aug = np.hstack([M, b]) if M.size or b.size else field.zeros((M.shape[0], ncols + 1))
    if not field.exact:
        # inconsistency must be judged against the coefficient matrix scale
        scale = float(np.max(np.abs(M))) if M.size else 0.0
        if scale > 0:
            aug = aug / scale
    R, pivots = rref(aug, field)
    if ncols in pivots:
        return None
    x = field.zeros(ncols)
    for row, p in enumerate(pivots):
        x[p] = R[row, ncols]
    return x


def det(M: np.ndarray, field: Field):
    n = M.shape[0]
    if M.shape != (n, n):
        raise DimensionMismatch("determinant of a non-square matrix")
    if n == 0:
        return field.one
    if not field.exact:
        return float(np.linalg.det(np.array(M, dtype=float)))
    A = M.copy()
    result = field.one
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i, c] != 0), None)
        if piv is None:
            return field.zero
        if piv != c:
            A[[c, piv]] = A[[piv, c]]
            result = -result
        result *= A[c, c]
        for i in range(c + 1, n):
            if A[i, c] != 0:
                A[i, c:] = A[i, c:] - (A[i, c] / A[c, c]) * A[c, c:]
    return result


def inverse(M: np.ndarray, field: Field) -> np.ndarray:
    n = M.shape[0]
    if not field.exact:
        return np.linalg.inv(np.array(M, dtype=float))
    R, pivots = rref(np.hstack([M, field.identity(n)]), field)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return R[:, n:]


def is_positive_definite(M: np.ndarray, field: Field) -> bool:
    """Leading principal minors for exact matrices, Cholesky for floats."""
    n = M.shape[0]
    if field.exact:
        return all(det(M[:k, :k], field) > 0 for k in range(1, n + 1))
    try:
        np.linalg.cholesky(np.array(M, dtype=float))
    except np.linalg.LinAlgError:
        return False
    return True


def complex_rank(re: np.ndarray, im: np.ndarray, field: Field) -> int:
    """Rank over C of re + i*im, via the real matrix [[re, -im], [im, re]] of twice that rank."""
    big = np.vstack([np.hstack([re, -im]), np.hstack([im, re])])
    return rank(big, field) // 2
