"""Dense exact linear algebra over a :class:`~qjordan.gf.FieldSpec`.

Matrices are numpy integer arrays of field codes. Vectors are rows and
operators act on the right: ``x @ A`` applies A to x, so applying A and
then B is ``mat_mul(A, B)``.
"""

from __future__ import annotations

import numpy as np

from qjordan.gf import FieldSpec


def as_matrix(rows) -> np.ndarray:
    return np.array(rows, dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def zeros(n: int) -> np.ndarray:
    return np.zeros((n, n), dtype=np.int64)


def mat_mul(A, B, F: FieldSpec) -> np.ndarray:
    A = np.asarray(A)
    B = np.asarray(B)
    if A.shape[-1] != B.shape[-2]:
        raise ValueError(f"size mismatch: {A.shape} x {B.shape}")
    return F.matmul(A, B)


def rref(A, F: FieldSpec) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns (leftmost nonzero pivots)."""
    R = np.array(A, dtype=np.int64, copy=True)
    if R.ndim != 2:
        raise ValueError("rref needs a 2-d array")
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            R[[r, k]] = R[[k, r]]
        R[r] = F.mul(R[r], int(F.inv_table[R[r, c]]))
        factors = R[:, c].copy()
        factors[r] = 0
        R = F.sub(R, F.mul(factors[:, None], R[r][None, :]))
        pivots.append(c)
        r += 1
    return R, pivots


def rank(A, F: FieldSpec) -> int:
    return len(rref(A, F)[1])


def mat_inverse(A, F: FieldSpec) -> np.ndarray | None:
    """Inverse of a square matrix, or None if it is singular."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("matrix must be square")
    R, pivots = rref(np.concatenate([A, identity(n)], axis=1), F)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        return None
    return R[:, n:]


def is_invertible(A, F: FieldSpec) -> bool:
    return rank(A, F) == np.asarray(A).shape[0]


def kernel_basis(A, F: FieldSpec) -> np.ndarray:
    """Basis of {x : A x^T = 0}, returned as rows in reduced echelon form.

    Returns an array of shape (k, cols); k = 0 when the kernel is trivial.
    """
    A = np.asarray(A, dtype=np.int64)
    if A.ndim != 2:
        raise ValueError("constraint matrix must be 2-d")
    cols = A.shape[1]
    R, pivots = rref(A, F)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = F.neg(R[i, f])
    return echelon_basis(basis, F, width=cols)


def echelon_basis(vectors, F: FieldSpec, width: int | None = None) -> np.ndarray:
    """Canonical basis (nonzero rows of the RREF) of the span of the rows."""
    V = np.asarray(vectors, dtype=np.int64)
    if V.size == 0:
        w = width if width is not None else (V.shape[-1] if V.ndim == 2 else 0)
        return np.zeros((0, w), dtype=np.int64)
    R, pivots = rref(V, F)
    return R[: len(pivots)]


def same_span(U, V, F: FieldSpec) -> bool:
    U = np.asarray(U)
    V = np.asarray(V)
    w = U.shape[-1] if U.ndim == 2 else V.shape[-1]
    return np.array_equal(echelon_basis(U, F, w), echelon_basis(V, F, w))


def span_sum(U, V, F: FieldSpec) -> np.ndarray:
    U = np.asarray(U, dtype=np.int64)
    V = np.asarray(V, dtype=np.int64)
    return echelon_basis(np.concatenate([U, V], axis=0), F, width=U.shape[1])


def intersection_basis(U, V, F: FieldSpec) -> np.ndarray:
    """Echelon basis of span(U) ∩ span(V)."""
    U = echelon_basis(U, F)
    V = echelon_basis(V, F, width=U.shape[1])
    w = U.shape[1]
    if len(U) == 0 or len(V) == 0:
        return np.zeros((0, w), dtype=np.int64)
    # x U = y V  <=>  [x | y] [U ; -V] = 0
    stacked = np.concatenate([U, F.neg(V)], axis=0)
    coeffs = kernel_basis(stacked.T, F)
    if len(coeffs) == 0:
        return np.zeros((0, w), dtype=np.int64)
    vecs = F.matmul(coeffs[:, : len(U)], U)
    return echelon_basis(vecs, F, width=w)


def format_matrix(A, F: FieldSpec) -> str:
    return "\n".join(" ".join(F.format_code(x) for x in row) for row in np.asarray(A))


def parse_matrix(lines, F: FieldSpec, n: int) -> np.ndarray:
    rows = []
    for line in lines:
        parts = line.split()
        if len(parts) != n:
            raise ValueError(f"matrix row needs {n} entries: {line!r}")
        rows.append([F.parse_code(x) for x in parts])
    if len(rows) != n:
        raise ValueError(f"matrix needs {n} rows")
    return np.array(rows, dtype=np.int64)
