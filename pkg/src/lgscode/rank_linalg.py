"""Exact dense linear algebra over F_q.

Matrices are ``int64`` numpy arrays whose entries are F_q elements (see
:class:`lgscode.gf.GF`). Matrix codes are stacks of shape ``(k', m, n)``.

Conventions:

* ``unfold`` lists the entries column by column, so the ``m`` consecutive
  entries ``v_{i1},...,v_{im}`` of a length-``mn`` word form column ``i`` of
  ``fold(v)``. This is also the column-stacking ``vec``; the two differ only in
  being read as a row or a column.
* ``solve`` works with column vectors (``A @ x = b``); ``solve_left`` with row
  vectors (``x @ A = b``), which is the natural convention for codes.
"""

from __future__ import annotations

import struct

import numpy as np

from .gf import GF

_INT = np.int64


class NoSolutionError(ValueError):
    """The linear system is inconsistent."""


def _as_matrix(M) -> np.ndarray:
    M = np.asarray(M, dtype=_INT)
    if M.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {M.shape}")
    return M


def rref(F: GF, M, ncols: int | None = None) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form.

    Pivots are searched only among the first ``ncols`` columns (all columns by
    default); row operations always act on full rows. Pivot choice is the
    leftmost nonzero column, first suitable row.

    Returns:
        ``(R, pivots)`` with ``R`` the reduced matrix (same shape as ``M``) and
        ``pivots`` the list of pivot column indices.
    """
    R = _as_matrix(M).copy()
    rows, cols = R.shape
    limit = cols if ncols is None else min(ncols, cols)
    binary = F.q == 2
    pivots: list[int] = []
    r = 0
    for c in range(limit):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        piv = R[r, c]
        if piv != 1:
            R[r, c:] = F.mul(R[r, c:], F.inv(piv))
        col = R[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            if binary:
                R[hit, c:] ^= R[r, c:]
            else:
                R[hit, c:] = F.sub(R[hit, c:], F.mul(col[hit, None], R[r, c:][None, :]))
        pivots.append(c)
        r += 1
    return R, pivots


def rank(F: GF, M) -> int:
    M = _as_matrix(M)
    if M.size == 0:
        return 0
    return len(rref(F, M)[1])


def kernel_basis(F: GF, M) -> np.ndarray:
    """Basis (as rows) of the right kernel ``{x : M @ x = 0}``.

    The basis is canonical: one vector per non-pivot column, with a 1 in that
    column and zeros in the other free columns.
    """
    M = _as_matrix(M)
    cols = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(cols, dtype=_INT)
    R, piv = rref(F, M)
    free = [c for c in range(cols) if c not in set(piv)]
    K = np.zeros((len(free), cols), dtype=_INT)
    for t, f in enumerate(free):
        K[t, f] = 1
        if piv:
            K[t, piv] = F.neg(R[: len(piv), f])
    return K


def left_kernel(F: GF, M) -> np.ndarray:
    """Basis of ``{x : x @ M = 0}``."""
    return kernel_basis(F, _as_matrix(M).T)


def solve(F: GF, A, b) -> np.ndarray:
    """Canonical solution of ``A @ x = b`` (free variables set to zero).

    ``b`` may be a vector or a matrix of right-hand sides (one per column).

    Raises:
        NoSolutionError: if the system is inconsistent.
    """
    A = _as_matrix(A)
    b = np.asarray(b, dtype=_INT)
    vec = b.ndim == 1
    B = b[:, None] if vec else b
    if B.shape[0] != A.shape[0]:
        raise ValueError("shape mismatch between A and b")
    n = A.shape[1]
    R, piv = rref(F, np.hstack([A, B]), ncols=n)
    r = len(piv)
    if np.any(R[r:, n:]):
        raise NoSolutionError("inconsistent linear system")
    x = np.zeros((n, B.shape[1]), dtype=_INT)
    if r:
        x[piv] = R[:r, n:]
    return x[:, 0] if vec else x


def solve_left(F: GF, A, b) -> np.ndarray:
    """Canonical solution of ``x @ A = b``."""
    A = _as_matrix(A)
    b = np.asarray(b, dtype=_INT)
    return solve(F, A.T, b.T).T


def inverse(F: GF, M) -> np.ndarray:
    M = _as_matrix(M)
    n = M.shape[0]
    if M.shape != (n, n):
        raise ValueError("matrix is not square")
    R, piv = rref(F, np.hstack([M, np.eye(n, dtype=_INT)]), ncols=n)
    if len(piv) != n:
        raise NoSolutionError("matrix is singular")
    return R[:, n:]


def row_basis(F: GF, M) -> np.ndarray:
    """Canonical (RREF) basis of the row space."""
    M = _as_matrix(M)
    if M.shape[0] == 0:
        return M.copy()
    R, piv = rref(F, M)
    return R[: len(piv)]


def same_rowspace(F: GF, A, B) -> bool:
    A = _as_matrix(A)
    B = _as_matrix(B)
    ra, rb = rank(F, A), rank(F, B)
    return ra == rb and rank(F, np.vstack([A, B])) == ra


def in_rowspace(F: GF, A, v) -> bool:
    A = _as_matrix(A)
    v = np.atleast_2d(np.asarray(v, dtype=_INT))
    return rank(F, np.vstack([A, v])) == rank(F, A)


def intersect_rowspaces(F: GF, A, B) -> np.ndarray:
    """Basis of ``rowspace(A) ∩ rowspace(B)`` (rows, RREF-canonical)."""
    A = row_basis(F, A)
    B = row_basis(F, B)
    if A.shape[0] == 0 or B.shape[0] == 0:
        return np.zeros((0, A.shape[1]), dtype=_INT)
    K = left_kernel(F, np.vstack([A, B]))
    if K.shape[0] == 0:
        return np.zeros((0, A.shape[1]), dtype=_INT)
    return row_basis(F, F.matmul(K[:, : A.shape[0]], A))


# -- fold / unfold / vec --------------------------------------------------


def fold(v, m: int) -> np.ndarray:
    """Word of length ``mn`` -> ``m x n`` matrix (m consecutive entries per column)."""
    v = np.asarray(v, dtype=_INT)
    if v.shape[-1] % m:
        raise ValueError(f"length {v.shape[-1]} is not a multiple of m={m}")
    n = v.shape[-1] // m
    return np.swapaxes(v.reshape(v.shape[:-1] + (n, m)), -1, -2).copy()


def unfold(M) -> np.ndarray:
    """Inverse of :func:`fold`; also accepts a stack of matrices."""
    M = np.asarray(M, dtype=_INT)
    return np.swapaxes(M, -1, -2).reshape(M.shape[:-2] + (M.shape[-2] * M.shape[-1],)).copy()


def vec_col(M) -> np.ndarray:
    """Column-stacking vectorisation ``vec(M)``."""
    return unfold(M)


def kron(F: GF, A, B) -> np.ndarray:
    A = _as_matrix(A)
    B = _as_matrix(B)
    (a, b), (c, d) = A.shape, B.shape
    return F.mul(A[:, None, :, None], B[None, :, None, :]).reshape(a * c, b * d)


def trace_pairing(F: GF, M, N):
    """``Tr(M N^T)``, equal to ``Unfold(M) . Unfold(N)``."""
    M = _as_matrix(M)
    N = _as_matrix(N)
    if M.shape != N.shape:
        raise ValueError("shape mismatch")
    return int(F.sum(F.mul(M, N)))


def matrix_code_dual(F: GF, gens) -> np.ndarray:
    """Basis of the trace-dual of the matrix code spanned by ``gens``.

    Args:
        gens: array ``(k', m, n)`` of generators (need not be independent).

    Returns:
        array ``(mn - rank, m, n)``.
    """
    gens = np.asarray(gens, dtype=_INT)
    if gens.ndim != 3:
        raise ValueError("gens must have shape (k', m, n)")
    _, m, n = gens.shape
    rows = unfold(gens)
    if rows.shape[0] == 0:
        K = np.eye(m * n, dtype=_INT)
    else:
        K = kernel_basis(F, rows)
    return fold(K, m) if K.shape[0] else np.zeros((0, m, n), dtype=_INT)


def matrix_code_dim(F: GF, gens) -> int:
    gens = np.asarray(gens, dtype=_INT)
    if gens.shape[0] == 0:
        return 0
    return rank(F, unfold(gens))


# -- serialisation ----------------------------------------------------------


def pack_elements(F: GF, values) -> bytes:
    """Pack F_q elements at ``ceil(log2 q)`` bits each, little-endian bit order."""
    v = np.asarray(values, dtype=_INT).ravel()
    bits = F.bits
    planes = (v[:, None] >> np.arange(bits, dtype=_INT)) & 1
    return np.packbits(planes.astype(np.uint8).ravel(), bitorder="little").tobytes()


def unpack_elements(F: GF, data: bytes, count: int) -> np.ndarray:
    bits = F.bits
    raw = np.unpackbits(np.frombuffer(data, dtype=np.uint8), bitorder="little")
    if raw.size < count * bits:
        raise ValueError("not enough data to unpack")
    planes = raw[: count * bits].reshape(count, bits).astype(_INT)
    v = (planes << np.arange(bits, dtype=_INT)).sum(axis=1)
    if np.any(v >= F.q):
        raise ValueError("packed value out of range for the field")
    return v


def packed_size(F: GF, count: int) -> int:
    return -(-count * F.bits // 8)


def serialize_matrix(F: GF, M) -> bytes:
    """Two little-endian uint32 dimensions, then the packed entries row-major."""
    M = _as_matrix(M)
    return struct.pack("<II", *M.shape) + pack_elements(F, M)


def deserialize_matrix(F: GF, data: bytes, offset: int = 0) -> tuple[np.ndarray, int]:
    """Inverse of :func:`serialize_matrix`; returns ``(matrix, new_offset)``."""
    rows, cols = struct.unpack_from("<II", data, offset)
    offset += 8
    size = packed_size(F, rows * cols)
    M = unpack_elements(F, data[offset : offset + size], rows * cols).reshape(rows, cols)
    return M, offset + size
