"""Gaussian elimination over F_{q^m} on lists of python ints.

Only small systems are needed (decoder interpolation, at most a few dozen
unknowns), so this stays in plain python.
"""

from __future__ import annotations

from .field_tower import FieldTower


def rref(field: FieldTower, M) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form of a matrix given as a list of rows."""
    R = [[int(x) for x in row] for row in M]
    if not R:
        return R, []
    rows, cols = len(R), len(R[0])
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        i = next((i for i in range(r, rows) if R[i][c]), None)
        if i is None:
            continue
        R[r], R[i] = R[i], R[r]
        inv = field.inv(R[r][c])
        R[r] = [field.mul(inv, x) if x else 0 for x in R[r]]
        for i in range(rows):
            f = R[i][c]
            if i != r and f:
                R[i] = [field.sub(a, field.mul(f, b)) if b else a for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    return R[:r], pivots


def kernel(field: FieldTower, M, ncols: int | None = None) -> list[list[int]]:
    """Canonical basis of the right kernel ``{x : M x = 0}``."""
    if not M:
        if ncols is None:
            raise ValueError("ncols is required for an empty matrix")
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    cols = len(M[0])
    R, piv = rref(field, M)
    pset = set(piv)
    basis = []
    for f in (c for c in range(cols) if c not in pset):
        v = [0] * cols
        v[f] = 1
        for row, p in zip(R, piv):
            v[p] = field.neg(row[f])
        basis.append(v)
    return basis


def rank(field: FieldTower, M) -> int:
    return len(rref(field, M)[1]) if M else 0


def matmul(field: FieldTower, A, B) -> list[list[int]]:
    inner = len(B)
    out = []
    for row in A:
        acc = [0] * (len(B[0]) if B else 0)
        for t in range(inner):
            a = row[t]
            if a:
                acc = [field.add(x, field.mul(a, b)) if b else x for x, b in zip(acc, B[t])]
        out.append(acc)
    return out


def vecmat(field: FieldTower, v, M) -> list[int]:
    """Row vector times matrix."""
    return matmul(field, [list(v)], M)[0]
