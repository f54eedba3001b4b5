"""Linearized (q-)polynomials over F_{q^m}.

``P = sum a_i x^{q^i}`` is stored as the tuple ``(a_0, ..., a_d)`` of field
ints with no trailing zeros. The zero polynomial has ``qdeg == -1``. Products
are compositions: ``(P o Q)(x) = P(Q(x))``, which is not commutative.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import rank_linalg as rl
from .field_tower import FieldTower


@dataclass(frozen=True)
class QPoly:
    field: FieldTower
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        c = list(int(a) for a in self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def zero(cls, field: FieldTower) -> "QPoly":
        return cls(field, ())

    @classmethod
    def monomial(cls, field: FieldTower, i: int, a: int = 1) -> "QPoly":
        """``a * x^{q^i}``."""
        return cls(field, (0,) * i + (a,))

    @classmethod
    def identity(cls, field: FieldTower) -> "QPoly":
        return cls.monomial(field, 0)

    @property
    def qdeg(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __call__(self, x: int) -> int:
        return evaluate(self, x)

    def __add__(self, other: "QPoly") -> "QPoly":
        return add(self, other)

    def __sub__(self, other: "QPoly") -> "QPoly":
        return sub(self, other)

    def __matmul__(self, other: "QPoly") -> "QPoly":
        return compose(self, other)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "QPoly(0)"
        terms = [f"{a}*x^[{i}]" for i, a in enumerate(self.coeffs) if a]
        return "QPoly(" + " + ".join(terms) + ")"


def evaluate(P: QPoly, x: int) -> int:
    """``P(x) = sum a_i x^{q^i}``."""
    fld = P.field
    acc = 0
    xi = x
    for i, a in enumerate(P.coeffs):
        if i:
            xi = fld.frobenius(xi, 1)
        if a:
            acc = fld.add(acc, fld.mul(a, xi))
    return acc


def evaluate_many(P: QPoly, xs) -> list[int]:
    return [evaluate(P, int(x)) for x in xs]


def add(P: QPoly, Q: QPoly) -> QPoly:
    fld = P.field
    n = max(len(P.coeffs), len(Q.coeffs))
    return QPoly(fld, tuple(fld.add(P.coeff(i), Q.coeff(i)) for i in range(n)))


def sub(P: QPoly, Q: QPoly) -> QPoly:
    fld = P.field
    n = max(len(P.coeffs), len(Q.coeffs))
    return QPoly(fld, tuple(fld.sub(P.coeff(i), Q.coeff(i)) for i in range(n)))


def scale(c: int, P: QPoly) -> QPoly:
    """Left multiplication by the constant ``c`` (i.e. ``(c x) o P``)."""
    fld = P.field
    return QPoly(fld, tuple(fld.mul(c, a) for a in P.coeffs))


def compose(P: QPoly, Q: QPoly) -> QPoly:
    """``P o Q``; coefficient ``d`` is ``sum_i P_i Q_{d-i}^{q^i}``."""
    fld = P.field
    if P.is_zero() or Q.is_zero():
        return QPoly.zero(fld)
    out = [0] * (P.qdeg + Q.qdeg + 1)
    for i, a in enumerate(P.coeffs):
        if not a:
            continue
        for j, b in enumerate(Q.coeffs):
            if b:
                out[i + j] = fld.add(out[i + j], fld.mul(a, fld.frobenius(b, i)))
    return QPoly(fld, tuple(out))


def x_qm_minus_x(field: FieldTower) -> QPoly:
    """``x^{q^m} - x``, central in the composition ring."""
    return QPoly(field, (field.neg(1),) + (0,) * (field.m - 1) + (1,))


def skew_divide(A: QPoly, B: QPoly) -> tuple[QPoly, QPoly]:
    """Right division ``A = quotient o B + remainder``, ``qdeg(remainder) < qdeg(B)``."""
    fld = A.field
    if B.is_zero():
        raise ZeroDivisionError("division by the zero q-polynomial")
    b = B.qdeg
    R = list(A.coeffs)
    quot = [0] * max(0, len(R) - b)
    lead_b = B.lead()
    for d in range(len(R) - 1, b - 1, -1):
        if not R[d]:
            continue
        shift = d - b
        c = fld.div(R[d], fld.frobenius(lead_b, shift))
        quot[shift] = c
        for j, bj in enumerate(B.coeffs):
            if bj:
                R[j + shift] = fld.sub(R[j + shift], fld.mul(c, fld.frobenius(bj, shift)))
    return QPoly(fld, tuple(quot)), QPoly(fld, tuple(R[:b]))


def skew_divide_left(A: QPoly, B: QPoly) -> tuple[QPoly, QPoly]:
    """Left division ``A = B o quotient + remainder``, ``qdeg(remainder) < qdeg(B)``."""
    fld = A.field
    if B.is_zero():
        raise ZeroDivisionError("division by the zero q-polynomial")
    b = B.qdeg
    R = list(A.coeffs)
    quot = [0] * max(0, len(R) - b)
    inv_lead = fld.inv(B.lead())
    for d in range(len(R) - 1, b - 1, -1):
        if not R[d]:
            continue
        shift = d - b
        c = fld.frobenius(fld.mul(R[d], inv_lead), -b)
        quot[shift] = c
        for i, bi in enumerate(B.coeffs):
            if bi:
                R[i + shift] = fld.sub(R[i + shift], fld.mul(bi, fld.frobenius(c, i)))
    return QPoly(fld, tuple(quot)), QPoly(fld, tuple(R[:b]))


def subspace_poly(field: FieldTower, V) -> QPoly:
    """Monic q-polynomial of q-degree ``s = len(V)`` whose kernel is ``span_Fq(V)``.

    Built by ``P <- x^q o P - P(v)^{q-1} P`` for each new generator ``v``.

    Raises:
        ValueError: if ``V`` is F_q-dependent or spans all of F_{q^m}.
    """
    V = [int(v) for v in V]
    s = len(V)
    if not 0 < s < field.m:
        raise ValueError(f"need 0 < dim V < m={field.m}, got {s}")
    P = QPoly.identity(field)
    for v in V:
        pv = evaluate(P, v)
        if pv == 0:
            raise ValueError("subspace generators are F_q-linearly dependent")
        c = field.pow(pv, field.q - 1)
        frob = (0,) + tuple(field.frobenius(a, 1) for a in P.coeffs)
        P = sub(QPoly(field, frob), scale(c, P))
    return P


def cofactor(P: QPoly) -> QPoly:
    """The ``Q`` with ``Q o P = x^{q^m} - x`` (and then also ``P o Q = Q o P``).

    Raises:
        ValueError: if ``P`` does not right-divide ``x^{q^m} - x``.
    """
    fld = P.field
    if P.is_zero() or P.qdeg >= fld.m:
        raise ValueError("cofactor needs 0 <= qdeg(P) < m")
    Q, R = skew_divide(x_qm_minus_x(fld), P)
    if not R.is_zero():
        raise ValueError("P is not a subspace polynomial (x^{q^m} - x is not divisible)")
    return Q


def kernel_dim(P: QPoly) -> int:
    """F_q-dimension of the kernel of ``x -> P(x)`` on F_{q^m}."""
    return P.field.m - rl.rank(P.field.base, linear_map_matrix(P))


def linear_map_matrix(P: QPoly) -> np.ndarray:
    """Power-basis ``m x m`` matrix over F_q of the map ``x -> P(x)``."""
    fld = P.field
    cols = [evaluate(P, fld.q**j if j else 1) for j in range(fld.m)]
    return fld.coeff_matrix(cols)
