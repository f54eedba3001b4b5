"""The tower F_p ⊂ F_q ⊂ F_{q^m}, bases of F_{q^m}/F_q and expansion maps.

An element of F_{q^m} is a python ``int`` holding its coordinates on the power
basis ``(1, z, ..., z^{m-1})`` of the top modulus as base-q digits:
``x = sum(c_i * q**i)``. Words over F_{q^m} are plain sequences of such ints.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from sympy import factorint

from . import rank_linalg as rl
from ._rand import as_rng
from .gf import GF, is_irreducible, smallest_irreducible

_INT = np.int64
_TABLE_LIMIT = 2**16


class FieldTower:
    """F_{q^m} built directly over F_q (q = p^e).

    Use :func:`make_field` for the canonical (smallest-modulus) instance.

    Attributes:
        p, e, m: characteristic, base degree, top degree.
        q: size of the base field.
        base: the :class:`GF` for F_q.
        base_modulus: irreducible polynomial over F_p (lowest degree first).
        top_modulus: monic irreducible polynomial over F_q (lowest degree first).
    """

    def __init__(self, base: GF, m: int, top_modulus: tuple[int, ...]) -> None:
        if m < 1:
            raise ValueError("top degree m must be >= 1")
        top_modulus = tuple(int(c) for c in top_modulus)
        if len(top_modulus) != m + 1 or top_modulus[-1] != 1:
            raise ValueError("top modulus must be monic of degree m")
        if not is_irreducible(base.scalars, top_modulus):
            raise ValueError("top modulus is not irreducible over F_q")
        self.base = base
        self.p, self.e, self.q, self.m = base.p, base.e, base.q, m
        self.base_modulus = base.modulus
        self.top_modulus = top_modulus
        self.order = self.q**m
        self._qpows = [self.q**i for i in range(m)]
        # z^j mod f for j < 2m - 1, as coefficient columns
        red = np.zeros((m, 2 * m - 1), dtype=_INT)
        cur = np.zeros(m, dtype=_INT)
        cur[0] = 1
        low = np.asarray(top_modulus[:m], dtype=_INT)
        for j in range(2 * m - 1):
            red[:, j] = cur
            top = cur[-1]
            cur = np.concatenate([[0], cur[:-1]])
            if top:
                cur = base.sub(cur, base.mul(top, low))
        self._reduce = red
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        if self.order <= _TABLE_LIMIT:
            self._build_tables()

    def __repr__(self) -> str:
        return f"FieldTower(q={self.q}, m={self.m})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldTower) and self.descriptor() == other.descriptor()

    def __hash__(self) -> int:
        return hash(self.descriptor())

    # -- coordinates -------------------------------------------------------

    def coeffs(self, x: int) -> np.ndarray:
        """Power-basis coordinates of ``x`` (length ``m`` over F_q)."""
        out = np.empty(self.m, dtype=_INT)
        q = self.q
        for i in range(self.m):
            x, out[i] = divmod(x, q)
        return out

    def from_coeffs(self, c) -> int:
        c = np.asarray(c, dtype=_INT)
        return sum(int(ci) * qp for ci, qp in zip(c, self._qpows))

    def coeff_matrix(self, xs) -> np.ndarray:
        """``m x len(xs)`` matrix whose columns are power-basis coordinates."""
        xs = list(xs)
        M = np.empty((self.m, len(xs)), dtype=_INT)
        for j, x in enumerate(xs):
            M[:, j] = self.coeffs(int(x))
        return M

    def from_coeff_matrix(self, M) -> list[int]:
        M = np.asarray(M, dtype=_INT)
        return [self.from_coeffs(M[:, j]) for j in range(M.shape[1])]

    def embed(self, c: int) -> int:
        """F_q -> F_{q^m}."""
        return int(c)

    def in_base(self, x: int) -> bool:
        return 0 <= x < self.q

    # -- arithmetic --------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return self.from_coeffs(self.base.add(self.coeffs(a), self.coeffs(b)))

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return self.from_coeffs(self.base.sub(self.coeffs(a), self.coeffs(b)))

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return self.from_coeffs(self.base.neg(self.coeffs(a)))

    def scale(self, c: int, x: int) -> int:
        """Multiply by a base-field scalar ``c``."""
        if c == 1:
            return x
        return self.from_coeffs(self.base.mul(c, self.coeffs(x)))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_slow(a, b)

    def _mul_slow(self, a: int, b: int) -> int:
        F = self.base
        ca, cb = self.coeffs(a), self.coeffs(b)
        conv = np.zeros(2 * self.m - 1, dtype=_INT)
        for i in range(self.m):
            if ca[i]:
                conv[i : i + self.m] = F.add(conv[i : i + self.m], F.mul(ca[i], cb))
        return self.from_coeffs(F.matmul(self._reduce, conv))

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        if self._exp is not None:
            if a == 0:
                return 0 if n else 1
            return self._exp[(self._log[a] * n) % (self.order - 1)]
        result = 1
        while n:
            if n & 1:
                result = self.mul(result, a)
            n >>= 1
            if n:
                a = self.mul(a, a)
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_{q^m}")
        if self._exp is not None:
            return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def frobenius(self, x: int, i: int = 1) -> int:
        """``x^(q^i)``; ``i`` may be negative (inverse Frobenius)."""
        i %= self.m
        if i == 0 or x == 0:
            return x
        if self._exp is not None:
            return self._exp[(self._log[x] * self._qpows[i]) % (self.order - 1)]
        return self.from_coeffs(self.base.matmul(self._frob_matrix(i), self.coeffs(x)))

    def _frob_matrix(self, i: int) -> np.ndarray:
        cache = self.__dict__.setdefault("_frob_cache", {})
        if i not in cache:
            if i == 1:
                cols = [self.pow(self.q**j if j else 1, self.q) for j in range(self.m)]
                cache[1] = self.coeff_matrix(cols)
            else:
                cache[i] = self.base.matmul(self._frob_matrix(1), self._frob_matrix(i - 1))
        return cache[i]

    def mul_matrix(self, a: int) -> np.ndarray:
        """Matrix (power basis) of the F_q-linear map ``x -> a x``."""
        return self.coeff_matrix([self.mul(a, self.q**j if j else 1) for j in range(self.m)])

    def _build_tables(self) -> None:
        n = self.order - 1
        factors = list(factorint(n)) if n > 1 else []
        gen = None
        for g in range(1, self.order):
            if all(self._pow_slow(g, n // r) != 1 for r in factors):
                gen = g
                break
        assert gen is not None
        exp = [0] * (2 * n + 1)
        log = [0] * self.order
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = self._mul_slow(x, gen)
        exp[n : 2 * n] = exp[:n]
        self._exp, self._log = exp, log
        self.primitive = gen

    def _pow_slow(self, a: int, n: int) -> int:
        result = 1
        while n:
            if n & 1:
                result = self._mul_slow(result, a)
            n >>= 1
            if n:
                a = self._mul_slow(a, a)
        return result

    # -- sampling ----------------------------------------------------------

    def random_element(self, rng: np.random.Generator) -> int:
        return self.from_coeffs(self.base.random(rng, self.m))

    def random_nonzero(self, rng: np.random.Generator) -> int:
        while True:
            x = self.random_element(rng)
            if x:
                return x

    @cached_property
    def generator(self) -> int:
        """A fixed primitive element of F_{q^m}."""
        if self._exp is not None:
            return self.primitive
        n = self.order - 1
        factors = list(factorint(n))
        g = 1
        while True:
            g += 1
            if all(self.pow(g, n // r) != 1 for r in factors):
                return g

    # -- serialisation -----------------------------------------------------

    def descriptor(self) -> bytes:
        """Canonical byte string (p, e, m, base modulus, top modulus)."""
        out = struct.pack("<IHH", self.p, self.e, self.m)
        out += struct.pack(f"<{self.e + 1}I", *self.base_modulus)
        out += struct.pack(f"<{self.m + 1}I", *self.top_modulus)
        return out

    @classmethod
    def from_descriptor(cls, data: bytes, offset: int = 0) -> tuple["FieldTower", int]:
        p, e, m = struct.unpack_from("<IHH", data, offset)
        offset += 8
        base_mod = struct.unpack_from(f"<{e + 1}I", data, offset)
        offset += 4 * (e + 1)
        top_mod = struct.unpack_from(f"<{m + 1}I", data, offset)
        offset += 4 * (m + 1)
        return cls(GF(p, e, base_mod), m, top_mod), offset


_FIELD_CACHE: dict[tuple[int, int, int], FieldTower] = {}


def make_field(p: int, e: int, m: int) -> FieldTower:
    """Deterministic F_{q^m}, q = p^e, from the smallest irreducible moduli."""
    if e < 1 or m < 1:
        raise ValueError("e and m must be >= 1")
    key = (p, e, m)
    if key not in _FIELD_CACHE:
        base = GF(p, e)
        top = smallest_irreducible(base.scalars, m)
        _FIELD_CACHE[key] = FieldTower(base, m, top)
    return _FIELD_CACHE[key]


def field_for_q(q: int, m: int) -> FieldTower:
    """``make_field`` from the base-field size instead of ``(p, e)``."""
    f = factorint(q)
    if len(f) != 1:
        raise ValueError(f"q={q} is not a prime power")
    (p, e), = f.items()
    return make_field(p, e, m)


# -- bases and expansion ------------------------------------------------------


@dataclass(frozen=True)
class QBasis:
    """Ordered F_q-basis ``(b_1, ..., b_m)`` of F_{q^m}.

    ``from_coords`` maps B-coordinates to power-basis coordinates (its columns
    are the power coordinates of the ``b_j``); ``to_coords`` is its inverse.
    """

    field: FieldTower
    elements: tuple[int, ...]
    to_coords: np.ndarray
    from_coords: np.ndarray

    @classmethod
    def from_elements(cls, field: FieldTower, elements) -> "QBasis":
        elements = tuple(int(x) for x in elements)
        if len(elements) != field.m:
            raise ValueError(f"a basis needs exactly m={field.m} elements")
        P = field.coeff_matrix(elements)
        try:
            T = rl.inverse(field.base, P)
        except rl.NoSolutionError:
            raise ValueError("elements are not F_q-linearly independent") from None
        P.setflags(write=False)
        T.setflags(write=False)
        return cls(field, elements, T, P)

    def coords(self, x: int) -> np.ndarray:
        return self.field.base.matmul(self.to_coords, self.field.coeffs(x))

    def element(self, c) -> int:
        return self.field.from_coeffs(self.field.base.matmul(self.from_coords, np.asarray(c, dtype=_INT)))

    def mul_matrix(self, a: int) -> np.ndarray:
        """Matrix in this basis of ``x -> a x``."""
        F = self.field.base
        return F.matmul(F.matmul(self.to_coords, self.field.mul_matrix(a)), self.from_coords)

    def frobenius_matrix(self, i: int = 1) -> np.ndarray:
        """Matrix in this basis of ``x -> x^(q^i)``."""
        fld = self.field
        cols = [self.coords(fld.frobenius(b, i)) for b in self.elements]
        return np.stack(cols, axis=1)


def power_basis(field: FieldTower) -> QBasis:
    return QBasis.from_elements(field, [field.q**i for i in range(field.m)])


def random_basis(field: FieldTower, seed=None) -> QBasis:
    """Uniformly random ordered basis (rejection sampling on invertibility)."""
    rng = as_rng(seed)
    F = field.base
    while True:
        P = F.random(rng, (field.m, field.m))
        if rl.rank(F, P) == field.m:
            return QBasis.from_elements(field, field.from_coeff_matrix(P))


def expand_mat(B: QBasis, x) -> np.ndarray:
    """``phi_B^mat``: column ``i`` holds the B-coordinates of ``x_i``."""
    fld = B.field
    return fld.base.matmul(B.to_coords, fld.coeff_matrix(x))


def expand_vec(B: QBasis, x) -> np.ndarray:
    """``phi_B^vec``: coordinate ``i`` occupies positions ``i*m .. i*m+m-1``."""
    return rl.unfold(expand_mat(B, x))


def contract_mat(B: QBasis, M) -> list[int]:
    """Inverse of :func:`expand_mat`."""
    fld = B.field
    M = np.asarray(M, dtype=_INT)
    if M.shape[0] != fld.m:
        raise ValueError(f"expected {fld.m} rows")
    return fld.from_coeff_matrix(fld.base.matmul(B.from_coords, M))


def contract_vec(B: QBasis, v) -> list[int]:
    """Inverse of :func:`expand_vec`."""
    return contract_mat(B, rl.fold(v, B.field.m))


def rank_weight(field: FieldTower, x) -> int:
    """F_q-dimension of the span of the coordinates of ``x``."""
    x = list(x)
    if not x:
        return 0
    return rl.rank(field.base, field.coeff_matrix(x))


def span_basis(field: FieldTower, xs) -> list[int]:
    """Canonical F_q-basis of ``span(xs)``."""
    xs = list(xs)
    if not xs:
        return []
    R = rl.row_basis(field.base, field.coeff_matrix(xs).T)
    return [field.from_coeffs(r) for r in R]


def span_elements(field: FieldTower, basis) -> list[int]:
    """All ``q^s`` elements of the F_q-span of ``basis`` (toy sizes only)."""
    out = [0]
    for b in basis:
        multiples = [field.scale(c, b) for c in range(field.q)]
        out = [field.add(x, y) for x in out for y in multiples]
    return out
