"""Prime-power field F_q with vectorised numpy arithmetic.

Elements of F_q (q = p^e) are integers in ``[0, q)`` whose base-p digits are
the coefficients of a polynomial in ``y`` reduced modulo the base modulus.
All operations accept scalars or numpy arrays and return ``int64`` arrays.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np
from sympy import factorint, isprime

_INT = np.int64


# ---------------------------------------------------------------------------
# Dense polynomial helpers over a small scalar field (lowest degree first).
# Used only for modulus search, so clarity beats speed here.
# ---------------------------------------------------------------------------


class _PrimeScalars:
    def __init__(self, p: int) -> None:
        self.p = p
        self.q = p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)


class _GFScalars:
    """Scalar view on a :class:`GF` using python-level tables (ints in, ints out)."""

    def __init__(self, F: "GF") -> None:
        self.F = F
        self.q = F.q
        self._p = F.p
        self._exp = F._exp.tolist()
        self._log = F._log.tolist()
        self._n = F.q - 1

    def add(self, a, b):
        if self._p == 2:
            return a ^ b
        if self.F.e == 1:
            return (a + b) % self._p
        return int(self.F.add(a, b))

    def sub(self, a, b):
        if self._p == 2:
            return a ^ b
        if self.F.e == 1:
            return (a - b) % self._p
        return int(self.F.sub(a, b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        if self.F.e == 1:
            return (a * b) % self._p
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(self._n - self._log[a]) % self._n]


def _trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _poly_mulmod(K, a: list[int], b: list[int], f: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if bj:
                out[i + j] = K.add(out[i + j], K.mul(ai, bj))
    return _poly_mod(K, _trim(out), f)


def _poly_mod(K, a: list[int], f: list[int]) -> list[int]:
    a = list(a)
    d = len(f) - 1
    lead_inv = K.inv(f[-1])
    while len(a) - 1 >= d and a:
        c = K.mul(a[-1], lead_inv)
        shift = len(a) - 1 - d
        for i, fi in enumerate(f):
            if fi:
                a[shift + i] = K.sub(a[shift + i], K.mul(c, fi))
        _trim(a)
    return a


def _poly_powmod(K, a: list[int], n: int, f: list[int]) -> list[int]:
    result = [1]
    base = _poly_mod(K, a, f)
    while n:
        if n & 1:
            result = _poly_mulmod(K, result, base, f)
        n >>= 1
        if n:
            base = _poly_mulmod(K, base, base, f)
    return result


def _poly_gcd(K, a: list[int], b: list[int]) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(K, a, b)
    return a


def _is_irreducible(K, f: list[int]) -> bool:
    """Ben-Or test for a monic ``f`` of degree >= 1 over the scalar field K.

    Checks ``gcd(x^(Q^i) - x, f) = 1`` for ``i <= d/2`` and stops at the first
    factor found, so most reducible candidates are rejected after a step or two.
    """
    d = len(f) - 1
    if d == 1:
        return True
    if f[0] == 0:
        return False
    xq = [0, 1]
    for _ in range(d // 2):
        xq = _poly_powmod(K, xq, K.q, f)
        h = list(xq) + [0] * 2
        h[1] = K.sub(h[1], 1)
        if len(_poly_gcd(K, _trim(h), f)) > 1:
            return False
    return True


def smallest_irreducible(K, d: int) -> tuple[int, ...]:
    """Smallest monic irreducible polynomial of degree ``d`` over K.

    Candidates are ordered by the integer ``sum(a_i * Q^i)`` of their
    non-leading coefficients, i.e. lexicographically from ``a_{d-1}`` down to
    ``a_0``. Returned lowest degree first, leading 1 included.
    """
    if d < 1:
        raise ValueError("degree must be >= 1")
    Q = K.q
    for code in range(Q**d):
        low = []
        c = code
        for _ in range(d):
            low.append(c % Q)
            c //= Q
        f = low + [1]
        if _is_irreducible(K, f):
            return tuple(f)
    raise RuntimeError("no irreducible polynomial found")  # unreachable


def is_irreducible(K, f) -> bool:
    f = list(f)
    if not f or f[-1] == 0:
        raise ValueError("polynomial must have a nonzero leading coefficient")
    inv = K.inv(f[-1])
    return _is_irreducible(K, [K.mul(c, inv) for c in f])


def _order_prime_factors(n: int) -> list[int]:
    return list(factorint(n)) if n > 1 else []


class GF:
    """The finite field F_q, q = p^e.

    Args:
        p: characteristic (prime).
        e: extension degree over F_p.
        modulus: monic irreducible polynomial of degree ``e`` over F_p,
            lowest degree first. Defaults to the smallest one.
    """

    def __init__(self, p: int, e: int = 1, modulus: tuple[int, ...] | None = None) -> None:
        if not isprime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if e < 1:
            raise ValueError("extension degree e must be >= 1")
        self.p = int(p)
        self.e = int(e)
        self.q = self.p**self.e
        if self.q > 2**16:
            raise ValueError("only q <= 2^16 is supported")
        prime = _PrimeScalars(self.p)
        if modulus is None:
            modulus = smallest_irreducible(prime, self.e)
        modulus = tuple(int(c) % self.p for c in modulus)
        if len(modulus) != self.e + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree e")
        if not is_irreducible(prime, modulus):
            raise ValueError("modulus is not irreducible")
        self.modulus = modulus
        self._pows = np.array([self.p**i for i in range(self.e)], dtype=_INT)
        self._build_tables(prime)

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.e})"

    def __eq__(self, other) -> bool:
        return isinstance(other, GF) and (self.p, self.e, self.modulus) == (
            other.p,
            other.e,
            other.modulus,
        )

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.modulus))

    # -- construction ----------------------------------------------------

    def _poly_mul_int(self, prime, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        da = self._digits_int(a)
        db = self._digits_int(b)
        r = _poly_mulmod(prime, _trim(da), _trim(db), list(self.modulus))
        return sum(c * self.p**i for i, c in enumerate(r))

    def _digits_int(self, a: int) -> list[int]:
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return out

    def _build_tables(self, prime) -> None:
        q = self.q
        factors = _order_prime_factors(q - 1)
        gen = None
        for g in range(1, q):
            ok = True
            for r in factors:
                # g^((q-1)/r) != 1
                x, n, acc = g, (q - 1) // r, 1
                while n:
                    if n & 1:
                        acc = self._poly_mul_int(prime, acc, x)
                    x = self._poly_mul_int(prime, x, x)
                    n >>= 1
                if acc == 1:
                    ok = False
                    break
            if ok:
                gen = g
                break
        assert gen is not None
        self.primitive = gen
        exp = np.zeros(2 * (q - 1) + 1, dtype=_INT)
        log = np.zeros(q, dtype=_INT)
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._poly_mul_int(prime, x, gen)
        exp[q - 1 : 2 * (q - 1)] = exp[: q - 1]
        self._exp = exp
        self._log = log

    # -- digit helpers ---------------------------------------------------

    def digits(self, a) -> np.ndarray:
        """Base-p digits of ``a``; new leading axis of length ``e``."""
        a = np.asarray(a, dtype=_INT)
        return (a[None, ...] // self._pows.reshape((-1,) + (1,) * a.ndim)) % self.p

    def from_digits(self, d) -> np.ndarray:
        d = np.asarray(d, dtype=_INT)
        return np.tensordot(self._pows, d % self.p, axes=(0, 0)).astype(_INT)

    # -- arithmetic ------------------------------------------------------

    def add(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=_INT)
        b = np.asarray(b, dtype=_INT)
        if self.p == 2:
            return a ^ b
        if self.e == 1:
            return (a + b) % self.p
        return self.from_digits(self.digits(a) + self.digits(b))

    def neg(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=_INT)
        if self.p == 2:
            return a.copy()
        if self.e == 1:
            return (-a) % self.p
        return self.from_digits(-self.digits(a))

    def sub(self, a, b) -> np.ndarray:
        if self.p == 2:
            return self.add(a, b)
        return self.add(a, self.neg(b))

    def mul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=_INT)
        b = np.asarray(b, dtype=_INT)
        if self.e == 1:
            return (a * b) % self.p
        r = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, r)

    def inv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=_INT)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in F_q")
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a, b) -> np.ndarray:
        return self.mul(a, self.inv(b))

    def sum(self, a, axis=None) -> np.ndarray:
        a = np.asarray(a, dtype=_INT)
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis)
        if self.e == 1:
            return np.sum(a, axis=axis) % self.p
        d = self.digits(a)
        ax = None if axis is None else (axis + 1 if axis >= 0 else axis)
        if ax is None:
            s = d.reshape(self.e, -1).sum(axis=1)
        else:
            s = d.sum(axis=ax)
        return self.from_digits(s)

    def matmul(self, A, B) -> np.ndarray:
        """Matrix product over F_q (digit-plane decomposition for e > 1)."""
        A = np.asarray(A, dtype=_INT)
        B = np.asarray(B, dtype=_INT)
        if self.e == 1:
            return _matmul_mod(A, B, self.p)
        Ad = self.digits(A)
        out = np.zeros((self.e,) + A.shape[:-1] + B.shape[1:], dtype=_INT)
        for i in range(self.e):
            # digit i of A times y^i * B, expanded in digit planes
            Yd = self.digits(self.mul(self.p**i, B))
            for j in range(self.e):
                out[j] += _matmul_mod(Ad[i], Yd[j], self.p)
        return self.from_digits(out)

    def random(self, rng: np.random.Generator, shape=()) -> np.ndarray:
        return rng.integers(0, self.q, size=shape, dtype=_INT)

    def random_nonzero(self, rng: np.random.Generator, shape=()) -> np.ndarray:
        return rng.integers(1, self.q, size=shape, dtype=_INT)

    @cached_property
    def scalars(self) -> _GFScalars:
        return _GFScalars(self)

    @property
    def bits(self) -> int:
        """Bits per element in packed serialisation."""
        return max(1, (self.q - 1).bit_length())


def _matmul_mod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    inner = A.shape[-1] if A.ndim else 1
    if inner * (p - 1) ** 2 < 2**52:
        r = np.matmul(A.astype(np.float64), B.astype(np.float64))
        return np.rint(r).astype(_INT) % p
    return np.matmul(A, B) % p
