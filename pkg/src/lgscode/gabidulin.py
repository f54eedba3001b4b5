"""Gabidulin and λ-Gabidulin codes over F_{q^m}.

Words are lists of field ints. The code ``Gab_k(g)`` is the evaluation code
``{(f(g_1), ..., f(g_n)) : qdeg f < k}``; its λ-variant multiplies column
``j`` by ``λ_j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import ext_linalg as el
from . import rank_linalg as rl
from ._rand import as_rng
from .field_tower import FieldTower, QBasis, expand_mat, rank_weight
from .qpoly import QPoly, evaluate, skew_divide_left


class DecodeFailure(Exception):
    """No codeword within the unique-decoding radius."""


@dataclass(frozen=True)
class GabCode:
    field: FieldTower
    g: tuple[int, ...]
    k: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "g", tuple(int(x) for x in self.g))
        n = len(self.g)
        if n > self.field.m:
            raise ValueError(f"length n={n} exceeds m={self.field.m}")
        if not 1 <= self.k <= n:
            raise ValueError(f"need 1 <= k <= n, got k={self.k}, n={n}")
        if rank_weight(self.field, self.g) != n:
            raise ValueError("support coordinates are not F_q-linearly independent")

    @property
    def n(self) -> int:
        return len(self.g)

    @property
    def d(self) -> int:
        return self.n - self.k + 1

    @property
    def radius(self) -> int:
        return (self.n - self.k) // 2


@dataclass(frozen=True)
class LambdaGabCode:
    base: GabCode
    lam: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "lam", tuple(int(x) for x in self.lam))
        if len(self.lam) != self.base.n:
            raise ValueError("multiplier length differs from code length")
        if any(x == 0 for x in self.lam):
            raise ValueError("multipliers must be nonzero")

    @property
    def field(self) -> FieldTower:
        return self.base.field

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def k(self) -> int:
        return self.base.k

    @cached_property
    def lam_inv(self) -> tuple[int, ...]:
        return tuple(self.field.inv(x) for x in self.lam)

    @cached_property
    def delta(self) -> int:
        return rank_weight(self.field, self.lam_inv)

    @property
    def radius(self) -> int:
        """Guaranteed correction radius ``floor(floor((n-k)/2) / delta)``."""
        return self.base.radius // self.delta


@dataclass(frozen=True)
class RankError:
    """Error word ``e`` (power basis) together with its ``m x n`` matrix form."""

    e: tuple[int, ...]
    matrix: np.ndarray
    t: int


# -- generators and encoding ----------------------------------------------


def gen_matrix(code: GabCode) -> list[list[int]]:
    """Row ``i`` is ``(g_1^{q^i}, ..., g_n^{q^i})``, ``0 <= i < k``."""
    fld = code.field
    rows = [list(code.g)]
    for _ in range(1, code.k):
        rows.append([fld.frobenius(x, 1) for x in rows[-1]])
    return rows


def lambda_gen_matrix(code: LambdaGabCode) -> list[list[int]]:
    """``G * Diag(lambda)``."""
    fld = code.field
    return [[fld.mul(x, l) for x, l in zip(row, code.lam)] for row in gen_matrix(code.base)]


def _scale_word(field: FieldTower, x, s) -> list[int]:
    return [field.mul(int(a), int(b)) for a, b in zip(x, s)]


def encode(code: GabCode | LambdaGabCode, msg) -> list[int]:
    """``msg * G`` (times ``Delta`` for a λ-code)."""
    msg = [int(x) for x in msg]
    if len(msg) != code.k:
        raise ValueError(f"message length must be k={code.k}")
    base = code.base if isinstance(code, LambdaGabCode) else code
    c = evaluate_message(base, msg)
    if isinstance(code, LambdaGabCode):
        c = _scale_word(code.field, c, code.lam)
    return c


def evaluate_message(code: GabCode, msg) -> list[int]:
    """Codeword as evaluation of the q-polynomial with coefficients ``msg``."""
    f = QPoly(code.field, tuple(int(x) for x in msg))
    return [evaluate(f, x) for x in code.g]


# -- decoding -------------------------------------------------------------


def decode(code: GabCode, y) -> tuple[list[int], list[int]]:
    """Unique decoding up to rank ``floor((n-k)/2)`` by linearized interpolation.

    Finds ``V`` (qdeg <= t) and ``N`` (qdeg <= k-1+t), not both zero, with
    ``V(y_i) = N(g_i)``, then ``f`` with ``N = V o f``.

    Returns:
        ``(codeword, error)``.

    Raises:
        DecodeFailure: if no codeword lies within the radius.
    """
    fld = code.field
    y = [int(x) for x in y]
    n, k, t = code.n, code.k, code.radius
    if len(y) != n:
        raise ValueError(f"received word must have length n={n}")
    msg = _interpolate(code, y, t)
    c = evaluate_message(code, msg)
    e = [fld.sub(a, b) for a, b in zip(y, c)]
    if rank_weight(fld, e) > t:
        raise DecodeFailure("error rank exceeds the decoding radius")
    return c, e


def decode_message(code: GabCode, y) -> list[int]:
    """Message (q-polynomial coefficients) of the decoded codeword."""
    c, _ = decode(code, y)
    return _interpolate(code, c, 0)


def _interpolate(code: GabCode, y: list[int], t: int) -> list[int]:
    fld = code.field
    n, k = code.n, code.k
    ypow = [y]
    for _ in range(t):
        ypow.append([fld.frobenius(x, 1) for x in ypow[-1]])
    gpow = [list(code.g)]
    for _ in range(k - 1 + t):
        gpow.append([fld.frobenius(x, 1) for x in gpow[-1]])
    rows = [[ypow[j][i] for j in range(t + 1)] + [fld.neg(gpow[l][i]) for l in range(k + t)] for i in range(n)]
    ker = el.kernel(fld, rows)
    if not ker:
        raise DecodeFailure("interpolation system has no nonzero solution")
    sol = ker[0]
    V = QPoly(fld, tuple(sol[: t + 1]))
    N = QPoly(fld, tuple(sol[t + 1 :]))
    if V.is_zero():
        raise DecodeFailure("degenerate interpolation solution")
    f, r = skew_divide_left(N, V)
    if not r.is_zero() or f.qdeg >= k:
        raise DecodeFailure("interpolation polynomials are not compatible")
    return list(f.coeffs) + [0] * (k - len(f.coeffs))


def lambda_decode(code: LambdaGabCode, y) -> tuple[list[int], list[int]]:
    """Decode in ``G * Delta`` by unscaling, decoding in ``G`` and rescaling.

    The unscaled error ``e * Delta^{-1}`` has rank at most ``delta * rk(e)``, so
    errors of rank up to :attr:`LambdaGabCode.radius` are corrected.
    """
    fld = code.field
    y = [int(x) for x in y]
    c0, _ = decode(code.base, _scale_word(fld, y, code.lam_inv))
    c = _scale_word(fld, c0, code.lam)
    e = [fld.sub(a, b) for a, b in zip(y, c)]
    return c, e


def lambda_decode_message(code: LambdaGabCode, y) -> list[int]:
    fld = code.field
    return decode_message(code.base, _scale_word(fld, y, code.lam_inv))


# -- sampling -------------------------------------------------------------


def random_support(field: FieldTower, n: int, seed=None) -> tuple[int, ...]:
    """Random F_q-independent ``n``-tuple (rejection sampling)."""
    if not 1 <= n <= field.m:
        raise ValueError(f"need 1 <= n <= m={field.m}")
    rng = as_rng(seed)
    while True:
        M = field.base.random(rng, (field.m, n))
        if rl.rank(field.base, M) == n:
            return tuple(field.from_coeff_matrix(M))


def random_code(field: FieldTower, n: int, k: int, seed=None) -> GabCode:
    return GabCode(field, random_support(field, n, as_rng(seed, "support")), k)


def sample_lambda(field: FieldTower, n: int, delta: int, seed=None) -> tuple[int, ...]:
    """Multipliers ``lambda`` with ``rank_weight(lambda^{-1}) == delta``.

    Each ``lambda_i^{-1}`` is a random nonzero element of the span of ``delta``
    random independent elements; redrawn until the span is reached.
    """
    if not 1 <= delta <= min(n, field.m):
        raise ValueError(f"delta={delta} unreachable for n={n}, m={field.m}")
    rng = as_rng(seed)
    F = field.base
    mu = random_support(field, delta, rng)
    Mu = field.coeff_matrix(mu)
    while True:
        C = F.random(rng, (delta, n))
        if np.any(np.all(C == 0, axis=0)):
            continue
        if rl.rank(F, C) == delta:
            break
    inv = field.from_coeff_matrix(F.matmul(Mu, C))
    return tuple(field.inv(x) for x in inv)


def sample_error_matrix(F, m: int, n: int, t: int, rng) -> np.ndarray:
    """``m x n`` matrix of rank exactly ``t`` as ``A B`` with full-rank factors."""
    if not 0 <= t <= min(m, n):
        raise ValueError(f"rank t={t} impossible for {m}x{n}")
    if t == 0:
        return np.zeros((m, n), dtype=np.int64)
    while True:
        A = F.random(rng, (m, t))
        B = F.random(rng, (t, n))
        if rl.rank(F, A) == t and rl.rank(F, B) == t:
            return F.matmul(A, B)


def sample_error(field: FieldTower, n: int, t: int, seed=None) -> RankError:
    """Random error of rank exactly ``t`` (power-basis word and matrix form)."""
    rng = as_rng(seed)
    E = sample_error_matrix(field.base, field.m, n, t, rng)
    return RankError(tuple(field.from_coeff_matrix(E)), E, t)


def random_message(field: FieldTower, k: int, seed=None) -> list[int]:
    rng = as_rng(seed)
    return [field.random_element(rng) for _ in range(k)]


def expanded_generator(code: GabCode | LambdaGabCode, B: QBasis) -> np.ndarray:
    """``G^vec``: ``km x mn`` matrix over F_q, row ``j*m + i`` is ``phi_B^vec(b_i * row_j)``."""
    G = lambda_gen_matrix(code) if isinstance(code, LambdaGabCode) else gen_matrix(code)
    fld = code.field
    rows = []
    for row in G:
        for b in B.elements:
            rows.append(rl.unfold(expand_mat(B, [fld.mul(b, x) for x in row])))
    return np.array(rows, dtype=np.int64).reshape(len(G) * fld.m, fld.m * code.n)
