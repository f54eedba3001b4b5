"""F_q-linear subcodes of (λ-)Gabidulin codes.

Subcodes are returned as F_q-bases: lists of words over F_{q^m}. Intersections
are computed in the power-basis expansion, where an F_q-subspace of words is a
row space over F_q.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from . import rank_linalg as rl
from ._rand import as_rng
from .field_tower import FieldTower, span_basis
from .gabidulin import GabCode, LambdaGabCode, gen_matrix, lambda_gen_matrix
from .qpoly import QPoly, compose, cofactor, evaluate, subspace_poly

_INT = np.int64


# -- expansion helpers ----------------------------------------------------


def words_to_rows(field: FieldTower, words) -> np.ndarray:
    """Power-basis expansion of each word as a length-``mn`` row over F_q."""
    words = [list(w) for w in words]
    if not words:
        return np.zeros((0, 0), dtype=_INT)
    return np.stack([rl.unfold(field.coeff_matrix(w)) for w in words])


def rows_to_words(field: FieldTower, rows) -> list[list[int]]:
    rows = np.asarray(rows, dtype=_INT)
    return [field.from_coeff_matrix(rl.fold(r, field.m)) for r in rows]


def fq_span_words(field: FieldTower, gen) -> list[list[int]]:
    """F_q-generators of the F_{q^m}-span of the rows of ``gen``."""
    out = []
    for row in gen:
        for j in range(field.m):
            z = field.q**j
            out.append([field.mul(z, int(x)) for x in row])
    return out


def code_generator(code: GabCode | LambdaGabCode) -> list[list[int]]:
    return lambda_gen_matrix(code) if isinstance(code, LambdaGabCode) else gen_matrix(code)


def restriction_rows(field: FieldTower, spaces) -> np.ndarray:
    """Expanded F_q-basis of ``V_1 x ... x V_n``."""
    n = len(spaces)
    rows = []
    for i, V in enumerate(spaces):
        for v in span_basis(field, V):
            w = [0] * n
            w[i] = v
            rows.append(rl.unfold(field.coeff_matrix(w)))
    if not rows:
        return np.zeros((0, field.m * n), dtype=_INT)
    return np.stack(rows)


def intersect_with_restriction(field: FieldTower, fq_words, spaces) -> list[list[int]]:
    """F_q-basis of ``span_Fq(fq_words) ∩ (V_1 x ... x V_n)``."""
    n = len(spaces)
    A = words_to_rows(field, fq_words)
    Bm = restriction_rows(field, spaces)
    if A.shape[0] == 0 or Bm.shape[0] == 0:
        return []
    inter = rl.intersect_rowspaces(field.base, A, Bm)
    return rows_to_words(field, inter) if inter.shape[0] else []


def fq_dim(field: FieldTower, words) -> int:
    words = list(words)
    return rl.rank(field.base, words_to_rows(field, words)) if words else 0


def same_fq_span(field: FieldTower, A, B) -> bool:
    A, B = list(A), list(B)
    if not A or not B:
        return fq_dim(field, A) == fq_dim(field, B) == 0
    return rl.same_rowspace(field.base, words_to_rows(field, A), words_to_rows(field, B))


def _check_subspace(field: FieldTower, V) -> list[int]:
    V = [int(v) for v in V]
    if len(span_basis(field, V)) != len(V):
        raise ValueError("subspace generators are not F_q-linearly independent")
    return V


# -- subspace subcodes ------------------------------------------------------


def subspace_subcode(code: GabCode | LambdaGabCode, V, method: str = "generic") -> list[list[int]]:
    """F_q-basis of ``C ∩ V^n``.

    Args:
        method: ``"generic"`` (expanded intersection) or ``"qpoly"``, the
            parametrization ``((Q o A)(g_i))_i`` with ``Q`` the cofactor of the
            subspace polynomial of ``V`` and ``qdeg A < k - (m - s)``. The latter
            needs a classical Gabidulin code with ``m = n``.
    """
    fld = code.field
    V = _check_subspace(fld, V)
    if method == "generic":
        words = fq_span_words(fld, code_generator(code))
        return intersect_with_restriction(fld, words, [V] * code.n)
    if method == "qpoly":
        if not isinstance(code, GabCode) or code.n != fld.m:
            raise ValueError("the q-polynomial path needs a Gabidulin code with m = n")
        return _ssc_qpoly(code, V)
    raise ValueError(f"unknown method {method!r}")


def _ssc_qpoly(code: GabCode, V: list[int]) -> list[list[int]]:
    fld = code.field
    s = len(V)
    Q = cofactor(subspace_poly(fld, V))
    free = code.k - (fld.m - s)
    words = []
    for i in range(max(0, free)):
        for j in range(fld.m):
            A = QPoly.monomial(fld, i, fld.q**j)
            P = compose(Q, A)
            words.append([evaluate(P, g) for g in code.g])
    return words


def generalized_subcode(code: GabCode | LambdaGabCode, spaces) -> list[list[int]]:
    """F_q-basis of ``G_lambda ∩ (V_1 x ... x V_n)``.

    Computed as ``(G ∩ prod lambda_i^{-1} V_i) * Delta``, using the bijection
    ``c -> c Delta^{-1}``.
    """
    fld = code.field
    if len(spaces) != code.n:
        raise ValueError("need one subspace per coordinate")
    spaces = [_check_subspace(fld, V) for V in spaces]
    if isinstance(code, GabCode):
        return intersect_with_restriction(fld, fq_span_words(fld, gen_matrix(code)), spaces)
    scaled = [[fld.mul(li, v) for v in V] for li, V in zip(code.lam_inv, spaces)]
    base = intersect_with_restriction(fld, fq_span_words(fld, gen_matrix(code.base)), scaled)
    return [[fld.mul(c, l) for c, l in zip(w, code.lam)] for w in base]


@dataclass(frozen=True)
class Bounds:
    """``log_q`` cardinality bounds; ``upper`` is None when the hypothesis fails."""

    lower: int
    upper: int | None
    hypothesis_holds: bool
    coincide: bool


def cardinality_bounds(m: int, n: int, k: int, s_list) -> Bounds:
    """Exponents of ``q^{sum s_i - m(n-k)} <= |G_lambda ∩ W| <= q^{m(max s_i - d + 1)}``.

    The upper bound is only available when ``max s_i - d + 1 > 0``; otherwise
    it is reported as ``None``.
    """
    s_list = [int(s) for s in s_list]
    if len(s_list) != n:
        raise ValueError("need one dimension per coordinate")
    d = n - k + 1
    lower = sum(s_list) - m * (n - k)
    holds = max(s_list) - d + 1 > 0
    upper = m * (max(s_list) - d + 1) if holds else None
    return Bounds(lower, upper, holds, holds and upper == lower)


# -- random subcodes --------------------------------------------------------


@dataclass(frozen=True)
class RandomSubcode:
    """Generator ``P * G^vec`` of a random F_q-subcode of dimension ``k'``."""

    p_matrix: np.ndarray
    gen: np.ndarray
    parent_gen: np.ndarray
    retries: int = 0
    seed_label: tuple = dc_field(default=())

    @property
    def k_prime(self) -> int:
        return self.p_matrix.shape[0]


def random_full_rank(F, rows: int, cols: int, rng) -> np.ndarray:
    while True:
        P = F.random(rng, (rows, cols))
        if rl.rank(F, P) == rows:
            return P


def random_subcode(
    F,
    parent_gen_vec,
    k_prime: int,
    seed=None,
    m: int | None = None,
    allow_divisible: bool = False,
) -> RandomSubcode:
    """Random subcode with generator ``P G^vec``, ``P`` uniform full rank ``k' x km``.

    Args:
        F: base field.
        parent_gen_vec: ``km x mn`` generator of the expanded parent code.
        m: extension degree, used to enforce ``m`` not dividing ``k'``.
        allow_divisible: skip that check (structural experiments).
    """
    G = np.asarray(parent_gen_vec, dtype=_INT)
    km = G.shape[0]
    if not 1 <= k_prime <= km or (k_prime == km and not allow_divisible):
        raise ValueError(f"need 1 <= k' < km={km}, got {k_prime}")
    if m is not None and not allow_divisible and k_prime % m == 0:
        raise ValueError(f"k'={k_prime} must not be divisible by m={m}")
    rng = as_rng(seed)
    P = random_full_rank(F, k_prime, km, rng)
    return RandomSubcode(P, F.matmul(P, G), G)


def filtered_random_subcode(
    F,
    parent_gen_vec,
    k_prime: int,
    m: int,
    n: int,
    seed=None,
    budget: int = 16,
    allow_divisible: bool = False,
) -> RandomSubcode:
    """Random subcode whose matrix form has trivial left and right stabilizers.

    Draw ``i`` uses the sub-seed ``(seed, "filter", i)``.

    Raises:
        RuntimeError: if no draw within ``budget`` passes the filter.
    """
    from .stab_algebra import is_trivial_stab

    if seed is None:
        seed = as_rng().bytes(32)
    for i in range(budget):
        sub = random_subcode(F, parent_gen_vec, k_prime, (seed, "filter", i), m, allow_divisible)
        gens = rl.fold(sub.gen, m)
        left, right = is_trivial_stab(F, gens)
        if left and right:
            return RandomSubcode(sub.p_matrix, sub.gen, sub.parent_gen, i, ("filter", i))
    raise RuntimeError(f"no stabilizer-trivial subcode within {budget} draws")
