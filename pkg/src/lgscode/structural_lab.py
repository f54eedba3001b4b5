"""Structural experiments on LGS public codes.

* generator-completion normal form, unique completion and the toy exhaustive
  completion search (full and punctured);
* the Overbeck-like statistic ``dim(C + uC)``;
* stabilizer census over random (or structured) subcodes.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from . import rank_linalg as rl
from . import stab_algebra as sa
from ._rand import as_rng
from .field_tower import QBasis, expand_mat, field_for_q, random_basis
from .gabidulin import GabCode, LambdaGabCode, expanded_generator, random_support, sample_lambda
from .gf import GF
from .subcodes import random_subcode, subspace_subcode

_INT = np.int64


class Exhausted(RuntimeError):
    """The completion search accepted no candidate."""


# -- normal form and completion ----------------------------------------------


@dataclass(frozen=True)
class NormalForm:
    """Generator ``((I_{k'} A_1) Q | A_2)`` of a subcode.

    ``order[i]`` is the column of the first ``km`` that receives column ``i``
    of ``(I A_1)``; ``Q[i, order[i]] = 1``.
    """

    order: tuple[int, ...]
    a1: np.ndarray
    a2: np.ndarray
    km: int

    @property
    def k_prime(self) -> int:
        return self.a1.shape[0]

    @property
    def perm(self) -> np.ndarray:
        Q = np.zeros((self.km, self.km), dtype=_INT)
        Q[np.arange(self.km), list(self.order)] = 1
        return Q

    def top(self, F: GF) -> np.ndarray:
        """``(I_{k'} A_1) Q``."""
        left = np.hstack([np.eye(self.k_prime, dtype=_INT), self.a1])
        return F.matmul(left, self.perm)

    def generator(self, F: GF) -> np.ndarray:
        return np.hstack([self.top(F), self.a2])


def normal_form(F: GF, gen, km: int) -> NormalForm:
    """Normal form with pivots chosen greedily (leftmost) in the first ``km`` columns.

    Raises:
        ValueError: if the projection on the first ``km`` columns is not injective.
    """
    gen = rl.row_basis(F, gen)
    kp = gen.shape[0]
    R, piv = rl.rref(F, gen, ncols=km)
    if len(piv) != kp:
        raise ValueError("the first km coordinates do not carry the whole subcode")
    pset = set(piv)
    rest = [c for c in range(km) if c not in pset]
    order = tuple(piv) + tuple(rest)
    return NormalForm(order, R[:, rest].copy(), R[:, km:].copy(), km)


def generator_oracle(F: GF, parent_gen, km: int):
    """White-box oracle: parent codeword with a given projection on the first ``km`` columns."""
    G = np.asarray(parent_gen, dtype=_INT)
    head = G[:, :km]

    def oracle(u) -> np.ndarray:
        x = rl.solve_left(F, head, np.asarray(u, dtype=_INT))
        return F.matmul(x, G)

    return oracle


@dataclass(frozen=True)
class Completion:
    a3: np.ndarray
    ghat: np.ndarray


def complete(F: GF, nf: NormalForm, oracle) -> Completion:
    """Unique ``A_3``: row ``j`` is the tail of the parent preimage of ``(0 e_j) Q``."""
    km, kp = nf.km, nf.k_prime
    Q = nf.perm
    rows = []
    for j in range(km - kp):
        u = np.zeros(km, dtype=_INT)
        u[kp + j] = 1
        c = np.asarray(oracle(F.matmul(u, Q)), dtype=_INT)
        if not np.array_equal(c[:km], F.matmul(u, Q)):
            raise ValueError("oracle returned a word with the wrong projection")
        rows.append(c[km:])
    tail = nf.a2.shape[1]
    a3 = np.array(rows, dtype=_INT).reshape(km - kp, tail)
    bottom = np.hstack([F.matmul(np.hstack([np.zeros((km - kp, kp), dtype=_INT), np.eye(km - kp, dtype=_INT)]), Q), a3])
    return Completion(a3, np.vstack([nf.generator(F), bottom]))


def completed_generator(F: GF, nf: NormalForm, a3) -> np.ndarray:
    km, kp = nf.km, nf.k_prime
    sel = np.hstack([np.zeros((km - kp, kp), dtype=_INT), np.eye(km - kp, dtype=_INT)])
    bottom = np.hstack([F.matmul(sel, nf.perm), np.asarray(a3, dtype=_INT)])
    return np.vstack([nf.generator(F), bottom])


def puncture(gen, m: int, keep: int) -> np.ndarray:
    """Keep the first ``keep`` extension coordinates (``m * keep`` q-ary columns)."""
    return np.asarray(gen, dtype=_INT)[:, : m * keep].copy()


@dataclass
class SearchResult:
    visited: int
    accepted: list[np.ndarray] = field(default_factory=list)

    @property
    def found(self) -> np.ndarray:
        return self.accepted[0]


def completion_search_toy(F: GF, nf: NormalForm, validator, budget_bits: int = 24, stop_at_first: bool = False) -> SearchResult:
    """Exhaustive search over every ``A_3`` in ``F_q^{(km-k') x tail}``.

    ``validator(ghat)`` decides acceptance. For the punctured variant pass the
    normal form of :func:`puncture`-d generators (``tail = m``).

    Raises:
        ValueError: if the search space exceeds ``budget_bits``.
        Exhausted: if no candidate is accepted.
    """
    rows, cols = nf.km - nf.k_prime, nf.a2.shape[1]
    cells = rows * cols
    bits = cells * np.log2(F.q)
    if bits > min(budget_bits, 24):
        raise ValueError(f"search space of {bits:.1f} bits exceeds the toy budget")
    res = SearchResult(0)
    for flat in itertools.product(range(F.q), repeat=cells):
        res.visited += 1
        a3 = np.array(flat, dtype=_INT).reshape(rows, cols)
        if validator(completed_generator(F, nf, a3)):
            res.accepted.append(a3)
            if stop_at_first:
                break
    if not res.accepted:
        raise Exhausted(f"no candidate accepted among {res.visited}")
    return res


def equality_validator(F: GF, parent_gen):
    """White-box validator: the completed matrix spans the parent code."""
    G = np.asarray(parent_gen, dtype=_INT)
    return lambda ghat: rl.same_rowspace(F, ghat, G)


def stabilizer_validator(F: GF, m: int):
    """Black-box heuristic: full rank and right stabilizer of dimension >= m."""

    def check(ghat) -> bool:
        if rl.rank(F, ghat) != ghat.shape[0]:
            return False
        return sa.algebra(F, rl.fold(ghat, m), "right", "stabilizer").dim >= m

    return check


# -- Overbeck-like statistic ---------------------------------------------------


def overbeck_statistic(F: GF, gens, u) -> int:
    """``dim(C + uC)`` for a matrix code ``C`` (stack ``(k', m, n)``)."""
    G = np.asarray(gens, dtype=_INT)
    u = np.asarray(u, dtype=_INT)
    uG = np.stack([F.matmul(u, g) for g in G]) if G.shape[0] else G
    return rl.rank(F, np.vstack([rl.unfold(G), rl.unfold(uG)])) if G.shape[0] else 0


def frobenius_in_basis(B: QBasis) -> np.ndarray:
    """White-box ``u``: the matrix of ``x -> x^q`` in the secret basis."""
    return B.frobenius_matrix(1)


def random_matrix_code(F: GF, kp: int, m: int, n: int, seed=None) -> np.ndarray:
    rng = as_rng(seed)
    while True:
        M = F.random(rng, (kp, m * n))
        if rl.rank(F, M) == kp:
            return rl.fold(M, m)


# -- stabilizer census ---------------------------------------------------------


@dataclass
class CensusResult:
    trials: int
    trivial_count: int
    left_trivial: int
    right_trivial: int
    left_hist: dict[int, int]
    right_hist: dict[int, int]
    per_trial: list[tuple[int, int]]

    @property
    def trivial_fraction(self) -> float:
        return self.trivial_count / self.trials if self.trials else 0.0

    def to_dict(self, raw: bool = False) -> dict:
        d = {
            "trials": self.trials,
            "trivial_count": self.trivial_count,
            "trivial_fraction": self.trivial_fraction,
            "left_trivial": self.left_trivial,
            "right_trivial": self.right_trivial,
            "left_dim_histogram": {str(k): v for k, v in sorted(self.left_hist.items())},
            "right_dim_histogram": {str(k): v for k, v in sorted(self.right_hist.items())},
        }
        if raw:
            d["per_trial"] = [list(t) for t in self.per_trial]
        return d


def parent_code(q: int, m: int, n: int, k: int, delta: int = 1, seed=None) -> tuple[LambdaGabCode, QBasis]:
    """Seeded parent λ-Gabidulin code and expansion basis."""
    fld = field_for_q(q, m)
    g = random_support(fld, n, (seed, "support"))
    lam = sample_lambda(fld, n, delta, (seed, "lambda"))
    B = random_basis(fld, (seed, "basis"))
    return LambdaGabCode(GabCode(fld, g, k), lam), B


def stabilizer_census(
    q: int,
    m: int,
    n: int,
    k: int,
    k_prime: int,
    trials: int,
    seed=0,
    delta: int = 1,
    family: str = "random",
    s: int | None = None,
) -> CensusResult:
    """Left/right stabilizer dimensions over unfiltered subcodes of one parent.

    Args:
        family: ``"random"`` (``P G^vec`` subcodes of dimension ``k'``) or
            ``"subspace"`` (subspace subcodes ``C ∩ V^n`` with random ``V`` of
            dimension ``s``; ``k'`` is then ignored).
    """
    code, B = parent_code(q, m, n, k, delta, seed)
    F = code.field.base
    Gvec = expanded_generator(code, B)
    per = []
    for t in range(trials):
        if family == "random":
            sub = random_subcode(F, Gvec, k_prime, (seed, "census", t), allow_divisible=True)
            gens = rl.fold(sub.gen, m)
        elif family == "subspace":
            if s is None:
                raise ValueError("the subspace family needs s")
            V = random_support(code.field, s, (seed, "census-V", t))
            words = subspace_subcode(code, V)
            gens = np.stack([expand_mat(B, w) for w in words]) if words else np.zeros((0, m, n), dtype=_INT)
        else:
            raise ValueError(f"unknown family {family!r}")
        left = sa.algebra(F, gens, "left", "stabilizer").dim
        right = sa.algebra(F, gens, "right", "stabilizer").dim
        per.append((left, right))
    lh = Counter(l for l, _ in per)
    rh = Counter(r for _, r in per)
    return CensusResult(
        trials=trials,
        trivial_count=sum(1 for l, r in per if l == 1 and r == 1),
        left_trivial=lh.get(1, 0),
        right_trivial=rh.get(1, 0),
        left_hist=dict(lh),
        right_hist=dict(rh),
        per_trial=per,
    )
