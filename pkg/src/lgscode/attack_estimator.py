"""Cost model of generic MinRank attacks against the LGS public codes.

All costs are reported as ``log2`` of operation counts with big-O constants
dropped. Binomials are exact python integers; logs are taken at the end.
A MinRank instance is ``(q, m, n, K, r)``: ``K`` matrices of size ``m x n``
and target rank ``r``. For a scheme, ``r = t_pub`` and ``K = k' + 1``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from math import comb

OMEGA = 2.38
INF = float("inf")


class NoFeasibleB(ValueError):
    """No ``b`` satisfies the support-minors feasibility condition."""


@dataclass(frozen=True)
class MinRankParams:
    q: int
    m: int
    n: int
    K: int
    r: int

    def __post_init__(self) -> None:
        if self.K < 1 or self.r < 0 or self.r > min(self.m, self.n):
            raise ValueError(f"invalid MinRank parameters {self}")


def _lg(x: int | float) -> float:
    return math.log2(x) if x > 0 else -INF


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


# -- kernel attack ------------------------------------------------------------


def kernel_cost(p: MinRankParams, omega: float = OMEGA) -> float:
    """``r * ceil(K/m) * log2 q + omega * log2 K``."""
    return p.r * _ceil_div(p.K, p.m) * _lg(p.q) + omega * _lg(p.K)


# -- support minors -------------------------------------------------------------


def sm_monomial_counts(p: MinRankParams, b: int) -> tuple[int, int]:
    """Exact ``(E_b, U_b)``; the ``q = 2`` variant sums over degrees ``1..b``."""
    q, m, n, K, r = p.q, p.m, p.n, p.K, p.r
    if b < 1:
        raise ValueError("b must be >= 1")
    if q > 2:
        E = sum(
            (-1) ** (i + 1) * comb(n, r + i) * comb(m + i - 1, i) * comb(K + b - i - 1, b - i)
            for i in range(1, b + 1)
        )
        U = comb(K + b - 1, b) * comb(n, r)
    else:
        E = sum(
            (-1) ** (i + 1) * comb(n, r + i) * comb(m + i - 1, i) * comb(K, j - i)
            for j in range(1, b + 1)
            for i in range(1, j + 1)
        )
        U = comb(n, r) * sum(comb(K, j) for j in range(1, b + 1))
    return E, U


def sm_feasible(p: MinRankParams, b: int) -> bool:
    E, U = sm_monomial_counts(p, b)
    return E > 0 and U > 0 and U - 1 <= E


def smallest_b(p: MinRankParams) -> int:
    """Smallest ``1 <= b < r + 2`` with ``U_b - 1 <= E_b``."""
    for b in range(1, p.r + 2):
        if sm_feasible(p, b):
            return b
    raise NoFeasibleB(f"no feasible b for {p}")


def _sm_branches(p: MinRankParams, b: int, omega: float) -> tuple[float, float]:
    E, U = sm_monomial_counts(p, b)
    sm1 = _lg(E) + (omega - 1) * _lg(U)
    sm2 = _lg(p.K * (p.r + 1)) + _lg(E) + _lg(U)
    return sm1, sm2


@dataclass(frozen=True)
class SMCost:
    log2: float
    b: int
    sm1: float
    sm2: float


def sm_cost(p: MinRankParams, omega: float = OMEGA) -> SMCost:
    """``min(E_b U_b^{omega-1}, K(r+1) E_b U_b)`` at the smallest feasible ``b``.

    Raises:
        NoFeasibleB: when no ``b`` is feasible.
    """
    b = smallest_b(p)
    sm1, sm2 = _sm_branches(p, b, omega)
    return SMCost(min(sm1, sm2), b, sm1, sm2)


def _base_cost(p: MinRankParams, base: str, omega: float) -> float:
    if base == "kernel":
        return kernel_cost(p, omega)
    if base == "sm":
        try:
            return sm_cost(p, omega).log2
        except NoFeasibleB:
            return INF
    raise ValueError(f"unknown base solver {base!r}")


# -- hybrid strategies --------------------------------------------------------


@dataclass(frozen=True)
class HybridCost:
    log2: float
    a: int | None = None
    h: int | None = None
    b: int | None = None
    branch: str | None = None

    @property
    def feasible(self) -> bool:
        return self.log2 < INF


def _sub(p: MinRankParams, a: int, h: int) -> MinRankParams | None:
    nn, KK, rr = p.n - h - a, p.K - a * p.m, p.r - h
    if nn < 1 or KK < 1 or rr < 0 or rr > min(p.m, nn):
        return None
    return MinRankParams(p.q, p.m, nn, KK, rr)


def hybrid_cost(p: MinRankParams, base: str = "kernel", omega: float = OMEGA) -> HybridCost:
    """``min_{0 <= a < ceil(K/m)} q^{ar} TC(q, m, n-a, K-am, r)``."""
    best = HybridCost(INF)
    for a in range(_ceil_div(p.K, p.m)):
        sub = _sub(p, a, 0)
        if sub is None:
            continue
        cost = a * p.r * _lg(p.q) + _base_cost(sub, base, omega)
        if cost < best.log2:
            best = HybridCost(cost, a=a)
    return best


def subsupport_hybrid_cost(p: MinRankParams, base: str = "kernel", omega: float = OMEGA) -> HybridCost:
    """Subsupport reduction combined with the hybrid strategy.

    Minimizes ``q^{h(n-r) + a(r-h)} TC(q, m, n-h-a, K-am, r-h)`` over
    ``0 <= a < ceil(K/m)``, ``0 <= h < r``. For ``base="sm"`` the minimum also
    runs over every feasible ``1 <= b < r-h+2`` and over both branches
    ``E U^{omega-1}`` (SM1) and ``(K-am)(r-h+1) E U`` (SM2).
    """
    lq = _lg(p.q)
    best = HybridCost(INF)
    for a in range(_ceil_div(p.K, p.m)):
        for h in range(max(1, p.r)):
            sub = _sub(p, a, h)
            if sub is None:
                continue
            guess = (h * (p.n - p.r) + a * (p.r - h)) * lq
            if base == "kernel":
                cost = guess + kernel_cost(sub, omega)
                if cost < best.log2:
                    best = HybridCost(cost, a=a, h=h)
            elif base == "sm":
                for b in range(1, sub.r + 2):
                    if not sm_feasible(sub, b):
                        continue
                    sm1, sm2 = _sm_branches(sub, b, omega)
                    for branch, val in (("SM1", sm1), ("SM2", sm2)):
                        if guess + val < best.log2:
                            best = HybridCost(guess + val, a=a, h=h, b=b, branch=branch)
            else:
                raise ValueError(f"unknown base solver {base!r}")
    return best


def dist_cost(q: int, m: int, k: int, k_prime: int) -> float:
    """Completion search space ``q^{m(km - k')}`` (log2)."""
    if not k_prime < k * m:
        raise ValueError("need k' < km")
    return m * (k * m - k_prime) * _lg(q)


# -- overall work factor ------------------------------------------------------


@dataclass
class ComplexityReport:
    q: int
    m: int
    n: int
    k: int
    k_prime: int
    t_pub: int
    omega: float
    kernel_log2: float
    sm_log2: float
    sm_b: int | None
    hybrid_kernel_log2: float
    hybrid_kernel_a: int | None
    hybrid_sm_log2: float
    hybrid_sm_a: int | None
    subsupport_kernel_log2: float
    subsupport_kernel_argmin: dict = field(default_factory=dict)
    subsupport_sm_log2: float = INF
    subsupport_sm_argmin: dict = field(default_factory=dict)
    dist_log2: float = INF
    c_f_log2: float = INF
    c_f_source: str = ""

    @property
    def c_f(self) -> int:
        """Reported integer work factor (``ceil`` of the log2 value)."""
        return math.ceil(self.c_f_log2 - 1e-9)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["c_f"] = self.c_f
        return d


def c_f(
    q: int,
    m: int,
    k: int,
    k_prime: int,
    t_pub: int,
    n: int | None = None,
    omega: float = OMEGA,
) -> ComplexityReport:
    """``C_f = min(subsupport-hybrid SM, subsupport-hybrid kernel, C_dist)``."""
    n = m if n is None else n
    p = MinRankParams(q, m, n, k_prime + 1, t_pub)
    try:
        sm = sm_cost(p, omega)
        sm_log2, sm_b = sm.log2, sm.b
    except NoFeasibleB:
        sm_log2, sm_b = INF, None
    hk = hybrid_cost(p, "kernel", omega)
    hs = hybrid_cost(p, "sm", omega)
    sk = subsupport_hybrid_cost(p, "kernel", omega)
    ss = subsupport_hybrid_cost(p, "sm", omega)
    dist = dist_cost(q, m, k, k_prime)
    parts = {"subsupport_sm": ss.log2, "subsupport_kernel": sk.log2, "dist": dist}
    source = min(parts, key=parts.get)
    return ComplexityReport(
        q=q,
        m=m,
        n=n,
        k=k,
        k_prime=k_prime,
        t_pub=t_pub,
        omega=omega,
        kernel_log2=kernel_cost(p, omega),
        sm_log2=sm_log2,
        sm_b=sm_b,
        hybrid_kernel_log2=hk.log2,
        hybrid_kernel_a=hk.a,
        hybrid_sm_log2=hs.log2,
        hybrid_sm_a=hs.a,
        subsupport_kernel_log2=sk.log2,
        subsupport_kernel_argmin={"a": sk.a, "h": sk.h},
        subsupport_sm_log2=ss.log2,
        subsupport_sm_argmin={"a": ss.a, "b": ss.b, "h": ss.h, "branch": ss.branch},
        dist_log2=dist,
        c_f_log2=parts[source],
        c_f_source=source,
    )


def table_scan(target: int, search_space, omega: float = OMEGA) -> list[dict]:
    """Candidate parameter rows reaching ``C_f >= target``.

    Args:
        search_space: iterable of dicts with keys ``q, m, k, k_prime`` and
            optional ``delta`` (``n = m``); invalid rows are skipped.

    Returns:
        rows (parameters, ``t_pub``, ``c_f``, sizes) sorted by ciphertext then
        public-key size.
    """
    from .lgs_schemes import Params, sizes

    out = []
    for row in search_space:
        params = Params(
            q=int(row["q"]),
            m=int(row["m"]),
            k=int(row["k"]),
            k_prime=int(row["k_prime"]),
            delta=int(row.get("delta", 1)),
        )
        try:
            params.validate()
        except ValueError:
            continue
        if params.t_pub < 1:
            continue
        rep = c_f(params.q, params.m, params.k, params.k_prime, params.t_pub, omega=omega)
        if rep.c_f_log2 < target:
            continue
        sz = sizes(params)
        out.append({**params.to_dict(), "t_pub": params.t_pub, "c_f": rep.c_f, "c_f_log2": rep.c_f_log2, **sz})
    out.sort(key=lambda r: (r["ct_bytes"], r["pk_bytes"], r["q"], r["m"], r["k"], r["k_prime"]))
    return out


def neighborhood(q: int, m: int, k: int, k_prime: int, delta: int = 1, dk: int = 1, dkp: int = 2) -> list[dict]:
    """Small grid of rows around a given one (for :func:`table_scan`)."""
    return [
        {"q": q, "m": m, "k": k + i, "k_prime": k_prime + j, "delta": delta}
        for i in range(-dk, dk + 1)
        for j in range(-dkp, dkp + 1)
    ]
