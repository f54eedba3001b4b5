"""Left/right stabilizer and annihilator algebras of matrix codes over F_q.

A matrix code is given by a stack ``(k', m, n)`` of generators. Square
matrices ``A`` are handled through the column-stacking ``vec``, for which
``vec(A G) = (G^T ⊗ I_m) vec(A)`` and ``<H, A G> = <vec(H G^T), vec(A)>``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import rank_linalg as rl
from .field_tower import QBasis, span_basis
from .gf import GF

_INT = np.int64


@dataclass(frozen=True)
class AlgebraBasis:
    side: str
    kind: str
    gens: np.ndarray  # (dim, s, s)

    @property
    def dim(self) -> int:
        return int(self.gens.shape[0])

    def to_dict(self) -> dict:
        return {
            "side": self.side,
            "kind": self.kind,
            "dim": self.dim,
            "generators": self.gens.tolist(),
        }


def _as_code(gens) -> np.ndarray:
    G = np.asarray(gens, dtype=_INT)
    if G.ndim != 3:
        raise ValueError("a matrix code is a stack of shape (k', m, n)")
    return G


def _vec_square(v, s: int) -> np.ndarray:
    """Inverse of column-stacking ``vec`` for ``s x s`` matrices."""
    return rl.fold(v, s)


def stabilizer_system(F: GF, gens) -> np.ndarray:
    """Rows ``vec(H_i G_j^T)`` whose kernel is ``vec(Stab_L)``."""
    G = _as_code(gens)
    kp, m, n = G.shape
    H = rl.matrix_code_dual(F, G)
    h = H.shape[0]
    if kp == 0 or h == 0:
        return np.zeros((0, m * m), dtype=_INT)
    # R[(i, a), (j, a')] = (H_i G_j^T)[a, a']
    Gt = np.transpose(G, (2, 0, 1)).reshape(n, kp * m)
    R = F.matmul(H.reshape(h * m, n), Gt).reshape(h, m, kp, m)
    # vec index a + a' m  ->  axis order (i, j, a', a)
    return np.transpose(R, (0, 2, 3, 1)).reshape(h * kp, m * m)


def annihilator_system(F: GF, gens) -> np.ndarray:
    """Stacked ``G_j^T ⊗ I_m``; its kernel is ``vec(Ann_L)``."""
    G = _as_code(gens)
    kp, m, _ = G.shape
    if kp == 0:
        return np.zeros((0, m * m), dtype=_INT)
    eye = np.eye(m, dtype=_INT)
    return np.vstack([rl.kron(F, G[j].T, eye) for j in range(kp)])


def _left(F: GF, gens, kind: str) -> np.ndarray:
    G = _as_code(gens)
    m = G.shape[1]
    if kind == "stabilizer":
        M = stabilizer_system(F, G)
    elif kind == "annihilator":
        M = annihilator_system(F, G)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    K = rl.kernel_basis(F, M) if M.shape[0] else np.eye(m * m, dtype=_INT)
    return _vec_square(K, m) if K.shape[0] else np.zeros((0, m, m), dtype=_INT)


def algebra(F: GF, gens, side: str = "left", kind: str = "stabilizer") -> AlgebraBasis:
    """Basis of ``Stab``/``Ann`` on the given side.

    The right-side algebras are obtained from the transposed code:
    ``C P ⊆ C`` iff ``P^T C^T ⊆ C^T``. Bases are RREF-canonical in ``vec`` form.
    """
    G = _as_code(gens)
    if side == "left":
        A = _left(F, G, kind)
    elif side == "right":
        A = np.swapaxes(_left(F, np.swapaxes(G, 1, 2), kind), 1, 2)
        if A.shape[0]:
            s = A.shape[1]
            A = _vec_square(rl.row_basis(F, rl.unfold(A)), s)
    else:
        raise ValueError(f"unknown side {side!r}")
    return AlgebraBasis(side, kind, A)


def dims(F: GF, gens) -> dict[str, int]:
    """All four dimensions, keyed ``"<side>_<kind>"``."""
    return {
        f"{side}_{kind}": algebra(F, gens, side, kind).dim
        for side in ("left", "right")
        for kind in ("stabilizer", "annihilator")
    }


def _left_stab_trivial(F: GF, G: np.ndarray) -> bool:
    """Exact triviality test for ``Stab_L``, block by block with early exit.

    The identity always stabilizes, so the system has rank at most ``m^2 - 1``;
    reaching that rank on a subset of the rows already proves triviality.
    """
    kp, m, n = G.shape
    if kp == 0:
        return False
    H = rl.matrix_code_dual(F, G)
    h = H.shape[0]
    if h == 0:
        return m == 1
    target = m * m - 1
    Hflat = H.reshape(h * m, n)
    basis = np.zeros((0, m * m), dtype=_INT)
    for j in range(kp):
        R = F.matmul(Hflat, G[j].T).reshape(h, m, m)
        block = rl.unfold(R)
        basis = rl.row_basis(F, np.vstack([basis, block]))
        if basis.shape[0] >= target:
            return True
    return False


def is_trivial_stab(F: GF, gens) -> tuple[bool, bool]:
    """``(left, right)``: whether each stabilizer is reduced to scalars (dim 1)."""
    G = _as_code(gens)
    return _left_stab_trivial(F, G), _left_stab_trivial(F, np.swapaxes(G, 1, 2))


def member(F: GF, gens, A, side: str = "left", kind: str = "stabilizer") -> bool:
    """Direct check that ``A`` stabilizes (or annihilates) the code."""
    G = _as_code(gens)
    A = np.asarray(A, dtype=_INT)
    prods = [F.matmul(A, g) if side == "left" else F.matmul(g, A) for g in G]
    if kind == "annihilator":
        return all(not np.any(p) for p in prods)
    if G.shape[0] == 0:
        return True
    basis = rl.unfold(G)
    return all(rl.in_rowspace(F, basis, rl.unfold(p)) for p in prods)


def check_algebra(F: GF, gens, alg: AlgebraBasis) -> bool:
    """Recheck every generator against every code generator."""
    return all(member(F, gens, A, alg.side, alg.kind) for A in alg.gens)


# -- structural witnesses ---------------------------------------------------


def mult_witness(support_basis: QBasis, alpha: int) -> np.ndarray:
    """``N_alpha``: matrix of ``x -> alpha x`` in the basis ``(g_1, ..., g_n)``.

    A codeword row ``c`` maps to ``c N_alpha``.
    """
    return support_basis.mul_matrix(alpha)


def annihilator_witnesses(B: QBasis, V) -> np.ndarray:
    """Matrices ``M_T`` in basis ``B`` of the maps ``T`` with ``V ⊆ ker T``.

    Uses an adapted basis ``(e_1, ..., e_m)`` with ``V = <e_1, ..., e_s>``;
    the generators send one ``e_j`` (``j > s``) to one ``b_a`` and the rest to 0.
    """
    fld = B.field
    F = fld.base
    m = fld.m
    Vc = np.stack([B.coords(int(v)) for v in V], axis=1) if len(V) else np.zeros((m, 0), dtype=_INT)
    Vc = rl.row_basis(F, Vc.T).T if Vc.shape[1] else Vc
    s = Vc.shape[1]
    # extend to an adapted basis by unit vectors
    E = Vc
    for i in range(m):
        if E.shape[1] == m:
            break
        cand = np.hstack([E, np.eye(m, dtype=_INT)[:, i : i + 1]])
        if rl.rank(F, cand) == cand.shape[1]:
            E = cand
    Einv = rl.inverse(F, E)
    out = []
    for j in range(s, m):
        for a in range(m):
            X = np.zeros((m, m), dtype=_INT)
            X[a, j] = 1
            out.append(F.matmul(X, Einv))
    return np.array(out, dtype=_INT).reshape(-1, m, m)


@dataclass
class StructuralReport:
    dims: dict[str, int]
    bounds: dict[str, int]
    witnesses_ok: dict[str, bool]

    @property
    def ok(self) -> bool:
        dim_ok = all(self.dims[key] >= val for key, val in self.bounds.items())
        return dim_ok and all(self.witnesses_ok.values())

    def to_json(self) -> str:
        return json.dumps(
            {"dims": self.dims, "bounds": self.bounds, "witnesses_ok": self.witnesses_ok, "ok": self.ok},
            indent=2,
        )


def verify_structural_bounds(
    F: GF,
    gens,
    B: QBasis,
    spaces,
    support_basis: QBasis | None = None,
    alphas=(),
) -> StructuralReport:
    """Check the structural lower bounds for a restricted subcode.

    Args:
        gens: matrix form (basis ``B``) of ``C ∩ (V_1 x ... x V_n)``.
        spaces: the subspaces ``V_i``; the bounds use ``r = dim(V_1 + ... + V_n)``.
        support_basis: the support ``g`` as a basis (Gabidulin case, ``m = n``);
            enables the right-stabilizer bound and the ``N_alpha`` witnesses.
        alphas: elements ``alpha`` whose ``N_alpha`` are checked.
    """
    fld = B.field
    m = fld.m
    G = _as_code(gens)
    span = [v for V in spaces for v in V]
    r = len(span_basis(fld, span))
    d = dims(F, G)
    bounds: dict[str, int] = {}
    ok: dict[str, bool] = {}
    if r < m:
        bounds["left_annihilator"] = m * (m - r)
        bounds["left_stabilizer"] = m * (m - r) + 1
        W = annihilator_witnesses(B, span_basis(fld, span))
        ok["annihilator_witnesses"] = bool(
            len(W) == m * (m - r) and all(member(F, G, A, "left", "annihilator") for A in W)
        )
    if support_basis is not None:
        bounds["right_stabilizer"] = m
        Ns = [mult_witness(support_basis, int(a)) for a in alphas]
        ok["n_alpha_witnesses"] = all(member(F, G, N, "right", "stabilizer") for N in Ns)
        if Ns:
            ok["n_alpha_multiplicative"] = _multiplicative(fld, support_basis, alphas)
    for side in ("left", "right"):
        an = algebra(F, G, side, "annihilator")
        ok[f"{side}_ann_in_stab"] = all(member(F, G, A, side, "stabilizer") for A in an.gens)
    return StructuralReport(d, bounds, ok)


def _multiplicative(fld, support_basis: QBasis, alphas) -> bool:
    """``N_a N_b = N_{ab}`` and ``N_a = 0`` only for ``a = 0``, on the given samples."""
    F = fld.base
    alphas = [int(a) for a in alphas]
    for a in alphas:
        Na = support_basis.mul_matrix(a)
        if a and not np.any(Na):
            return False
        for b in alphas:
            lhs = F.matmul(Na, support_basis.mul_matrix(b))
            if not np.array_equal(lhs, support_basis.mul_matrix(fld.mul(a, b))):
                return False
    return True
