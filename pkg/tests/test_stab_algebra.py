from __future__ import annotations

import numpy as np
import pytest

from lgscode import rank_linalg as rl
from lgscode import stab_algebra as sa
from lgscode.field_tower import QBasis, expand_mat, make_field, random_basis
from lgscode.gabidulin import random_code, random_support
from lgscode.gf import GF
from lgscode.subcodes import subspace_subcode

F2 = GF(2)


def _random_code(F, kp, m, n, seed):
    rng = np.random.default_rng(seed)
    while True:
        M = F.random(rng, (kp, m * n))
        if rl.rank(F, M) == kp:
            return rl.fold(M, m)


@pytest.mark.parametrize("seed", range(5))
def test_algebras_are_closed_and_contain_identity(seed):
    G = _random_code(F2, 3 + seed, 3, 4, seed)
    for side in ("left", "right"):
        st = sa.algebra(F2, G, side, "stabilizer")
        an = sa.algebra(F2, G, side, "annihilator")
        assert sa.check_algebra(F2, G, st) and sa.check_algebra(F2, G, an)
        s = G.shape[1] if side == "left" else G.shape[2]
        assert sa.member(F2, G, np.eye(s, dtype=np.int64), side)
        # Stab is a ring: closed under products
        for A in st.gens[:3]:
            for B in st.gens[:3]:
                assert sa.member(F2, G, F2.matmul(A, B), side)
        # Ann ⊆ Stab
        assert all(sa.member(F2, G, A, side) for A in an.gens)


def test_full_space_and_single_matrix():
    full = np.eye(4, dtype=np.int64).reshape(4, 2, 2)
    d = sa.dims(F2, rl.fold(np.eye(4, dtype=np.int64), 2))
    assert d["left_stabilizer"] == 4 and d["left_annihilator"] == 0
    one = np.array([[[1, 0], [0, 0]]])
    d = sa.dims(F2, one)
    # A E11 in span(E11) iff A has first column (a, 0): dim 3 (one free column)
    assert d["left_stabilizer"] == 3 and d["left_annihilator"] == 2
    assert full.shape == (4, 2, 2)


def test_is_trivial_matches_dims():
    F = GF(2)
    for seed in range(6):
        G = _random_code(F, 5 + seed, 4, 4, seed)
        d = sa.dims(F, G)
        left, right = sa.is_trivial_stab(F, G)
        assert left == (d["left_stabilizer"] == 1)
        assert right == (d["right_stabilizer"] == 1)


def test_structured_subcode_witnesses():
    fld = make_field(2, 1, 5)
    code = random_code(fld, 5, 4, 0)
    B = random_basis(fld, 1)
    V = random_support(fld, 3, 2)
    words = subspace_subcode(code, V)
    G = np.stack([expand_mat(B, w) for w in words])
    gb = QBasis.from_elements(fld, code.g)
    rep = sa.verify_structural_bounds(F2, G, B, [V] * 5, support_basis=gb, alphas=[1, 2, 3, 17])
    assert rep.ok, rep.to_json()
    assert rep.dims["left_annihilator"] >= 5 * 2
    assert rep.dims["right_stabilizer"] >= 5
    W = sa.annihilator_witnesses(B, V)
    assert W.shape == (10, 5, 5) and rl.rank(F2, rl.unfold(W)) == 10


def test_mult_witness_is_representation():
    fld = make_field(2, 1, 4)
    gb = QBasis.from_elements(fld, random_support(fld, 4, 3))
    a, b = 5, 11
    Na, Nb = sa.mult_witness(gb, a), sa.mult_witness(gb, b)
    assert np.array_equal(F2.matmul(Na, Nb), sa.mult_witness(gb, fld.mul(a, b)))


def test_bad_shapes():
    with pytest.raises(ValueError):
        sa.algebra(F2, np.zeros((2, 2)), "left")
    with pytest.raises(ValueError):
        sa.algebra(F2, np.zeros((1, 2, 2)), "middle")
