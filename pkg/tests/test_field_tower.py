from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import GF as SymGF
from sympy import Poly, symbols

from lgscode import rank_linalg as rl
from lgscode.field_tower import (
    FieldTower,
    QBasis,
    contract_mat,
    contract_vec,
    expand_mat,
    expand_vec,
    field_for_q,
    make_field,
    power_basis,
    random_basis,
    rank_weight,
    span_basis,
    span_elements,
)

X = symbols("x")
FIELDS = [(2, 1, 4), (2, 1, 6), (3, 1, 3), (2, 2, 3), (2, 3, 3), (2, 1, 12)]


def _sym_mul(fld: FieldTower, a: int, b: int) -> int:
    """Oracle for prime q: polynomial product mod the top modulus via sympy."""
    dom = SymGF(fld.p)
    pa = Poly(list(reversed(fld.coeffs(a).tolist())), X, domain=dom)
    pb = Poly(list(reversed(fld.coeffs(b).tolist())), X, domain=dom)
    mod = Poly(list(reversed(fld.top_modulus)), X, domain=dom)
    c = [int(v) % fld.p for v in reversed((pa * pb).rem(mod).all_coeffs())]
    return fld.from_coeffs(c + [0] * (fld.m - len(c)))


@pytest.mark.parametrize("p,e,m", [(2, 1, 4), (3, 1, 3), (2, 1, 12), (5, 1, 2)])
def test_mul_matches_sympy(p, e, m):
    fld = make_field(p, e, m)
    rng = np.random.default_rng(0)
    for _ in range(200):
        a, b = fld.random_element(rng), fld.random_element(rng)
        assert fld.mul(a, b) == _sym_mul(fld, a, b)


@pytest.mark.parametrize("pem", FIELDS)
def test_field_laws(pem):
    fld = make_field(*pem)
    rng = np.random.default_rng(1)
    for _ in range(50):
        a, b, c = (fld.random_element(rng) for _ in range(3))
        assert fld.mul(a, fld.add(b, c)) == fld.add(fld.mul(a, b), fld.mul(a, c))
        assert fld.mul(a, b) == fld.mul(b, a)
        if a:
            assert fld.mul(a, fld.inv(a)) == 1
            assert fld.pow(a, fld.order - 1) == 1
        assert fld.sub(fld.add(a, b), b) == a


@pytest.mark.parametrize("pem", FIELDS)
def test_frobenius(pem):
    fld = make_field(*pem)
    rng = np.random.default_rng(2)
    for _ in range(30):
        a = fld.random_element(rng)
        assert fld.frobenius(a) == fld.pow(a, fld.q)
        assert fld.frobenius(a, fld.m) == a
        assert fld.frobenius(fld.frobenius(a, 2), -2) == a
    for c in range(fld.q):
        assert fld.frobenius(fld.embed(c)) == fld.embed(c)


@pytest.mark.parametrize("pem", FIELDS[:4])
def test_mul_matrix_and_basis_matrices(pem):
    fld = make_field(*pem)
    F = fld.base
    rng = np.random.default_rng(3)
    B = random_basis(fld, 7)
    for _ in range(10):
        a, x = fld.random_element(rng), fld.random_element(rng)
        assert np.array_equal(F.matmul(fld.mul_matrix(a), fld.coeffs(x)), fld.coeffs(fld.mul(a, x)))
        assert np.array_equal(F.matmul(B.mul_matrix(a), B.coords(x)), B.coords(fld.mul(a, x)))
        assert np.array_equal(F.matmul(B.frobenius_matrix(1), B.coords(x)), B.coords(fld.frobenius(x)))
        assert B.element(B.coords(x)) == x


def test_generator_is_primitive():
    fld = make_field(2, 1, 6)
    seen = set()
    x = 1
    for _ in range(fld.order - 1):
        seen.add(x)
        x = fld.mul(x, fld.generator)
    assert len(seen) == fld.order - 1


@given(st.integers(0, 2**30))
@settings(max_examples=40, deadline=None)
def test_expand_contract_round_trip(seed):
    fld = make_field(2, 2, 3)
    rng = np.random.default_rng(seed)
    B = random_basis(fld, seed)
    x = [fld.random_element(rng) for _ in range(3)]
    M = expand_mat(B, x)
    assert M.shape == (3, 3)
    assert contract_mat(B, M) == x
    assert contract_vec(B, expand_vec(B, x)) == x
    assert rank_weight(fld, x) == rl.rank(fld.base, M)


def test_rank_weight_examples():
    fld = make_field(2, 1, 4)
    assert rank_weight(fld, [1, 1, 0]) == 1
    assert rank_weight(fld, [1, 2, 3]) == 2
    assert rank_weight(fld, [1, 2, 4, 8]) == 4


def test_span_helpers():
    fld = make_field(3, 1, 3)
    basis = span_basis(fld, [1, 3, 4])
    assert len(basis) == 2
    assert len(set(span_elements(fld, basis))) == 9


def test_descriptor_round_trip():
    for pem in FIELDS:
        fld = make_field(*pem)
        again, off = FieldTower.from_descriptor(fld.descriptor())
        assert again == fld and off == len(fld.descriptor())


def test_field_for_q_and_errors():
    assert field_for_q(8, 3) is make_field(2, 3, 3)
    with pytest.raises(ValueError):
        field_for_q(6, 2)
    with pytest.raises(ValueError):
        QBasis.from_elements(make_field(2, 1, 3), [1, 2, 3])


def test_power_basis_is_identity():
    fld = make_field(2, 1, 5)
    B = power_basis(fld)
    assert np.array_equal(B.to_coords, np.eye(5, dtype=np.int64))
