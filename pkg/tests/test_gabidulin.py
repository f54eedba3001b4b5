from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lgscode import rank_linalg as rl
from lgscode.field_tower import make_field, power_basis, random_basis, rank_weight
from lgscode.gabidulin import (
    DecodeFailure,
    GabCode,
    LambdaGabCode,
    decode,
    decode_message,
    encode,
    expanded_generator,
    gen_matrix,
    lambda_decode,
    lambda_decode_message,
    random_code,
    random_message,
    sample_error,
    sample_lambda,
)

FLD = make_field(2, 1, 4)


def _all_codewords(code):
    fld = code.field
    return [encode(code, msg) for msg in itertools.product(range(fld.order), repeat=code.k)]


def _dist(fld, a, b):
    return rank_weight(fld, [fld.sub(x, y) for x, y in zip(a, b)])


@pytest.fixture(scope="module")
def toy():
    code = random_code(FLD, 4, 2, "toy")
    return code, _all_codewords(code)


def test_minimum_distance_is_mrd(toy):
    code, words = toy
    weights = [rank_weight(FLD, w) for w in words if any(w)]
    assert min(weights) == code.d == 3


def test_decoding_matches_brute_force(toy):
    code, words = toy
    rng = np.random.default_rng(0)
    for i in range(40):
        c = words[rng.integers(len(words))]
        err = sample_error(FLD, 4, code.radius, ("e", i))
        y = [FLD.add(a, b) for a, b in zip(c, err.e)]
        near = [w for w in words if _dist(FLD, w, y) <= code.radius]
        assert near == [c]
        got, e = decode(code, y)
        assert got == c and list(e) == list(err.e)


def test_beyond_radius_never_returns_wrong_distance(toy):
    code, words = toy
    rng = np.random.default_rng(1)
    for i in range(40):
        c = words[rng.integers(len(words))]
        err = sample_error(FLD, 4, 2, ("big", i))
        y = [FLD.add(a, b) for a, b in zip(c, err.e)]
        try:
            got, _ = decode(code, y)
        except DecodeFailure:
            continue
        assert got in words and _dist(FLD, got, y) <= code.radius


@given(st.integers(0, 2**30), st.sampled_from([(2, 1, 8), (2, 2, 4), (3, 1, 5)]))
@settings(max_examples=25, deadline=None)
def test_decode_round_trip(seed, pem):
    fld = make_field(*pem)
    n = fld.m
    k = max(1, n // 2 - 1)
    code = random_code(fld, n, k, seed)
    msg = random_message(fld, k, (seed, "msg"))
    c = encode(code, msg)
    err = sample_error(fld, n, code.radius, (seed, "err"))
    y = [fld.add(a, b) for a, b in zip(c, err.e)]
    assert decode(code, y)[0] == c
    assert decode_message(code, y) == msg


@pytest.mark.parametrize("delta", [1, 2])
def test_lambda_decoding(delta):
    fld = make_field(2, 1, 10)
    code = LambdaGabCode(random_code(fld, 10, 4, delta), sample_lambda(fld, 10, delta, ("lam", delta)))
    assert code.delta == delta and code.radius == 3 // delta
    for i in range(10):
        msg = random_message(fld, 4, i)
        c = encode(code, msg)
        err = sample_error(fld, 10, code.radius, ("le", i))
        y = [fld.add(a, b) for a, b in zip(c, err.e)]
        got, e = lambda_decode(code, y)
        assert got == c and lambda_decode_message(code, y) == msg


def test_sample_lambda_rank():
    fld = make_field(2, 1, 8)
    for delta in (1, 2, 3):
        lam = sample_lambda(fld, 8, delta, delta)
        assert rank_weight(fld, [fld.inv(x) for x in lam]) == delta


def test_sample_error_rank():
    fld = make_field(3, 1, 5)
    for t in range(4):
        err = sample_error(fld, 5, t, t)
        assert rank_weight(fld, err.e) == t == rl.rank(fld.base, err.matrix)


def test_expanded_generator_spans_expanded_code():
    fld = make_field(2, 1, 4)
    code = random_code(fld, 4, 2, 3)
    B = random_basis(fld, 4)
    G = expanded_generator(code, B)
    assert G.shape == (8, 16) and rl.rank(fld.base, G) == 8
    from lgscode.field_tower import expand_vec

    for msg in [(1, 0), (0, 5), (7, 9)]:
        assert rl.in_rowspace(fld.base, G, expand_vec(B, encode(code, msg)))


def test_invalid_codes():
    with pytest.raises(ValueError):
        GabCode(FLD, (1, 2, 3), 2)  # dependent support
    with pytest.raises(ValueError):
        GabCode(FLD, (1, 2, 4, 8), 5)
    with pytest.raises(ValueError):
        encode(random_code(FLD, 4, 2, 0), [1])


def test_gen_matrix_is_moore():
    code = GabCode(FLD, (1, 2, 4, 8), 3)
    G = gen_matrix(code)
    for i in range(1, 3):
        assert G[i] == [FLD.frobenius(x, i) for x in code.g]
    assert power_basis(FLD).elements == (1, 2, 4, 8)
