from __future__ import annotations

import json

import numpy as np
import pytest

from lgscode import lgs_schemes as lgs
from lgscode import rank_linalg as rl
from lgscode.gabidulin import DecodeFailure, sample_error_matrix

TOY = lgs.Params(q=2, m=8, k=4, k_prime=17)


@pytest.fixture(scope="module")
def mce():
    return lgs.keygen(TOY, "unit-mce", "mce")


@pytest.fixture(scope="module")
def nied():
    return lgs.keygen(TOY, "unit-nied", "nied")


def test_t_pub_examples():
    assert lgs.Params(q=2, m=38, k=30, k_prime=1125).t_pub == 4
    assert lgs.Params(q=2, m=46, k=30, k_prime=1360, delta=2).t_pub == 4
    assert TOY.t_pub == 2
    assert all(lgs.REGISTRY[n].t_pub == t for n, t in lgs.TABLE_T_PUB.items())


def test_size_examples():
    s = lgs.sizes(lgs.REGISTRY["LGS-128-a"])
    assert s["pk_bits"] == 1125 * 319 and s["pk_bytes"] == 44860 and s["ct_bytes"] == 40
    s = lgs.sizes(lgs.REGISTRY["LGS-128-d"])
    assert round(s["pk_kB"], 2) == 9.70 and s["ct_bytes"] == 53


def test_param_validation():
    with pytest.raises(ValueError):
        lgs.Params(q=2, m=8, k=4, k_prime=16).validate()
    with pytest.raises(ValueError):
        lgs.Params(q=2, m=8, k=8, k_prime=17).validate()
    with pytest.raises(ValueError):
        lgs.Params(q=2, m=8, k=4, k_prime=17, n=7).validate()
    for p in lgs.REGISTRY.values():
        p.validate()


def test_load_params(tmp_path):
    p = lgs.load_params("LGS-128-b")
    assert (p.q, p.m, p.k, p.k_prime) == (8, 20, 14, 270)
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"q": 2, "m": 8, "k": 4, "k_prime": 17}))
    assert lgs.load_params(config=cfg).k_prime == 17
    with pytest.raises(ValueError):
        lgs.load_params(config={"q": 2, "m": 8})
    with pytest.raises(ValueError):
        lgs.load_params(config={"q": 2, "m": 8, "k": 4, "k_prime": 17, "bogus": 1})


def test_keygen_is_deterministic(mce):
    again = lgs.keygen(TOY, "unit-mce", "mce")
    assert np.array_equal(again.public.gens, mce.public.gens)
    assert lgs.serialize_secret(again.secret) == lgs.serialize_secret(mce.secret)


def test_public_code_is_subcode_of_secret_expansion(mce):
    from lgscode.gabidulin import expanded_generator

    F = mce.public.field.base
    G = expanded_generator(mce.secret.code, mce.secret.basis)
    assert rl.rank(F, rl.unfold(mce.public.gens)) == 17
    assert all(rl.in_rowspace(F, G, r) for r in rl.unfold(mce.public.gens))


def test_mce_round_trip_with_explicit_error(mce):
    F = mce.public.field.base
    rng = np.random.default_rng(0)
    for t in range(3):
        x = F.random(rng, (17,))
        E = sample_error_matrix(F, 8, 8, t, rng)
        Y = lgs.encrypt_mce(mce.public, x, error=E)
        assert np.array_equal(lgs.decrypt_mce(mce.secret, mce.public.gens, Y), x)


def test_mce_too_many_errors_detected(mce):
    F = mce.public.field.base
    rng = np.random.default_rng(1)
    failures = 0
    for _ in range(10):
        x = F.random(rng, (17,))
        Y = lgs.encrypt_mce(mce.public, x, error=sample_error_matrix(F, 8, 8, 4, rng))
        try:
            failures += not np.array_equal(lgs.decrypt_mce(mce.secret, mce.public.gens, Y), x)
        except (DecodeFailure, rl.NoSolutionError):
            failures += 1
    assert failures == 10


def test_nied_systematic_and_round_trip(nied):
    pk = nied.public
    F = pk.field.base
    assert pk.h_matrix.shape == (64 - 17, 64)
    assert np.array_equal(pk.h_matrix[:, list(pk.pivots)], np.eye(47, dtype=np.int64))
    assert not np.any(F.matmul(nied.subcode_gen, pk.h_matrix.T))
    for i in range(10):
        e = lgs.sample_plaintext_error(pk, i)
        assert rl.rank(F, rl.fold(e, 8)) == 2
        s = lgs.encrypt_nied(pk, e)
        assert np.array_equal(F.matmul(pk.h_matrix, lgs.syndrome_preimage(pk, s)), s)
        assert np.array_equal(lgs.decrypt_nied(nied.secret, pk, s), e)


def test_nied_rejects_heavy_error(nied):
    F = nied.public.field.base
    E = sample_error_matrix(F, 8, 8, 3, np.random.default_rng(2))
    with pytest.raises(ValueError):
        lgs.encrypt_nied(nied.public, rl.unfold(E))


def test_serialization_round_trips(mce, nied):
    for kp in (mce, nied):
        data = lgs.serialize_public(kp.public)
        assert data[:4] == b"LGS1"
        back = lgs.deserialize_public(data)
        assert type(back) is type(kp.public) and back.t_pub == 2
        if isinstance(back, lgs.PublicKeyMcE):
            assert np.array_equal(back.gens, kp.public.gens)
        else:
            assert np.array_equal(back.h_matrix, kp.public.h_matrix) and back.pivots == kp.public.pivots
        sk = lgs.deserialize_secret(lgs.serialize_secret(kp.secret))
        assert sk.g == kp.secret.g and sk.lam == kp.secret.lam and sk.basis.elements == kp.secret.basis.elements
    fld = mce.public.field
    Y = lgs.encrypt_mce(mce.public, np.ones(17, dtype=np.int64), 3)
    assert np.array_equal(lgs.deserialize_ciphertext(lgs.serialize_ciphertext(fld, Y, "mce"))[1], Y)
    s = lgs.encrypt_nied(nied.public, lgs.sample_plaintext_error(nied.public, 0))
    v, s2 = lgs.deserialize_ciphertext(lgs.serialize_ciphertext(fld, s, "nied"))
    assert v == "nied" and np.array_equal(s, s2)


def test_nied_ciphertext_size_matches_formula(nied):
    s = lgs.encrypt_nied(nied.public, lgs.sample_plaintext_error(nied.public, 0))
    data = lgs.serialize_ciphertext(nied.public.field, s, "nied")
    header = 6 + len(nied.public.field.descriptor()) + 8  # magic/version/variant, field, dims
    assert len(data) == header + lgs.sizes(TOY)["ct_bytes"]


def test_bad_files():
    with pytest.raises(ValueError):
        lgs.deserialize_public(b"XXXX" + bytes(20))
    with pytest.raises(ValueError):
        lgs.deserialize_secret(b"LGS1" + bytes([2, 3]) + bytes(20))
