"""Toy LGS-McEliece and LGS-Niederreiter round trips at q=2, m=n=8, k=4, k'=17.

Run: python3 demos/01_toy_encryption.py
"""

from __future__ import annotations

import numpy as np

from lgscode import lgs_schemes as lgs
from lgscode import rank_linalg as rl

params = lgs.Params(q=2, m=8, k=4, k_prime=17)
print(f"parameters {params.to_dict()}, t_pub = {params.t_pub}")

# McEliece: plaintext x in F_2^17, ciphertext Y = sum x_i G_i + E with rk(E) = t_pub
kp = lgs.keygen(params, seed="demo", variant="mce")
F = kp.public.field.base
x = F.random(np.random.default_rng(1), (params.k_prime,))
Y = lgs.encrypt_mce(kp.public, x, seed="ct")
print("McEliece ciphertext (8x8 over F_2):")
print(Y)
print("decrypts correctly:", np.array_equal(lgs.decrypt_mce(kp.secret, kp.public.gens, Y), x))
print("public key file:", len(lgs.serialize_public(kp.public)), "bytes")

# Niederreiter: plaintext is a rank-t_pub error, ciphertext its syndrome
kn = lgs.keygen(params, seed="demo", variant="nied")
e = lgs.sample_plaintext_error(kn.public, seed="pt")
s = lgs.encrypt_nied(kn.public, e)
print("Niederreiter plaintext rank:", rl.rank(F, rl.fold(e, 8)), "syndrome length:", s.size)
print("decrypts correctly:", np.array_equal(lgs.decrypt_nied(kn.secret, kn.public, s), e))
