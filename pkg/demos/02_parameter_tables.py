"""Regenerate the published parameter tables: sizes and attack work factor C_f.

Run: python3 demos/02_parameter_tables.py
"""

from __future__ import annotations

from lgscode import lgs_schemes as lgs
from lgscode.attack_estimator import c_f

print(f"{'name':10} {'q':>3} {'d':>2} {'m':>3} {'k':>3} {'kp':>5} {'t':>2} {'C_f':>6} {'source':>18} {'pk kB':>8} {'ct B':>5}")
for name, p in lgs.REGISTRY.items():
    rep = c_f(p.q, p.m, p.k, p.k_prime, p.t_pub)
    sz = lgs.sizes(p)
    print(
        f"{name:10} {p.q:3} {p.delta:2} {p.m:3} {p.k:3} {p.k_prime:5} {p.t_pub:2} "
        f"{rep.c_f_log2:6.1f} {rep.c_f_source:>18} {sz['pk_kB']:8.2f} {sz['ct_bytes']:5}"
    )
