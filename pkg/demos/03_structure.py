"""Structure of subspace subcodes versus random subcodes.

A subspace subcode of an expanded Gabidulin code has large stabilizer and
annihilator algebras; a random F_q-subcode (the public code of the scheme)
has trivial stabilizers. The Overbeck-like statistic dim(C + uC) with the
secret Frobenius matrix u separates classical-Gabidulin subcodes from random
codes, and generator completion recovers the parent code from a subcode.

Run: python3 demos/03_structure.py
"""

from __future__ import annotations

import numpy as np

from lgscode import rank_linalg as rl
from lgscode import stab_algebra as sa
from lgscode import structural_lab as lab
from lgscode.field_tower import QBasis, expand_mat, make_field, random_basis
from lgscode.gabidulin import expanded_generator, random_code, random_support
from lgscode.subcodes import random_subcode, subspace_subcode

fld = make_field(2, 1, 4)
F = fld.base
code = random_code(fld, 4, 3, "demo")
B = random_basis(fld, "demo-B")
V = random_support(fld, 2, "demo-V")
words = subspace_subcode(code, V)
gens = np.stack([expand_mat(B, w) for w in words])
print("subspace subcode C ∩ V^4, dim", len(words))
print("  algebra dims:", sa.dims(F, gens))
rep = sa.verify_structural_bounds(F, gens, B, [V] * 4, QBasis.from_elements(fld, code.g), alphas=[1, 2, 3])
print("  lower bounds:", rep.bounds, "witnesses ok:", all(rep.witnesses_ok.values()))

G = expanded_generator(code, B)
sub = random_subcode(F, G, 7, "demo-sub", m=4)
print("random subcode of dim 7, algebra dims:", sa.dims(F, rl.fold(sub.gen, 4)))

code6, B6 = lab.parent_code(2, 6, 6, 3, 1, "ob")
G6 = expanded_generator(code6, B6)
C = rl.fold(random_subcode(F, G6, 11, "ob-sub", 6).gen, 6)
u = lab.frobenius_in_basis(B6)
print("dim(C + uC), Gabidulin subcode with secret Frobenius u:", lab.overbeck_statistic(F, C, u), "(<= 30)")
R = lab.random_matrix_code(F, 11, 6, 6, "ob-rand")
print("dim(C + uC), random code:", lab.overbeck_statistic(F, R, u), "(generic value 22)")

code3, B3 = lab.parent_code(2, 3, 3, 2, 1, "cmp")
G3 = expanded_generator(code3, B3)
sub3 = random_subcode(F, G3, 5, "cmp-sub", 3)
nf = lab.normal_form(F, sub3.gen, 6)
comp = lab.complete(F, nf, lab.generator_oracle(F, G3, 6))
res = lab.completion_search_toy(F, nf, lab.equality_validator(F, G3))
print("completion recovers parent:", rl.same_rowspace(F, comp.ghat, G3),
      f"| search visited {res.visited} candidates, accepted {len(res.accepted)}")
