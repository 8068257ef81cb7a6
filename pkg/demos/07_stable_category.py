"""Hom modulo projectives and syzygies.

Run with:  python demos/07_stable_category.py
"""

from coreflect.builtin import glp, glp_max_ll_projective
from coreflect.exactla import Field
from coreflect.repcat import find_iso
from coreflect.stable import is_weakly_coresolving_sample, stable_hom, syzygy
from coreflect.trace import USet

alg = glp(Field.prime(5))
s1, s2 = alg.simple(0), alg.simple(1)

print("== syzygies of the simples ==")
o1 = syzygy(s1)
print("syzygy of S1 has dim vector", o1.dim_vector(),
      "; isomorphic to S2:", find_iso(o1, s2).found is not None)
o2 = syzygy(s2)
print("syzygy of S2 has dim vector", o2.dim_vector(),
      "; isomorphic to the small projective:",
      find_iso(o2, alg.projective(0)).found is not None)

m = s1
steps = 0
while m.total_dim():
    m = syzygy(m)
    steps += 1
print(f"iterated syzygies of S1 vanish after {steps} steps "
      "(finite global dimension)")

print()
print("== stable Hom groups ==")
for x, y, label in ((s2, s2, "S2, S2"), (alg.projective(1), alg.projective(1), "P, P")):
    sh = stable_hom(x, y)
    print(f"Hom({label}): total {sh.total_dim}, factoring {sh.factoring_dim}, "
          f"stable {sh.stable_dim}")

print()
print("== weakly coresolving, sampled ==")
u = USet([glp_max_ll_projective(alg)])
report = is_weakly_coresolving_sample(u, "pres", count=10, seed=0)
print("Pres(U) weakly coresolving:", "PASS" if report.passed else "FAIL")
for c in report.conditions:
    print(f"  {c['condition']}: {c['verdict']}")
print("(the small projective is outside Pres(U), so the precondition and")
print(" the sampled closure clauses all produce witnesses)")
