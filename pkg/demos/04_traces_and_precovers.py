"""Traces and canonical precovers.

The trace of U in A is the largest U-generated subobject.  The canonical
precover sums one copy of each U-object per Hom-basis element; dividing
by the trace of its kernel gives the canonical Pres(U)-precover, whose
domain comes with a machine-checkable presentation.

Run with:  python demos/04_traces_and_precovers.py
"""

from coreflect.builtin import glp, glp_max_ll_projective
from coreflect.exactla import Field
from coreflect.trace import (
    USet,
    canonical_eps,
    in_gen,
    in_pres_canonical,
    pres_precover,
    trace2_sub,
    trace_sub,
)

alg = glp(Field.prime(5))
p_big = glp_max_ll_projective(alg)
u = USet([p_big])
p_small = alg.projective(0)

print("U = the projective of maximal Loewy length, dim vector", p_big.dim_vector())
print()

t = trace_sub(u, p_small)
print("trace of U in the small projective:", t.dim_vector(),
      "(proper: the vertex-1 coordinate is missed)")
print("so the small projective is not U-generated:", not in_gen(u, p_small))

t2 = trace2_sub(u, p_small)
print("double trace equals the trace here:", t2 == t)

print()
eps = canonical_eps(u, p_small)
print("canonical sum precover: domain dims", eps.domain.dim_vector(),
      "multiplicities", eps.multiplicities)

pc = pres_precover(u, p_small)
print("Pres(U)-precover: domain dims", pc.domain.dim_vector(),
      "presentation verified:", pc.presentation.verify())

print()
for obj, label in ((p_big, "the big projective"), (p_small, "the small projective"),
                   (alg.simple(0), "the simple at 1"), (alg.simple(1), "the simple at 2")):
    res = in_pres_canonical(u, obj)
    print(f"canonical membership test for {label}: {res.verdict}")
