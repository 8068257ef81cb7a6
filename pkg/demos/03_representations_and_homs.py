"""The abelian category of representations: Hom spaces, kernels,
cokernels, images, (co)products and duality.

Run with:  python demos/03_representations_and_homs.py
"""

import random

from coreflect.builtin import a2, glp
from coreflect.exactla import Field
from coreflect.repcat import (
    cokernel,
    compose,
    direct_sum,
    dualize_rep,
    hom_basis,
    hom_dim,
    image,
    kernel,
    pullback,
    sample_mor,
    sample_rep,
)

F5 = Field.prime(5)

print("== Hom spaces over the one-arrow quiver 1 -> 2 ==")
alg = a2(F5)
p1, s1, s2 = alg.projective(0), alg.simple(0), alg.simple(1)
print("dim Hom(P1, S1) =", hom_dim(p1, s1))
print("dim Hom(P1, S2) =", hom_dim(p1, s2))
print("dim Hom(S2, P1) =", hom_dim(s2, p1))

print()
print("== exactness, concretely ==")
pi = hom_basis(p1, s1)[0]  # the top projection
k, iota = kernel(pi)
print("kernel of P1 ->> S1 has dim vector", k.dim_vector(), "(the simple at 2)")
i, e, m = image(pi)
print("image factorization works:", compose(m, e) == pi)
c, _ = cokernel(iota)
print("cokernel of the inclusion recovers dims", c.dim_vector())

print()
print("== random but always relation-valid objects ==")
g = glp(F5)
rng = random.Random(1)
a = sample_rep(g, rng, max_mult=2, max_gens=2)
b = sample_rep(g, rng, max_mult=2, max_gens=2)
print("sampled dims:", a.dim_vector(), b.dim_vector())
f = sample_mor(a, b, rng)
pb, q1, q2 = pullback(f, f)
print("pullback of f against itself:", pb.dim_vector(),
      "squares commute:", compose(f, q1) == compose(f, q2))

print()
print("== duality is an involution on the nose ==")
d = dualize_rep(a)
print("dual lives over the opposite algebra, same dims:", d.dim_vector())
print("double dual equals the original:", dualize_rep(d) == a)

s, injs, projs = direct_sum(g, [a, b])
print()
print("direct sum dims:", s.dim_vector(),
      "with", len(injs), "injections and", len(projs), "projections")
