"""Bound quiver algebras: from a quiver with relations to projectives,
radical series and covers.

The running example is the algebra behind every later demo: two vertices,
arrows beta: 1 -> 2 and alpha: 2 -> 1, and the single relation
beta*alpha = 0 (paths compose left to right).

Run with:  python demos/02_bound_quiver_algebras.py
"""

from coreflect.algebra import (
    Algebra,
    AlgebraSpec,
    Quiver,
    Relation,
    loewy_length,
    projective_cover,
    radical,
)
from coreflect.exactla import QQ
from coreflect.repcat import hom_basis, kernel

q = Quiver(["1", "2"], [("beta", "1", "2"), ("alpha", "2", "1")])
rel = Relation(q, [(1, (0, 1))])  # the path beta then alpha
alg = Algebra(AlgebraSpec(q, (rel,), QQ, nil_bound=4))

print("basis of the algebra:", [p.label(q) for p in alg.basis])
print("dimension:", alg.dim)

print()
for i, v in enumerate(alg.vertices):
    p = alg.projective(i)
    print(f"projective at vertex {v}: dim vector {p.dim_vector()}, "
          f"Loewy length {loewy_length(p)}")

p2 = alg.projective(1)
print()
print("radical series of the big projective:")
m = p2
while m.total_dim():
    print("  dims", m.dim_vector())
    m, _ = radical(m).to_rep()

print()
print("its endomorphism algebra has dimension", len(hom_basis(p2, p2)),
      "(the identity and a nilpotent, so not a division ring)")

print()
s2 = alg.simple(1)
cover, pi = projective_cover(s2)
k, _ = kernel(pi)
print("projective cover of the simple at 2 is the big projective:",
      cover == p2)
print("its kernel (the first syzygy) has dim vector", k.dim_vector())
