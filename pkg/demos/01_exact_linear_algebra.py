"""Exact linear algebra: the substrate everything else stands on.

Run with:  python demos/01_exact_linear_algebra.py
"""

from coreflect.exactla import (
    QQ,
    Field,
    Mat,
    Subspace,
    kernel_basis,
    quotient_projection,
    rref,
    solve_all,
    split_idempotent,
)

print("== two scalar backends, one API ==")
F5 = Field.prime(5)
for field in (QQ, F5):
    m = Mat.from_rows(field, [[2, 4], [1, 2]])
    r, rank, pivots = rref(m)
    print(f"{field}: rref([[2,4],[1,2]]) rank {rank}, pivots {pivots}")
    print("   ", r)

print()
print("== kernels are canonical subspaces ==")
k = kernel_basis(Mat.from_rows(Field.prime(2), [[1, 1]]))
print("null space of x+y over GF(2):", k, "basis", k.basis)

print()
print("== solving AX = B finds a factorization or proves none exists ==")
a = Mat.from_rows(QQ, [[1], [2]])
print("solve [[1],[2]] X = [[2],[4]]  ->", solve_all(a, Mat.from_rows(QQ, [[2], [4]])))
print("solve [[1],[2]] X = [[1],[0]]  ->", solve_all(a, Mat.from_rows(QQ, [[1], [0]])))

print()
print("== idempotents split constructively ==")
e = Mat.from_rows(QQ, [["1/2", "1/2"], ["1/2", "1/2"]])
u, v = split_idempotent(e)
print("e =", e)
print("u =", u, " v =", v)
print("u@v =", u @ v, " v@u == e:", v @ u == e)

print()
print("== quotient projections are deterministic ==")
s = Subspace.from_vectors(QQ, 2, [[1, 1]])
pi = quotient_projection(s)
print("projection with kernel span{(1,1)}:", pi)
print("kernel recovered:", kernel_basis(pi) == s)
