import random
from fractions import Fraction

import pytest

from coreflect.exactla import (
    QQ,
    ExactLAError,
    Field,
    Mat,
    Subspace,
    block_diag,
    column_space,
    hstack,
    kernel_basis,
    kron,
    quotient_projection,
    rref,
    solve_all,
    split_idempotent,
    vstack,
)

F2 = Field.prime(2)
F5 = Field.prime(5)
FIELDS = [QQ, F2, F5, Field.prime(2147483647)]


def test_field_rejects_nonprime():
    with pytest.raises(ExactLAError):
        Field.prime(6)
    with pytest.raises(ExactLAError):
        Field.prime(1)
    with pytest.raises(ExactLAError):
        Field.prime(2**31)


def test_scalar_coercion():
    assert QQ.coerce("2/4") == Fraction(1, 2)
    assert F5.coerce(-1) == 4
    assert F5.coerce("7") == 2
    assert F5.coerce(Fraction(1, 2)) == 3  # 1/2 = 3 mod 5


def test_rref_zero_matrix():
    m = Mat.zeros(QQ, 2, 2)
    r, rk, piv = rref(m)
    assert rk == 0 and piv == [] and r == m


def test_rref_identity():
    m = Mat.identity(QQ, 3)
    r, rk, piv = rref(m)
    assert r == m and rk == 3 and piv == [0, 1, 2]


def test_rref_hand_reduction():
    # [[2,4],[1,2]] row-reduces to [[1,2],[0,0]] over the rationals
    m = Mat.from_rows(QQ, [[2, 4], [1, 2]])
    r, rk, piv = rref(m)
    assert rk == 1 and piv == [0]
    assert r == Mat.from_rows(QQ, [[1, 2], [0, 0]])


def test_kernel_identity_and_zero():
    assert kernel_basis(Mat.identity(QQ, 4)).dim == 0
    k = kernel_basis(Mat.zeros(QQ, 2, 3))
    assert k.dim == 3 and k.is_full()


def test_kernel_f2_line():
    # x + y = 0 over F_2 has solution space spanned by (1, 1)
    k = kernel_basis(Mat.from_rows(F2, [[1, 1]]))
    assert k.dim == 1
    assert k.basis == Mat.from_rows(F2, [[1, 1]])


def test_solve_identity_and_zero():
    b = Mat.from_rows(QQ, [[1, 2], [3, 4]])
    assert solve_all(Mat.identity(QQ, 2), b) == b
    z = Mat.zeros(QQ, 2, 2)
    assert solve_all(z, z) == z


def test_solve_column_membership():
    a = Mat.from_rows(QQ, [[1], [2]])
    b = Mat.from_rows(QQ, [[2], [4]])
    assert solve_all(a, b) == Mat.from_rows(QQ, [[2]])
    assert solve_all(a, Mat.from_rows(QQ, [[1], [0]])) is None


def test_split_idempotent_identity_zero_projection():
    u, v = split_idempotent(Mat.identity(QQ, 3))
    assert u == Mat.identity(QQ, 3) and v == Mat.identity(QQ, 3)
    u, v = split_idempotent(Mat.zeros(QQ, 2, 2))
    assert u.shape == (0, 2) and v.shape == (2, 0)
    e = Mat.from_rows(QQ, [[1, 0], [0, 0]])
    u, v = split_idempotent(e)
    assert v == Mat.from_rows(QQ, [[1], [0]])
    assert u == Mat.from_rows(QQ, [[1, 0]])
    with pytest.raises(ExactLAError):
        split_idempotent(Mat.from_rows(QQ, [[1, 1], [0, 1]]))


def test_subspace_sum_intersect_units():
    s = Subspace.from_vectors(QQ, 2, [[1, 0]])
    zero = Subspace.zero(QQ, 2)
    full = Subspace.full(QQ, 2)
    assert s.sum(zero) == s
    assert s.intersect(full) == s
    line2 = Subspace.from_vectors(QQ, 2, [[0, 1]])
    assert s.sum(line2).is_full()
    assert s.intersect(line2).is_zero()


def test_subspace_sum_three_dim():
    s1 = Subspace.from_vectors(QQ, 3, [[1, 0, 1]])
    s2 = Subspace.from_vectors(QQ, 3, [[0, 1, 1]])
    assert s1.sum(s2).dim == 2


def test_quotient_projection_cases():
    assert quotient_projection(Subspace.zero(QQ, 3)) == Mat.identity(QQ, 3)
    assert quotient_projection(Subspace.full(QQ, 2)).shape == (0, 2)
    s = Subspace.from_vectors(QQ, 2, [[1, 1]])
    pi = quotient_projection(s)
    assert pi.shape == (1, 2)
    v = Mat.from_rows(QQ, [[1], [1]])
    assert (pi @ v).is_zero()
    assert kernel_basis(pi) == s


def test_stack_and_kron_shapes():
    a = Mat.from_rows(QQ, [[1, 2]])
    b = Mat.from_rows(QQ, [[3, 4]])
    assert hstack([a, b]).shape == (1, 4)
    assert vstack([a, b]).shape == (2, 2)
    assert block_diag([a, b], QQ).shape == (2, 4)
    k = kron(Mat.identity(QQ, 2), a)
    assert k.shape == (2, 4)
    assert k == Mat.from_rows(QQ, [[1, 2, 0, 0], [0, 0, 1, 2]])


def _rand_mat(field, rng, m, n):
    if field.p is None:
        return Mat.from_rows(field, [[Fraction(rng.randint(-4, 4)) for _ in range(n)] for _ in range(m)], n)
    return Mat.from_rows(field, [[rng.randrange(field.p) for _ in range(n)] for _ in range(m)], n)


def _rand_idempotent(field, rng, n):
    # conjugate a coordinate projection by a random invertible matrix
    while True:
        p = _rand_mat(field, rng, n, n)
        _, rk, _ = rref(p)
        if rk == n:
            break
    r = rng.randint(0, n)
    d = Mat.from_rows(field, [[1 if (i == j and i < r) else 0 for j in range(n)] for i in range(n)], n)
    pinv = solve_all(p, Mat.identity(field, n))
    return p @ d @ pinv


@pytest.mark.parametrize("field", [QQ, F2, F5])
def test_property_suite(field):
    """Rank-nullity, rref idempotence, solve soundness/completeness and
    idempotent splitting on randomized matrices (acceptance criterion 8
    runs the larger version of this loop)."""
    rng = random.Random(20240 + (field.p or 0))
    for _ in range(120):
        m = rng.randint(0, 5)
        n = rng.randint(0, 5)
        a = _rand_mat(field, rng, m, n)
        r, rk, piv = rref(a)
        assert rref(r)[0] == r, "rref must be idempotent"
        ker = kernel_basis(a)
        assert rk + ker.dim == n, "rank-nullity"
        for i in range(ker.dim):
            col = Mat.from_rows(field, [[x] for x in ker.basis.row(i)], 1)
            assert (a @ col).is_zero()
        # solve soundness and completeness
        x = _rand_mat(field, rng, n, rng.randint(0, 3))
        b = a @ x
        got = solve_all(a, b)
        assert got is not None and a @ got == b
        b2 = _rand_mat(field, rng, m, 2)
        got2 = solve_all(a, b2)
        aug_rank = rref(hstack([a, b2], field=field, nrows=m))[1]
        if got2 is None:
            assert aug_rank > rk
        else:
            assert a @ got2 == b2 and aug_rank == rk
    for _ in range(40):
        n = rng.randint(1, 5)
        e = _rand_idempotent(field, rng, n)
        u, v = split_idempotent(e)
        assert u @ v == Mat.identity(field, u.nrows)
        assert v @ u == e
        assert column_space(v) == column_space(e)


def test_subspace_equality_is_canonical():
    s1 = Subspace.from_vectors(QQ, 3, [[1, 1, 0], [0, 1, 1]])
    s2 = Subspace.from_vectors(QQ, 3, [[1, 0, -1], [2, 3, 1]])
    assert s1 == s2
    assert hash(s1) == hash(s2)


def test_large_prime_matmul_chunking():
    p = 2147483647
    f = Field.prime(p)
    a = Mat.from_rows(f, [[p - 1] * 9] * 2, 9)
    b = Mat.from_rows(f, [[p - 1] * 2] * 9, 2)
    got = a @ b
    expect = (9 * (p - 1) * (p - 1)) % p
    assert got[0, 0] == expect
