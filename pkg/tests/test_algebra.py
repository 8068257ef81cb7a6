import pytest

from coreflect.algebra import (
    Algebra,
    AlgebraSpec,
    NotFiniteDimensionalAtBound,
    Quiver,
    QuiverError,
    Relation,
    loewy_length,
    projective_cover,
    radical,
)
from coreflect.exactla import QQ, Field
from coreflect.repcat import is_isomorphism, kernel, validate

F5 = Field.prime(5)


def one_vertex(field=QQ):
    return Algebra(AlgebraSpec(Quiver(["1"], []), (), field, 1))


def a2(field=QQ):
    q = Quiver(["1", "2"], [("a", "1", "2")])
    return Algebra(AlgebraSpec(q, (), field, 2))


def glp(field=QQ):
    q = Quiver(["1", "2"], [("beta", "1", "2"), ("alpha", "2", "1")])
    rel = Relation(q, [(1, (0, 1))])  # beta then alpha, a path 1 -> 1
    return Algebra(AlgebraSpec(q, (rel,), field, 4))


def test_one_vertex_basis():
    alg = one_vertex()
    assert alg.dim == 1
    assert alg.basis[0].arrows == ()


def test_a2_basis():
    alg = a2()
    assert alg.dim == 3
    labels = sorted(p.label(alg.quiver) for p in alg.basis)
    assert labels == ["a", "e_1", "e_2"]


def test_glp_dimension_five():
    for field in (QQ, F5):
        alg = glp(field)
        assert alg.dim == 5
        labels = sorted(p.label(alg.quiver) for p in alg.basis)
        assert labels == ["alpha", "alpha*beta", "beta", "e_1", "e_2"]


def test_commutative_square_relation():
    # two paths around a square, identified by a two-term relation
    q = Quiver(
        ["1", "2", "3", "4"],
        [("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")],
    )
    rel = Relation(q, [(1, (0, 1)), (-1, (2, 3))])
    alg = Algebra(AlgebraSpec(q, (rel,), QQ, 3))
    # paths: 4 trivial + 4 arrows + (a*b ~ c*d give one class)
    assert alg.dim == 9


def test_not_finite_dimensional_at_bound():
    q = Quiver(["1"], [("l", "1", "1")])
    with pytest.raises(NotFiniteDimensionalAtBound):
        Algebra(AlgebraSpec(q, (), QQ, 3))
    rel = Relation(q, [(1, (0, 0))])  # l*l = 0
    alg = Algebra(AlgebraSpec(q, (rel,), QQ, 2))
    assert alg.dim == 2


def test_relation_validation():
    q = Quiver(["1", "2"], [("a", "1", "2"), ("b", "2", "1")])
    with pytest.raises(QuiverError):
        Relation(q, [(1, (0,))])  # too short
    with pytest.raises(QuiverError):
        Relation(q, [(1, (0, 0))])  # not composable
    with pytest.raises(QuiverError):
        Relation(q, [(1, (0, 1)), (1, (1, 0))])  # not parallel


def test_quiver_validation():
    with pytest.raises(QuiverError):
        Quiver(["1", "1"], [])
    with pytest.raises(QuiverError):
        Quiver(["1"], [("a", "1", "2")])


def test_multiplication_associativity_all_triples():
    for alg in (glp(QQ), a2(QQ), glp(F5)):
        d = alg.dim
        f = alg.field

        def mult_vec(terms_i, j):
            out = {}
            for i, c in terms_i:
                for k, c2 in alg.mult.get((i, j), ()):
                    out[k] = f.coerce(out.get(k, 0) + c * c2)
            return tuple(sorted((k, v) for k, v in out.items() if v != 0))

        for i in range(d):
            for j in range(d):
                for k in range(d):
                    ij = alg.mult.get((i, j), ())
                    left = mult_vec(ij, k)
                    jk = alg.mult.get((j, k), ())
                    right = {}
                    for t, c in jk:
                        for s, c2 in alg.mult.get((i, t), ()):
                            right[s] = f.coerce(right.get(s, 0) + c * c2)
                    right = tuple(sorted((a, b) for a, b in right.items() if b != 0))
                    assert left == right, (i, j, k)


def test_projectives_one_vertex():
    alg = one_vertex()
    p = alg.projective(0)
    assert p.total_dim() == 1
    assert p == alg.simple(0)


def test_projectives_a2():
    alg = a2()
    p1 = alg.projective(0)
    assert p1.dim_vector() == (1, 1)
    p2 = alg.projective(1)
    assert p2.dim_vector() == (0, 1)
    assert validate(p1) == [] and validate(p2) == []


def test_projectives_glp():
    for field in (QQ, F5):
        alg = glp(field)
        p1 = alg.projective(0)
        p2 = alg.projective(1)
        assert sorted([p1.total_dim(), p2.total_dim()]) == [2, 3]
        assert p2.total_dim() == 3  # the maximal-Loewy-length projective
        assert validate(p1) == [] and validate(p2) == []


def test_radical_and_loewy_length():
    alg = a2()
    s1 = alg.simple(0)
    assert radical(s1).is_zero()
    assert loewy_length(s1) == 1
    assert loewy_length(alg.projective(0)) == 2
    g = glp()
    assert loewy_length(g.projective(1)) == 3
    assert loewy_length(g.projective(0)) == 2


def test_projective_cover_of_projective_is_iso():
    alg = glp()
    for i in (0, 1):
        p = alg.projective(i)
        c, pi = projective_cover(p)
        assert is_isomorphism(pi)


def test_projective_cover_zero():
    alg = glp()
    from coreflect.repcat import zero_rep

    c, pi = projective_cover(zero_rep(alg))
    assert c.total_dim() == 0


def test_glp_cover_of_simple_two():
    alg = glp()
    s2 = alg.simple(1)
    c, pi = projective_cover(s2)
    assert c == alg.projective(1)
    k, _ = kernel(pi)
    assert k.total_dim() == 2


def test_loewy_length_bounded_by_nil_bound():
    for alg in (glp(), a2(), one_vertex()):
        for i in range(len(alg.vertices)):
            assert loewy_length(alg.projective(i)) <= alg.nil_bound


def test_opposite_involution():
    alg = glp()
    assert alg.opposite().opposite() == alg
    assert alg.opposite().dim == alg.dim
