import pytest

from coreflect.builtin import a2, glp, ksquare
from coreflect.checks import (
    ExhaustiveBoundExceeded,
    all_subspaces,
    audit_canonical_membership,
    check_abelian_exact,
    check_closed_under_cokernels,
    check_coreflective_abelian,
    check_gen_abelian,
    check_pres_coreflective,
    check_sigma_qp,
    dual_kernel_closure_verdicts,
    verify_witness,
)
from coreflect.exactla import QQ, Field
from coreflect.repcat import SampleSpec
from coreflect.trace import USet

F2 = Field.prime(2)
F5 = Field.prime(5)


@pytest.fixture(scope="module")
def g5():
    return glp(F5)


@pytest.fixture(scope="module")
def a2f5():
    return a2(F5)


@pytest.fixture(scope="module")
def a2f2():
    return a2(F2)


SPEC = SampleSpec(count=25, max_mult=2, max_gens=2, seed=0)


def test_pres_coreflective_all_projectives_passes(a2f5):
    u = USet(a2f5.projectives())
    rep = check_pres_coreflective(u, SPEC)
    assert rep.passed
    for c in rep.conditions:
        assert c["verdict"] == "Inconclusive(sampled)"


def test_pres_coreflective_glp_passes(g5):
    u = USet([g5.projective(1)])
    rep = check_pres_coreflective(u, SPEC)
    assert rep.passed


def test_pres_coreflective_a2_simple_two(a2f5):
    # U = the simple at the sink is projective here, so this passes too
    u = USet([a2f5.simple(1)])
    rep = check_pres_coreflective(u, SPEC)
    assert rep.passed


def test_coreflective_abelian_glp_passes(g5):
    u = USet([g5.projective(1)])
    rep = check_coreflective_abelian(u, SPEC)
    assert rep.passed


def test_coreflective_abelian_semisimple_passes():
    k2 = ksquare(F5)
    for u in (USet([k2.simple(0)]), USet([k2.simple(0), k2.simple(1)])):
        rep = check_coreflective_abelian(u, SPEC)
        assert rep.passed


def test_abelian_exact_hereditary_passes(a2f5):
    u = USet(a2f5.projectives())
    rep = check_abelian_exact(u, SPEC)
    assert rep.passed


def test_abelian_exact_glp_fails_with_replayable_witness(g5):
    u = USet([g5.projective(1)])
    rep = check_abelian_exact(u, SampleSpec(count=40, max_mult=2, max_gens=2, seed=0))
    assert not rep.passed
    by_id = {c["condition"]: c for c in rep.conditions}
    cond = by_id["abelian-exact.sum-kernel-generated"]
    assert cond["verdict"] == "FailWithWitness"
    assert cond["witnesses"]
    w = rep.witnesses[cond["witnesses"][0]]
    assert w.predicate == "sum-morphism-kernel-not-generated"
    assert verify_witness(w.to_dict())


def test_abelian_exact_semisimple_passes():
    k2 = ksquare(F5)
    rep = check_abelian_exact(USet([k2.simple(0)]), SPEC)
    assert rep.passed


def test_gen_abelian_semisimple_exhaustive():
    k2 = ksquare(F2)
    u = USet([k2.simple(0), k2.simple(1)])
    rep = check_gen_abelian(u, "exhaustive", SampleSpec(count=1, seed=0), dim_bound=4)
    assert rep.passed
    assert rep.conditions[0]["verdict"] == "Pass"
    assert "exhaustive" in rep.conditions[0]["proof"]


def test_gen_abelian_a2_exhaustive_fails(a2f2):
    # the sink coordinate of the big projective is a subobject that is
    # not generated by that projective
    u = USet([a2f2.projective(0)])
    rep = check_gen_abelian(u, "exhaustive", SampleSpec(count=1, seed=0), dim_bound=4)
    assert not rep.passed
    w = rep.witnesses[rep.conditions[0]["witnesses"][0]]
    assert verify_witness(w.to_dict())


def test_gen_abelian_requires_prime_field():
    u = USet([a2(QQ).projective(0)])
    with pytest.raises(ExhaustiveBoundExceeded):
        check_gen_abelian(u, "exhaustive", SampleSpec(count=1, seed=0))


def test_gen_abelian_budget():
    g = glp(Field.prime(31))
    u = USet([g.projective(1)])
    with pytest.raises(ExhaustiveBoundExceeded):
        check_gen_abelian(u, "exhaustive", SampleSpec(count=1, seed=0), dim_bound=12, enum_budget=10)


def test_gen_abelian_glp_sampled_fails(g5):
    u = USet([g5.projective(1)])
    rep = check_gen_abelian(u, "sampled", SampleSpec(count=30, max_mult=2, max_gens=2, seed=0))
    assert not rep.passed
    for w in rep.witnesses:
        assert verify_witness(w.to_dict())


def test_all_subspaces_count():
    # subspaces of F_2^2: 0, three lines, the plane
    assert len(list(all_subspaces(F2, 2))) == 5
    assert len(list(all_subspaces(F2, 3))) == 16


def test_sigma_qp_fast_path(g5):
    u = USet([g5.projective(1)])
    rep = check_sigma_qp(u, SPEC)
    assert rep.passed
    assert rep.conditions[0]["verdict"] == "Pass"
    assert "projective" in rep.conditions[0]["proof"]


def test_sigma_qp_a2_simple_two_fast_path(a2f5):
    # the simple at the sink is itself projective here
    rep = check_sigma_qp(USet([a2f5.simple(1)]), SPEC)
    assert rep.passed
    assert rep.conditions[0]["verdict"] == "Pass"


def test_sigma_qp_sampled_nonprojective(g5):
    u = USet([g5.simple(1)])
    rep = check_sigma_qp(u, SampleSpec(count=20, max_mult=2, max_gens=2, seed=0))
    # the simple at 2 over glp is not projective; quotients of its sums are
    # sums of copies of itself and the projections split, so sampling
    # cannot refute
    assert rep.conditions[0]["verdict"] in ("Inconclusive(sampled)", "FailWithWitness")
    if not rep.passed:
        for w in rep.witnesses:
            assert verify_witness(w.to_dict())


def test_cokernel_closure_projectives(a2f5):
    u = USet(a2f5.projectives())
    rep = check_closed_under_cokernels(u, SPEC)
    assert rep.passed


def test_cokernel_closure_glp(g5):
    u = USet([g5.projective(1)])
    rep = check_closed_under_cokernels(u, SPEC)
    assert rep.passed  # Pres of a projective is closed under cokernels


def test_dual_kernel_closure_matches(g5, a2f5):
    for alg in (g5, a2f5):
        u = USet([alg.projective(1)])
        rows = dual_kernel_closure_verdicts(u, SampleSpec(count=15, max_mult=2, max_gens=2, seed=3))
        for row in rows:
            assert row["direct"] == row["dual"]


def test_reports_deterministic(g5):
    u = USet([g5.projective(1)])
    r1 = check_abelian_exact(u, SampleSpec(count=10, max_mult=2, max_gens=2, seed=5))
    r2 = check_abelian_exact(u, SampleSpec(count=10, max_mult=2, max_gens=2, seed=5))
    assert r1.to_json() == r2.to_json()
    r3 = check_abelian_exact(u, SampleSpec(count=10, max_mult=2, max_gens=2, seed=6))
    assert r3.to_json() != r1.to_json()


def test_report_json_shape(g5):
    u = USet([g5.projective(1)])
    rep = check_pres_coreflective(u, SampleSpec(count=5, seed=1))
    doc = rep.to_dict()
    assert doc["schema"] == "coreflect-report/1"
    assert set(doc) == {"schema", "check", "anchors", "verdicts", "witnesses", "seed", "samples"}
    assert doc["seed"] == 1


def test_theorem_implication_chain(g5, a2f5):
    # abelian exact => coreflective abelian => coreflective, on sampled
    # verdicts; a violation would expose a checker bug
    spec = SampleSpec(count=15, max_mult=2, max_gens=2, seed=2)
    usets = [
        USet([g5.projective(1)]),
        USet([g5.simple(1)]),
        USet(g5.projectives()),
        USet([a2f5.projective(0)]),
        USet(a2f5.projectives()),
    ]
    for u in usets:
        ae = check_abelian_exact(u, spec)
        ca = check_coreflective_abelian(u, spec)
        pc = check_pres_coreflective(u, spec)
        if ae.passed:
            assert ca.passed, u
        if ca.passed:
            assert pc.passed, u


def test_audit_canonical_membership_builtins():
    for alg, uidx in ((glp(F2), 1), (a2(F2), 0)):
        u = USet([alg.projective(uidx)])
        out = audit_canonical_membership(u, max_mult=2, dim_bound=6)
        assert out["discrepancies"] == []
        assert out["census"]["morphisms"] > 0


def test_audit_nonprojective_uset():
    g = glp(F2)
    u = USet([g.simple(1)])
    out = audit_canonical_membership(u, max_mult=2, dim_bound=6)
    assert out["discrepancies"] == []


def test_witness_unknown_predicate_rejected(g5):
    from coreflect.checks import Witness

    u = USet([g5.projective(1)])
    w = Witness("no-such-predicate", u)
    with pytest.raises(ValueError):
        verify_witness(w.to_dict())
