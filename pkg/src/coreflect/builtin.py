"""Built-in algebras and generating sets used by the CLI, the demo
scripts and the test suite.

``glp`` is the two-vertex algebra with arrows in both directions and one
zero relation; its projective at vertex 2 has dimension 3 and maximal
Loewy length, and its endomorphism algebra is two-dimensional with a
nilpotent non-scalar element, which makes Pres of that projective a
coreflective abelian subcategory that is not abelian exact.
"""

from __future__ import annotations

from .algebra import Algebra, AlgebraSpec, Quiver, Relation
from .exactla import QQ, Field
from .trace import USet

__all__ = ["glp", "a2", "ksquare", "builtin_algebra", "builtin_usets", "ALGEBRA_NAMES"]

ALGEBRA_NAMES = ("glp", "a2", "ksquare")


def glp(field: Field = QQ) -> Algebra:
    q = Quiver(["1", "2"], [("beta", "1", "2"), ("alpha", "2", "1")])
    rel = Relation(q, [(1, (0, 1))])  # beta*alpha = 0
    return Algebra(AlgebraSpec(q, (rel,), field, 4))


def a2(field: Field = QQ) -> Algebra:
    return Algebra(AlgebraSpec(Quiver(["1", "2"], [("a", "1", "2")]), (), field, 2))


def ksquare(field: Field = QQ) -> Algebra:
    """The product of two copies of the base field: two vertices, no
    arrows; everything is semisimple."""
    return Algebra(AlgebraSpec(Quiver(["1", "2"], []), (), field, 1))


def builtin_algebra(name: str, field: Field = QQ) -> Algebra:
    try:
        return {"glp": glp, "a2": a2, "ksquare": ksquare}[name](field)
    except KeyError:
        raise ValueError(f"unknown built-in algebra {name!r}; choose from {ALGEBRA_NAMES}") from None


def glp_max_ll_projective(alg: Algebra):
    """The projective of maximal Loewy length (the distinguished U for the
    glp example)."""
    from .algebra import loewy_length

    best = None
    for i in range(len(alg.vertices)):
        p = alg.projective(i)
        ll = loewy_length(p)
        if best is None or ll > best[0]:
            best = (ll, p)
    return best[1]


def builtin_usets(alg: Algebra, name: str) -> list[tuple[str, USet]]:
    """Named generating sets per built-in algebra, used by the audit
    suite and the CLI's named USet items."""
    out = [("all-projectives", USet(alg.projectives()))]
    for i, v in enumerate(alg.vertices):
        out.append((f"proj-{v}", USet([alg.projective(i)])))
        out.append((f"simple-{v}", USet([alg.simple(i)])))
    if name == "glp":
        out.append(("max-ll-projective", USet([glp_max_ll_projective(alg)])))
    return out
