"""Traces, double traces, Gen/Pres membership and canonical precovers.

For a finite set U of objects, the trace of U in A is the largest
U-generated subobject of A; here it is computed as the joint image of a
basis of each Hom(U_k, A).  The classical construction indexes the
canonical precover by the whole Hom set; over a field that set is
infinite, so the coproduct is indexed by a Hom-space basis instead.
Every morphism is a linear combination of basis morphisms, so images,
traces and the induced quotients are unchanged.  This is the single
systematic departure from the set-indexed picture and is noted wherever
the indexing matters.
"""

from __future__ import annotations

from .exactla import Mat, Subspace, hstack, kernel_basis, quotient_projection, solve_all
from .repcat import (
    InvariantViolation,
    Mor,
    Rep,
    RepError,
    SubRep,
    compose,
    direct_sum,
    hom_basis,
    kernel,
    mor_to_vector,
    quotient_rep,
    zero_mor,
)

__all__ = [
    "USet",
    "PrecoverData",
    "Presentation",
    "PresMembership",
    "trace_sub",
    "trace2_sub",
    "in_gen",
    "is_u_epi",
    "canonical_eps",
    "pres_precover",
    "in_pres_canonical",
    "factor_through",
    "induced_on_quotient",
    "push_subrep",
    "preimage_subrep",
]


class USet:
    """A finite set of nonzero representations over one algebra, playing
    the role of the generating set."""

    def __init__(self, items):
        items = list(items)
        if not items:
            raise RepError("USet must be nonempty")
        alg = items[0].algebra
        for r in items:
            if r.algebra != alg:
                raise RepError("USet members live over different algebras")
            if r.total_dim() == 0:
                raise RepError("USet members must be nonzero")
        self.items = tuple(items)
        self.algebra = alg

    def __iter__(self):
        return iter(self.items)

    def __len__(self):
        return len(self.items)

    def __getitem__(self, i):
        return self.items[i]

    def __eq__(self, other):
        return isinstance(other, USet) and other.items == self.items

    def __hash__(self):
        return hash(self.items)

    def dualize(self) -> "USet":
        from .repcat import dualize_rep

        return USet([dualize_rep(u) for u in self.items])


class Presentation:
    """A certified presentation: epi(coker-of left) is the object.

    ``left`` is a morphism between finite sums of U-objects and ``epi`` a
    surjection from left's codomain whose kernel is exactly the image of
    ``left``."""

    __slots__ = ("left", "epi")

    def __init__(self, left: Mor, epi: Mor):
        self.left = left
        self.epi = epi

    @property
    def obj(self) -> Rep:
        return self.epi.cod

    def verify(self) -> bool:
        if self.left.cod != self.epi.dom:
            return False
        if not compose(self.epi, self.left).is_zero():
            return False
        from .repcat import image_subrep, is_epi

        if not is_epi(self.epi):
            return False
        img = image_subrep(self.left)
        for v in self.epi.dom.algebra.vertices:
            if kernel_basis(self.epi.mats[v]) != img.spaces[v]:
                return False
        return True


class PresMembership:
    """Outcome of the canonical Pres(U) test: generatedness of the object
    and of the kernel of its canonical precover.  The test is sufficient
    in general and exact whenever every epi from a finite sum of U's is a
    U-epimorphism; a negative outcome is labelled as coming from the
    canonical test rather than as a proof of non-membership."""

    __slots__ = ("member", "certificate")

    def __init__(self, member: bool, certificate: Presentation | None):
        self.member = member
        self.certificate = certificate

    @property
    def verdict(self) -> str:
        return "member" if self.member else "not-member-canonical-test"


class PrecoverData:
    """A canonical precover: the morphism, the per-U multiplicities of its
    constructed domain, and which construction produced it."""

    __slots__ = ("morphism", "multiplicities", "kind", "presentation")

    def __init__(self, morphism: Mor, multiplicities: dict, kind: str, presentation=None):
        self.morphism = morphism
        self.multiplicities = dict(multiplicities)
        self.kind = kind
        self.presentation = presentation

    @property
    def domain(self) -> Rep:
        return self.morphism.dom


def _require_same_algebra(uset: USet, a: Rep):
    if uset.algebra != a.algebra:
        raise RepError("USet and object live over different algebras")


def trace_sub(uset: USet, a: Rep) -> SubRep:
    """The largest U-generated subobject of a: the joint image of all
    basis morphisms U_k -> a."""
    _require_same_algebra(uset, a)
    alg = a.algebra
    cols = {v: [] for v in alg.vertices}
    for u in uset:
        for b in hom_basis(u, a):
            for v in alg.vertices:
                m = b.mats[v]
                cols[v].extend(m.col(j) for j in range(m.ncols))
    spaces = {v: Subspace.from_vectors(alg.field, a.dims[v], cols[v]) for v in alg.vertices}
    return SubRep(a, spaces, check=False)


def push_subrep(f: Mor, sub: SubRep) -> SubRep:
    """The image of an arrow-stable family under a morphism."""
    alg = f.dom.algebra
    spaces = {}
    for v in alg.vertices:
        b = sub.spaces[v].basis.transpose()
        m = f.mats[v] @ b
        spaces[v] = Subspace.from_vectors(alg.field, f.cod.dims[v], [m.col(j) for j in range(m.ncols)])
    return SubRep(f.cod, spaces, check=False)


def preimage_subrep(f: Mor, sub: SubRep) -> SubRep:
    """The preimage of an arrow-stable family under a morphism."""
    alg = f.dom.algebra
    spaces = {}
    for v in alg.vertices:
        rho = quotient_projection(sub.spaces[v])
        spaces[v] = kernel_basis(rho @ f.mats[v])
    return SubRep(f.dom, spaces, check=False)


def trace2_sub(uset: USet, a: Rep) -> SubRep:
    """The double trace: the preimage in a of the trace of a modulo its
    trace.  Always contains the trace; equality holds exactly when no
    U-object maps nontrivially into the quotient."""
    t = trace_sub(uset, a)
    q, pi = quotient_rep(a, t)
    t2q = trace_sub(uset, q)
    out = preimage_subrep(pi, t2q)
    if not out.contains(t):  # pragma: no cover
        raise InvariantViolation("double trace must contain the trace")
    return out


def in_gen(uset: USet, a: Rep) -> bool:
    return trace_sub(uset, a).is_full()


def factor_through(f: Mor, t: Mor) -> Mor | None:
    """Some g with f . g = t, or None; solved on Hom-space coordinates."""
    if f.cod != t.cod:
        raise RepError("codomain mismatch")
    basis = hom_basis(t.dom, f.dom)
    fld = f.dom.algebra.field
    tv = mor_to_vector(t)
    if not basis:
        return zero_mor(t.dom, f.dom) if all(x == 0 for x in tv) else None
    cols = [mor_to_vector(compose(f, b)) for b in basis]
    a = Mat.from_rows(fld, cols, len(tv)).transpose()
    b = Mat.from_rows(fld, [[x] for x in tv], 1)
    sol = solve_all(a, b)
    if sol is None:
        return None
    g = None
    for i, bmor in enumerate(basis):
        c = sol[i, 0]
        if c != 0:
            term = bmor.scale(c)
            g = term if g is None else g + term
    if g is None:
        g = zero_mor(t.dom, f.dom)
    return g


def is_u_epi(uset: USet, f: Mor) -> bool:
    """True when every basis morphism U_k -> cod(f) factors through f."""
    _require_same_algebra(uset, f.cod)
    for u in uset:
        for t in hom_basis(u, f.cod):
            if factor_through(f, t) is None:
                return False
    return True


def canonical_eps(uset: USet, a: Rep) -> PrecoverData:
    """The canonical morphism from the sum of one copy of U_k per
    Hom-basis element of Hom(U_k, a); its image is the trace, and it is a
    precover for the class of finite sums of U-objects."""
    _require_same_algebra(uset, a)
    alg = a.algebra
    summands = []
    components = []
    mults = {}
    for k, u in enumerate(uset):
        hb = hom_basis(u, a)
        mults[k] = len(hb)
        for b in hb:
            summands.append(u)
            components.append(b)
    dom, injs, _ = direct_sum(alg, summands)
    mats = {}
    for v in alg.vertices:
        mats[v] = hstack([b.mats[v] for b in components], field=alg.field, nrows=a.dims[v])
    eps = Mor(dom, a, mats)
    return PrecoverData(eps, mults, "sum")


def induced_on_quotient(pi: Mor, f: Mor) -> Mor:
    """The unique g with g . pi = f, when f kills the kernel of the
    projection pi."""
    gmats = {}
    for v in pi.dom.algebra.vertices:
        x = solve_all(pi.mats[v].transpose(), f.mats[v].transpose())
        if x is None:
            raise InvariantViolation("morphism does not descend to the quotient")
        gmats[v] = x.transpose()
    return Mor(pi.cod, f.cod, gmats)


def pres_precover(uset: USet, a: Rep) -> PrecoverData:
    """The canonical Pres(U)-precover: the canonical sum precover divided
    by the trace of its kernel, with the induced morphism to a.  The
    domain comes with a certified presentation."""
    eps = canonical_eps(uset, a)
    k_rep, k_inc = kernel(eps.morphism)
    tk = trace_sub(uset, k_rep)
    t_in_dom = push_subrep(k_inc, tk)
    dom, pi = quotient_rep(eps.domain, t_in_dom)
    eps_hat = induced_on_quotient(pi, eps.morphism)
    # presentation of the domain: generators of the trace followed by pi
    t_rep, t_inc = t_in_dom.to_rep()
    gen = canonical_eps(uset, t_rep)
    from .repcat import is_epi

    if not is_epi(gen.morphism):  # pragma: no cover
        raise InvariantViolation("trace is not generated by its own precover")
    left = compose(t_inc, gen.morphism)
    pres = Presentation(left, pi)
    return PrecoverData(eps_hat, eps.multiplicities, "pres", presentation=pres)


def in_pres_canonical(uset: USet, a: Rep) -> PresMembership:
    """Membership test for Pres(U) via the canonical precover: the object
    and the kernel of its canonical sum precover must both be
    U-generated.  On success the certified presentation is returned."""
    _require_same_algebra(uset, a)
    if not in_gen(uset, a):
        return PresMembership(False, None)
    eps = canonical_eps(uset, a)
    k_rep, k_inc = kernel(eps.morphism)
    if not in_gen(uset, k_rep):
        return PresMembership(False, None)
    genk = canonical_eps(uset, k_rep)
    left = compose(k_inc, genk.morphism)
    pres = Presentation(left, eps.morphism)
    return PresMembership(True, pres)
