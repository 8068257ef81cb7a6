"""The abelian category of finite-dimensional representations.

Objects are ``Rep`` (per-vertex dimensions plus arrow matrices satisfying
the relations), morphisms are ``Mor`` (per-vertex matrices satisfying the
naturality squares; checked at construction, so every morphism produced
by an operation here is re-validated for free).  Subobjects are ``SubRep``
(arrow-stable families of subspaces).

Equality of objects is equality of data; mathematical identification is
always done through explicit isomorphisms.
"""

from __future__ import annotations

import random

from .algebra import Algebra, Path
from .exactla import (
    Field,
    Mat,
    Subspace,
    block_diag,
    hstack,
    kernel_basis,
    kron,
    quotient_projection,
    rref,
    solve_all,
    vstack,
)

__all__ = [
    "Rep",
    "Mor",
    "SubRep",
    "RepError",
    "InvariantViolation",
    "validate",
    "zero_rep",
    "hom_basis",
    "hom_dim",
    "mor_from_vector",
    "mor_to_vector",
    "kernel",
    "cokernel",
    "image",
    "quotient_rep",
    "direct_sum",
    "pullback",
    "pushout",
    "dualize_rep",
    "dualize_mor",
    "is_mono",
    "is_epi",
    "is_isomorphism",
    "find_iso",
    "IsoSearch",
    "identity_mor",
    "zero_mor",
    "compose",
    "SampleSpec",
    "sample_rep",
    "sample_mor",
    "sample_sub",
    "submodule_closure",
]


class RepError(ValueError):
    pass


class InvariantViolation(RuntimeError):
    """A mathematically guaranteed identity failed; signals a bug."""


class Rep:
    """A finite-dimensional representation of a bound quiver algebra."""

    __slots__ = ("algebra", "dims", "mats", "_hash")

    def __init__(self, algebra: Algebra, dims: dict, mats: dict, check: bool = True):
        self.algebra = algebra
        self.dims = {v: int(dims.get(v, 0)) for v in algebra.vertices}
        self.mats = dict(mats)
        self._hash = None
        if check:
            for a in algebra.quiver.arrows:
                m = self.mats.get(a.name)
                if m is None:
                    raise RepError(f"missing matrix for arrow {a.name}")
                if m.shape != (self.dims[a.target], self.dims[a.source]):
                    raise RepError(
                        f"arrow {a.name}: expected shape "
                        f"{(self.dims[a.target], self.dims[a.source])}, got {m.shape}"
                    )
            bad = validate(self)
            if bad:
                raise RepError(f"relations violated: {bad}")

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def dim_vector(self) -> tuple:
        return tuple(self.dims[v] for v in self.algebra.vertices)

    def __eq__(self, other):
        return (
            isinstance(other, Rep)
            and other.algebra == self.algebra
            and other.dims == self.dims
            and other.mats == self.mats
        )

    def __hash__(self):
        if self._hash is None:
            key = tuple(self.mats[a.name] for a in self.algebra.quiver.arrows)
            self._hash = hash((self.algebra, self.dim_vector(), key))
        return self._hash

    def __repr__(self):
        return f"Rep(dims={self.dims})"


def validate(rep: Rep) -> list[str]:
    """Check every relation evaluates to the zero matrix; returns the
    labels of violated relations (empty list = valid)."""
    alg = rep.algebra
    bad = []
    for rel in alg.spec.relations:
        total = None
        for c, p in rel.terms:
            m = alg.path_action(rep, Path(rel.source, tuple(p))).scale(c)
            total = m if total is None else total + m
        if total is not None and not total.is_zero():
            bad.append(rel.label(alg.quiver))
    return bad


def zero_rep(algebra: Algebra) -> Rep:
    dims = {v: 0 for v in algebra.vertices}
    mats = {a.name: Mat.zeros(algebra.field, 0, 0) for a in algebra.quiver.arrows}
    return Rep(algebra, dims, mats, check=False)


class Mor:
    """A morphism of representations; naturality is verified on
    construction."""

    __slots__ = ("dom", "cod", "mats", "_hash")

    def __init__(self, dom: Rep, cod: Rep, mats: dict, check: bool = True):
        self.dom = dom
        self.cod = cod
        self.mats = dict(mats)
        self._hash = None
        if check:
            if dom.algebra != cod.algebra:
                raise RepError("morphism between different algebras")
            for v in dom.algebra.vertices:
                m = self.mats.get(v)
                if m is None or m.shape != (cod.dims[v], dom.dims[v]):
                    raise RepError(f"bad matrix at vertex {v}")
            for a in dom.algebra.quiver.arrows:
                lhs = self.mats[a.target] @ dom.mats[a.name]
                rhs = cod.mats[a.name] @ self.mats[a.source]
                if lhs != rhs:
                    raise RepError(f"naturality fails at arrow {a.name}")

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.mats.values())

    def __add__(self, other: "Mor") -> "Mor":
        if other.dom is not self.dom and other.dom != self.dom:
            raise RepError("domain mismatch")
        return Mor(self.dom, self.cod,
                   {v: self.mats[v] + other.mats[v] for v in self.mats}, check=False)

    def scale(self, c) -> "Mor":
        return Mor(self.dom, self.cod, {v: m.scale(c) for v, m in self.mats.items()}, check=False)

    def __eq__(self, other):
        return (
            isinstance(other, Mor)
            and other.dom == self.dom
            and other.cod == self.cod
            and other.mats == self.mats
        )

    def __hash__(self):
        if self._hash is None:
            key = tuple(self.mats[v] for v in self.dom.algebra.vertices)
            self._hash = hash((self.dom, self.cod, key))
        return self._hash

    def __repr__(self):
        return f"Mor({self.dom.dim_vector()} -> {self.cod.dim_vector()})"


def compose(g: Mor, f: Mor) -> Mor:
    """g after f."""
    if f.cod != g.dom:
        raise RepError("composition mismatch")
    return Mor(f.dom, g.cod, {v: g.mats[v] @ f.mats[v] for v in f.mats})


def identity_mor(rep: Rep) -> Mor:
    return Mor(rep, rep, {v: Mat.identity(rep.algebra.field, rep.dims[v]) for v in rep.algebra.vertices}, check=False)


def zero_mor(dom: Rep, cod: Rep) -> Mor:
    return Mor(dom, cod, {v: Mat.zeros(dom.algebra.field, cod.dims[v], dom.dims[v]) for v in dom.algebra.vertices}, check=False)


class SubRep:
    """An arrow-stable family of subspaces of a parent representation."""

    __slots__ = ("parent", "spaces")

    def __init__(self, parent: Rep, spaces: dict, check: bool = True):
        self.parent = parent
        self.spaces = {v: spaces.get(v, Subspace.zero(parent.algebra.field, parent.dims[v]))
                       for v in parent.algebra.vertices}
        if check:
            for v, s in self.spaces.items():
                if s.ambient != parent.dims[v]:
                    raise RepError(f"subspace ambient mismatch at {v}")
            for a in parent.algebra.quiver.arrows:
                src = self.spaces[a.source]
                m = parent.mats[a.name]
                img = Subspace.from_vectors(
                    parent.algebra.field,
                    parent.dims[a.target],
                    [(m @ src.basis.transpose()).col(j) for j in range(src.dim)],
                )
                if not self.spaces[a.target].contains(img):
                    raise RepError(f"subspaces not stable under arrow {a.name}")

    def dim_vector(self) -> tuple:
        return tuple(self.spaces[v].dim for v in self.parent.algebra.vertices)

    def total_dim(self) -> int:
        return sum(s.dim for s in self.spaces.values())

    def is_full(self) -> bool:
        return all(s.is_full() for s in self.spaces.values())

    def is_zero(self) -> bool:
        return all(s.is_zero() for s in self.spaces.values())

    def contains(self, other: "SubRep") -> bool:
        return all(self.spaces[v].contains(other.spaces[v]) for v in self.spaces)

    def __eq__(self, other):
        return (
            isinstance(other, SubRep)
            and other.parent == self.parent
            and other.spaces == self.spaces
        )

    def __hash__(self):
        return hash((self.parent, tuple(self.spaces[v] for v in self.parent.algebra.vertices)))

    def to_rep(self) -> tuple[Rep, Mor]:
        """The subspace family as a representation in its own right, with
        the inclusion morphism."""
        parent = self.parent
        alg = parent.algebra
        f = alg.field
        dims = {v: self.spaces[v].dim for v in alg.vertices}
        mats = {}
        for a in alg.quiver.arrows:
            bs = self.spaces[a.source].basis.transpose()
            bt = self.spaces[a.target].basis.transpose()
            rhs = parent.mats[a.name] @ bs
            x = solve_all(bt, rhs)
            if x is None:  # pragma: no cover
                raise InvariantViolation("sub representation not arrow-stable")
            mats[a.name] = x
        sub = Rep(alg, dims, mats)
        inc = Mor(sub, parent, {v: self.spaces[v].basis.transpose() for v in alg.vertices})
        return sub, inc

    def __repr__(self):
        return f"SubRep(dims={self.dim_vector()} of {self.parent.dim_vector()})"


# -- hom spaces -------------------------------------------------------------


def hom_basis(m: Rep, n: Rep) -> list[Mor]:
    """A basis of Hom(m, n), canonical in the RREF kernel of the assembled
    naturality system.  Unknowns are the per-vertex matrices, flattened
    row-major in vertex order."""
    if m.algebra != n.algebra:
        raise RepError("hom between different algebras")
    alg = m.algebra
    f = alg.field
    verts = alg.vertices
    offs = {}
    total = 0
    for v in verts:
        offs[v] = total
        total += m.dims[v] * n.dims[v]
    blocks = []
    for a in alg.quiver.arrows:
        u, w = a.source, a.target
        rows = n.dims[w] * m.dims[u]
        if rows == 0:
            continue
        row_blocks = {}
        # X_w @ M_a  - N_a @ X_u = 0, flattened row-major:
        # (I_{n_w} (x) M_a^T) vec(X_w) - (N_a (x) I_{m_u}) vec(X_u)
        contrib_w = kron(Mat.identity(f, n.dims[w]), m.mats[a.name].transpose())
        contrib_u = kron(n.mats[a.name], Mat.identity(f, m.dims[u])).__neg__()
        if u == w:
            row_blocks[w] = contrib_w + contrib_u
        else:
            row_blocks[w] = contrib_w
            row_blocks[u] = contrib_u
        pieces = []
        for v in verts:
            ncols = m.dims[v] * n.dims[v]
            pieces.append(row_blocks.get(v, Mat.zeros(f, rows, ncols)))
        blocks.append(hstack(pieces, field=f, nrows=rows))
    if blocks:
        system = vstack(blocks, field=f, ncols=total)
    else:
        system = Mat.zeros(f, 0, total)
    ker = kernel_basis(system)
    out = []
    for i in range(ker.dim):
        out.append(mor_from_vector(m, n, ker.basis.row(i)))
    return out


def hom_dim(m: Rep, n: Rep) -> int:
    return len(hom_basis(m, n))


def mor_from_vector(m: Rep, n: Rep, vec) -> Mor:
    alg = m.algebra
    f = alg.field
    mats = {}
    pos = 0
    vec = list(vec)
    for v in alg.vertices:
        r, c = n.dims[v], m.dims[v]
        rows = [vec[pos + i * c : pos + (i + 1) * c] for i in range(r)]
        mats[v] = Mat.from_rows(f, rows, c)
        pos += r * c
    return Mor(m, n, mats)


def mor_to_vector(f: Mor) -> list:
    out = []
    for v in f.dom.algebra.vertices:
        for i in range(f.mats[v].nrows):
            out.extend(f.mats[v].row(i))
    return out


# -- kernels, cokernels, images ---------------------------------------------


def kernel(f: Mor) -> tuple[Rep, Mor]:
    """(K, iota) with iota a kernel of f: vertexwise null spaces with the
    induced arrow maps."""
    m, n = f.dom, f.cod
    alg = m.algebra
    fld = alg.field
    bases = {v: kernel_basis(f.mats[v]) for v in alg.vertices}
    dims = {v: bases[v].dim for v in alg.vertices}
    mats = {}
    for a in alg.quiver.arrows:
        bs = bases[a.source].basis.transpose()
        bt = bases[a.target].basis.transpose()
        x = solve_all(bt, m.mats[a.name] @ bs)
        if x is None:  # pragma: no cover
            raise InvariantViolation("kernel not arrow-stable")
        mats[a.name] = x
    k = Rep(alg, dims, mats)
    iota = Mor(k, m, {v: bases[v].basis.transpose() for v in alg.vertices})
    return k, iota


def image_subrep(f: Mor) -> SubRep:
    alg = f.dom.algebra
    spaces = {}
    for v in alg.vertices:
        m = f.mats[v]
        spaces[v] = Subspace.from_vectors(alg.field, f.cod.dims[v], [m.col(j) for j in range(m.ncols)])
    return SubRep(f.cod, spaces, check=False)


def quotient_rep(parent: Rep, sub: SubRep) -> tuple[Rep, Mor]:
    """(Q, pi) with pi the projection of parent onto parent/sub; the
    section is the deterministic non-pivot-coordinate one."""
    alg = parent.algebra
    f = alg.field
    pis = {v: quotient_projection(sub.spaces[v]) for v in alg.vertices}
    dims = {v: pis[v].nrows for v in alg.vertices}
    mats = {}
    for a in alg.quiver.arrows:
        # Q_a pi_u = pi_w M_a  (unique since pi_u is epi)
        lhs = pis[a.source].transpose()
        rhs = (pis[a.target] @ parent.mats[a.name]).transpose()
        x = solve_all(lhs, rhs)
        if x is None:  # pragma: no cover
            raise InvariantViolation("quotient by non-stable subspaces")
        mats[a.name] = x.transpose()
    q = Rep(alg, dims, mats)
    return q, Mor(parent, q, pis)


def cokernel(f: Mor) -> tuple[Rep, Mor]:
    return quotient_rep(f.cod, image_subrep(f))


def image(f: Mor) -> tuple[Rep, Mor, Mor]:
    """(I, e, m) with f = m . e, e epi onto the image and m mono."""
    sub = image_subrep(f)
    i, m = sub.to_rep()
    emats = {}
    for v in f.dom.algebra.vertices:
        x = solve_all(m.mats[v], f.mats[v])
        if x is None:  # pragma: no cover
            raise InvariantViolation("image factorization failed")
        emats[v] = x
    e = Mor(f.dom, i, emats)
    return i, e, m


# -- (co)products, pullbacks, pushouts ---------------------------------------


def direct_sum(algebra: Algebra, reps: list[Rep]) -> tuple[Rep, list[Mor], list[Mor]]:
    """(S, injections, projections); the empty sum is the zero object."""
    f = algebra.field
    for r in reps:
        if r.algebra != algebra:
            raise RepError("direct sum across algebras")
    dims = {v: sum(r.dims[v] for r in reps) for v in algebra.vertices}
    mats = {
        a.name: block_diag([r.mats[a.name] for r in reps], f) for a in algebra.quiver.arrows
    }
    s = Rep(algebra, dims, mats, check=False)
    injections = []
    projections = []
    offs = {v: 0 for v in algebra.vertices}
    for r in reps:
        imats = {}
        pmats = {}
        for v in algebra.vertices:
            rows = []
            for i in range(dims[v]):
                row = [f.zero()] * r.dims[v]
                if offs[v] <= i < offs[v] + r.dims[v]:
                    row[i - offs[v]] = f.one()
                rows.append(row)
            imats[v] = Mat.from_rows(f, rows, r.dims[v])
            pmats[v] = imats[v].transpose()
        injections.append(Mor(r, s, imats, check=False))
        projections.append(Mor(s, r, pmats, check=False))
        for v in algebra.vertices:
            offs[v] += r.dims[v]
    return s, injections, projections


def pullback(f: Mor, g: Mor) -> tuple[Rep, Mor, Mor]:
    """Pullback of f: A -> C and g: B -> C, as the kernel of (f, -g) on
    the direct sum."""
    if f.cod != g.cod:
        raise RepError("pullback needs a common codomain")
    alg = f.dom.algebra
    s, injs, projs = direct_sum(alg, [f.dom, g.dom])
    h = Mor(s, f.cod, {v: hstack([f.mats[v], g.mats[v].__neg__()], field=alg.field, nrows=f.cod.dims[v]) for v in alg.vertices})
    k, iota = kernel(h)
    return k, compose(projs[0], iota), compose(projs[1], iota)


def pushout(f: Mor, g: Mor) -> tuple[Rep, Mor, Mor]:
    """Pushout of f: C -> A and g: C -> B, as the cokernel of (f, -g)
    into the direct sum."""
    if f.dom != g.dom:
        raise RepError("pushout needs a common domain")
    alg = f.dom.algebra
    s, injs, projs = direct_sum(alg, [f.cod, g.cod])
    h = Mor(f.dom, s, {v: vstack([f.mats[v], g.mats[v].__neg__()], field=alg.field, ncols=f.dom.dims[v]) for v in alg.vertices})
    q, pi = cokernel(h)
    return q, compose(pi, injs[0]), compose(pi, injs[1])


# -- duality ------------------------------------------------------------------


def dualize_rep(rep: Rep) -> Rep:
    """The vector-space dual over the opposite algebra: same dimensions,
    transposed arrow matrices.  Applying it twice returns the original
    representation on the nose."""
    op = rep.algebra.opposite()
    mats = {a.name: rep.mats[a.name].transpose() for a in rep.algebra.quiver.arrows}
    return Rep(op, dict(rep.dims), mats)


def dualize_mor(f: Mor) -> Mor:
    return Mor(dualize_rep(f.cod), dualize_rep(f.dom), {v: m.transpose() for v, m in f.mats.items()})


# -- predicates and isomorphism search ----------------------------------------


def is_mono(f: Mor) -> bool:
    return all(kernel_basis(f.mats[v]).dim == 0 for v in f.dom.algebra.vertices)


def is_epi(f: Mor) -> bool:
    return all(rref(f.mats[v])[1] == f.cod.dims[v] for v in f.dom.algebra.vertices)


def is_isomorphism(f: Mor) -> bool:
    if f.dom.dim_vector() != f.cod.dim_vector():
        return False
    return is_mono(f) and is_epi(f)


class IsoSearch:
    """Result of an isomorphism search: ``found`` is a verified
    isomorphism or None; ``conclusive`` says whether a None is a proof of
    non-isomorphism (over a finite field with a small Hom space the search
    is exhaustive; over the rationals a miss is only absence-after-budget)."""

    __slots__ = ("found", "conclusive")

    def __init__(self, found, conclusive):
        self.found = found
        self.conclusive = conclusive


def find_iso(m: Rep, n: Rep, seed: int = 0, budget: int = 64, exhaustive_limit: int = 4096) -> IsoSearch:
    if m.algebra != n.algebra:
        raise RepError("iso search across algebras")
    if m.dim_vector() != n.dim_vector():
        return IsoSearch(None, True)
    if m.total_dim() == 0:
        return IsoSearch(zero_mor(m, n), True)
    if m == n:
        return IsoSearch(identity_mor(m), True)
    basis = hom_basis(m, n)
    if not basis:
        return IsoSearch(None, True)
    for b in basis:
        if is_isomorphism(b):
            return IsoSearch(b, True)
    f = m.algebra.field
    if f.p is not None and f.p ** len(basis) <= exhaustive_limit:
        coeffs = [0] * len(basis)
        while True:
            i = 0
            while i < len(coeffs) and coeffs[i] == f.p - 1:
                coeffs[i] = 0
                i += 1
            if i == len(coeffs):
                break
            coeffs[i] += 1
            cand = _combine(basis, coeffs)
            if is_isomorphism(cand):
                return IsoSearch(cand, True)
        return IsoSearch(None, True)
    rng = random.Random(seed)
    for _ in range(budget):
        if f.p is None:
            coeffs = [rng.randint(-3, 3) for _ in basis]
        else:
            coeffs = [rng.randrange(f.p) for _ in basis]
        if all(c == 0 for c in coeffs):
            continue
        cand = _combine(basis, coeffs)
        if is_isomorphism(cand):
            return IsoSearch(cand, True)
    return IsoSearch(None, False)


def _combine(basis: list[Mor], coeffs) -> Mor:
    out = None
    for b, c in zip(basis, coeffs):
        if c == 0:
            continue
        term = b.scale(c)
        out = term if out is None else out + term
    if out is None:
        return zero_mor(basis[0].dom, basis[0].cod)
    return out


# -- sampling -----------------------------------------------------------------


class SampleSpec:
    """How to draw random objects: how many, projective multiplicities and
    quotient generators per draw, and the master seed."""

    __slots__ = ("count", "max_mult", "max_gens", "seed")

    def __init__(self, count: int = 50, max_mult: int = 3, max_gens: int = 3, seed: int = 0):
        if count < 1:
            raise RepError("sample count must be >= 1")
        self.count = count
        self.max_mult = max_mult
        self.max_gens = max_gens
        self.seed = seed

    def child_rng(self, i: int) -> random.Random:
        return random.Random(self.seed * 1_000_003 + i)


def _rand_scalar(field: Field, rng: random.Random):
    if field.p is None:
        return rng.randint(-2, 2)
    return rng.randrange(field.p)


def _rand_vector(field: Field, rng: random.Random, n: int):
    return [_rand_scalar(field, rng) for _ in range(n)]


def submodule_closure(parent: Rep, vectors: dict) -> SubRep:
    """The smallest arrow-stable subspace family containing the given
    per-vertex vectors."""
    alg = parent.algebra
    f = alg.field
    spaces = {v: Subspace.from_vectors(f, parent.dims[v], vectors.get(v, [])) for v in alg.vertices}
    changed = True
    while changed:
        changed = False
        for a in alg.quiver.arrows:
            src = spaces[a.source]
            if src.dim == 0:
                continue
            m = parent.mats[a.name] @ src.basis.transpose()
            img = Subspace.from_vectors(f, parent.dims[a.target], [m.col(j) for j in range(m.ncols)])
            new = spaces[a.target].sum(img)
            if new.dim != spaces[a.target].dim:
                spaces[a.target] = new
                changed = True
    return SubRep(parent, spaces, check=False)


def sample_rep(algebra: Algebra, rng: random.Random, max_mult: int = 3, max_gens: int = 3) -> Rep:
    """A random quotient of a random finite sum of vertex projectives.

    Sampling only quotients of projectives keeps every draw inside the
    category (raw random matrices almost never satisfy the relations).
    """
    summands = []
    for vi in range(len(algebra.vertices)):
        for _ in range(rng.randint(0, max_mult)):
            summands.append(algebra.projective(vi))
    p, _, _ = direct_sum(algebra, summands)
    q, _ = sample_quotient(p, rng, max_gens)
    return q


def sample_quotient(parent: Rep, rng: random.Random, max_gens: int) -> tuple[Rep, Mor]:
    """(Q, pi): quotient of parent by the submodule generated by random
    elements."""
    f = parent.algebra.field
    n_gens = rng.randint(0, max_gens)
    vectors = {v: [] for v in parent.algebra.vertices}
    for _ in range(n_gens):
        for v in parent.algebra.vertices:
            if parent.dims[v]:
                vectors[v].append(_rand_vector(f, rng, parent.dims[v]))
    sub = submodule_closure(parent, vectors)
    return quotient_rep(parent, sub)


def sample_mor(m: Rep, n: Rep, rng: random.Random) -> Mor:
    basis = hom_basis(m, n)
    if not basis:
        return zero_mor(m, n)
    coeffs = [_rand_scalar(m.algebra.field, rng) for _ in basis]
    return _combine(basis, coeffs)


def sample_sub(parent: Rep, rng: random.Random, max_gens: int = 3) -> SubRep:
    f = parent.algebra.field
    n_gens = rng.randint(0, max_gens)
    vectors = {v: [] for v in parent.algebra.vertices}
    for _ in range(n_gens):
        for v in parent.algebra.vertices:
            if parent.dims[v]:
                vectors[v].append(_rand_vector(f, rng, parent.dims[v]))
    return submodule_closure(parent, vectors)
