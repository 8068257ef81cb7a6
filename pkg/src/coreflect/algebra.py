"""Bound quiver algebras.

A quiver plus an admissible ideal of relations, compiled into a concrete
basis of residue classes of paths with a multiplication table.  Paths
compose left to right throughout: ``p*q`` means "first p, then q", and a
representation assigns to an arrow a: i -> j a matrix mapping the space
at i into the space at j.  The projective attached to vertex i is carried
by the residue paths with source i, with arrows acting by path extension.

The ideal is handled by plain linear elimination per the nilpotency bound
``nil_bound``: the two-sided ideal generated by the relations is spanned
by u*r*v over all paths u, v, and we eliminate that span from the space
of paths of length <= nil_bound.  If some path of length nil_bound
survives, the bound is insufficient (or the ideal is not admissible) and
compilation refuses with ``NotFiniteDimensionalAtBound``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactla import Field, Mat, Subspace, quotient_projection, rref, solve_all

__all__ = [
    "Arrow",
    "Quiver",
    "Relation",
    "AlgebraSpec",
    "Algebra",
    "Path",
    "compile_algebra",
    "NotFiniteDimensionalAtBound",
    "QuiverError",
]


class QuiverError(ValueError):
    pass


class NotFiniteDimensionalAtBound(QuiverError):
    """A path of length nil_bound survives reduction by the relation ideal."""


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


class Quiver:
    def __init__(self, vertices, arrows):
        self.vertices = tuple(vertices)
        self.arrows = tuple(Arrow(*a) if not isinstance(a, Arrow) else a for a in arrows)
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex names")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise QuiverError("duplicate arrow names")
        if set(names) & set(self.vertices):
            raise QuiverError("arrow names must differ from vertex names")
        vset = set(self.vertices)
        for a in self.arrows:
            if a.source not in vset or a.target not in vset:
                raise QuiverError(f"arrow {a.name} has undeclared endpoint")
        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}
        self.arrow_index = {a.name: i for i, a in enumerate(self.arrows)}

    def __eq__(self, other):
        return (
            isinstance(other, Quiver)
            and other.vertices == self.vertices
            and other.arrows == self.arrows
        )

    def __hash__(self):
        return hash((self.vertices, self.arrows))


@dataclass(frozen=True)
class Path:
    """A path in the quiver: a source vertex index plus a tuple of arrow
    indices (empty for the stationary path e_i)."""

    source: int
    arrows: tuple[int, ...]

    def target(self, quiver: Quiver) -> int:
        if not self.arrows:
            return self.source
        return quiver.vertex_index[quiver.arrows[self.arrows[-1]].target]

    def __len__(self):
        return len(self.arrows)

    def key(self):
        return (len(self.arrows), self.arrows, self.source)

    def label(self, quiver: Quiver) -> str:
        if not self.arrows:
            return f"e_{quiver.vertices[self.source]}"
        return "*".join(quiver.arrows[i].name for i in self.arrows)


class Relation:
    """A parallel linear combination of paths of length >= 2."""

    def __init__(self, quiver: Quiver, terms):
        # terms: list of (coefficient, tuple of arrow indices)
        self.terms = tuple((c, tuple(p)) for c, p in terms)
        if not self.terms:
            raise QuiverError("empty relation")
        src = tgt = None
        for c, p in self.terms:
            if len(p) < 2:
                raise QuiverError("relation paths must have length >= 2")
            for x, y in zip(p, p[1:]):
                if quiver.arrows[x].target != quiver.arrows[y].source:
                    raise QuiverError("relation path is not composable")
            s = quiver.vertex_index[quiver.arrows[p[0]].source]
            t = quiver.vertex_index[quiver.arrows[p[-1]].target]
            if src is None:
                src, tgt = s, t
            elif (s, t) != (src, tgt):
                raise QuiverError("relation terms are not parallel")
        self.source = src
        self.target = tgt

    def label(self, quiver: Quiver) -> str:
        parts = []
        for c, p in self.terms:
            word = "*".join(quiver.arrows[i].name for i in p)
            parts.append(f"{c}*{word}" if c not in (1,) else word)
        return " + ".join(parts)

    def __eq__(self, other):
        return isinstance(other, Relation) and other.terms == self.terms

    def __hash__(self):
        return hash(self.terms)


@dataclass(frozen=True)
class AlgebraSpec:
    quiver: Quiver
    relations: tuple
    field: Field
    nil_bound: int

    def opposite(self) -> "AlgebraSpec":
        q = self.quiver
        op_arrows = [Arrow(a.name, a.target, a.source) for a in q.arrows]
        opq = Quiver(q.vertices, op_arrows)
        op_rels = tuple(
            Relation(opq, [(c, tuple(reversed(p))) for c, p in r.terms]) for r in self.relations
        )
        return AlgebraSpec(opq, op_rels, self.field, self.nil_bound)


def _paths_up_to(quiver: Quiver, nmax: int) -> list[Path]:
    out = [Path(i, ()) for i in range(len(quiver.vertices))]
    frontier = list(out)
    for _ in range(nmax):
        nxt = []
        for p in frontier:
            t = p.target(quiver)
            for ai, a in enumerate(quiver.arrows):
                if quiver.vertex_index[a.source] == t:
                    nxt.append(Path(p.source, p.arrows + (ai,)))
        out.extend(nxt)
        frontier = nxt
        if not frontier:
            break
    out.sort(key=Path.key)
    return out


class Algebra:
    """A compiled bound quiver algebra: basis of residue paths and the
    multiplication table, plus cached projectives, simples and the
    opposite algebra."""

    def __init__(self, spec: AlgebraSpec):
        self.spec = spec
        self.quiver = spec.quiver
        self.field = spec.field
        self.nil_bound = spec.nil_bound
        self._compile()
        self._proj_cache = {}
        self._simple_cache = {}
        self._op = None

    # Equality of algebras is equality of their defining data.
    def __eq__(self, other):
        return isinstance(other, Algebra) and other.spec == self.spec

    def __hash__(self):
        return hash(self.spec)

    def _compile(self):
        q = self.quiver
        f = self.field
        N = self.nil_bound
        if N < 1:
            raise QuiverError("nil_bound must be >= 1")
        allpaths = _paths_up_to(q, N)
        index = {p: i for i, p in enumerate(allpaths)}
        npaths = len(allpaths)

        # Rows spanning the two-sided ideal inside paths of length <= N.
        # u * r * v, with terms longer than N dropped (they lie in rad^N,
        # which is zero at this bound once the final check passes).
        rows = []
        for rel in self.spec.relations:
            min_len = min(len(p) for _, p in rel.terms)
            pre = [u for u in allpaths if u.target(q) == rel.source]
            post = [v for v in allpaths if v.source == rel.target]
            for u in pre:
                for v in post:
                    if len(u) + min_len + len(v) > N:
                        continue
                    vec = [f.zero()] * npaths
                    nonzero = False
                    for c, p in rel.terms:
                        if len(u) + len(p) + len(v) > N:
                            continue
                        w = Path(u.source, u.arrows + p + v.arrows)
                        vec[index[w]] = vec[index[w]] + f.coerce(c)
                        nonzero = True
                    if nonzero:
                        rows.append(vec)
        if rows:
            R, rk, pivots = rref(Mat.from_rows(f, rows, npaths))
            self._red_rows = R
            self._red_pivots = pivots
        else:
            self._red_rows = Mat.zeros(f, 0, npaths)
            self._red_pivots = []
        self._all_paths = allpaths
        self._path_index = index

        pivset = set(self._red_pivots)
        survivors = [p for i, p in enumerate(allpaths) if i not in pivset]
        for p in survivors:
            if len(p) == N and not self._reduces_to_zero(p):
                raise NotFiniteDimensionalAtBound(
                    f"path {p.label(q)} of length {N} survives reduction; "
                    "raise nil_bound or check that the ideal is admissible"
                )
        # A surviving length-N path always fails _reduces_to_zero, so the
        # basis consists of residue classes of paths of length < N.
        self.basis = tuple(p for p in survivors if len(p) < N)
        self.basis_index = {p: i for i, p in enumerate(self.basis)}
        self.dim = len(self.basis)
        self._build_mult_table()

    def _reduce_path_vector(self, path: Path):
        """Coordinates of a path's residue class in the algebra basis."""
        f = self.field
        n = len(self._all_paths)
        vec = [f.zero()] * n
        vec[self._path_index[path]] = f.one()
        R = self._red_rows
        for r, pc in enumerate(self._red_pivots):
            x = vec[pc]
            if x != 0:
                row = R.row(r)
                for j in range(pc, n):
                    y = row[j]
                    if y != 0:
                        vec[j] = f.coerce(vec[j] - x * y)
        out = []
        for p, i in self.basis_index.items():
            c = vec[self._path_index[p]]
            if c != 0:
                out.append((i, c))
        return out

    def _reduces_to_zero(self, path: Path) -> bool:
        f = self.field
        n = len(self._all_paths)
        vec = [f.zero()] * n
        vec[self._path_index[path]] = f.one()
        R = self._red_rows
        for r, pc in enumerate(self._red_pivots):
            x = vec[pc]
            if x != 0:
                row = R.row(r)
                for j in range(pc, n):
                    y = row[j]
                    if y != 0:
                        vec[j] = f.coerce(vec[j] - x * y)
        return all(x == 0 for x in vec)

    def _build_mult_table(self):
        q = self.quiver
        N = self.nil_bound
        self.mult = {}
        for i, p in enumerate(self.basis):
            for j, r in enumerate(self.basis):
                if p.target(q) != r.source:
                    continue
                if len(p) + len(r) > N:
                    continue  # lands in rad^N = 0
                terms = self._reduce_path_vector(Path(p.source, p.arrows + r.arrows))
                if terms:
                    self.mult[(i, j)] = tuple(terms)

    # -- basic structure -------------------------------------------------

    @property
    def vertices(self):
        return self.quiver.vertices

    def basis_with_source(self, vi: int) -> list[int]:
        return [k for k, p in enumerate(self.basis) if p.source == vi]

    def vertex_dim(self, vi: int) -> int:
        """dim e_vi . Lambda . e_? summed: number of residue paths from vi."""
        return len(self.basis_with_source(vi))

    def opposite(self) -> "Algebra":
        if self._op is None:
            self._op = Algebra(self.spec.opposite())
            self._op._op = self
        return self._op

    # -- canonical modules -------------------------------------------------

    def projective(self, vertex) -> "Rep":
        """The representation carried by the residue paths with source at
        the given vertex, arrows acting by path extension."""
        from .repcat import Rep

        vi = vertex if isinstance(vertex, int) else self.quiver.vertex_index[vertex]
        if vi in self._proj_cache:
            return self._proj_cache[vi]
        q = self.quiver
        f = self.field
        mine = self.basis_with_source(vi)
        by_vertex = {w: [] for w in range(len(q.vertices))}
        for k in mine:
            by_vertex[self.basis[k].target(q)].append(k)
        dims = {q.vertices[w]: len(by_vertex[w]) for w in range(len(q.vertices))}
        pos = {}
        for w, ks in by_vertex.items():
            for c, k in enumerate(ks):
                pos[k] = (w, c)
        mats = {}
        for a in q.arrows:
            u = q.vertex_index[a.source]
            w = q.vertex_index[a.target]
            rows = len(by_vertex[w])
            cols = len(by_vertex[u])
            entries = [[f.zero()] * cols for _ in range(rows)]
            ai = q.arrow_index[a.name]
            for c, k in enumerate(by_vertex[u]):
                p = self.basis[k]
                if len(p) + 1 > self.nil_bound:
                    continue
                for t, coeff in self._reduce_path_vector(Path(p.source, p.arrows + (ai,))):
                    _, r = pos[t]
                    entries[r][c] = coeff
            mats[a.name] = Mat.from_rows(f, entries, cols)
        rep = Rep(self, dims, mats)
        self._proj_cache[vi] = rep
        return rep

    def simple(self, vertex) -> "Rep":
        from .repcat import Rep

        vi = vertex if isinstance(vertex, int) else self.quiver.vertex_index[vertex]
        if vi in self._simple_cache:
            return self._simple_cache[vi]
        q = self.quiver
        dims = {v: (1 if q.vertex_index[v] == vi else 0) for v in q.vertices}
        mats = {
            a.name: Mat.zeros(self.field, dims[a.target], dims[a.source]) for a in q.arrows
        }
        rep = Rep(self, dims, mats)
        self._simple_cache[vi] = rep
        return rep

    def projectives(self) -> list:
        return [self.projective(i) for i in range(len(self.vertices))]

    def path_action(self, rep, path: Path) -> Mat:
        """The matrix of a path acting on a representation (source space
        to target space)."""
        q = self.quiver
        if not path.arrows:
            n = rep.dims[q.vertices[path.source]]
            return Mat.identity(self.field, n)
        m = rep.mats[q.arrows[path.arrows[0]].name]
        for ai in path.arrows[1:]:
            m = rep.mats[q.arrows[ai].name] @ m
        return m


def compile_algebra(spec: AlgebraSpec) -> Algebra:
    return Algebra(spec)


# -- module-theoretic operations ------------------------------------------


def radical(rep) -> "SubRep":
    """The largest submodule on which the algebra's arrows act trivially
    from above: at each vertex, the span of all incoming arrow images."""
    from .repcat import SubRep

    alg = rep.algebra
    q = alg.quiver
    f = alg.field
    spans = {}
    for v in q.vertices:
        vecs = []
        for a in q.arrows:
            if a.target == v:
                m = rep.mats[a.name]
                vecs.extend(m.col(j) for j in range(m.ncols))
        spans[v] = Subspace.from_vectors(f, rep.dims[v], vecs)
    return SubRep(rep, spans)


def loewy_length(rep) -> int:
    n = 0
    cur = rep
    while cur.total_dim() > 0:
        sub = radical(cur)
        cur, _ = sub.to_rep()
        n += 1
        if n > rep.algebra.nil_bound + 1:  # pragma: no cover
            raise QuiverError("radical series does not terminate")
    return n


def top_projection(rep):
    """The semisimple quotient rep/rad(rep) with its projection."""
    from .repcat import Mor, Rep

    alg = rep.algebra
    f = alg.field
    rad = radical(rep)
    pis = {v: quotient_projection(rad.spaces[v]) for v in alg.vertices}
    dims = {v: pis[v].nrows for v in alg.vertices}
    mats = {
        a.name: Mat.zeros(f, dims[a.target], dims[a.source]) for a in alg.quiver.arrows
    }
    t = Rep(alg, dims, mats)
    return t, Mor(rep, t, pis)


def projective_cover(rep) -> tuple:
    """(P, pi) with P a direct sum of vertex projectives matching the top
    of rep and pi a surjection whose kernel sits inside rad(P)."""
    from .repcat import Mor, direct_sum

    alg = rep.algebra
    q = alg.quiver
    f = alg.field
    top, proj = top_projection(rep)
    summands = []
    generators = []  # (vertex index, generating vector in rep at that vertex)
    for vi, v in enumerate(q.vertices):
        t = top.dims[v]
        if t == 0:
            continue
        section = solve_all(proj.mats[v], Mat.identity(f, t))
        assert section is not None
        for c in range(t):
            summands.append(alg.projective(vi))
            generators.append((vi, Mat.from_rows(f, [[x] for x in section.col(c)], 1)))
    P, injections, _ = direct_sum(alg, summands)
    # pi on each summand sends the residue path p (source vi) to the path
    # action of p applied to the chosen generator.
    blocks = {v: [] for v in q.vertices}
    for (vi, gen), summand in zip(generators, summands):
        by_vertex = {w: [] for w in range(len(q.vertices))}
        for k in alg.basis_with_source(vi):
            by_vertex[alg.basis[k].target(q)].append(k)
        for w, v in enumerate(q.vertices):
            cols = [(alg.path_action(rep, alg.basis[k]) @ gen).col(0) for k in by_vertex[w]]
            if cols:
                blocks[v].append(Mat.from_rows(f, cols, rep.dims[v]).transpose())
            else:
                blocks[v].append(Mat.zeros(f, rep.dims[v], 0))
    from .exactla import hstack as _h

    mats = {v: _h(blocks[v], field=f, nrows=rep.dims[v]) for v in q.vertices}
    pi = Mor(P, rep, mats)
    from .repcat import is_epi

    if not is_epi(pi):  # pragma: no cover
        raise QuiverError("projective cover projection is not surjective")
    # minimality: Ker pi <= rad(P)
    from .repcat import kernel

    K, incl = kernel(pi)
    radP = radical(P)
    for v in q.vertices:
        img = Subspace.from_vectors(
            f, P.dims[v], [incl.mats[v].col(j) for j in range(incl.mats[v].ncols)]
        )
        if not radP.spaces[v].contains(img):  # pragma: no cover
            raise QuiverError("projective cover is not minimal")
    return P, pi
