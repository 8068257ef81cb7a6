"""Exact dense linear algebra over the rationals and prime fields.

Every other module sits on top of this one.  Two scalar backends:

* rationals -- ``fractions.Fraction``, stored as tuples of rows;
* prime field F_p (p < 2**31) -- residues in ``[0, p)``, stored as
  read-only ``numpy`` ``int64`` arrays so that row reduction and matrix
  products run vectorized.  All int64 intermediates are overflow-safe:
  single products of residues stay below 2**62, and long dot products
  are chunked (see ``_matmul_fp``).

All values are immutable after construction and all operations are pure,
so everything here is safe to use from multiple threads.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

__all__ = [
    "Field",
    "QQ",
    "Mat",
    "Subspace",
    "rref",
    "kernel_basis",
    "solve_all",
    "split_idempotent",
    "column_space",
    "quotient_projection",
    "kron",
    "hstack",
    "vstack",
    "block_diag",
]


class ExactLAError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """The base field: either the rationals or F_p for a prime p < 2**31."""

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None:
            if not (2 <= p < 2**31):
                raise ExactLAError(f"prime field characteristic out of range: {p}")
            if not _is_prime(p):
                raise ExactLAError(f"{p} is not prime")
        object.__setattr__(self, "p", p)

    def __setattr__(self, *a):
        raise AttributeError("Field is immutable")

    @staticmethod
    def rationals() -> "Field":
        return QQ

    @staticmethod
    def prime(p: int) -> "Field":
        return Field(p)

    @property
    def is_rational(self) -> bool:
        return self.p is None

    def zero(self):
        return Fraction(0) if self.p is None else 0

    def one(self):
        return Fraction(1) if self.p is None else 1

    def coerce(self, x):
        """Coerce an int / Fraction / 'a/b' string into a field scalar."""
        if isinstance(x, str):
            x = x.strip()
            if "/" in x:
                num, den = x.split("/", 1)
                x = Fraction(int(num), int(den))
            else:
                x = int(x)
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ExactLAError(f"denominator not invertible mod {self.p}")
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def inv(self, x):
        if self.p is None:
            if x == 0:
                raise ZeroDivisionError("inverse of zero")
            return Fraction(1) / x
        if x % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(int(x), self.p - 2, self.p)

    def scalar_str(self, x) -> str:
        if self.p is None:
            f = Fraction(x)
            return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"
        return str(int(x) % self.p)

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"


QQ = Field(None)


# int64 dot products of k residues < p satisfy k*(p-1)^2 < 2**63 only for
# small k when p is near 2**31; chunk the inner dimension accordingly.
def _fp_chunk(p: int) -> int:
    return max(1, (2**63 - 1) // max(1, (p - 1) ** 2))


def _matmul_fp(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    step = _fp_chunk(p)
    k = a.shape[1]
    if k <= step:
        return (a @ b) % p
    acc = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for s in range(0, k, step):
        acc = (acc + a[:, s : s + step] @ b[s : s + step, :]) % p
    return acc


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


class Mat:
    """An immutable rows x cols matrix over a fixed field.

    ``data`` is a numpy int64 array over F_p and a tuple of row tuples of
    Fractions over the rationals.  Equality and hashing are by exact entry
    values, so matrices can serve as dictionary keys.
    """

    __slots__ = ("field", "nrows", "ncols", "data", "_hash")

    def __init__(self, field: Field, nrows: int, ncols: int, data):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.data = data
        self._hash = None

    # -- constructors ----------------------------------------------------

    @staticmethod
    def from_rows(field: Field, rows, ncols: int | None = None) -> "Mat":
        rows = [list(r) for r in rows]
        nrows = len(rows)
        if ncols is None:
            if nrows == 0:
                raise ExactLAError("ncols required for a matrix with no rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ExactLAError("ragged rows")
        if field.p is None:
            data = tuple(tuple(Fraction(x) for x in r) for r in rows)
        else:
            data = _freeze(np.array(rows, dtype=np.int64).reshape(nrows, ncols) % field.p)
        return Mat(field, nrows, ncols, data)

    @staticmethod
    def zeros(field: Field, nrows: int, ncols: int) -> "Mat":
        if field.p is None:
            z = Fraction(0)
            return Mat(field, nrows, ncols, tuple(tuple(z for _ in range(ncols)) for _ in range(nrows)))
        return Mat(field, nrows, ncols, _freeze(np.zeros((nrows, ncols), dtype=np.int64)))

    @staticmethod
    def identity(field: Field, n: int) -> "Mat":
        if field.p is None:
            return Mat(
                field,
                n,
                n,
                tuple(tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)),
            )
        return Mat(field, n, n, _freeze(np.eye(n, dtype=np.int64)))

    @staticmethod
    def _wrap(field: Field, nrows: int, ncols: int, data) -> "Mat":
        if field.p is not None:
            data = _freeze(np.ascontiguousarray(data, dtype=np.int64))
        return Mat(field, nrows, ncols, data)

    # -- access ----------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        if self.field.p is None:
            return self.data[i][j]
        return int(self.data[i, j])

    def row(self, i) -> tuple:
        if self.field.p is None:
            return self.data[i]
        return tuple(int(x) for x in self.data[i])

    def col(self, j) -> tuple:
        if self.field.p is None:
            return tuple(r[j] for r in self.data)
        return tuple(int(x) for x in self.data[:, j])

    def to_lists(self) -> list:
        return [list(self.row(i)) for i in range(self.nrows)]

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def is_zero(self) -> bool:
        if self.field.p is None:
            return all(x == 0 for r in self.data for x in r)
        return not self.data.any()

    # -- arithmetic --------------------------------------------------------

    def _same_field(self, other: "Mat"):
        if self.field != other.field:
            raise ExactLAError("field mismatch")

    def __matmul__(self, other: "Mat") -> "Mat":
        self._same_field(other)
        if self.ncols != other.nrows:
            raise ExactLAError(f"shape mismatch {self.shape} @ {other.shape}")
        f = self.field
        if f.p is None:
            bt = list(zip(*other.data)) if other.nrows else [()] * other.ncols
            data = tuple(
                tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in self.data
            )
            if self.nrows and not other.ncols:
                data = tuple(() for _ in range(self.nrows))
            return Mat(f, self.nrows, other.ncols, data)
        return Mat(f, self.nrows, other.ncols, _freeze(_matmul_fp(self.data, other.data, f.p)))

    def __add__(self, other: "Mat") -> "Mat":
        self._same_field(other)
        if self.shape != other.shape:
            raise ExactLAError("shape mismatch")
        f = self.field
        if f.p is None:
            return Mat(f, self.nrows, self.ncols,
                       tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self.data, other.data)))
        return Mat(f, self.nrows, self.ncols, _freeze((self.data + other.data) % f.p))

    def __sub__(self, other: "Mat") -> "Mat":
        self._same_field(other)
        if self.shape != other.shape:
            raise ExactLAError("shape mismatch")
        f = self.field
        if f.p is None:
            return Mat(f, self.nrows, self.ncols,
                       tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(self.data, other.data)))
        return Mat(f, self.nrows, self.ncols, _freeze((self.data - other.data) % f.p))

    def __neg__(self) -> "Mat":
        f = self.field
        if f.p is None:
            return Mat(f, self.nrows, self.ncols, tuple(tuple(-x for x in r) for r in self.data))
        return Mat(f, self.nrows, self.ncols, _freeze((-self.data) % f.p))

    def scale(self, c) -> "Mat":
        f = self.field
        c = f.coerce(c)
        if f.p is None:
            return Mat(f, self.nrows, self.ncols, tuple(tuple(c * x for x in r) for r in self.data))
        return Mat(f, self.nrows, self.ncols, _freeze((self.data * c) % f.p))

    def transpose(self) -> "Mat":
        f = self.field
        if f.p is None:
            data = tuple(zip(*self.data)) if self.nrows else tuple(() for _ in range(self.ncols))
            if not self.ncols:
                data = ()
            return Mat(f, self.ncols, self.nrows, data)
        return Mat(f, self.ncols, self.nrows, _freeze(np.ascontiguousarray(self.data.T)))

    # -- identity ----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        if self.field != other.field or self.shape != other.shape:
            return False
        if self.field.p is None:
            return self.data == other.data
        return bool(np.array_equal(self.data, other.data))

    def __hash__(self):
        if self._hash is None:
            if self.field.p is None:
                key = self.data
            else:
                key = self.data.tobytes()
            self._hash = hash((self.field, self.nrows, self.ncols, key))
        return self._hash

    def __repr__(self):
        rows = ["[" + ", ".join(self.field.scalar_str(x) for x in self.row(i)) + "]"
                for i in range(self.nrows)]
        return f"Mat({self.field}, {self.nrows}x{self.ncols}, [" + ", ".join(rows) + "])"


def hstack(mats: list[Mat], field: Field | None = None, nrows: int | None = None) -> Mat:
    if not mats:
        if field is None or nrows is None:
            raise ExactLAError("empty hstack needs field and nrows")
        return Mat.zeros(field, nrows, 0)
    f = mats[0].field
    m = mats[0].nrows
    for a in mats:
        if a.field != f or a.nrows != m:
            raise ExactLAError("hstack mismatch")
    n = sum(a.ncols for a in mats)
    if f.p is None:
        data = tuple(tuple(x for a in mats for x in a.data[i]) for i in range(m))
        return Mat(f, m, n, data)
    return Mat(f, m, n, _freeze(np.hstack([a.data for a in mats])))


def vstack(mats: list[Mat], field: Field | None = None, ncols: int | None = None) -> Mat:
    if not mats:
        if field is None or ncols is None:
            raise ExactLAError("empty vstack needs field and ncols")
        return Mat.zeros(field, 0, ncols)
    f = mats[0].field
    n = mats[0].ncols
    for a in mats:
        if a.field != f or a.ncols != n:
            raise ExactLAError("vstack mismatch")
    m = sum(a.nrows for a in mats)
    if f.p is None:
        data = tuple(r for a in mats for r in a.data)
        return Mat(f, m, n, data)
    return Mat(f, m, n, _freeze(np.vstack([a.data for a in mats])))


def block_diag(mats: list[Mat], field: Field) -> Mat:
    m = sum(a.nrows for a in mats)
    n = sum(a.ncols for a in mats)
    if field.p is None:
        zero = Fraction(0)
        rows = []
        coff = 0
        for a in mats:
            for r in a.data:
                rows.append((zero,) * coff + tuple(r) + (zero,) * (n - coff - a.ncols))
            coff += a.ncols
        return Mat(field, m, n, tuple(rows))
    out = np.zeros((m, n), dtype=np.int64)
    roff = coff = 0
    for a in mats:
        out[roff : roff + a.nrows, coff : coff + a.ncols] = a.data
        roff += a.nrows
        coff += a.ncols
    return Mat(field, m, n, _freeze(out))


def kron(a: Mat, b: Mat) -> Mat:
    """Kronecker product, consistent with row-major flattening."""
    a._same_field(b)
    f = a.field
    m, n = a.nrows * b.nrows, a.ncols * b.ncols
    if f.p is None:
        data = []
        for i in range(a.nrows):
            for k in range(b.nrows):
                data.append(tuple(a.data[i][j] * b.data[k][l]
                                  for j in range(a.ncols) for l in range(b.ncols)))
        return Mat(f, m, n, tuple(data))
    if m == 0 or n == 0:
        return Mat.zeros(f, m, n)
    return Mat(f, m, n, _freeze(np.kron(a.data, b.data) % f.p))


# -- row reduction -------------------------------------------------------


def _rref_q(rows: list[list[Fraction]], ncols: int):
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = Fraction(1) / rows[r][c]
        if inv != 1:
            rows[r] = [x * inv for x in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def _rref_fp(a: np.ndarray, p: int):
    R = np.array(a % p, dtype=np.int64)
    nrows, ncols = R.shape
    pivots = []
    r = 0
    for c in range(ncols):
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        inv = pow(int(R[r, c]), p - 2, p)
        if inv != 1:
            R[r] = (R[r] * inv) % p
        col = R[:, c].copy()
        col[r] = 0
        mask = col != 0
        if mask.any():
            R[mask] = (R[mask] - np.outer(col[mask], R[r])) % p
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return R, pivots


def rref(m: Mat) -> tuple[Mat, int, list[int]]:
    """Reduced row echelon form.

    Returns (R, rank, pivot column indices).  R has the same shape as the
    input; pivot entries are 1 and pivot columns are otherwise zero, with
    leftmost-pivot tie breaking, so the output is a canonical form of the
    row space.
    """
    f = m.field
    if f.p is None:
        rows = [list(r) for r in m.data]
        rows, pivots = _rref_q(rows, m.ncols)
        return Mat(f, m.nrows, m.ncols, tuple(tuple(r) for r in rows)), len(pivots), pivots
    R, pivots = _rref_fp(m.data, f.p)
    return Mat(f, m.nrows, m.ncols, _freeze(R)), len(pivots), pivots


def rank(m: Mat) -> int:
    return rref(m)[1]


class Subspace:
    """A subspace of k^n held as an RREF basis matrix (one row per basis
    vector, no zero rows), which makes equality of subspaces decidable by
    entrywise comparison."""

    __slots__ = ("field", "ambient", "basis")

    def __init__(self, field: Field, ambient: int, basis: Mat):
        self.field = field
        self.ambient = ambient
        self.basis = basis

    @staticmethod
    def from_vectors(field: Field, ambient: int, vectors) -> "Subspace":
        vecs = [list(v) for v in vectors]
        if not vecs:
            return Subspace(field, ambient, Mat.zeros(field, 0, ambient))
        m = Mat.from_rows(field, vecs, ambient)
        R, rk, _ = rref(m)
        if field.p is None:
            basis = Mat(field, rk, ambient, R.data[:rk])
        else:
            basis = Mat(field, rk, ambient, _freeze(np.array(R.data[:rk])))
        return Subspace(field, ambient, basis)

    @staticmethod
    def zero(field: Field, ambient: int) -> "Subspace":
        return Subspace(field, ambient, Mat.zeros(field, 0, ambient))

    @staticmethod
    def full(field: Field, ambient: int) -> "Subspace":
        return Subspace(field, ambient, Mat.identity(field, ambient))

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_full(self) -> bool:
        return self.dim == self.ambient

    def contains_vector(self, v) -> bool:
        stacked = Subspace.from_vectors(self.field, self.ambient, [self.basis.row(i) for i in range(self.dim)] + [list(v)])
        return stacked.dim == self.dim

    def contains(self, other: "Subspace") -> bool:
        if other.ambient != self.ambient:
            raise ExactLAError("ambient mismatch")
        joined = self.sum(other)
        return joined.dim == self.dim

    def sum(self, other: "Subspace") -> "Subspace":
        if other.ambient != self.ambient or other.field != self.field:
            raise ExactLAError("ambient mismatch")
        rows = [self.basis.row(i) for i in range(self.dim)]
        rows += [other.basis.row(i) for i in range(other.dim)]
        return Subspace.from_vectors(self.field, self.ambient, rows)

    def intersect(self, other: "Subspace") -> "Subspace":
        if other.ambient != self.ambient or other.field != self.field:
            raise ExactLAError("ambient mismatch")
        # Solve c1*B1 - c2*B2 = 0; the intersection is spanned by c1*B1.
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.field, self.ambient)
        stacked = vstack([self.basis, other.basis.__neg__()])
        K = kernel_basis(stacked.transpose())
        vecs = []
        for i in range(K.dim):
            c = K.basis.row(i)[: self.dim]
            row = Mat.from_rows(self.field, [list(c)], self.dim) @ self.basis
            vecs.append(row.row(0))
        return Subspace.from_vectors(self.field, self.ambient, vecs)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and other.field == self.field
            and other.ambient == self.ambient
            and other.basis == self.basis
        )

    def __hash__(self):
        return hash((self.field, self.ambient, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of k^{self.ambient})"


def kernel_basis(m: Mat) -> Subspace:
    """Null space {v : m @ v = 0} as a canonical Subspace of k^(ncols)."""
    f = m.field
    R, rk, pivots = rref(m)
    free = [c for c in range(m.ncols) if c not in set(pivots)]
    vecs = []
    for fc in free:
        v = [f.zero()] * m.ncols
        v[fc] = f.one()
        for r, pc in enumerate(pivots):
            x = R[r, fc]
            if x != 0:
                v[pc] = -x if f.p is None else (-x) % f.p
        vecs.append(v)
    return Subspace.from_vectors(f, m.ncols, vecs)


def solve_all(a: Mat, b: Mat) -> Mat | None:
    """Some X with a @ X = b, or None when no solution exists.

    Free coordinates are set to zero, so the choice is deterministic.
    """
    if a.field != b.field:
        raise ExactLAError("field mismatch")
    if a.nrows != b.nrows:
        raise ExactLAError("row count mismatch")
    f = a.field
    aug = hstack([a, b], field=f, nrows=a.nrows)
    R, rk, pivots = rref(aug)
    for c in pivots:
        if c >= a.ncols:
            return None
    rows = [[f.zero()] * b.ncols for _ in range(a.ncols)]
    for r, pc in enumerate(pivots):
        for j in range(b.ncols):
            rows[pc][j] = R[r, a.ncols + j]
    return Mat.from_rows(f, rows, b.ncols)


def column_space(m: Mat) -> Subspace:
    return Subspace.from_vectors(m.field, m.nrows, [m.col(j) for j in range(m.ncols)])


def split_idempotent(e: Mat) -> tuple[Mat, Mat]:
    """Split e = e @ e into u: k^n -> k^r and v: k^r -> k^n with
    u @ v = identity and v @ u = e; the columns of v are the canonical
    RREF basis of the column space of e."""
    if e.nrows != e.ncols:
        raise ExactLAError("idempotent must be square")
    if e @ e != e:
        raise ExactLAError("matrix is not idempotent")
    img = column_space(e)
    v = img.basis.transpose()
    u = solve_all(v, e)
    if u is None or u @ v != Mat.identity(e.field, img.dim):
        raise ExactLAError("idempotent splitting failed")  # pragma: no cover
    return u, v


def quotient_projection(s: Subspace) -> Mat:
    """A surjection pi: k^n -> k^(n - dim s) with kernel exactly s.

    The section is the non-pivot-coordinate one: coordinate f of the image
    reads off v_f minus the pivot-determined part, so the output is a
    deterministic function of the subspace.
    """
    n = s.ambient
    f = s.field
    B = s.basis
    pivots = []
    c = 0
    for r in range(B.nrows):
        while B[r, c] == 0:
            c += 1
        pivots.append(c)
    pivset = set(pivots)
    free = [c for c in range(n) if c not in pivset]
    rows = []
    for fc in free:
        v = [f.zero()] * n
        v[fc] = f.one()
        for r, pc in enumerate(pivots):
            x = B[r, fc]
            if x != 0:
                v[pc] = -x if f.p is None else (-x) % f.p
        rows.append(v)
    return Mat.from_rows(f, rows, n)
