"""File formats: algebra / representation / morphism / USet documents in
TOML, reports and witnesses in JSON.

Scalars are serialized as strings ("3", "-2/5"), always in lowest terms
with positive denominator, so exactness survives round trips.  Writers
emit a canonical form (fixed key order, fixed formatting); re-parsing a
written file and writing it again is byte-identical.

Parse errors raise ``FileFormatError``.  TOML syntax errors keep the
line/column diagnostics of the underlying parser; errors inside relation
strings carry the item index and character offset.
"""

from __future__ import annotations

import json
import re

try:  # Python 3.11+
    import tomllib as _toml
except ModuleNotFoundError:  # pragma: no cover
    import tomli as _toml

from .algebra import Algebra, AlgebraSpec, Quiver, Relation
from .exactla import Field, Mat, QQ
from .repcat import Mor, Rep, RepError
from .trace import USet

__all__ = [
    "FileFormatError",
    "parse_algebra",
    "write_algebra",
    "parse_rep",
    "write_rep",
    "parse_mor",
    "write_mor",
    "parse_uset",
    "write_uset",
    "rep_payload",
    "rep_from_payload",
    "mor_payload",
    "mor_from_payload",
    "canonical_json",
]


class FileFormatError(ValueError):
    pass


def _load_toml(text: str, what: str) -> dict:
    try:
        return _toml.loads(text)
    except _toml.TOMLDecodeError as e:
        raise FileFormatError(f"{what}: {e}") from None


# -- relation expressions -----------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*)|(\+)|(-))")


def _parse_relation(quiver: Quiver, text: str, item_index: int) -> Relation:
    """Grammar:  expr := term (('+'|'-') term)* ;
    term := [int '*'] name ('*' name)+  with '*' the left-to-right
    composition of arrows."""

    def err(pos, msg):
        raise FileFormatError(f"relation item {item_index}, column {pos + 1}: {msg}")

    pos = 0
    terms = []
    sign = 1
    expect_term = True
    cur_coeff = None
    cur_path: list[str] = []

    def flush(at):
        nonlocal cur_coeff, cur_path, sign
        if not cur_path:
            err(at, "empty term")
        arrows = []
        for name in cur_path:
            if name not in quiver.arrow_index:
                err(at, f"unknown arrow {name!r}")
            arrows.append(quiver.arrow_index[name])
        coeff = sign * (cur_coeff if cur_coeff is not None else 1)
        terms.append((coeff, tuple(arrows)))
        cur_coeff = None
        cur_path = []

    pending_star = False
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            err(pos, "unexpected character")
        intval, name, star, plus, minus = m.groups()
        tokpos = pos
        pos = m.end()
        if intval is not None:
            if cur_path or cur_coeff is not None:
                err(tokpos, "coefficient must come first in a term")
            cur_coeff = int(intval)
            expect_term = False
        elif name is not None:
            if cur_path and not pending_star:
                err(tokpos, "missing '*' between factors")
            cur_path.append(name)
            pending_star = False
            expect_term = False
        elif star is not None:
            pending_star = True
        elif plus is not None or minus is not None:
            if expect_term and not (minus and not cur_path and cur_coeff is None):
                err(tokpos, "unexpected sign")
            if cur_path:
                flush(tokpos)
                sign = 1
            if minus:
                sign = -sign
            expect_term = True
    if pending_star:
        err(len(text) - 1, "dangling '*'")
    if cur_path:
        flush(len(text) - 1)
    elif cur_coeff is not None or expect_term:
        err(len(text) - 1, "trailing operator")
    try:
        return Relation(quiver, terms)
    except Exception as e:
        raise FileFormatError(f"relation item {item_index}: {e}") from None


def _relation_text(quiver: Quiver, rel: Relation) -> str:
    parts = []
    for k, (c, p) in enumerate(rel.terms):
        word = "*".join(quiver.arrows[i].name for i in p)
        mag = abs(c)
        body = word if mag == 1 else f"{mag}*{word}"
        if k == 0:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f" + {body}" if c > 0 else f" - {body}")
    return "".join(parts)


# -- algebra files ------------------------------------------------------------


def parse_algebra(text: str) -> Algebra:
    doc = _load_toml(text, "algebra file")
    try:
        qsec = doc["quiver"]
        vertices = [str(v) for v in qsec["vertices"]]
        arrows = [(str(a["name"]), str(a["from"]), str(a["to"])) for a in qsec.get("arrows", [])]
    except (KeyError, TypeError) as e:
        raise FileFormatError(f"algebra file: missing or malformed key {e}") from None
    try:
        quiver = Quiver(vertices, arrows)
    except Exception as e:
        raise FileFormatError(f"algebra file: {e}") from None
    fsec = doc.get("field", {})
    kind = fsec.get("kind", "Q")
    if kind == "Q":
        field = QQ
    elif kind == "Fp":
        if "p" not in fsec:
            raise FileFormatError("algebra file: field.kind = 'Fp' requires field.p")
        try:
            field = Field.prime(int(fsec["p"]))
        except Exception as e:
            raise FileFormatError(f"algebra file: {e}") from None
    else:
        raise FileFormatError(f"algebra file: unknown field kind {kind!r}")
    items = doc.get("relations", {}).get("items", [])
    relations = tuple(_parse_relation(quiver, str(s), i) for i, s in enumerate(items))
    nil_bound = doc.get("nil_bound", fsec.get("nil_bound"))
    if nil_bound is None:
        raise FileFormatError("algebra file: nil_bound is required")
    try:
        return Algebra(AlgebraSpec(quiver, relations, field, int(nil_bound)))
    except Exception as e:
        raise FileFormatError(f"algebra file: {e}") from None


def write_algebra(alg: Algebra) -> str:
    q = alg.quiver
    lines = []
    lines.append(f"nil_bound = {alg.nil_bound}")
    lines.append("")
    lines.append("[quiver]")
    lines.append("vertices = [" + ", ".join(json.dumps(v) for v in q.vertices) + "]")
    lines.append("arrows = [")
    for a in q.arrows:
        lines.append(
            "    { name = %s, from = %s, to = %s }," % (json.dumps(a.name), json.dumps(a.source), json.dumps(a.target))
        )
    lines.append("]")
    lines.append("")
    lines.append("[relations]")
    lines.append("items = [" + ", ".join(json.dumps(_relation_text(q, r)) for r in alg.spec.relations) + "]")
    lines.append("")
    lines.append("[field]")
    if alg.field.p is None:
        lines.append('kind = "Q"')
    else:
        lines.append('kind = "Fp"')
        lines.append(f"p = {alg.field.p}")
    lines.append("")
    return "\n".join(lines)


# -- matrices / representations / morphisms ------------------------------------


def _matrix_payload(m: Mat) -> list[list[str]]:
    f = m.field
    return [[f.scalar_str(x) for x in m.row(i)] for i in range(m.nrows)]


def _matrix_from_payload(field: Field, rows, nrows: int, ncols: int, where: str) -> Mat:
    if len(rows) != nrows:
        raise FileFormatError(f"{where}: expected {nrows} rows, got {len(rows)}")
    out = []
    for r in rows:
        if len(r) != ncols:
            raise FileFormatError(f"{where}: expected {ncols} columns, got {len(r)}")
        try:
            out.append([field.coerce(x) for x in r])
        except Exception as e:
            raise FileFormatError(f"{where}: bad scalar ({e})") from None
    return Mat.from_rows(field, out, ncols)


def rep_payload(rep: Rep) -> dict:
    return {
        "dims": {v: rep.dims[v] for v in rep.algebra.vertices},
        "arrows": {a.name: _matrix_payload(rep.mats[a.name]) for a in rep.algebra.quiver.arrows},
    }


def rep_from_payload(alg: Algebra, payload: dict, where: str = "representation") -> Rep:
    dims_in = payload.get("dims", {})
    dims = {}
    for v in alg.vertices:
        try:
            dims[v] = int(dims_in.get(v, 0))
        except (TypeError, ValueError):
            raise FileFormatError(f"{where}: bad dimension at vertex {v}") from None
    arrows_in = payload.get("arrows", {})
    mats = {}
    for a in alg.quiver.arrows:
        rows = arrows_in.get(a.name)
        shape = (dims[a.target], dims[a.source])
        if rows is None:
            mats[a.name] = Mat.zeros(alg.field, *shape)
        else:
            mats[a.name] = _matrix_from_payload(alg.field, rows, shape[0], shape[1], f"{where}, arrow {a.name}")
    try:
        return Rep(alg, dims, mats)
    except RepError as e:
        raise FileFormatError(f"{where}: {e}") from None


def parse_rep(alg: Algebra, text: str) -> Rep:
    doc = _load_toml(text, "representation file")
    sec = doc.get("rep")
    if sec is None:
        raise FileFormatError("representation file: missing [rep] section")
    return rep_from_payload(alg, sec, "representation file")


def _toml_matrix(rows: list[list[str]], indent: str) -> list[str]:
    if not rows:
        return [indent.rstrip() + "[]" if not indent else "[]"]
    out = ["["]
    for r in rows:
        out.append("    [" + ", ".join(json.dumps(x) for x in r) + "],")
    out.append("]")
    return out


def write_rep(rep: Rep) -> str:
    alg = rep.algebra
    lines = ["[rep]"]
    lines.append("dims = { " + ", ".join(f"{json.dumps(v)} = {rep.dims[v]}" for v in alg.vertices) + " }")
    lines.append("")
    lines.append("[rep.arrows]")
    for a in alg.quiver.arrows:
        body = _toml_matrix(_matrix_payload(rep.mats[a.name]), "")
        lines.append(f"{a.name} = " + body[0])
        lines.extend(body[1:])
    lines.append("")
    return "\n".join(lines)


def mor_payload(f: Mor) -> dict:
    return {
        "domain": rep_payload(f.dom),
        "codomain": rep_payload(f.cod),
        "maps": {v: _matrix_payload(f.mats[v]) for v in f.dom.algebra.vertices},
    }


def mor_from_payload(alg: Algebra, payload: dict, where: str = "morphism") -> Mor:
    dom = rep_from_payload(alg, payload.get("domain", {}), f"{where} domain")
    cod = rep_from_payload(alg, payload.get("codomain", {}), f"{where} codomain")
    maps_in = payload.get("maps", {})
    mats = {}
    for v in alg.vertices:
        rows = maps_in.get(v)
        shape = (cod.dims[v], dom.dims[v])
        if rows is None:
            mats[v] = Mat.zeros(alg.field, *shape)
        else:
            mats[v] = _matrix_from_payload(alg.field, rows, shape[0], shape[1], f"{where}, vertex {v}")
    try:
        return Mor(dom, cod, mats)
    except RepError as e:
        raise FileFormatError(f"{where}: {e}") from None


def parse_mor(alg: Algebra, text: str) -> Mor:
    doc = _load_toml(text, "morphism file")
    sec = doc.get("morphism")
    if sec is None:
        raise FileFormatError("morphism file: missing [morphism] section")
    payload = {
        "domain": doc.get("domain", {}),
        "codomain": doc.get("codomain", {}),
        "maps": sec.get("maps", sec),
    }
    return mor_from_payload(alg, payload, "morphism file")


def write_mor(f: Mor) -> str:
    alg = f.dom.algebra
    lines = []
    for label, rep in (("domain", f.dom), ("codomain", f.cod)):
        lines.append(f"[{label}]")
        lines.append("dims = { " + ", ".join(f"{json.dumps(v)} = {rep.dims[v]}" for v in alg.vertices) + " }")
        lines.append("")
        lines.append(f"[{label}.arrows]")
        for a in alg.quiver.arrows:
            body = _toml_matrix(_matrix_payload(rep.mats[a.name]), "")
            lines.append(f"{a.name} = " + body[0])
            lines.extend(body[1:])
        lines.append("")
    lines.append("[morphism.maps]")
    for v in alg.vertices:
        body = _toml_matrix(_matrix_payload(f.mats[v]), "")
        lines.append(f"{json.dumps(v)} = " + body[0])
        lines.extend(body[1:])
    lines.append("")
    return "\n".join(lines)


# -- USet files ----------------------------------------------------------------


def parse_uset(alg: Algebra, text: str, loader=None) -> USet:
    """items may be built-ins ('proj:v', 'simple:v') or representation
    file references ('file:relative/path.toml', resolved by the supplied
    loader callback)."""
    doc = _load_toml(text, "uset file")
    items = doc.get("items")
    if not items:
        raise FileFormatError("uset file: nonempty items list required")
    reps = []
    for i, item in enumerate(items):
        s = str(item)
        if s.startswith("proj:"):
            v = s[5:]
            if v not in alg.quiver.vertex_index:
                raise FileFormatError(f"uset item {i}: unknown vertex {v!r}")
            reps.append(alg.projective(alg.quiver.vertex_index[v]))
        elif s.startswith("simple:"):
            v = s[7:]
            if v not in alg.quiver.vertex_index:
                raise FileFormatError(f"uset item {i}: unknown vertex {v!r}")
            reps.append(alg.simple(alg.quiver.vertex_index[v]))
        elif s.startswith("file:"):
            if loader is None:
                raise FileFormatError(f"uset item {i}: file references need a loader")
            reps.append(parse_rep(alg, loader(s[5:])))
        else:
            raise FileFormatError(
                f"uset item {i}: expected 'proj:<vertex>', 'simple:<vertex>' or 'file:<path>'"
            )
    try:
        return USet(reps)
    except RepError as e:
        raise FileFormatError(f"uset file: {e}") from None


def write_uset(items: list[str]) -> str:
    return "items = [" + ", ".join(json.dumps(s) for s in items) + "]\n"


# -- JSON ----------------------------------------------------------------------


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
