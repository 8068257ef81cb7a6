"""Command-line front end.

Exit codes: 0 = computed / no refutation, 1 = a checker failed with a
witness, 2 = usage or parse error, 3 = internal invariant violation.
Reports embed their seed and contain no timestamps, so identical
invocations produce byte-identical output.  The environment variable
COREFLECT_THREADS caps the parallelism used for sample evaluation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebra import QuiverError, loewy_length
from .builtin import glp_max_ll_projective
from .checks import (
    ExhaustiveBoundExceeded,
    check_abelian_exact,
    check_closed_under_cokernels,
    check_coreflective_abelian,
    check_gen_abelian,
    check_pres_coreflective,
    check_sigma_qp,
    verify_witness,
)
from .coreflectors import (
    construct_coreflection_generic,
    coreflector_candidate,
    gen_coreflector,
)
from .exactla import ExactLAError, Field
from .fileio import (
    FileFormatError,
    canonical_json,
    mor_payload,
    parse_algebra,
    parse_mor,
    parse_rep,
    parse_uset,
    rep_payload,
    write_algebra,
    write_rep,
    write_uset,
)
from .repcat import InvariantViolation, RepError, SampleSpec, is_isomorphism
from .stable import stable_hom, syzygy
from .trace import canonical_eps, pres_precover, trace2_sub, trace_sub

CHECKS = {
    "coreflective": check_pres_coreflective,
    "abelian": check_coreflective_abelian,
    "abelian-exact": check_abelian_exact,
    "gen-abelian": check_gen_abelian,
    "sigma-qp": check_sigma_qp,
    "cokernel-closure": check_closed_under_cokernels,
}


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="coreflect",
        description="exact computations with coreflective subcategories of quiver representations",
    )
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp, uset=False, module=0, morphism=False, samples=False):
        sp.add_argument("--algebra", required=True, help="algebra description file (TOML)")
        if uset:
            sp.add_argument("--uset", required=True, help="USet file (TOML)")
        if module:
            sp.add_argument("--module", action="append", required=True,
                            help="representation file (repeat for several)")
        if morphism:
            sp.add_argument("--morphism", required=True, help="morphism file (TOML)")
        if samples:
            sp.add_argument("--samples", type=int, default=50)
            sp.add_argument("--seed", type=int, default=0)
            sp.add_argument("--max-mult", type=int, default=3)
            sp.add_argument("--max-gens", type=int, default=3)
        sp.add_argument("--out", help="write the result to this file")
        sp.add_argument("--format", choices=("json", "text"), default="text")

    common(sub.add_parser("hom", help="basis of Hom(M, N); give --module twice"), module=1)
    common(sub.add_parser("kernel", help="kernel of a morphism"), morphism=True)
    common(sub.add_parser("cokernel", help="cokernel of a morphism"), morphism=True)
    common(sub.add_parser("trace", help="trace of the USet in a module"), uset=True, module=1)
    common(sub.add_parser("trace2", help="double trace of the USet in a module"), uset=True, module=1)
    common(sub.add_parser("eps", help="canonical sum precover"), uset=True, module=1)
    common(sub.add_parser("pres-precover", help="canonical Pres(U)-precover"), uset=True, module=1)
    common(sub.add_parser("coreflect", help="closed-form coreflection candidate"), uset=True, module=1)
    common(sub.add_parser("coreflect-generic", help="generic coreflection construction"), uset=True, module=1)
    common(sub.add_parser("gen-coreflect", help="trace coreflector onto Gen(U)"), uset=True, module=1)
    common(sub.add_parser("syzygy", help="kernel of a projective cover"), module=1)
    common(sub.add_parser("stable-hom", help="Hom modulo projectives; give --module twice"), module=1)

    sp = sub.add_parser("check", help="run a checker over seeded samples")
    sp.add_argument("which", choices=sorted(CHECKS))
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--uset", required=True)
    sp.add_argument("--samples", type=int, default=50)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-mult", type=int, default=3)
    sp.add_argument("--max-gens", type=int, default=3)
    sp.add_argument("--mode", choices=("exhaustive", "sampled"), default="sampled",
                    help="gen-abelian only")
    sp.add_argument("--out")
    sp.add_argument("--format", choices=("json", "text"), default="text")

    sp = sub.add_parser("example", help="materialize a built-in example")
    sp.add_argument("name", choices=("glp",))
    sp.add_argument("--field", choices=("Q", "Fp"), default="Fp")
    sp.add_argument("--p", type=int, default=5)
    sp.add_argument("--out", default="glp-example", help="output directory")

    sp = sub.add_parser("verify-witness", help="replay a witness or report file")
    sp.add_argument("path")
    sp.add_argument("--format", choices=("json", "text"), default="text")
    sp.add_argument("--out")
    return p


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise FileFormatError(f"cannot read {path}: {e}") from None


def _load_algebra(args):
    return parse_algebra(_read(args.algebra))


def _load_uset(args, alg):
    base = Path(args.uset).parent

    def loader(rel):
        return _read(str(base / rel))

    return parse_uset(alg, _read(args.uset), loader=loader)


def _load_modules(args, alg, need: int):
    paths = args.module
    if len(paths) != need:
        raise FileFormatError(f"this verb needs --module given {need} time(s)")
    return [parse_rep(alg, _read(p)) for p in paths]


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        out = canonical_json(payload)
    else:
        out = "\n".join(text_lines) + "\n"
    if getattr(args, "out", None):
        Path(args.out).write_text(out)
    else:
        sys.stdout.write(out)


def _table(rows: list[list[str]]) -> list[str]:
    if not rows:
        return []
    widths = [max(len(str(r[i])) for r in rows) for i in range(len(rows[0]))]
    return ["  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]


def _dims_str(rep) -> str:
    return "(" + ", ".join(f"{v}:{rep.dims[v]}" for v in rep.algebra.vertices) + ")"


def _subrep_payload(sub) -> dict:
    return {
        "dims": {v: sub.spaces[v].dim for v in sub.parent.algebra.vertices},
        "bases": {v: [[sub.parent.algebra.field.scalar_str(x) for x in sub.spaces[v].basis.row(i)]
                      for i in range(sub.spaces[v].dim)]
                  for v in sub.parent.algebra.vertices},
    }


def _run_hom(args) -> int:
    alg = _load_algebra(args)
    m, n = _load_modules(args, alg, 2)
    from .repcat import hom_basis

    basis = hom_basis(m, n)
    payload = {"dim": len(basis), "basis": [mor_payload(b) for b in basis]}
    _emit(args, payload, [f"dim Hom = {len(basis)}"])
    return 0


def _run_kernel(args, co: bool) -> int:
    alg = _load_algebra(args)
    f = parse_mor(alg, _read(args.morphism))
    from .repcat import cokernel, kernel

    obj, mor = (cokernel if co else kernel)(f)
    key = "cokernel" if co else "kernel"
    payload = {key: rep_payload(obj), ("projection" if co else "inclusion"): mor_payload(mor)}
    _emit(args, payload, [f"{key} dims {_dims_str(obj)}"])
    return 0


def _run_trace(args, double: bool) -> int:
    alg = _load_algebra(args)
    u = _load_uset(args, alg)
    (m,) = _load_modules(args, alg, 1)
    sub = (trace2_sub if double else trace_sub)(u, m)
    payload = _subrep_payload(sub)
    name = "double trace" if double else "trace"
    _emit(args, payload, [f"{name} dims ({', '.join(str(sub.spaces[v].dim) for v in alg.vertices)})"])
    return 0


def _run_eps(args, pres: bool) -> int:
    alg = _load_algebra(args)
    u = _load_uset(args, alg)
    (m,) = _load_modules(args, alg, 1)
    pc = (pres_precover if pres else canonical_eps)(u, m)
    payload = {
        "kind": pc.kind,
        "multiplicities": {str(k): v for k, v in pc.multiplicities.items()},
        "domain_dims": {v: pc.domain.dims[v] for v in alg.vertices},
        "morphism": mor_payload(pc.morphism),
    }
    if pc.presentation is not None:
        payload["presentation_verified"] = pc.presentation.verify()
    _emit(args, payload, [
        f"domain dims {_dims_str(pc.domain)}",
        "multiplicities " + ", ".join(f"U[{k}]^{v}" for k, v in pc.multiplicities.items()),
    ])
    return 0


def _run_coreflect(args, method: str) -> int:
    alg = _load_algebra(args)
    u = _load_uset(args, alg)
    (m,) = _load_modules(args, alg, 1)
    fn = {"formula": coreflector_candidate, "generic": construct_coreflection_generic,
          "trace": gen_coreflector}[method]
    res = fn(u, m)
    if res.failure is not None:
        payload = {"verified": False, "failure": res.failure["kind"], "method": res.method}
        _emit(args, payload, [f"construction refuted: {res.failure['kind']}"])
        return 1
    payload = {
        "method": res.method,
        "verified": res.verified,
        "target_dims": {v: res.target.dims[v] for v in alg.vertices},
        "counit": mor_payload(res.counit),
        "counit_is_isomorphism": is_isomorphism(res.counit),
        "hom_report": [r.as_dict() for r in res.hom_report],
    }
    lines = [
        f"method {res.method}; verified {res.verified}",
        f"target dims {_dims_str(res.target)}",
        f"counit is isomorphism: {payload['counit_is_isomorphism']}",
    ]
    _emit(args, payload, lines)
    return 0


def _run_syzygy(args) -> int:
    alg = _load_algebra(args)
    (m,) = _load_modules(args, alg, 1)
    s = syzygy(m)
    _emit(args, {"syzygy": rep_payload(s)}, [f"syzygy dims {_dims_str(s)}"])
    return 0


def _run_stable_hom(args) -> int:
    alg = _load_algebra(args)
    m, n = _load_modules(args, alg, 2)
    sh = stable_hom(m, n)
    payload = {"total_dim": sh.total_dim, "factoring_dim": sh.factoring_dim,
               "stable_dim": sh.stable_dim}
    _emit(args, payload, [
        f"dim Hom = {sh.total_dim}",
        f"factoring through projectives = {sh.factoring_dim}",
        f"stable dim = {sh.stable_dim}",
    ])
    return 0


def _run_check(args) -> int:
    alg = _load_algebra(args)
    u = _load_uset(args, alg)
    sspec = SampleSpec(count=args.samples, max_mult=args.max_mult,
                       max_gens=args.max_gens, seed=args.seed)
    fn = CHECKS[args.which]
    if args.which == "gen-abelian":
        report = fn(u, args.mode, sspec)
    else:
        report = fn(u, sspec)
    lines = [f"check {report.check}  seed {report.seed}"]
    rows = [["condition", "verdict", "evaluated", "witnesses"]]
    for c in report.conditions:
        rows.append([c["condition"], c["verdict"], str(c["evaluated"]), str(len(c["witnesses"]))])
    lines.extend(_table(rows))
    lines.append("result: " + ("PASS (no refutation)" if report.passed else "FAIL with witness"))
    _emit(args, report.to_dict(), lines)
    return 0 if report.passed else 1


def _run_example(args) -> int:
    from .builtin import glp as make_glp

    field = Field.rationals() if args.field == "Q" else Field.prime(args.p)
    alg = make_glp(field)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    (outdir / "algebra.toml").write_text(write_algebra(alg))
    # U = the projective of maximal Loewy length
    p = glp_max_ll_projective(alg)
    vertex = None
    for i, v in enumerate(alg.vertices):
        if alg.projective(i) == p:
            vertex = v
    (outdir / "uset.toml").write_text(write_uset([f"proj:{vertex}"]))
    (outdir / "module_simple_1.toml").write_text(write_rep(alg.simple(0)))
    sys.stdout.write(
        f"wrote {outdir}/algebra.toml, {outdir}/uset.toml (U = projective at vertex {vertex}, "
        f"Loewy length {loewy_length(p)}), {outdir}/module_simple_1.toml\n"
    )
    return 0


def _run_verify_witness(args) -> int:
    text = _read(args.path)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise FileFormatError(f"witness file: {e}") from None
    if doc.get("schema") == "coreflect-witness/1":
        witnesses = [doc]
    else:
        witnesses = doc.get("witnesses", [])
    if not witnesses:
        raise FileFormatError("no witnesses to verify in this file")
    results = []
    for i, w in enumerate(witnesses):
        results.append({"index": i, "predicate": w["predicate"], "confirmed": verify_witness(w)})
    all_ok = all(r["confirmed"] for r in results)
    payload = {"confirmed": all_ok, "witnesses": results}
    lines = [f"witness {r['index']} ({r['predicate']}): "
             + ("confirmed" if r["confirmed"] else "NOT REPRODUCED") for r in results]
    _emit(args, payload, lines)
    if not all_ok:
        raise InvariantViolation("a witness did not replay; the emitting report is suspect")
    return 0


def main(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 2
    try:
        if args.verb == "hom":
            return _run_hom(args)
        if args.verb == "kernel":
            return _run_kernel(args, co=False)
        if args.verb == "cokernel":
            return _run_kernel(args, co=True)
        if args.verb == "trace":
            return _run_trace(args, double=False)
        if args.verb == "trace2":
            return _run_trace(args, double=True)
        if args.verb == "eps":
            return _run_eps(args, pres=False)
        if args.verb == "pres-precover":
            return _run_eps(args, pres=True)
        if args.verb == "coreflect":
            return _run_coreflect(args, "formula")
        if args.verb == "coreflect-generic":
            return _run_coreflect(args, "generic")
        if args.verb == "gen-coreflect":
            return _run_coreflect(args, "trace")
        if args.verb == "syzygy":
            return _run_syzygy(args)
        if args.verb == "stable-hom":
            return _run_stable_hom(args)
        if args.verb == "check":
            return _run_check(args)
        if args.verb == "example":
            return _run_example(args)
        if args.verb == "verify-witness":
            return _run_verify_witness(args)
        parser.error(f"unknown verb {args.verb}")  # pragma: no cover
    except (FileFormatError, QuiverError, RepError, ExactLAError, ExhaustiveBoundExceeded) as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    except (InvariantViolation, AssertionError) as e:
        sys.stderr.write(f"internal invariant violation: {e}\n")
        return 3
    return 0  # pragma: no cover


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
