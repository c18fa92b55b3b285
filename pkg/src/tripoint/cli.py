"""Command-line interface.

Exit codes: 0 all checks pass, 1 computational mismatch against expected
results, 2 input/usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .certify import certify_model
from .conditions import dim_forms_with_multiplicity
from .defect import defect, hodge_invariants
from .fibration import (classify_fiber, degeneration_form, plane_split,
                        rational_roots_of_binary_form, special_fiber_parameters)
from .gallery import GALLERY, GalleryBuildError, QuinticModel, gallery_build, run_report
from .gram import gram_analysis
from .incidence import PointConfiguration, is_segre
from .multipoly import MultiPoly, squarefree_structure
from .scalars import DomainError, field_from_spec
from .verify import run_all_verifications


def _fail(message: str):
    print(f"error: {message}", file=sys.stderr)
    raise SystemExit(2)


def _emit(data, fmt: str, text_renderer=None):
    if fmt == "json":
        print(json.dumps(data, indent=1, sort_keys=True))
    else:
        if text_renderer:
            text_renderer(data)
        else:
            print(json.dumps(data, indent=1, sort_keys=True))


def _parse_primes(text: str) -> tuple[int, ...]:
    return tuple(int(p) for p in text.split(",") if p)


def _load_model(path: str) -> QuinticModel:
    try:
        return QuinticModel.load(path)
    except (OSError, ValueError, KeyError, DomainError) as exc:
        _fail(f"cannot load model {path}: {exc}")


def _field_spec_from_flag(text: str | None) -> dict | None:
    if not text:
        return None
    if text == "rational":
        return {"type": "rational"}
    if text.startswith("prime:"):
        return {"type": "prime", "p": int(text.split(":", 1)[1])}
    _fail(f"unknown field {text!r} (use 'rational' or 'prime:P')")


def _load_config(path: str, field: str | None = None) -> PointConfiguration:
    try:
        with open(path) as fh:
            data = json.load(fh)
        spec = _field_spec_from_flag(field)
        if spec is not None:
            data = dict(data, field=spec)
        if "points" in data and "quintic" in data:
            return QuinticModel.from_json(data).points
        return PointConfiguration.from_json(data)
    except (OSError, ValueError, KeyError, DomainError) as exc:
        _fail(f"cannot load configuration {path}: {exc}")


def cmd_defect(args) -> int:
    model = _load_model(args.model)
    if args.prime:
        from .defect import defect_mod_p
        rep = defect_mod_p(model.quintic, model.points, args.prime,
                           check_membership=args.check_membership)
    else:
        rep = defect(model.quintic, model.points,
                     check_membership=args.check_membership)
    def text(d):
        print(f"t = {d['t']}  rank = {d['rank']}  delta = {d['delta']}")
        print(f"per-point rank contributions: {d['per_point_rank']}")
        h = d["hodge"]
        print(f"h11(blowup) = {h['h11_blowup']}  h21(blowup) = {h['h21_blowup']}  "
              f"chi = {h['euler']}  chi(blowup) = {h['euler_blowup']}")
    _emit(rep.to_json(), args.format, text)
    return 0


def cmd_hodge(args) -> int:
    rec = hodge_invariants(args.t, args.delta)
    _emit(rec.to_json(), args.format)
    return 0


def cmd_check_config(args) -> int:
    cfg = _load_config(args.model or args.config, args.field)
    rep = cfg.constraints()
    _emit(rep.to_json(), args.format)
    return 0 if rep.ok else 1


def cmd_check_points(args) -> int:
    model = _load_model(args.model)
    cert = certify_model(model.quintic, list(model.points),
                         primes=_parse_primes(args.primes))
    def text(d):
        for c in d["points"]:
            status = "ordinary" if c["ok"] else f"FAILED ({c['reason']})"
            print(f"point ({':'.join(c['point'])}): {status}")
        print("singular locus (heuristic):",
              "ok" if d["singular_locus"]["ok"] else "NOT confirmed")
        for v in d["singular_locus"]["verdicts"]:
            print(f"  {v['field']}: {v['status']}" +
                  (f" ({v['reason']})" if v.get("reason") else ""))
    _emit(cert.to_json(), args.format, text)
    return 0 if cert.ok else 1


def cmd_planes(args) -> int:
    cfg = _load_config(args.model or args.config, args.field)
    quads = cfg.coplanar_quadruplets
    data = {"count": len(quads), "quadruplets": [list(q) for q in quads]}
    if args.gram and quads:
        lat = gram_analysis(quads, cfg)
        data["gram"] = lat.to_json()
    def text(d):
        print(f"{d['count']} coplanar quadruplets")
        for q in d["quadruplets"]:
            print(" ", q)
        if "gram" in d:
            print(f"gram rank {d['gram']['rank']}, determinant {d['gram']['determinant']}")
    _emit(data, args.format, text)
    return 0


def cmd_segre(args) -> int:
    cfg = _load_config(args.config, args.field)
    try:
        verdict = is_segre(cfg)
    except ValueError as exc:
        _fail(f"{exc}")
    data = {"is_segre": verdict,
            "quadruplets": len(cfg.coplanar_quadruplets),
            "double_cubics": dim_forms_with_multiplicity(cfg, 2, 3)}
    _emit(data, args.format)
    return 0 if verdict else 1


def _parse_mu(text: str):
    if "/" in text:
        a, b = text.split("/")
        return (Fraction(a), Fraction(b))
    return (Fraction(text), Fraction(1))


def cmd_fibers(args) -> int:
    model = _load_model(args.model)
    quad = tuple(int(i) for i in args.plane.split(","))
    split = plane_split(model.quintic, model.points, quad)
    reports = []
    if args.mu:
        reports.append(classify_fiber(split, _parse_mu(args.mu)))
    else:
        for mu in special_fiber_parameters(split):
            reports.append(classify_fiber(split, mu))
    degen = []
    for slot in range(4):
        form = degeneration_form(split, slot)
        profile, sf_deg = squarefree_structure(form)
        degen.append({
            "base_slot": slot,
            "form": form.to_string(),
            "degree": form.degree(),
            "multiplicity_profile": [list(p) for p in profile],
            "rational_roots": [
                {"mu": [str(a) for a in mu], "multiplicity": m}
                for mu, m in rational_roots_of_binary_form(form)],
        })
    data = {"base_quadruplet": list(quad),
            "fibers": [r.to_json() for r in reports],
            "degeneration": degen}
    def text(d):
        for r in d["fibers"]:
            print(f"mu=({r['mu'][0]}:{r['mu'][1]}) tag={r['tag']} "
                  f"(r,s,eps)=({r['r']},{r['s']},{r['epsilon']})")
        for g in d["degeneration"]:
            print(f"base slot {g['base_slot']}: degree {g['degree']}, "
                  f"profile {g['multiplicity_profile']}")
    _emit(data, args.format, text)
    return 0


def _parse_line(text: str, dom):
    from .incidence import ProjectivePoint
    try:
        a, b = text.split(";")
        pa = ProjectivePoint([dom.parse_scalar(v) for v in a.split(",")], dom)
        pb = ProjectivePoint([dom.parse_scalar(v) for v in b.split(",")], dom)
    except (ValueError, DomainError) as exc:
        _fail(f"cannot parse line {text!r}: {exc}")
    return (pa, pb)


def cmd_pencil(args) -> int:
    from .conic_pencil import PencilError, conic_pencil_analysis
    try:
        with open(args.quartic) as fh:
            data = json.load(fh)
        dom = field_from_spec(data.get("field", {"type": "rational"}))
        Q = MultiPoly.parse(data["quartic"], 4, dom)
    except (OSError, ValueError, KeyError) as exc:
        _fail(f"cannot load quartic {args.quartic}: {exc}")
    line = _parse_line(args.line, dom) if args.line else None
    line2 = _parse_line(args.line2, dom) if args.line2 else None
    try:
        analysis = conic_pencil_analysis(Q, args.mode, line=line, line2=line2)
    except PencilError as exc:
        _fail(f"{exc}")
    _emit(analysis.to_json(), args.format)
    return 0


def cmd_gallery(args) -> int:
    names = [args.name] if args.name else sorted(GALLERY)
    overall = 0
    outputs = []
    for name in names:
        overrides = {}
        if args.seed is not None:
            overrides["seed"] = args.seed
        try:
            model = gallery_build(name, **overrides)
        except GalleryBuildError as exc:
            print(f"{name}: BUILD ERROR: {exc}", file=sys.stderr)
            overall = max(overall, 1)
            continue
        rep = run_report(model, with_fibration=args.fibration)
        outputs.append(rep)
        ok = rep.get("all_expected_match", True)
        if args.format == "text":
            delta = rep["defect"]["delta"] if rep.get("defect") else "-"
            print(f"{name}: t={rep['t']} delta={delta} "
                  f"expected-match={'yes' if ok else 'NO'}")
            if not ok:
                for key, c in rep["expected"].items():
                    if not c["match"]:
                        print(f"  mismatch {key}: expected {c['expected']} "
                              f"({c['source']}), got {c['actual']}")
        if not ok:
            overall = max(overall, 1)
    if args.format == "json":
        print(json.dumps(outputs, indent=1, sort_keys=True))
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(outputs, fh, indent=1, sort_keys=True)
    return overall


def cmd_save_model(args) -> int:
    try:
        model = gallery_build(args.name, **({"seed": args.seed}
                                            if args.seed is not None else {}))
    except GalleryBuildError as exc:
        _fail(f"{exc}")
    model.save(args.out)
    print(f"wrote {args.out}")
    return 0


def cmd_verify_paper(args) -> int:
    results = run_all_verifications()
    failed = []
    data = {}
    for name, verdict in sorted(results.items()):
        if args.only and args.only not in name:
            continue
        data[name] = verdict.to_json()
        ok = verdict.ok
        if args.format == "text":
            print(f"{name}: {'ok' if ok else 'REFUTED'}")
        if not ok:
            failed.append(name)
    if args.format == "json":
        print(json.dumps(data, indent=1, sort_keys=True))
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="tripoint",
        description="Exact toolkit for quintic threefolds with ordinary "
                    "triple points: defects, Hodge invariants, configuration "
                    "constraints, plane-projection fibrations, and built-in "
                    "verification of the underlying computational lemmas.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    def add_field(p):
        p.add_argument("--field", default=None,
                       help="scalar field for inputs without one "
                            "('rational' or 'prime:P')")

    p = sub.add_parser("defect", help="defect and Hodge invariants of a model")
    p.add_argument("--model", required=True)
    p.add_argument("--prime", type=int, default=None,
                   help="compute the rank over GF(p) instead of the rationals")
    p.add_argument("--check-membership", action="store_true", default=True)
    p.add_argument("--no-check-membership", dest="check_membership",
                   action="store_false")
    add_common(p)
    p.set_defaults(func=cmd_defect)

    p = sub.add_parser("hodge", help="closed-form invariants from (t, delta)")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    add_common(p)
    p.set_defaults(func=cmd_hodge)

    p = sub.add_parser("check-config", help="incidence constraints of a configuration")
    p.add_argument("--config")
    p.add_argument("--model")
    add_field(p)
    add_common(p)
    p.set_defaults(func=cmd_check_config)

    p = sub.add_parser("check-points", help="certify the declared triple points")
    p.add_argument("--model", required=True)
    p.add_argument("--primes", default="7,11,13")
    add_common(p)
    p.set_defaults(func=cmd_check_points)

    p = sub.add_parser("planes", help="coplanar quadruplets (and Gram lattice)")
    p.add_argument("--config")
    p.add_argument("--model")
    p.add_argument("--gram", action="store_true")
    add_field(p)
    add_common(p)
    p.set_defaults(func=cmd_planes)

    p = sub.add_parser("segre", help="test a 10-point configuration for the "
                                     "Segre property")
    p.add_argument("--config", required=True)
    add_field(p)
    add_common(p)
    p.set_defaults(func=cmd_segre)

    p = sub.add_parser("fibers", help="analyse the residual-quartic pencil of "
                                      "a plane inside the model")
    p.add_argument("--model", required=True)
    p.add_argument("--plane", required=True,
                   help="comma-separated indices of a coplanar quadruplet")
    p.add_argument("--mu", default=None, help="single pencil parameter a/b")
    p.add_argument("--all", action="store_true",
                   help="classify every special fiber (default)")
    add_common(p)
    p.set_defaults(func=cmd_fibers)

    p = sub.add_parser("pencil", help="conic-pencil analysis of a double-line "
                                      "quartic surface (normal position)")
    p.add_argument("--quartic", required=True)
    p.add_argument("--mode", choices=("single-line", "two-lines"),
                   default="single-line")
    p.add_argument("--line", default=None,
                   help="double line as two points 'a,b,c,d;e,f,g,h' "
                        "(default: V(x0, x1))")
    p.add_argument("--line2", default=None,
                   help="second double line for two-lines mode")
    add_common(p)
    p.set_defaults(func=cmd_pencil)

    p = sub.add_parser("gallery", help="build gallery models and compare "
                                       "against expected results")
    p.add_argument("name", nargs="?", default=None,
                   help=f"one of {sorted(GALLERY)} (default: all)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--fibration", action="store_true")
    p.add_argument("--out", default=None, help="write the JSON report here")
    add_common(p)
    p.set_defaults(func=cmd_gallery)

    p = sub.add_parser("save-model", help="write a gallery model to a JSON file")
    p.add_argument("name")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_save_model)

    p = sub.add_parser("verify-paper", help="re-run the built-in verification "
                                            "suite; nonzero exit on any refutation")
    p.add_argument("--only", default=None)
    add_common(p)
    p.set_defaults(func=cmd_verify_paper)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit:
        raise
    except (ValueError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
