"""Command-line front end.

Exit codes: 0 ok, 1 validation failure, 2 property or approximation
failure, 3 resource cap, 64 usage or parse error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from . import config
from .errors import ApproximationUnstable, ParseError, QlabError, ResourceCap, ValidationError, _jsonable

EXIT_OK, EXIT_INVALID, EXIT_PROPERTY, EXIT_CAP, EXIT_USAGE = 0, 1, 2, 3, 64


class UsageError(Exception):
    pass


def _digest(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True, ensure_ascii=False).encode()).hexdigest()


def _input_size(kind: str, obj) -> int:
    if kind == "quantale":
        return obj.n
    if kind == "space":
        return obj.n
    if kind == "rel":
        return max(obj.src_size, obj.dst_size)
    if kind in ("promonoidal", "qba"):
        return obj.cat.size
    return obj.size


def _load(path: str, max_size: int | None):
    from .formats import load_json, parse

    doc, raw = load_json(path)
    kind, obj = parse(doc, Path(path).parent)
    if max_size is not None and _input_size(kind, obj) > max_size:
        raise ResourceCap(f"input size {_input_size(kind, obj)} exceeds --max-size {max_size}",
                          witness=(_input_size(kind, obj), max_size))
    return kind, obj, hashlib.sha256(raw).hexdigest()


# ---------------------------------------------------------------- commands


def cmd_validate(args) -> tuple[int, dict]:
    from .multicat import find_residuals, promonoidal_from_monoidal
    from .quantale import quantale_as_monoidal
    from .vcat import MonoidalVCat

    kind, obj, dig = _load(args.file, args.max_size)
    result: dict = {"kind": kind, "valid": True}
    if kind == "quantale":
        from .formats import quantale_to_dict

        result["quantale"] = quantale_to_dict(obj)
        result["vquantale"] = quantale_as_monoidal(obj) is not None
    elif kind in ("vcategory", "monoid"):
        if isinstance(obj, MonoidalVCat):
            from .colimits import vquantale_report

            rep = vquantale_report(obj)
            result["monoidal"] = True
            result["vquantale"] = rep.to_dict()
            result["promonoidal"] = promonoidal_from_monoidal(obj) is not None
        else:
            result["monoidal"] = False
    elif kind == "promonoidal":
        try:
            find_residuals(obj)
            result["representable"] = True
        except ValidationError as e:
            result["representable"] = False
            result["witness"] = e.to_dict()
    elif kind == "space":
        result["T0"] = obj.is_T0()
    return EXIT_OK, {"inputs": {args.file: dig}, "result": result, "verdict": "valid"}


def cmd_complete(args) -> tuple[int, dict]:
    from .colimits import macneille_completion
    from .formats import vcategory_dot, vcategory_to_dict
    from .vcat import MonoidalVCat

    kind, obj, dig = _load(args.file, args.max_size)
    if kind not in ("vcategory", "monoid"):
        raise UsageError("complete macneille needs a vcategory input")
    x = obj.cat if isinstance(obj, MonoidalVCat) else obj
    comp = macneille_completion(x)
    result = {"completion": vcategory_to_dict(comp.cat), "embedding": list(comp.embedding),
              "size": comp.cat.size, "checks": comp.checks,
              "isbell": {"ok": comp.report.ok, "witness": comp.report.witness}}
    if args.dot:
        Path(args.dot).write_text(vcategory_dot(comp.cat, comp.embedding, "completion"))
    ok = comp.report.ok and all(comp.checks.values())
    return (EXIT_OK if ok else EXIT_PROPERTY), {"inputs": {args.file: dig}, "result": result,
                                                "verdict": "ok" if ok else "property-failure"}


def _essential(res, source, corpus_path):
    from .formats import load_json, parse
    from .hull import essential_spotcheck
    from .multicat import InducedLV, promonoidal_from_monoidal, unary_lv
    from .vcat import MonoidalVCat, VCategory

    docs = json.loads(Path(corpus_path).read_text())
    if not isinstance(docs, list):
        raise ParseError("corpus must be a JSON list of structures")
    zs = []
    for d in docs:
        _, z = parse(d, Path(corpus_path).parent)
        if isinstance(z, MonoidalVCat):
            z = promonoidal_from_monoidal(z)
        elif isinstance(z, VCategory):
            z = unary_lv(z)
        if isinstance(z, InducedLV) or hasattr(z, "pro"):
            zs.append(z)
    rep = essential_spotcheck(res.embedding, source, promonoidal_from_monoidal(res.H), zs)
    return rep.to_dict()


def cmd_hull(args) -> tuple[int, dict]:
    from .formats import vcategory_dot
    from .hull import hull_in_ambient, hull_of_monoidal, make_ambient, truncated_qba_hull
    from .multicat import QBA, promonoidal_from_monoidal
    from .quantale import Quantale, quantale_as_monoidal
    from .vcat import MonoidalVCat

    if args.truncate is not None and args.pipeline != "qba":
        raise UsageError("--truncate is only legal for 'hull qba'")
    if args.subset is not None and args.pipeline != "ambient":
        raise UsageError("--subset is only legal for 'hull ambient'")
    kind, obj, dig = _load(args.file, args.max_size)
    source = None
    if args.pipeline == "monoid":
        if isinstance(obj, Quantale):
            obj = quantale_as_monoidal(obj)
        if not isinstance(obj, MonoidalVCat):
            raise UsageError("hull monoid needs a monoid or monoidal vcategory")
        res = hull_of_monoidal(obj)
        source = promonoidal_from_monoidal(obj)
    elif args.pipeline == "ambient":
        if isinstance(obj, Quantale):
            obj = quantale_as_monoidal(obj)
        if not isinstance(obj, MonoidalVCat):
            raise UsageError("hull ambient needs a quantale or monoidal vcategory")
        amb = make_ambient(obj)
        labels = [amb.cat.label(i) for i in amb.cat.points]
        if args.subset:
            names = [s.strip() for s in args.subset.split(",") if s.strip()]
            bad = [s for s in names if s not in labels]
            if bad:
                raise ParseError(f"unknown subset element(s) {bad}", witness=bad)
            S = [labels.index(s) for s in names]
        else:
            S = list(amb.cat.points)
        res = hull_in_ambient(amb, S)
    else:
        if not isinstance(obj, QBA) or obj.unit is None:
            raise UsageError("hull qba needs a qba input with a unit")
        res = truncated_qba_hull(obj, args.truncate or 3)
    result = res.to_dict()
    if args.corpus and source is not None:
        result["essential"] = _essential(res, source, args.corpus)
    if args.dot:
        Path(args.dot).write_text(vcategory_dot(res.H.cat, res.embedding, "hull"))
    ok = res.ok and result.get("essential", {}).get("ok", True)
    code = EXIT_OK if ok else EXIT_PROPERTY
    verdict = "ok" if ok else "property-failure"
    if res.approximate:
        verdict = "approximate" if ok else verdict
        if not res.stability["exact"]:
            code, verdict = EXIT_PROPERTY, "approximation-unstable"
    return code, {"inputs": {args.file: dig}, "result": result, "verdict": verdict,
                  "approximate": res.approximate}


def cmd_topo(args) -> tuple[int, dict]:
    from .formats import order_dot
    from .topo import FinTop, bits, homeomorphism, lambda_space, specialization_order

    kind, obj, dig = _load(args.file, args.max_size)
    if not isinstance(obj, FinTop):
        raise UsageError("topo commands need a space input")
    lam = lambda_space(obj)
    result = lam.to_dict()
    result["homeomorphic_to_input"] = homeomorphism(lam.space, obj) is not None
    if args.sub == "check":
        result = {"report": lam.report, "homeomorphic_to_input": result["homeomorphic_to_input"],
                  "opens": [bits(u, obj.n) for u in obj.opens]}
    if args.dot:
        names = ["{" + "|".join(",".join(map(str, bits(u, obj.n))) for u in sorted(f)) + "}" for f in lam.points]
        text = order_dot(specialization_order(obj), [str(p) for p in range(obj.n)], (), "space")
        text += order_dot(specialization_order(lam.space), names, lam.embedding, "lambda")
        Path(args.dot).write_text(text)
    rep = lam.report
    ok = rep["triangles"] and rep["equivalence_holds"] and rep["embedding_continuous"]
    return (EXIT_OK if ok else EXIT_PROPERTY), {"inputs": {args.file: dig}, "result": result,
                                                "verdict": "ok" if ok else "property-failure"}


# ---------------------------------------------------------------- driver


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="also write the report to PATH")
    common.add_argument("--dot", metavar="PATH", help="write a DOT diagram to PATH")
    common.add_argument("--max-size", type=int, metavar="N", help="reject inputs with more than N elements")
    common.add_argument("--max-list-len", type=int, metavar="N", help="bound on list lengths")
    common.add_argument("--corpus", metavar="PATH", help="JSON list of structures for spot checks")

    p = argparse.ArgumentParser(prog="qlab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("validate", parents=[common], help="validate a structure file")
    v.add_argument("file")
    c = sub.add_parser("complete", help="completions")
    csub = c.add_subparsers(dest="kind", required=True)
    m = csub.add_parser("macneille", parents=[common])
    m.add_argument("file")
    h = sub.add_parser("hull", help="injective hulls")
    hsub = h.add_subparsers(dest="pipeline", required=True)
    for name in ("monoid", "ambient", "qba"):
        hp = hsub.add_parser(name, parents=[common])
        hp.add_argument("file")
        hp.add_argument("--subset", help="comma-separated element labels (ambient only)")
        hp.add_argument("--truncate", type=int, metavar="B", help="list-length bound (qba only)")
    t = sub.add_parser("topo", help="finite spaces")
    tsub = t.add_subparsers(dest="sub", required=True)
    for name in ("hull", "check"):
        tp = tsub.add_parser(name, parents=[common])
        tp.add_argument("file")
    return p


COMMANDS = {"validate": cmd_validate, "complete": cmd_complete, "hull": cmd_hull, "topo": cmd_topo}


def run(argv: list[str] | None = None) -> tuple[int, dict]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return (EXIT_OK if e.code == 0 else EXIT_USAGE), {}
    for a in ("truncate", "subset"):
        if not hasattr(args, a):
            setattr(args, a, None)
    report: dict = {"command": list(argv if argv is not None else sys.argv[1:])}
    started = time.perf_counter()
    kw = {}
    if args.max_list_len is not None:
        kw["max_list_len"] = args.max_list_len
    try:
        with config.override(**kw):
            report["caps"] = {"max_cells": config.limits.max_cells, "max_list_len": config.limits.max_list_len,
                              "max_size": args.max_size}
            code, body = COMMANDS[args.command](args)
            report.update(body)
    except ResourceCap as e:
        code = EXIT_CAP
        report.update(verdict="resource-cap", witness=e.to_dict())
    except (ParseError, UsageError) as e:
        code = EXIT_USAGE
        report.update(verdict="usage", witness=e.to_dict() if isinstance(e, QlabError) else {"error": str(e)})
    except ApproximationUnstable as e:
        code = EXIT_PROPERTY
        report.update(verdict="approximation-unstable", witness=e.to_dict())
    except ValidationError as e:
        code = EXIT_INVALID
        report.update(verdict="invalid", witness=e.to_dict())
    if code != EXIT_OK and "witness" not in report:
        report["witness"] = _failure_witness(report.get("result", {}))
    report["exit_code"] = code
    report = _jsonable(report)
    report["digest"] = _digest(report)
    report["timing"] = {"seconds": round(time.perf_counter() - started, 6)}
    if args.json:
        Path(args.json).write_text(render(report))
    return code, report


def _failure_witness(result: dict) -> dict:
    """Names of the failed checks with whatever witnesses the result carries."""
    out = {}
    for key in ("diagnostics", "checks", "report", "stability"):
        part = result.get(key)
        if isinstance(part, dict):
            bad = {k: v for k, v in part.items() if v is False}
            if bad:
                out[key] = sorted(bad)
            for k, v in part.items():
                if k.endswith("witness") and v:
                    out[k] = v
    if "essential" in result and not result["essential"].get("ok", True):
        out["essential"] = result["essential"]["failures"]
    return out


def render(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def main(argv: list[str] | None = None) -> int:
    code, report = run(argv)
    if report:
        sys.stdout.write(render(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
