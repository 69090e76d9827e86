"""``planeproj`` command line.

Every subcommand prints one JSON report (``--format text`` for a flat listing).
Exit status: 0 success, 1 a proved statement failed on an instance, 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import hurwitz, kernels
from .cubic import WeierstrassCurve, decompose_degree3
from .curve import PlaneCurve, is_generic_center, project_branch_divisor, riemann_hurwitz_w
from .errors import FalsificationError, PreconditionError
from .field import FieldMismatch, field_from_spec
from .linsys import Divisor, dim_linear_system, realizes_as_projection
from .pointconf import imposes_independent_conditions, line_cover_witness, max_collinear, parse_configuration
from .points import parse_point
from .poly import ParseError, parse_poly, split_modulus
from .verify import CLAIMS, claim_by_key, run_claims

SCHEMA = 1
ALIASES = {"thm1": "projection-criterion", "thm2": "collinearity-criterion"}


class UsageError(Exception):
    pass


def _text_or_file(value: str) -> str:
    """An argument starting with ``@`` names a file to read."""
    if value.startswith("@"):
        path = Path(value[1:])
        try:
            return path.read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return value


def _json_list(value: str) -> list:
    """A JSON array given inline, as ``@file``, or as a plain path."""
    text = value.strip()
    if text.startswith("@"):
        text = _text_or_file(text)
    elif not text.startswith("["):
        text = _text_or_file("@" + text)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, list):
        raise UsageError("expected a JSON array of point strings")
    return data


def _field(args, *texts):
    """Field from ``--field``, else from a trailing ``mod p`` on any input text, else QQ."""
    if args.field:
        return field_from_spec(args.field)
    for t in texts:
        items = t if isinstance(t, list) else [t]
        for s in items:
            _, p = split_modulus(str(s))
            if p is not None:
                return field_from_spec(p)
    return field_from_spec("Q")


# -- subcommands ------------------------------------------------------------

def cmd_conditions(args) -> dict:
    raw = _json_list(args.points)
    K = _field(args, raw)
    cfg = parse_configuration(raw, K)
    rep = imposes_independent_conditions(cfg, args.degree)
    out = {"conditions": rep.to_json(cfg)}
    if len(cfg) >= 2:
        count, line = max_collinear(cfg)
        out["max_collinear"] = {"count": count, "line": line.to_str()}
    if args.witness is not None:
        if not 0 <= args.witness < len(cfg):
            raise UsageError(f"--witness index {args.witness} out of range")
        out["witness"] = line_cover_witness(cfg, args.witness).to_json()
    return out


def cmd_project(args) -> dict:
    text = _text_or_file(args.curve).strip()
    K = _field(args, text, args.center)
    C = PlaneCurve(parse_poly(text, K))
    p = parse_point(args.center, K)
    bd = project_branch_divisor(C, p)
    return {
        "curve": C.F.to_str(),
        "degree": C.d,
        "genus": C.genus,
        "smoothness": C.smoothness.to_json(),
        "branch_divisor": bd.to_json(),
        "riemann_hurwitz_w": riemann_hurwitz_w(C.d),
        "generic": is_generic_center(C, p),
    }


def cmd_linsys(args) -> dict:
    text = _text_or_file(args.curve).strip()
    raw = _json_list(args.divisor)
    K = _field(args, text, raw)
    C = PlaneCurve(parse_poly(text, K))
    D = Divisor.from_points(C, [parse_point(s, K) for s in raw])
    rep = dim_linear_system(D)
    out = {"curve": C.F.to_str(), "divisor": D.to_json(), "linear_system": rep.to_json()}
    polar = None
    if args.polar:
        polar = Divisor.from_points(C, [parse_point(s, K) for s in _json_list(args.polar)])
    try:
        out["projection"] = realizes_as_projection(D, polar).to_json()
    except PreconditionError as exc:
        out["projection"] = None
        out["projection_refused"] = str(exc)
    return out


def cmd_hurwitz(args) -> dict:
    if args.profile:
        profile = hurwitz.Profile.parse(args.profile, args.degree)
        result = hurwitz.count_transitive(profile)
    else:
        if args.degree is None or args.genus is None:
            raise UsageError("give --degree and --genus, or --profile")
        result = hurwitz.simple_hurwitz(args.degree, args.genus)
    out = result.to_json()
    if args.genus is not None:
        out["genus"] = args.genus
    return out


def cmd_cubic(args) -> dict:
    K = field_from_spec(args.field or "Q")
    E = WeierstrassCurve(args.a, args.b, K)
    zeros = [parse_point(s, K) for s in _json_list(args.zeros)]
    poles = [parse_point(s, K) for s in _json_list(args.poles)]
    dec = decompose_degree3(E, zeros, poles, args.choice)
    return {"curve": E.F.to_str(), "points": len(E.points()), "decomposition": dec.to_json()}


def cmd_constants(args) -> dict:
    return {"constants": [c.to_json() for c in hurwitz.plane_hurwitz_constants()],
            "note": "recorded literature values; only their arithmetic is checked"}


def cmd_verify(args) -> dict:
    keys = [ALIASES.get(k, k) for k in args.claims]
    if args.all or not keys:
        keys = [c.key for c in CLAIMS]
    for k in keys:
        try:
            claim_by_key(k)
        except KeyError:
            raise UsageError(f"unknown claim {k!r}; known: {', '.join(c.key for c in CLAIMS)}") from None
    results = run_claims(keys, args.seed, args.workers)
    rows = [r.to_json(timing=False) for r in results]
    out = {"claims": rows, "passed": sum(r["passed"] for r in rows), "total": len(rows),
           "timing": {r.key: round(r.seconds, 3) for r in results}}
    if not all(r["passed"] for r in rows):
        out["_failed"] = True
    return out


# -- plumbing ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="Q, a prime p, Fp or GF(p); default: from a trailing 'mod p' or Q")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("json", "text"), default="json")

    ap = argparse.ArgumentParser(prog="planeproj", description="Exact computations on plane curves and their projections.")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("conditions", parents=[common], help="independence of point conditions on degree-m curves")
    s.add_argument("--points", required=True, help="JSON array of '[a:b:c]' strings, a file, or @file")
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--witness", type=int, help="index of p0 for the line-cover witness")
    s.set_defaults(func=cmd_conditions)

    s = sub.add_parser("project", parents=[common], help="branch divisor of a projection")
    s.add_argument("--curve", required=True, help="polynomial text or @file")
    s.add_argument("--center", required=True)
    s.set_defaults(func=cmd_project)

    s = sub.add_parser("linsys", parents=[common], help="dimension, base points and projection center of |D|")
    s.add_argument("--curve", required=True)
    s.add_argument("--divisor", required=True, help="JSON array of points")
    s.add_argument("--polar", help="second line section fixing the pencil")
    s.set_defaults(func=cmd_linsys)

    s = sub.add_parser("hurwitz", parents=[common], help="Hurwitz numbers")
    s.add_argument("--degree", type=int)
    s.add_argument("--genus", type=int)
    s.add_argument("--profile", help="branch types, e.g. '2,1;2,1;3'")
    s.set_defaults(func=cmd_hurwitz)

    s = sub.add_parser("cubic", parents=[common], help="shift-projection form of a degree-3 function")
    s.add_argument("--a", type=int, required=True)
    s.add_argument("--b", type=int, required=True)
    s.add_argument("--zeros", required=True)
    s.add_argument("--poles", required=True)
    s.add_argument("--choice", type=int, default=0, help="which trisection point to use")
    s.set_defaults(func=cmd_cubic)

    s = sub.add_parser("constants", parents=[common], help="recorded constants")
    s.set_defaults(func=cmd_constants)

    s = sub.add_parser("verify", parents=[common], help="run the checkable claims")
    s.add_argument("claims", nargs="*", help="claim keys (thm1 and thm2 are accepted aliases)")
    s.add_argument("--all", action="store_true")
    s.add_argument("--workers", type=int, default=None, help="default: $PLANEPROJ_WORKERS or 1")
    s.set_defaults(func=cmd_verify)
    return ap


def _inputs(args) -> dict:
    skip = {"func", "command", "format"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def _flatten(prefix: str, value, out: list[str]) -> None:
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else k, v, out)
    elif isinstance(value, list) and value and isinstance(value[0], (dict, list)):
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, out)
    else:
        out.append(f"{prefix}: {value if not isinstance(value, list) else ', '.join(map(str, value))}")


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True)
    lines: list[str] = []
    _flatten("", report, lines)
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    report = {"schema": SCHEMA, "subcommand": args.command, "inputs": _inputs(args), "backend": kernels.BACKEND}
    t = time.perf_counter()
    code = 0
    try:
        results = args.func(args)
        if results.pop("_failed", False):
            code = 1
        timing = results.pop("timing", None)
        report["results"] = results
        report["timing"] = {"total_seconds": round(time.perf_counter() - t, 3)}
        if timing:
            report["timing"]["claims"] = timing
    except FalsificationError as exc:
        report["falsification"] = {"message": str(exc), "dump": exc.dump}
        code = 1
    except ParseError as exc:
        report["error"] = {"kind": "parse", "message": str(exc), "line": exc.line, "column": exc.column}
        code = 2
    except (UsageError, PreconditionError, FieldMismatch, ValueError, KeyError) as exc:
        report["error"] = {"kind": type(exc).__name__, "message": str(exc)}
        code = 2
    print(render(report, args.format), file=sys.stdout if code != 2 else sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
