"""Command-line interface for building, converting and verifying arcs and flocks.

Subcommands
-----------
construct denniston      degree-d Denniston arc from alpha and lam-subgroup generators
construct mathon-extend  degree-2d arc through the trace-condition system
verify                   re-verify an arc or flock JSON file against the oracles
convert                  arc-to-flock | flock-to-arc | project | chain
project                  projection flock of an arc from a chosen nuclear point
search                   solve the trace system for every (H, lambda_d) pair
rank                     rank/solution-count analysis of the same systems

Every subcommand prints JSON by default (sorted keys, compact separators,
one trailing newline, so identical inputs give byte-identical output) or a
short text summary with --format text.  The exit status is 0 exactly when
every verification verdict in the output is true, 1 when some verdict
fails, and 2 for malformed inputs or arguments.  ARCFLOCK_THREADS sets the
worker count for the search subcommand; the output does not depend on it.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from . import flocks as fl
from . import mathon_arcs as ma
from . import projective as pg
from . import search as se
from .finite_field import GF, make_field


def _field_from_args(args: argparse.Namespace) -> GF:
    return make_field(args.h, args.modulus)


def _parse_elements(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part, 0) for part in text.split(","))
    except ValueError as exc:
        raise ValueError(f"cannot parse element list {text!r}: {exc}") from None
    if not values:
        raise ValueError("element list is empty")
    return values


def _span_generators(gf: GF, gens: tuple[int, ...]) -> tuple[int, ...]:
    """Close a generator list under addition; generators must be nonzero."""
    if any(g == 0 for g in gens):
        raise ValueError("0 generates nothing: drop it from the generator list")
    return tuple(sorted(gf.additive_span(gens)))


def _load_input(path: str) -> dict:
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    obj = json.loads(text)
    if not isinstance(obj, dict):
        raise ValueError("input must be a JSON object")
    return obj


def _as_arc_json(obj: dict) -> dict:
    """Accept a bare arc object or any payload wrapping one under 'arc'."""
    if "conics" in obj:
        return obj
    if isinstance(obj.get("arc"), dict):
        return obj["arc"]
    raise ValueError("no arc found in input: need 'conics' or an 'arc' wrapper")


def _as_flock_json(obj: dict) -> dict:
    """Accept a bare flock object or any payload wrapping one under 'flock'."""
    if "planes" in obj:
        return obj
    if isinstance(obj.get("flock"), dict):
        return obj["flock"]
    raise ValueError("no flock found in input: need 'planes' or a 'flock' wrapper")


def _emit(payload: dict, lines: list[str], args: argparse.Namespace) -> None:
    if args.format == "json":
        text = json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"
    else:
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _verdict_exit(verdicts: list[bool]) -> int:
    return 0 if all(verdicts) else 1


def _conic_lines(arc: ma.MathonArc) -> list[str]:
    return [
        f"  conic alpha={c.alpha} beta={c.beta} lam={c.lam}" for c in arc.conics
    ]


def _arc_verify_payload(arc: ma.MathonArc) -> tuple[dict, list[str], bool]:
    report = ma.verify_maximal_arc(arc.gf, ma.arc_points(arc), arc.degree)
    hist = dict(sorted(report.histogram.items()))
    lines = [
        f"arc: q={arc.gf.q} degree={arc.degree} conics={len(arc.conics)}",
        *_conic_lines(arc),
        f"verification: size={report.size} expected={report.expected_size}"
        f" histogram={hist} verdict={'PASS' if report.verdict else 'FAIL'}",
    ]
    return report.to_json(), lines, report.verdict


def _flock_verify_payload(F: fl.PartialFlock) -> tuple[dict, list[str], bool]:
    report = fl.verify_partial_flock(F)
    cls = fl.classify_flock(F)
    lines = [
        f"flock: q={F.gf.q} planes={F.size}"
        f" additive={cls.additive} linear={cls.linear}",
        *[f"  plane {list(p)}" for p in F.planes],
        f"verification: sections={list(report.section_sizes)}"
        f" verdict={'PASS' if report.verdict else 'FAIL'}",
    ]
    payload = {"report": report.to_json(), "classification": cls.to_json()}
    return payload, lines, report.verdict


# -- construct ---------------------------------------------------------------------


def _cmd_construct_denniston(args: argparse.Namespace) -> int:
    gf = _field_from_args(args)
    lam_set = _span_generators(gf, _parse_elements(args.A))
    arc = ma.denniston_arc(gf, args.alpha, tuple(x for x in lam_set if x != 0))
    report_json, lines, ok = _arc_verify_payload(arc)
    payload = {"arc": ma.arc_to_json(arc), "report": report_json}
    _emit(payload, lines, args)
    return _verdict_exit([ok])


def _cmd_construct_mathon_extend(args: argparse.Namespace) -> int:
    gf = _field_from_args(args)
    H = tuple(sorted(set(_span_generators(gf, _parse_elements(args.H))) | {0}))
    spec = se.GroupSpec(gf, H, args.lambda_d)
    system = se.build_trace_system(spec)
    valid = se.solve_trace_system(system)
    if args.rho is not None:
        rho = args.rho
    else:
        if not valid:
            raise ValueError("no valid rho exists for this (H, lambda_d) pair")
        rho = max(valid) if args.seed_order == "desc" else min(valid)
    record = se.search_group(spec, example_rho=rho)
    arc = record.example_arc
    assert arc is not None
    report_json, lines, ok = _arc_verify_payload(arc)
    record_json = record.to_json()
    record_json["example_arc"] = None
    payload = {
        "arc": ma.arc_to_json(arc),
        "report": report_json,
        "rho": rho,
        "search": record_json,
    }
    lines.insert(0, f"trace system: rank={record.rank} valid_rho={record.num_rho_valid} rho={rho}")
    _emit(payload, lines, args)
    return _verdict_exit([ok])


# -- verify / convert / project -----------------------------------------------------


def _cmd_verify(args: argparse.Namespace) -> int:
    obj = _load_input(args.input)
    if "conics" in obj or isinstance(obj.get("arc"), dict):
        arc = ma.arc_from_json(_as_arc_json(obj))
        report_json, lines, ok = _arc_verify_payload(arc)
        payload = {"kind": "arc", "report": report_json}
        lines.insert(0, "kind: arc")
    elif "planes" in obj or isinstance(obj.get("flock"), dict):
        F = fl.flock_from_json(_as_flock_json(obj))
        sub, lines, ok = _flock_verify_payload(F)
        payload = {"kind": "flock", **sub}
        lines.insert(0, "kind: flock")
    else:
        raise ValueError("input is neither an arc (conics) nor a flock (planes)")
    _emit(payload, lines, args)
    return _verdict_exit([ok])


def _parse_point(text: str, size: int) -> pg.Coords:
    values = _parse_elements(text)
    if len(values) != size:
        raise ValueError(f"expected {size} comma-separated coordinates, got {len(values)}")
    return tuple(values)


def _cmd_convert(args: argparse.Namespace) -> int:
    obj = _load_input(args.input)
    direction = args.direction
    if direction == "arc-to-flock":
        arc = ma.arc_from_json(_as_arc_json(obj))
        F = fl.arc_to_flock(arc)
        sub, lines, ok = _flock_verify_payload(F)
        payload = {"flock": fl.flock_to_json(F), **sub}
        _emit(payload, lines, args)
        return _verdict_exit([ok])
    if direction == "flock-to-arc":
        F = fl.flock_from_json(_as_flock_json(obj))
        arc = fl.flock_to_arc(F)
        report_json, lines, ok = _arc_verify_payload(arc)
        payload = {"arc": ma.arc_to_json(arc), "report": report_json}
        _emit(payload, lines, args)
        return _verdict_exit([ok])
    if direction == "project":
        arc = ma.arc_from_json(_as_arc_json(obj))
        p = _parse_point(args.p, 4) if args.p else fl.DEFAULT_PROJECTION_POINT
        F = fl.project_arc(arc, p)
        sub, lines, ok = _flock_verify_payload(F)
        payload = {
            "flock": fl.flock_to_json(F),
            "projection_point": list(pg.normalize(arc.gf, p)),
            **sub,
        }
        _emit(payload, lines, args)
        return _verdict_exit([ok])
    if direction == "chain":
        arc = ma.arc_from_json(_as_arc_json(obj))
        raw = fl.project_arc(arc)
        additive = fl.geometric_to_additive(raw)
        algebraic = fl.arc_to_flock(arc)
        equal = additive == algebraic
        payload = {
            "raw": fl.flock_to_json(raw),
            "additive": fl.flock_to_json(additive),
            "algebraic": fl.flock_to_json(algebraic),
            "chain_equals_algebraic": equal,
        }
        lines = [
            f"raw planes: {[list(p) for p in raw.planes]}",
            f"additive planes: {[list(p) for p in additive.planes]}",
            f"chain equals algebraic: {'PASS' if equal else 'FAIL'}",
        ]
        _emit(payload, lines, args)
        return _verdict_exit([equal])
    raise ValueError(f"unknown direction {direction!r}")


def _cmd_project(args: argparse.Namespace) -> int:
    args.direction = "project"
    return _cmd_convert(args)


# -- search / rank ------------------------------------------------------------------


def _threads() -> int:
    raw = os.environ.get("ARCFLOCK_THREADS", "1")
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"ARCFLOCK_THREADS must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError("ARCFLOCK_THREADS must be at least 1")
    return value


def _record_line(r: se.SearchRecord) -> str:
    return (
        f"H={{{','.join(map(str, r.H))}}} lambda_d={r.lambda_d}"
        f" epsilon={r.epsilon} rank={r.rank}"
        f" prefilter={r.num_rho_prefilter} valid={r.num_rho_valid}"
        f"{' example' if r.example_arc else ''}"
    )


def _cmd_search(args: argparse.Namespace) -> int:
    gf = _field_from_args(args)
    records = se.search_field(
        gf,
        args.d,
        descending=args.seed_order == "desc",
        max_workers=_threads(),
    )
    verdicts = []
    example_report = None
    for r in records:
        if r.example_arc is not None:
            report = ma.verify_maximal_arc(
                gf, ma.arc_points(r.example_arc), r.example_arc.degree
            )
            example_report = report.to_json()
            verdicts.append(report.verdict)
    hist: dict[str, int] = {}
    for r in records:
        hist[str(r.rank)] = hist.get(str(r.rank), 0) + 1
    payload = {
        "q": gf.q,
        "d": args.d,
        "records": [r.to_json() for r in records],
        "example_report": example_report,
        "summary": {
            "pairs": len(records),
            "with_valid_rho": sum(1 for r in records if r.num_rho_valid > 0),
            "rank_histogram": dict(sorted(hist.items())),
            "guaranteed_degree": se.guaranteed_degree(gf.h),
        },
    }
    lines = [f"search q={gf.q} |H|={args.d}: {len(records)} pairs"]
    lines += [_record_line(r) for r in records]
    lines.append(
        f"summary: with_valid_rho={payload['summary']['with_valid_rho']}"
        f" rank_histogram={payload['summary']['rank_histogram']}"
    )
    if example_report is not None:
        lines.append(
            f"example arc verdict: {'PASS' if verdicts and all(verdicts) else 'FAIL'}"
        )
    _emit(payload, lines, args)
    return _verdict_exit(verdicts)


def _cmd_rank(args: argparse.Namespace) -> int:
    gf = _field_from_args(args)
    records = []
    lines = [f"rank analysis q={gf.q} |H|={args.d}"]
    hist: dict[str, int] = {}
    for spec in se.enumerate_group_specs(gf, args.d, args.seed_order == "desc"):
        system = se.build_trace_system(spec)
        analysis = se.rank_analysis(system)
        records.append(
            {
                "H": list(spec.H),
                "lambda_d": spec.lambda_d,
                "epsilon": system.epsilon,
                **analysis.to_json(),
            }
        )
        hist[str(analysis.rank)] = hist.get(str(analysis.rank), 0) + 1
        lines.append(
            f"H={{{','.join(map(str, spec.H))}}} lambda_d={spec.lambda_d}"
            f" rank={analysis.rank} solutions={analysis.solution_count}"
            f" independent={analysis.independent}"
        )
    payload = {
        "q": gf.q,
        "d": args.d,
        "records": records,
        "rank_histogram": dict(sorted(hist.items())),
        "guaranteed_degree": se.guaranteed_degree(gf.h),
    }
    lines.append(f"rank_histogram={payload['rank_histogram']}")
    _emit(payload, lines, args)
    return 0


# -- parser ------------------------------------------------------------------------


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", choices=("json", "text"), default="json")
    sub.add_argument("--out", help="write output to this file instead of stdout")


def _add_field(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--h", type=int, required=True, help="field degree: q = 2^h")
    sub.add_argument(
        "--modulus",
        type=lambda s: int(s, 0),
        default=None,
        help="irreducible modulus as a bitmask int (default: least such)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arcflock",
        description="maximal arcs in PG(2,2^h) and partial flocks of the quadratic cone",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    construct = subs.add_parser("construct", help="build an arc")
    csubs = construct.add_subparsers(dest="kind", required=True)

    den = csubs.add_parser("denniston", help="Denniston arc from a lam subgroup")
    _add_field(den)
    den.add_argument("--alpha", type=lambda s: int(s, 0), required=True)
    den.add_argument(
        "--A", required=True, help="comma-separated generators of the lam subgroup"
    )
    _add_common(den)
    den.set_defaults(func=_cmd_construct_denniston)

    ext = csubs.add_parser(
        "mathon-extend", help="degree-2d arc from the trace-condition system"
    )
    _add_field(ext)
    ext.add_argument(
        "--H", required=True, help="comma-separated generators of the subgroup H"
    )
    ext.add_argument("--lambda-d", dest="lambda_d", type=lambda s: int(s, 0), required=True)
    ext.add_argument(
        "--rho",
        type=lambda s: int(s, 0),
        default=None,
        help="explicit solution rho (default: pick per --seed-order)",
    )
    ext.add_argument("--seed-order", choices=("asc", "desc"), default="asc")
    _add_common(ext)
    ext.set_defaults(func=_cmd_construct_mathon_extend)

    ver = subs.add_parser("verify", help="re-verify an arc or flock JSON file")
    ver.add_argument("input", help="path to a JSON file, or - for stdin")
    _add_common(ver)
    ver.set_defaults(func=_cmd_verify)

    conv = subs.add_parser("convert", help="move between arcs and flocks")
    conv.add_argument(
        "--direction",
        required=True,
        choices=("arc-to-flock", "flock-to-arc", "project", "chain"),
    )
    conv.add_argument("input", help="path to a JSON file, or - for stdin")
    conv.add_argument("--p", default=None, help="projection point, e.g. 1,0,1,0")
    _add_common(conv)
    conv.set_defaults(func=_cmd_convert)

    proj = subs.add_parser("project", help="projection flock of an arc")
    proj.add_argument("input", help="path to an arc JSON file, or - for stdin")
    proj.add_argument("--p", default=None, help="projection point, e.g. 1,0,1,0")
    _add_common(proj)
    proj.set_defaults(func=_cmd_project)

    sea = subs.add_parser("search", help="trace-system search over all (H, lambda_d)")
    _add_field(sea)
    sea.add_argument("--d", type=int, required=True, help="order of the subgroup H")
    sea.add_argument("--seed-order", choices=("asc", "desc"), default="asc")
    _add_common(sea)
    sea.set_defaults(func=_cmd_search)

    rnk = subs.add_parser("rank", help="rank analysis of the trace systems")
    _add_field(rnk)
    rnk.add_argument("--d", type=int, required=True, help="order of the subgroup H")
    rnk.add_argument("--seed-order", choices=("asc", "desc"), default="asc")
    _add_common(rnk)
    rnk.set_defaults(func=_cmd_rank)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ZeroDivisionError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
