"""Command-line interface: scenario verification and the scenario catalog.

Exit codes: 0 all requested checks passed, 1 a check failed (the report
carries the first-mismatch witness), 2 the scenario file did not parse
or validate against the schema.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .scenario import (
    SchemaError,
    catalog_emit,
    catalog_names,
    load_scenario,
    report_to_json,
    run_scenario,
)

CATALOG_SUMMARIES = {
    "tate": "rank-1 self-dual affine line, formal character",
    "orthant_a2": "rank-2 orthant, matched gradings",
    "quadric_cone": "rank-2 quadric cone, formal and specialized characters",
    "quadric_cone_eta21": "quadric cone with eigenform (2,1): discrepancy -1",
    "square_cone_3d": "rank-3 non-simplicial cone over the unit square",
    "weight_n_stack": "rank-1 weight-n quotient (pick n with --n; default 2)",
    "height_p1": "rank-1 height transform and the local-factor bridge",
}


def _default_outdir() -> Path | None:
    env = os.environ.get("TORICPERIODS_OUTDIR")
    return Path(env) if env else None


def _print_human(report: dict, out=sys.stdout):
    print(f"scenario: {report['scenario']['name']}", file=out)
    print(f"engine:   {report['engine']}", file=out)
    for entry in report.get("pair", {}).get("validation", []):
        flag = "ok " if entry["ok"] else "FAIL"
        witness = f" witness={entry.get('witness')}" if not entry["ok"] else ""
        print(f"  [{flag}] {entry['side']}: {entry['condition']}{witness}",
              file=out)
    for name, block in report.get("checks", {}).items():
        print(f"check {name}: {block['status']}", file=out)
        for row in block.get("per_character", []):
            status = row.get("status", "?")
            print(f"  character {row['character']}: {status}", file=out)
    print(f"overall: {report['status']}", file=out)


def cmd_verify(args) -> int:
    path = Path(args.scenario)
    try:
        scenario = load_scenario(path)
        report, ok = run_scenario(scenario, jobs=args.jobs)
    except SchemaError as err:
        print(f"schema error: {err}", file=sys.stderr)
        return 2
    except FileNotFoundError:
        print(f"schema error: {path}: no such file", file=sys.stderr)
        return 2
    payload = report_to_json(report)
    outdir = Path(args.out).parent if args.out else (_default_outdir() or path.parent)
    out_path = Path(args.out) if args.out else outdir / (path.stem + ".report.json")
    out_path.write_text(payload, encoding="utf-8")
    if args.json:
        sys.stdout.write(payload)
    else:
        _print_human(report)
        print(f"report written to {out_path}")
    return 0 if ok else 1


def cmd_catalog(args) -> int:
    if args.action == "list":
        for name in catalog_names():
            print(f"{name}: {CATALOG_SUMMARIES.get(name, '')}")
        return 0
    try:
        data = catalog_emit(args.name, q=args.q, order=args.order, n=args.n)
    except KeyError as err:
        print(f"error: {err.args[0]}", file=sys.stderr)
        return 2
    text = json.dumps(data, sort_keys=True, indent=1) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {args.out}")
    else:
        outdir = _default_outdir()
        if outdir is not None:
            target = outdir / f"{data['name']}.json"
            target.write_text(text, encoding="utf-8")
            print(f"wrote {target}")
        else:
            sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toricperiods",
        description="Exact verification of toric period dualities over P^1/F_q.")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run the checks of a scenario file")
    verify.add_argument("scenario", help="path to a scenario JSON file")
    verify.add_argument("--json", action="store_true",
                        help="print the machine-readable report to stdout")
    verify.add_argument("--jobs", type=int, default=None,
                        help="evaluate Euler factors with this many workers")
    verify.add_argument("--out", default=None,
                        help="report path (default: beside the input)")
    verify.set_defaults(func=cmd_verify)

    catalog = sub.add_parser("catalog", help="list or emit built-in scenarios")
    catalog.add_argument("action", choices=("list", "emit"))
    catalog.add_argument("name", nargs="?", default=None)
    catalog.add_argument("--q", type=int, default=None, help="override the field size")
    catalog.add_argument("--order", type=int, default=None,
                         help="override the truncation order")
    catalog.add_argument("--n", type=int, default=None,
                         help="weight for weight_n_stack")
    catalog.add_argument("--out", default=None, help="write the scenario here")
    catalog.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "catalog" and args.action == "emit" and not args.name:
        parser.error("catalog emit requires a name")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
