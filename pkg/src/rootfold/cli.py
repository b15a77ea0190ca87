"""Command-line front end: build systems, fold them, run the table and invariant harnesses."""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence

from . import root_systems
from .cache import get_context, get_fold, get_system
from .diagrams import build_diagram, fold_diagram, render
from .errors import DomainError, RootfoldError
from .folding import to_json as fold_to_json
from .root_systems import TypeLabel
from .tables import TABLE_IDS, run_table
from .verify import CHECKS, RunConfig, run_suite

EXIT_OK = 0
EXIT_VERIFICATION_FAILURE = 1
EXIT_USAGE = 2


def _parse_label(text: str) -> TypeLabel:
    return TypeLabel.parse(text)


def _parse_families(text: Optional[str]) -> Optional[frozenset]:
    if not text:
        return None
    families = frozenset(part.strip().upper() for part in text.split(",") if part.strip())
    unknown = families - set("ABCDEFG") - {"BC"}
    if unknown:
        raise DomainError(f"unknown family filter {sorted(unknown)}")
    return families


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rows_text(rows: List[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2, default=str) + "\n"
    if fmt == "tsv":
        if not rows:
            return ""
        keys = list(rows[0])
        lines = ["\t".join(keys)]
        for row in rows:
            lines.append("\t".join(str(row[k]) for k in keys))
        return "\n".join(lines) + "\n"
    raise DomainError(f"format {fmt!r} not supported for tabular output")


def _cmd_build(args: argparse.Namespace) -> int:
    rs = get_system(_parse_label(args.label))
    _emit(json.dumps(root_systems.to_json(rs), indent=2) + "\n", args.out)
    return EXIT_OK


def _cmd_fold(args: argparse.Namespace) -> int:
    label = _parse_label(args.label)
    rs = get_system(label)
    if args.j not in rs.minuscule_indices or args.j == 0:
        valid = [j for j in rs.minuscule_indices if j != 0]
        raise DomainError(f"j={args.j} is not a valid choice for {label}; valid j: {valid}")
    folded = get_fold(label, args.j)
    _emit(json.dumps(fold_to_json(folded), indent=2) + "\n", args.out)
    return EXIT_OK


def _cmd_tables(args: argparse.Namespace) -> int:
    families = _parse_families(args.filter)
    ids = args.table_ids or list(TABLE_IDS)
    rows: List[dict] = []
    for table_id in ids:
        rows.extend(run_table(table_id, max_rank=args.max_rank, families=families))
    _emit(_rows_text(rows, args.format), args.out)
    return EXIT_OK if all(r["pass"] for r in rows) else EXIT_VERIFICATION_FAILURE


def _cmd_verify(args: argparse.Namespace) -> int:
    config = RunConfig(
        max_rank=args.max_rank,
        families=_parse_families(args.filter),
        output_format=args.format,
        jobs=args.jobs,
        seed=args.seed,
    )
    checks = args.checks.split(",") if args.checks else None
    rows = run_suite(config, checks)
    _emit(_rows_text(rows, args.format), args.out)
    return EXIT_OK if all(r["ok"] for r in rows) else EXIT_VERIFICATION_FAILURE


def _cmd_diagram(args: argparse.Namespace) -> int:
    label = _parse_label(args.label)
    rs = get_system(label)
    if args.fold is not None:
        if args.fold not in rs.minuscule_indices or args.fold == 0:
            valid = [j for j in rs.minuscule_indices if j != 0]
            raise DomainError(
                f"--fold {args.fold} is not a valid choice for {label}; valid j: {valid}"
            )
        ctx = get_context(label, args.fold)
        extended = build_diagram(
            list(rs.extended),
            marks=list(rs.marks),
            names=[f"a{i}" for i in range(rs.rank + 1)],
        )
        diagram = fold_diagram(extended, ctx.element.sigma)
    elif args.extended:
        diagram = build_diagram(
            list(rs.extended),
            marks=list(rs.marks),
            names=[f"a{i}" for i in range(rs.rank + 1)],
        )
    else:
        diagram = build_diagram(
            list(rs.simple), names=[f"a{i}" for i in range(1, rs.rank + 1)]
        )
    fmt = args.format if args.format in ("dot", "ascii") else "ascii"
    _emit(render(diagram, fmt), args.out)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-rank", type=int, default=12, help="rank cap for sweeps")
    common.add_argument(
        "--format", default="json", choices=("json", "tsv", "dot", "ascii"),
        help="output format",
    )
    common.add_argument("--jobs", type=int, default=1, help="worker count (output is identical for any value)")
    common.add_argument("--filter", default=None, help="comma-separated family filter, e.g. A,D,E")
    common.add_argument("--out", default=None, help="write output to a file instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")

    parser = argparse.ArgumentParser(
        prog="rootfold",
        description="Exact-arithmetic root systems, alcove stabilizers, and orbit folding.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser(
        "build", parents=[common], help="construct a root system and print its JSON form"
    )
    p_build.add_argument("label", help="type label, e.g. D5 or E7")
    p_build.set_defaults(func=_cmd_build)

    p_fold = sub.add_parser("fold", parents=[common], help="fold a root system at a minuscule index")
    p_fold.add_argument("label")
    p_fold.add_argument("j", type=int)
    p_fold.set_defaults(func=_cmd_fold)

    p_tables = sub.add_parser(
        "tables", parents=[common], help="compare computed data against the reference tables"
    )
    p_tables.add_argument("table_ids", nargs="*", help=f"table ids among {TABLE_IDS} (default: all)")
    p_tables.set_defaults(func=_cmd_tables)

    p_verify = sub.add_parser("verify", parents=[common], help="run the invariant suite")
    p_verify.add_argument("--checks", default=None, help=f"comma-separated subset of {sorted(CHECKS)}")
    p_verify.set_defaults(func=_cmd_verify)

    p_diag = sub.add_parser(
        "diagram", parents=[common], help="render a Dynkin, extended, or folded diagram"
    )
    p_diag.add_argument("label")
    p_diag.add_argument("--extended", action="store_true", help="render the extended diagram")
    p_diag.add_argument("--fold", type=int, default=None, metavar="J", help="render the folded diagram at index J")
    p_diag.set_defaults(func=_cmd_diagram)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RootfoldError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION_FAILURE


if __name__ == "__main__":
    raise SystemExit(main())
