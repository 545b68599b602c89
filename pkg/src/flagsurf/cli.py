"""Command line: ``flagsurf describe | analyze | census``.

Exit status of ``analyze``: 0 covered, 2 not determined by the criterion,
3 not determined because descendant data is missing, 4 invalid setup.
Any input error (I/O, parse, validation) exits 1 and prints
``{"error": {"code": ..., "message": ...}}`` on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Sequence

from .ci_analyzer import CIProblem, Mode, verdict
from .descendants import DescendantTableError, load_descendant_table, records_from_table, builtin_descendant_table
from .flagvariety import FlagSpecError, parse_flag
from .manifest import ManifestError, load_manifest, parse_fraction
from .report import Report, analyze_report, census_csv, census_row, describe_report, render_table
from .census import census

EXIT_INPUT_ERROR = 1

_NUMBERING_HELP = """\
simple roots are numbered 1..rank blockwise over the factors of a product
type, Bourbaki numbering inside each factor:
  A_n  1-2-...-n            B_n  1-...-(n-1)=>n  (n short)
  C_n  1-...-(n-1)<=n (n long)   D_n  1-...-(n-2)<(n-1),n
  E_n  1-3-4-5-...-n, 2 on 4     F_4  1-2=>3-4    G_2  1<=2 (1 short)
a flag variety is written TYPE/P{i,j,...} listing Delta_P, e.g. A3/P{2} is
the Grassmannian of 2-planes in C^4 and A1xA4/P{1,2} is P^1 x P^4."""


class InputError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise InputError("E_USAGE", message)


def _weights(text: str | None):
    if text is None:
        return None
    try:
        return [parse_fraction(x) for x in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError("E_PARSE", f"--weights: {exc}") from None


def _flag(text: str):
    try:
        return parse_flag(text)
    except FlagSpecError as exc:
        raise InputError("E_PARSE", str(exc)) from None


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        Path(output).write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")


def _render(report: Report, fmt: str) -> str:
    return report.to_json() if fmt == "json" else render_table(report)


def cmd_describe(args: argparse.Namespace) -> int:
    t0 = time.perf_counter_ns()
    flag = _flag(args.flag)
    records = dict(builtin_descendant_table(flag))
    if args.descendant_table:
        records.update(_user_records(flag, args.descendant_table))
    report = describe_report(flag, records, command=["describe", args.flag])
    report.timing_ns = time.perf_counter_ns() - t0
    _emit(_render(report, args.format), args.output)
    if args.figure:
        from .plotting import plot_betti

        plot_betti(report, args.figure)
    return 0


def _user_records(flag, path):
    try:
        return records_from_table(flag, load_descendant_table(path, flag))
    except OSError as exc:
        raise InputError("E_IO", f"descendant table: {exc}") from None
    except DescendantTableError as exc:
        raise InputError("E_VALIDATION", str(exc)) from None


def cmd_analyze(args: argparse.Namespace) -> int:
    t0 = time.perf_counter_ns()
    try:
        loaded = load_manifest(args.manifest, mode=args.mode, weights=_weights(args.weights),
                               table_path=args.descendant_table)
    except ManifestError as exc:
        raise InputError(exc.code, str(exc)) from None
    v = verdict(loaded.problem)
    report = analyze_report(loaded.problem, v, loaded.digest, command=["analyze", str(args.manifest)])
    report.timing_ns = time.perf_counter_ns() - t0
    _emit(_render(report, args.format), args.output)
    return v.exit_code


def cmd_census(args: argparse.Namespace) -> int:
    flag = _flag(args.ambient)
    table = None
    if args.descendant_table:
        try:
            table = load_descendant_table(args.descendant_table, flag)
        except OSError as exc:
            raise InputError("E_IO", f"descendant table: {exc}") from None
        except DescendantTableError as exc:
            raise InputError("E_VALIDATION", str(exc)) from None
    if args.max_degree < 0:
        raise InputError("E_VALIDATION", "--max-degree must be >= 0")
    try:
        base = CIProblem.build(flag, (), mode=args.mode or "deformation", weights=_weights(args.weights), table=table)
    except DescendantTableError as exc:
        raise InputError("E_VALIDATION", str(exc)) from None
    rows = [census_row(md, v) for md, v in census(base, args.max_degree, max_codim=args.max_codim, jobs=args.jobs)]
    if args.format == "csv":
        text = census_csv(rows, flag.delta_p)
    elif args.format == "json":
        text = "".join(json.dumps(r, sort_keys=True) + "\n" for r in rows)
    else:
        text = "\n".join(
            f"{';'.join('(' + ','.join(map(str, d)) + ')' for d in r['hypersurfaces']):<24} {r['verdict']}"
            for r in rows
        )
    _emit(text, args.output)
    if args.figure:
        from .plotting import plot_census

        plot_census(rows, describe_report(flag, base.descendant_table), args.figure)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="flagsurf",
        description="Mori cones, gravitational descendants and rational-surface verdicts "
                    "for flag varieties G/P and complete intersections in them.",
        epilog=_NUMBERING_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, formats, default):
        p.add_argument("--format", choices=formats, default=default)
        p.add_argument("--descendant-table", metavar="PATH", help="JSON map of class label to {f, s}")
        p.add_argument("--output", "-o", metavar="PATH", help="write output here instead of stdout")

    p = sub.add_parser("describe", help="invariants of a flag variety", epilog=_NUMBERING_HELP,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("flag", help="e.g. A3/P{2}")
    common(p, ["table", "json"], "table")
    p.add_argument("--figure", metavar="PATH", help="also render the Betti numbers to this image file")
    p.set_defaults(func=cmd_describe)

    p = sub.add_parser("analyze", help="verdict for a complete-intersection manifest")
    p.add_argument("manifest", help="JSON manifest")
    p.add_argument("--mode", choices=[m.value for m in Mode], help="override the manifest's mode")
    p.add_argument("--weights", metavar="a/b,...", help="Kaehler weights (equivalence mode)")
    common(p, ["table", "json"], "table")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("census", help="verdicts for all multidegrees up to a bound")
    p.add_argument("ambient", help="ambient flag variety, e.g. A8/P{1}")
    p.add_argument("--max-degree", type=int, required=True, metavar="N", help="bound on the total degree")
    p.add_argument("--max-codim", type=int, default=None, metavar="C", help="bound on the number of hypersurfaces")
    p.add_argument("--mode", choices=[m.value for m in Mode], default="deformation")
    p.add_argument("--weights", metavar="a/b,...", help="Kaehler weights (equivalence mode)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    common(p, ["csv", "json", "table"], "csv")
    p.add_argument("--figure", metavar="PATH", help="also plot relative invariants against the thresholds")
    p.set_defaults(func=cmd_census)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except InputError as exc:
        print(json.dumps({"error": {"code": exc.code, "message": str(exc)}}), file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
