"""Command line front end: ``moncurve {analyze,family,sweep,ideal} ...``.

Exit codes: 0 success, 1 user error, 2 internal invariant violation or any
failed cross-check / prediction mismatch.
"""

from __future__ import annotations

import argparse
import collections
import csv
import io
import json
import os
import sys
from typing import Sequence

from . import ideals
from .errors import InvariantViolation, MoncurveError, ParseError, UserError
from .family import CSV_COLUMNS, FamilyParams, VerificationRow, verify_family
from .invariants import REPORT_KEYS, InvariantReport, classify
from .semigroup import parse_curve

EXIT_OK, EXIT_USER, EXIT_INTERNAL = 0, 1, 2
RAO_TABLE_LIMIT = 12


class CheckFailed(Exception):
    """Output was produced but a cross-check did not agree."""


def parse_range(text: str) -> range:
    """``5`` or ``5:9`` (inclusive)."""
    lo, sep, hi = text.partition(":")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise ParseError(f"bad range token {text!r}") from None
    if b < a:
        raise ParseError(f"empty range {text!r}")
    return range(a, b + 1)


def resolve_jobs(flag: int | None) -> int:
    env = os.environ.get("MONCURVE_JOBS")
    if env:
        try:
            jobs = int(env)
        except ValueError:
            raise ParseError(f"bad MONCURVE_JOBS value {env!r}") from None
    elif flag is not None:
        jobs = flag
    else:
        jobs = os.cpu_count() or 1
    if jobs < 1:
        raise ParseError("jobs must be at least 1")
    return jobs


def _emit(text: str, out: str | None) -> None:
    if out:
        try:
            with open(out, "w", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise UserError(f"cannot write {out}: {exc}") from None
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _fmt(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)


def render_report_table(report: InvariantReport) -> str:
    data = report.to_dict()
    rao = data["rao_hilbert"]
    shown = " ".join(str(x) for x in rao[: RAO_TABLE_LIMIT + 1])
    if len(rao) > RAO_TABLE_LIMIT + 1:
        shown += " ..."
    data["rao_hilbert"] = shown or "0"
    data["G"] = ",".join(str(g) for g in data["G"])
    data["a_invariant"] = "-inf" if data["a_invariant"] is None else data["a_invariant"]
    data["new_generators"] = " ".join(f"s^{s}t^{t}" for s, t in data["new_generators"]) or "-"
    width = max(len(k) for k in data)
    return "".join(f"{k.ljust(width)}  {_fmt(v)}\n" for k, v in data.items())


def render_reports(reports: Sequence[InvariantReport], fmt: str) -> str:
    if fmt == "json":
        payload = [r.to_dict() for r in reports]
        return json.dumps(payload[0] if len(payload) == 1 else payload, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(REPORT_KEYS)
        for r in reports:
            row = r.to_dict()
            row["G"] = " ".join(str(g) for g in row["G"])
            row["rao_hilbert"] = " ".join(str(x) for x in row["rao_hilbert"])
            row["new_generators"] = " ".join(f"{s},{t}" for s, t in row["new_generators"])
            writer.writerow(["" if row[k] is None else row[k] for k in REPORT_KEYS])
        return buf.getvalue()
    return "\n".join(render_report_table(r) for r in reports)


def rows_to_csv(rows: Sequence[VerificationRow]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row.csv_row())
    return buf.getvalue()


def render_rows(rows: Sequence[VerificationRow], fmt: str) -> str:
    if fmt == "csv":
        return rows_to_csv(rows)
    if fmt == "json":
        payload = []
        for row in rows:
            item = {k: (None if v == "" else v) for k, v in row.csv_row().items()}
            item["G"] = list(row.curve.G) if row.curve else []
            item["is_CM"] = row.report.is_CM if row.report else None
            item["new_gens"] = [[g.s_exp, g.t_exp] for g in row.report.new_generators] if row.report else []
            item["error"] = row.error
            payload.append(item)
        return json.dumps(payload, indent=2) + "\n"
    out = []
    for row in rows:
        p = row.prediction
        out.append(f"M_{row.r}^{row.n}  prediction {p.classification} ({p.source})")
        if p.predicted_new_gen is not None:
            g = p.predicted_new_gen
            out.append(f"  predicted new generator  s^{g.s_exp}t^{g.t_exp}")
        if row.report is not None:
            out.append("  " + render_report_table(row.report).rstrip("\n").replace("\n", "\n  "))
        if row.error:
            out.append(f"  error  {row.error}")
        out.append(f"  match  {row.match_label}")
        residual = row.question_residual
        if residual is not None:
            out.append(f"  reg - (k + 2)  {residual}")
        out.append("")
    return "\n".join(out)


def sweep_summary(rows: Sequence[VerificationRow]) -> str:
    matches = sum(row.matched for row in rows)
    errors = sum(row.error is not None for row in rows)
    residuals = collections.Counter(row.question_residual for row in rows if row.question_residual is not None)
    dist = ", ".join(f"{k}:{v}" for k, v in sorted(residuals.items())) or "none"
    return (
        f"rows={len(rows)} matches={matches} mismatches={len(rows) - matches - errors} "
        f"errors={errors} question_residual={{{dist}}}\n"
    )


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_analyze(args) -> None:
    report = classify(parse_curve(args.curve), args.bound)
    _emit(render_reports([report], args.format), args.out)
    if report.criterion_checked is False:
        raise CheckFailed("Buchsbaum level disagrees with the numerical criterion")


def cmd_family(args) -> None:
    r_range, n_range = parse_range(args.r), parse_range(args.n)
    if len(r_range) > 1 or len(n_range) > 1:
        return cmd_sweep(args)
    FamilyParams(r_range[0], n_range[0])
    rows = verify_family(r_range, n_range)
    _emit(render_rows(rows, args.format), args.out)
    if not rows[0].matched:
        raise CheckFailed(f"prediction mismatch: {rows[0].match_label}")


def cmd_sweep(args) -> None:
    r_range, n_range = parse_range(args.r), parse_range(args.n)
    rows = verify_family(r_range, n_range, jobs=resolve_jobs(args.jobs))
    fmt = "csv" if args.out and args.format == "table" else args.format
    text = render_rows(rows, fmt)
    if args.out:
        _emit(text, args.out)
    elif fmt != "table":
        sys.stdout.write(text)
    sys.stdout.write(sweep_summary(rows))
    if any(not row.matched for row in rows):
        raise CheckFailed("sweep had mismatching or failing rows")


def cmd_ideal(args) -> None:
    given = args.ideal or []
    need = 2 if args.op in ("intersect", "equal") else 1
    if len(given) != need:
        raise UserError(f"'{args.op}' needs exactly {need} --ideal argument(s)")
    I = ideals.parse_ideal(given[0])
    J = ideals.parse_ideal(given[1], I.curve) if need == 2 else None
    bound = args.bound if args.bound is not None else ideals.default_bound(I.curve)

    if args.op == "member":
        if not args.monomial:
            raise UserError("'member' needs --monomial A,B")
        m = ideals.parse_monomial(args.monomial)
        result = {"member": ideals.ideal_member(I, m), "monomial": [m.s_exp, m.t_exp]}
    elif args.op in ("colon", "saturate"):
        if not args.by:
            raise UserError(f"'{args.op}' needs --by A,B")
        f = ideals.parse_monomial(args.by)
        op = ideals.colon if args.op == "colon" else ideals.saturate
        res = op(I, f, bound)
        result = {"generators": ideals.format_gens(res.gens), "bound": bound}
    elif args.op == "intersect":
        res = ideals.intersect(I, J, bound)
        result = {"generators": ideals.format_gens(res.gens), "bound": bound}
    else:
        verdict = ideals.is_primary(I, bound) if args.op == "primary" else ideals.ideal_equal(I, J, bound)
        cex = None
        if verdict.counterexample:
            cex = [[m.s_exp, m.t_exp] for m in verdict.counterexample]
        result = {"status": verdict.status, "bound": verdict.bound, "counterexample": cex}
        if verdict.note:
            result["note"] = verdict.note

    if args.format == "json":
        text = json.dumps(result, indent=2) + "\n"
    elif "generators" in result:
        text = f"{result['generators']}\n"
        if args.format == "table":
            text = f"generators  {result['generators']}\nbound       {bound}\n"
    elif "member" in result:
        text = f"{'true' if result['member'] else 'false'}\n"
    else:
        text = f"{result['status']} (bound {result['bound']})"
        if result["counterexample"]:
            text += "  counterexample " + ";".join(f"{s},{t}" for s, t in result["counterexample"])
        text += "\n"
        if result.get("note"):
            text += f"note: {result['note']}\n"
    _emit(text, args.out)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # usage errors are user errors (exit 1); 2 is reserved for internal failures
        self.print_usage(sys.stderr)
        self.exit(EXIT_USER, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="moncurve",
        description="Invariants of projective monomial curves via sumset arithmetic.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("table", "json", "csv")):
        p.add_argument("--format", choices=formats, default="table")
        p.add_argument("--out", help="write output to this file")

    p = sub.add_parser("analyze", help="full invariant report for one curve")
    p.add_argument("--curve", required=True, help="curve as d:g1,g2,... e.g. 21:0,10,18,19,21")
    p.add_argument("--bound", type=int, default=None, help="degree bound for the Macaulayfication (default d)")
    common(p)
    p.set_defaults(func=cmd_analyze)

    for name, helptext in (("family", "one member of M_r^n vs the predictions"),
                           ("sweep", "sweep (r, n) ranges into a CSV")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--r", required=True, help="value or inclusive range a:b")
        p.add_argument("--n", required=True, help="value or inclusive range a:b")
        p.add_argument("--jobs", type=int, default=None, help="worker processes (env MONCURVE_JOBS wins)")
        common(p)
        p.set_defaults(func=cmd_family if name == "family" else cmd_sweep)

    p = sub.add_parser("ideal", help="monomial ideal operations")
    p.add_argument("op", choices=("member", "colon", "saturate", "intersect", "equal", "primary"))
    p.add_argument("--ideal", action="append", help='ideal as "d:g1,...|A,B;A,B" (repeat for two)')
    p.add_argument("--by", help="monomial A,B for colon / saturate")
    p.add_argument("--monomial", help="monomial A,B for member")
    p.add_argument("--bound", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_ideal)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except CheckFailed as exc:
        print(f"moncurve: check failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except InvariantViolation as exc:
        print(f"moncurve: internal invariant violated: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except UserError as exc:
        print(f"moncurve: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USER
    except MoncurveError as exc:
        print(f"moncurve: internal failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
