"""Command-line interface.

    ramastir table NAME FROM TO [csv|json] [--method TAG]
    ramastir triangle KIND ROWS [csv|json]
    ramastir check ID|all [--max-order N] [--list]
    ramastir cross NAME MAX
    ramastir validate stirling|theta --n N --terms R [--eps E] [--factor F]

Data goes to stdout, diagnostics to stderr.  Exit codes: 0 success, 1 a
check or comparison failed, 2 bad usage, 3 an enclosure was too wide to
decide.  Values are printed losslessly: rationals as ``p/q`` and elements of
Q(sqrt2) as ``a+b*sqrt2``; :func:`parse_value` inverts the rendering.
"""

from __future__ import annotations

import argparse
import csv
import enum
import json
import sys
from fractions import Fraction
from typing import Sequence

from ramastir import numeric, sequences, verifier
from ramastir.algebra import Sqrt2Rat
from ramastir.triangles import TriangleKind, triangle

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_UNDECIDED = 3

SEQUENCE_NAMES = ("gamma", "rho", "rho_hat", "psi", "tau", "c", "alpha", "alpha_star", "beta", "beta_star",
                  "omega", "bernoulli")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def render(value) -> str:
    """Lossless text form of a rational or a Q(sqrt2) element."""
    if isinstance(value, (Fraction, Sqrt2Rat)):
        return str(value)
    if isinstance(value, int):
        return str(value)
    raise TypeError(f"cannot render {type(value).__name__}")


def parse_value(text: str):
    """Inverse of :func:`render`."""
    return Sqrt2Rat.parse(text) if "sqrt2" in text else Fraction(text)


def _method_tag(method) -> str | None:
    if method is None:
        return None
    return method.value if isinstance(method, enum.Enum) else str(method)


def _emit(records: list[dict], fmt: str, columns: Sequence[str], out) -> None:
    if fmt == "json":
        json.dump(records, out, indent=1)
        out.write("\n")
        return
    writer = csv.writer(out, lineterminator="\n")
    for rec in records:
        writer.writerow([rec[c] for c in columns])


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_table(args, out) -> int:
    name = args.name
    if name not in SEQUENCE_NAMES:
        raise UsageError(f"unknown sequence {name!r}; choose from {', '.join(SEQUENCE_NAMES)}")
    if args.start < 0 or args.stop < args.start:
        raise UsageError(f"bad range {args.start}..{args.stop}")
    if args.method is not None and args.method not in sequences.method_names(name):
        known = ", ".join(sequences.method_names(name)) or "none"
        raise UsageError(f"unknown method {args.method!r} for {name}; available: {known}")
    records = []
    for i in range(args.start, args.stop + 1):
        sv = sequences.evaluate(name, i, args.method)
        rec = {"n": i, "value": render(sv.value)}
        tag = _method_tag(sv.method)
        if tag is not None:
            rec["method"] = tag
        records.append(rec)
    _emit(records, args.format, ("n", "value"), out)
    return EXIT_OK


def cmd_triangle(args, out) -> int:
    try:
        tri = triangle(args.kind)
    except ValueError:
        kinds = ", ".join(k.value for k in TriangleKind)
        raise UsageError(f"unknown triangle {args.kind!r}; choose from {kinds}") from None
    if args.rows < 0:
        raise UsageError("ROWS must be >= 0")
    records = []
    for n in range(tri.first_row, args.rows + 1):
        for k, v in tri.row(n, kmax=max(n, args.rows)):
            records.append({"n": n, "k": k, "value": render(v)})
    _emit(records, args.format, ("n", "k", "value"), out)
    return EXIT_OK


def _report_line(rep: verifier.CheckReport) -> str:
    if rep.passed:
        return f"{rep.id}\tpass\tmax_index={rep.max_index}\tcases={rep.cases}\telapsed={rep.elapsed:.3f}s"
    return (f"{rep.id}\tFAIL\tmax_index={rep.max_index}\tindex={rep.index}\t"
            f"lhs={_render_any(rep.lhs)}\trhs={_render_any(rep.rhs)}")


def _render_any(v) -> str:
    try:
        return render(v)
    except TypeError:
        return str(v)


def cmd_check(args, out) -> int:
    if args.list:
        for cid in verifier.check_ids():
            out.write(f"{cid}\t{verifier.REGISTRY[cid].default_range}\t{verifier.REGISTRY[cid].description}\n")
        return EXIT_OK
    if args.id is None:
        raise UsageError("check needs an identity id, 'all', or --list")
    if args.max_order is not None and args.max_order < 0:
        raise UsageError("--max-order must be >= 0")
    if args.id == "all":
        reports = verifier.run_all(args.max_order)
    else:
        try:
            reports = [verifier.run_check(args.id, args.max_order)]
        except KeyError as exc:
            print(f"error: {exc.args[0]}", file=sys.stderr)
            return EXIT_USAGE
    for rep in reports:
        out.write(_report_line(rep) + "\n")
    failed = [r.id for r in reports if not r.passed]
    if failed:
        print(f"{len(failed)} of {len(reports)} checks failed: {', '.join(failed)}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_cross(args, out) -> int:
    name = args.name
    if name not in SEQUENCE_NAMES:
        raise UsageError(f"unknown sequence {name!r}")
    tags = sequences.method_names(name)
    if len(tags) < 2:
        print(f"error: {name} has fewer than two methods", file=sys.stderr)
        return EXIT_USAGE
    if args.max_index < 0:
        raise UsageError("MAX must be >= 0")
    for i in range(args.max_index + 1):
        ref = sequences.evaluate(name, i, tags[0]).value
        for tag in tags[1:]:
            val = sequences.evaluate(name, i, tag).value
            if val != ref:
                out.write(f"{name}\tDISAGREE\tindex={i}\t{tags[0]}={render(ref)}\t{tag}={render(val)}\n")
                return EXIT_FAIL
    out.write(f"{name}\tagree\tmethods={','.join(tags)}\tindices=0..{args.max_index}\n")
    return EXIT_OK


def cmd_validate(args, out) -> int:
    try:
        eps = Fraction(args.eps)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad --eps {args.eps!r}") from None
    try:
        factor = Fraction(args.factor)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad --factor {args.factor!r}") from None
    if eps <= 0 or args.n < 1 or args.terms < 1:
        raise UsageError("need --eps > 0, --n >= 1 and --terms >= 1")
    try:
        rep = numeric.validate_expansion(args.target, args.n, args.terms, eps, factor)
    except numeric.IntervalTooWide as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    verdict = "pass" if rep.passed else "FAIL"
    out.write(
        f"target={rep.target}\tn={rep.n}\tterms={rep.terms}\t{verdict}\n"
        f"error_lo={rep.error.lo}\nerror_hi={rep.error.hi}\nbound={rep.bound}\n"
        f"error_hi_approx={float(rep.error.hi):.6e}\tbound_approx={float(rep.bound):.6e}\t"
        f"width_approx={float(rep.width):.3e}\n"
    )
    return EXIT_OK if rep.passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ramastir", description="Exact coefficient tables, identity checks and rigorous enclosures.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    t = sub.add_parser("table", help="tabulate a sequence")
    t.add_argument("name")
    t.add_argument("start", type=int, metavar="FROM")
    t.add_argument("stop", type=int, metavar="TO")
    t.add_argument("format", nargs="?", default="csv", choices=("csv", "json"))
    t.add_argument("--method", default=None, help="method tag (see 'cross' for the list per sequence)")
    t.set_defaults(func=cmd_table)

    tr = sub.add_parser("triangle", help="print rows 0..ROWS of a number triangle")
    tr.add_argument("kind")
    tr.add_argument("rows", type=int)
    tr.add_argument("format", nargs="?", default="csv", choices=("csv", "json"))
    tr.set_defaults(func=cmd_triangle)

    c = sub.add_parser("check", help="verify an identity (or 'all') exactly")
    c.add_argument("id", nargs="?")
    c.add_argument("--max-order", type=int, default=None)
    c.add_argument("--list", action="store_true", help="list registered identity ids")
    c.set_defaults(func=cmd_check)

    x = sub.add_parser("cross", help="check that every method of a sequence agrees")
    x.add_argument("name")
    x.add_argument("max_index", type=int, metavar="MAX")
    x.set_defaults(func=cmd_cross)

    v = sub.add_parser("validate", help="test an asymptotic expansion numerically with interval arithmetic")
    v.add_argument("target", choices=("stirling", "theta"))
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--terms", type=int, required=True)
    v.add_argument("--eps", default="1e-40")
    v.add_argument("--factor", default="2")
    v.set_defaults(func=cmd_validate)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())
