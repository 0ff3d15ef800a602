"""Command-line entry point: ``hyperpyramid <command> [flags]``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import sys
from pathlib import Path

import mpmath

from . import __version__, counts, exactnum, hpt, verify
from .pyramid import DEFAULT_LEVEL_CAP, FORMATS, PyramidGraph, census, euclidean_level_values, iter_level, iter_slab

COMMANDS = ("counts", "sums", "build", "triangle", "verify", "recur", "ratio", "export")

BUILTIN_MATRICES = {
    "counts": counts.COUNTS_MATRIX,
    "counts_ab": counts.COUNTS_AB_MATRIX,
    "sums": counts.SUMS_MATRIX,
    "sums_ab": counts.SUMS_AB_MATRIX,
}

# whole-document JSON is refused from here on; NDJSON streams instead
STREAMING_LEVEL = 9


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--levels", type=int, default=10, metavar="N")
    common.add_argument("--format", choices=FORMATS, default="csv")
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--euclidean", action="store_true")
    common.add_argument("--precision", type=int, default=256, metavar="BITS")
    common.add_argument("--max-levels-override", type=int, metavar="N",
                        help=f"raise the graph level cap (default {DEFAULT_LEVEL_CAP})")

    p = argparse.ArgumentParser(prog="hyperpyramid", description="Hyperbolic Pascal pyramid toolkit")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="{" + ",".join(COMMANDS) + "}")

    sub.add_parser("counts", parents=[common], help="vertex-type census per level")
    sub.add_parser("sums", parents=[common], help="vertex-value sums per level")
    sub.add_parser("build", parents=[common], help="construct the graph and report its census")
    t = sub.add_parser("triangle", parents=[common], help="one row of the {4,q} triangle")
    t.add_argument("--q", type=int, default=5)
    sub.add_parser("verify", parents=[common], help="run every cross-check and audit")
    r = sub.add_parser("recur", parents=[common], help="recurrence of a rational matrix")
    r.add_argument("--matrix", required=True, help="JSON file or one of " + ", ".join(BUILTIN_MATRICES))
    r.add_argument("--mode", choices=("minimal", "characteristic"), default="characteristic")
    ra = sub.add_parser("ratio", parents=[common], help="growth ratio x_n / x_(n-1)")
    ra.add_argument("--kind", choices=("counts", "sums"), default="counts")
    ra.add_argument("--n", type=int, action="append", help="level(s); default --levels")
    e = sub.add_parser("export", parents=[common], help="write one level (or slab) of the graph")
    e.add_argument("--slab", action="store_true", help="levels n-1 and n with their edges")
    return p


def _cap(args) -> int:
    return DEFAULT_LEVEL_CAP if args.max_levels_override is None else args.max_levels_override


def _check_levels(args, graph: bool = False):
    if args.levels < 0:
        raise UsageError("--levels must be >= 0")
    if graph and args.levels > _cap(args):
        raise UsageError(f"--levels {args.levels} exceeds the graph cap {_cap(args)}; use --max-levels-override")


def _digits(bits: int) -> int:
    return max(15, int(bits * 0.30103))


def _table(rows, header, fmt) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows([[str(x) for x in r] for r in rows])
        return buf.getvalue()
    if fmt == "json":
        return json.dumps([dict(zip(header, map(str, r))) for r in rows], indent=2) + "\n"
    if fmt == "ndjson":
        return "".join(json.dumps(dict(zip(header, map(str, r)))) + "\n" for r in rows)
    raise UsageError(f"format {fmt} is not available for this command")


def cmd_counts(args, out):
    _check_levels(args)
    vecs = counts.count_vectors(args.levels, euclidean=args.euclidean)
    out.write(_table([v.as_row() for v in vecs], ("n", "a", "b", "c", "d", "e", "s"), args.format))
    return 0


def cmd_sums(args, out):
    _check_levels(args)
    if args.euclidean:
        rows = [(n, 3 ** n) for n in range(args.levels + 1)]
        out.write(_table(rows, ("n", "s"), args.format))
        return 0
    vecs = counts.sum_vectors(args.levels)
    out.write(_table([v.as_row() for v in vecs], ("n", "a", "b", "c", "d", "e", "s"), args.format))
    return 0


def cmd_build(args, out):
    _check_levels(args, graph=not args.euclidean)
    if args.euclidean:
        rows = []
        for n in range(args.levels + 1):
            lvl = euclidean_level_values(n)
            rows.append((n, sum(map(len, lvl)), sum(map(sum, lvl))))
        out.write(_table(rows, ("n", "vertices", "value_sum"), args.format))
        return 0
    g = PyramidGraph(cap=_cap(args))
    rows = []
    for n in range(args.levels + 1):
        g.build_to(n)
        c, s = census(g, n)
        rows.append((n, c.a, c.b, c.c, c.d, c.e, c.s, s.s))
    out.write(_table(rows, ("n", "a", "b", "c", "d", "e", "s", "value_sum"), args.format))
    return 0


def cmd_export(args, out):
    if args.euclidean:
        raise UsageError("export works on the hyperbolic graph only")
    _check_levels(args, graph=True)
    if args.format == "json" and args.levels >= STREAMING_LEVEL:
        raise UsageError(f"level {args.levels} is too large for one JSON document; use --format ndjson")
    if args.slab and args.levels < 1:
        raise UsageError("--slab needs --levels >= 1")
    g = PyramidGraph(cap=_cap(args)).build_to(args.levels)
    chunks = iter_slab(g, args.levels, args.format) if args.slab else iter_level(g, args.levels, args.format)
    for chunk in chunks:
        out.write(chunk)
    return 0


def cmd_triangle(args, out):
    if args.euclidean:
        args.q = 4
    try:
        r = hpt.row(args.q, args.levels, cap=max(hpt.DEFAULT_ROW_CAP, args.max_levels_override or 0))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.format == "csv":
        out.write(hpt.row_csv(r))
    else:
        rows = [(i, kind.value, value) for i, (kind, value) in enumerate(r.cells)]
        out.write(_table(rows, ("index", "kind", "value"), args.format))
    return 0


def cmd_verify(args, out):
    _check_levels(args, graph=True)
    g = PyramidGraph(cap=_cap(args))
    rep = verify.run_all(args.levels, graph=g)
    if args.format == "json":
        out.write(rep.to_json())
    else:
        out.write("\n".join(rep.summary_lines()) + "\n")
    return 0 if rep.ok else 1


def _load_matrix(spec: str) -> exactnum.RationalMatrix:
    if spec in BUILTIN_MATRICES:
        return BUILTIN_MATRICES[spec]
    try:
        data = json.loads(Path(spec).read_text())
        m = exactnum.RationalMatrix.from_json(data)
    except (OSError, ValueError, TypeError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot read matrix {spec!r}: {exc}") from exc
    if not m.is_square or m.rows == 0:
        raise UsageError("matrix must be square and non-empty")
    return m


def cmd_recur(args, out):
    m = _load_matrix(args.matrix)
    poly = exactnum.minpoly(m) if args.mode == "minimal" else exactnum.charpoly(m)
    spec = exactnum.scalar_recurrence(m, args.mode)
    if args.format == "json":
        out.write(json.dumps({
            "mode": args.mode,
            "polynomial": str(poly),
            "coefficients": [exactnum.encode_rational(c) for c in spec.coefficients],
            "order": spec.order,
            "degenerate": spec.degenerate,
            "rank": spec.rank,
        }, indent=2) + "\n")
        return 0
    out.write(str(poly) + "\n")
    out.write("coefficients," + ",".join(str(c) for c in spec.coefficients) + "\n")
    out.write(f"order,{spec.order}\n")
    out.write(f"degenerate,{str(spec.degenerate).lower()}\n")
    return 0


def cmd_ratio(args, out):
    if args.precision < 128:
        raise UsageError("--precision must be >= 128")
    ns = args.n or [args.levels]
    if any(n < 2 for n in ns):
        raise UsageError("ratio needs n >= 2")
    digits = _digits(args.precision)
    rows = []
    for n in ns:
        with mpmath.workprec(args.precision):
            x = counts.growth_ratio(args.kind, n, args.precision, euclidean=args.euclidean)
            rows.append((n, mpmath.nstr(x, digits)))
    out.write(_table(rows, ("n", "ratio"), args.format))
    return 0


HANDLERS = {
    "counts": cmd_counts, "sums": cmd_sums, "build": cmd_build, "triangle": cmd_triangle,
    "verify": cmd_verify, "recur": cmd_recur, "ratio": cmd_ratio, "export": cmd_export,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        with contextlib.redirect_stderr(stderr):
            args = _parser().parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2

    try:
        if args.out:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                return HANDLERS[args.command](args, fh)
        return HANDLERS[args.command](args, stdout)
    except UsageError as exc:
        print(f"hyperpyramid {__version__}: error: {exc}", file=stderr)
        return 2
    except OSError as exc:
        print(f"hyperpyramid {__version__}: error: {exc}", file=stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
