"""Command-line front end emitting reproducible tables and reports.

Exit codes: 0 success, 2 parse/input error, 3 resource cap exceeded,
4 verification mismatch.  Table numbers are rounded down to the requested
number of decimals so repeated runs diff cleanly; the thread count never
changes any numeric output.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass

from . import formula as fm
from . import oracle as orc
from . import tripoly as tp
from . import verify as vf
from .asymptotics import lambda_tau

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_CAP = 3
EXIT_MISMATCH = 4

THREADS_ENV = "CHAINCALC_THREADS"

KOCH_HEADER = ["s", "n", "rootU", "rootL", "rootT"]
POLYTWIN_HEADER = ["s", "m", "lambda", "tau", "lambda_tau",
                   "lambda_bar", "lambda_lambda_bar"]


@dataclass
class RunConfig:
    mode: str | None = None
    threads: int = 1
    fmt: str = "text"
    digits: int = 6
    out: str | None = None


def fmt_round_down(x: float, digits: int = 6) -> str:
    """Decimal string truncated toward zero at ``digits`` decimals.

    Whole numbers shorten to one decimal ("4.0"); everything else keeps the
    full width ("3.290140"), matching the table convention.
    """
    scale = 10 ** digits
    scaled = math.floor(x * scale)
    ipart, frac = divmod(scaled, scale)
    if frac == 0:
        return f"{ipart}.0"
    return f"{ipart}.{frac:0{digits}d}"


def _num_str(value, digits: int) -> str:
    if isinstance(value, int):
        return str(value)
    return value.to_decimal(digits)


def _emit(text: str, config: RunConfig):
    if config.out:
        with open(config.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_table(header: list[str], rows: list[list[str]], config: RunConfig):
    if config.fmt == "csv":
        lines = [",".join(header)]
        lines += [",".join(row) for row in rows]
        _emit("\n".join(lines) + "\n", config)
    elif config.fmt == "json":
        data = []
        for row in rows:
            entry = {}
            for key, cell in zip(header, row):
                if cell == "":
                    entry[key] = None
                else:
                    try:
                        entry[key] = int(cell)
                    except ValueError:
                        try:
                            entry[key] = float(cell)
                        except ValueError:
                            entry[key] = cell
            data.append(entry)
        _emit(json.dumps(data, indent=2) + "\n", config)
    else:
        widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
                  for i, h in enumerate(header)]
        lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
        for row in rows:
            lines.append("  ".join(c.rjust(w) for c, w in zip(row, widths)))
        _emit("\n".join(lines) + "\n", config)


def _emit_record(pairs: list[tuple[str, str]], config: RunConfig):
    if config.fmt == "csv":
        _emit(",".join(k for k, _ in pairs) + "\n"
              + ",".join(v for _, v in pairs) + "\n", config)
    elif config.fmt == "json":
        data = {}
        for key, val in pairs:
            try:
                data[key] = int(val)
            except ValueError:
                try:
                    data[key] = float(val)
                except ValueError:
                    data[key] = val
        _emit(json.dumps(data, indent=2) + "\n", config)
    else:
        _emit("".join(f"{k} = {v}\n" for k, v in pairs), config)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_poly(args, config: RunConfig) -> int:
    f = fm.parse_formula(args.formula)
    pair = tp.tri_poly(f, config.mode)
    c = tp.counts(f, config.mode)
    d = config.digits
    pairs = [("formula", str(f)), ("n", str(c.n)),
             ("U", _num_str(c.U, d)), ("L", _num_str(c.L, d)),
             ("tr", _num_str(c.tr, d)),
             ("rootU", fmt_round_down(c.rootU, d)),
             ("rootL", fmt_round_down(c.rootL, d)),
             ("rootT", fmt_round_down(c.rootT, d))]
    if args.coeffs:
        pairs.append(("T", "[" + ", ".join(_num_str(v, d) for v in pair.T.coeffs()) + "]"))
        pairs.append(("Tflip", "[" + ", ".join(_num_str(v, d) for v in pair.Tflip.coeffs()) + "]"))
    _emit_record(pairs, config)
    return EXIT_OK


def cmd_koch(args, config: RunConfig) -> int:
    if args.max_s < 0:
        raise fm.FormulaError("max_s must be nonnegative")
    rows = []
    for s in range(args.max_s + 1):
        c = tp.counts(fm.koch(s), config.mode)
        rows.append([str(s), str(c.n),
                     fmt_round_down(c.rootU, config.digits),
                     fmt_round_down(c.rootL, config.digits),
                     fmt_round_down(c.rootT, config.digits)])
    _emit_table(KOCH_HEADER, rows, config)
    return EXIT_OK


def _polytwin_row(s: str, report, digits: int) -> list[str]:
    return [s, str(report.m),
            fmt_round_down(report.lam, digits),
            fmt_round_down(report.tau, digits),
            fmt_round_down(report.lam_tau, digits),
            fmt_round_down(report.lam_bar, digits),
            fmt_round_down(report.lam_lam_bar, digits)]


def cmd_polytwin(args, config: RunConfig) -> int:
    rows = []
    if args.table is not None:
        if args.table < 0:
            raise fm.FormulaError("--table needs a nonnegative level")
        for s in range(args.table + 1):
            report = lambda_tau(fm.koch(s), config.mode)
            rows.append(_polytwin_row(str(s), report, config.digits))
    else:
        f = fm.parse_formula(args.formula)
        report = lambda_tau(f, config.mode)
        label = ""
        stripped = args.formula.replace(" ", "")
        if stripped.startswith("koch(") and stripped.endswith(")"):
            inner = stripped[5:-1]
            if inner.isdigit():
                label = inner
        rows.append(_polytwin_row(label, report, config.digits))
    _emit_table(POLYTWIN_HEADER, rows, config)
    return EXIT_OK


def cmd_verify(args, config: RunConfig) -> int:
    results = vf.run_level(args.level)
    lines = []
    bad = False
    for res in results:
        if res.ok:
            lines.append(f"ok   {res.name} ({res.cases} cases)")
        else:
            bad = True
            lines.append(f"FAIL {res.name} ({len(res.failures)} failures)")
            lines.extend(f"     {msg}" for msg in res.failures[:20])
    lines.append("verification " + ("FAILED", "passed")[not bad])
    _emit("\n".join(lines) + "\n", config)
    return EXIT_MISMATCH if bad else EXIT_OK


def cmd_realize(args, config: RunConfig) -> int:
    f = fm.parse_formula(args.formula)
    pts = orc.realize(f)
    _emit(pts.to_csv_text(), config)
    return EXIT_OK


def cmd_enumerate(args, config: RunConfig) -> int:
    if args.count:
        total = upward = 0
        for f in fm.enumerate_chains(args.n):
            total += 1
            if f.kind != fm.WEDGE:
                upward += 1
        _emit_record([("n", str(args.n)), ("total", str(total)),
                      ("upward", str(upward)),
                      ("downward", str(total - upward))], config)
    else:
        lines = [str(f) for f in fm.enumerate_chains(args.n)]
        _emit("\n".join(lines) + "\n", config)
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chaincalc",
        description="Triangulation counting and growth constants for chains")
    parser.add_argument("--mode", choices=["auto", "exact", "float"],
                        default="auto",
                        help="coefficient domain (auto: exact up to n=512)")
    parser.add_argument("--threads", type=int, default=None,
                        help=f"worker threads (default ${THREADS_ENV} or 1)")
    parser.add_argument("--format", dest="fmt",
                        choices=["text", "csv", "json"], default="text")
    parser.add_argument("--digits", type=int, default=6,
                        help="decimals for roots and growth constants")
    parser.add_argument("--out", default=None, help="write output to a file")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poly", help="triangulation counts of one chain")
    p.add_argument("formula")
    p.add_argument("--coeffs", action="store_true",
                   help="also print both coefficient vectors")
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("koch", help="per-edge root table of Koch chains")
    p.add_argument("max_s", type=int)
    p.set_defaults(func=cmd_koch)

    p = sub.add_parser("polytwin",
                       help="growth constants of poly/twin families")
    p.add_argument("formula", nargs="?")
    p.add_argument("--table", type=int, default=None, metavar="MAX_S",
                   help="emit rows for koch(0..MAX_S) instead of one formula")
    p.set_defaults(func=cmd_polytwin)

    p = sub.add_parser("verify", help="run the cross-module invariant suites")
    p.add_argument("level", nargs="?", choices=["quick", "full"],
                   default="quick")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("realize", help="exact rational realization as CSV")
    p.add_argument("formula")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("enumerate", help="list all chains of a given size")
    p.add_argument("n", type=int)
    p.add_argument("--count", action="store_true")
    p.set_defaults(func=cmd_enumerate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    threads = args.threads
    if threads is None:
        threads = int(os.environ.get(THREADS_ENV, "1") or "1")
    if threads < 1:
        threads = 1
    tp.set_threads(threads)
    config = RunConfig(
        mode=None if args.mode == "auto" else args.mode,
        threads=threads, fmt=args.fmt, digits=args.digits, out=args.out)
    if args.command == "polytwin" and args.formula is None and args.table is None:
        parser.error("polytwin needs a formula or --table")
    try:
        return args.func(args, config)
    except fm.ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except fm.CapExceededError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (fm.FormulaError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
