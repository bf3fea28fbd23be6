"""Command-line front end: ``table``, ``verify``, ``certify`` and ``report``.

Exit codes: 0 proved, 1 violations found, 2 usage or I/O error,
3 indeterminate.
"""

from __future__ import annotations

import argparse
import csv
import fcntl
import glob
import io
import json
import os
import re
import sys
from contextlib import contextmanager
from fractions import Fraction
from typing import Optional, Sequence

from . import asymptotics as asy
from . import certify as cert
from .interval import IndeterminateError, RealInterval, decide
from .partitions import CrankParityTable, build_table

CACHE_ENV = "CRANKPARITY_CACHE_DIR"
DEFAULT_CACHE_DIR = ".crank-cache"

EXIT_PROVED = 0
EXIT_VIOLATIONS = 1
EXIT_USAGE = 2
EXIT_INDETERMINATE = 3

REPORT_COLUMNS = (
    "n", "p", "delta", "m0", "m1", "mu", "main_term", "e_beta_ratio", "y0", "y1",
    "sign", "convex0", "convex1", "logconcave0", "logconcave1", "turan0", "turan1", "equidist",
)

DIGITS = 20


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# Table cache
# ---------------------------------------------------------------------------

def cache_dir(explicit: Optional[str]) -> str:
    return explicit or os.environ.get(CACHE_ENV) or DEFAULT_CACHE_DIR


@contextmanager
def _locked(directory: str):
    os.makedirs(directory, exist_ok=True)
    with open(os.path.join(directory, ".lock"), "w") as fh:
        try:
            fcntl.flock(fh, fcntl.LOCK_EX | fcntl.LOCK_NB)
        except BlockingIOError:
            raise OSError(f"cache directory {directory} is locked by another process") from None
        try:
            yield
        finally:
            fcntl.flock(fh, fcntl.LOCK_UN)


def _cached_tables(directory: str) -> list[tuple[int, str]]:
    found = []
    for path in glob.glob(os.path.join(directory, "table-*.txt")):
        m = re.fullmatch(r"table-(\d+)\.txt", os.path.basename(path))
        if m:
            found.append((int(m.group(1)), path))
    return sorted(found)


def obtain_table(max_n: int, directory: str) -> CrankParityTable:
    """Smallest cached table covering ``max_n``, building and caching one if needed."""
    for n, path in _cached_tables(directory):
        if n >= max_n:
            return CrankParityTable.load(path).truncate(max_n)
    table = build_table(max_n)
    with _locked(directory):
        table.save(os.path.join(directory, f"table-{max_n}.txt"))
    return table


# ---------------------------------------------------------------------------
# Output helpers
# ---------------------------------------------------------------------------

def _exit_code(certs: Sequence[cert.Certificate]) -> int:
    code = EXIT_PROVED
    for c in certs:
        if c.status is cert.Status.VIOLATIONS_FOUND:
            code = max(code, EXIT_VIOLATIONS)
        elif c.status is cert.Status.INDETERMINATE:
            code = EXIT_INDETERMINATE if code != EXIT_VIOLATIONS else code
    return code


def _describe(c: cert.Certificate) -> str:
    k = "" if c.k is None else f" k={c.k}"
    line = f"{c.theorem.value}{k} [{c.n_from}, {c.n_to}] {c.method.value}: {c.status.value}"
    if c.violations:
        line += "\n  violations: " + " ".join(f"n={n}" for n in c.violations)
    if c.undecided:
        line += "\n  undecided: " + " ".join(f"n={n}" for n in c.undecided)
    return line


def _emit_certificates(certs, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps([c.to_dict() for c in certs], sort_keys=True, indent=2) + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["theorem", "k", "n_from", "n_to", "method", "status", "violations"])
        for c in certs:
            w.writerow([c.theorem.value, "" if c.k is None else c.k, c.n_from, c.n_to,
                        c.method.value, c.status.value, " ".join(map(str, c.violations))])
    else:
        for c in certs:
            out.write(_describe(c) + "\n")


def _ks(selector: str) -> tuple[int, ...]:
    return {"0": (0,), "1": (1,), "both": (0, 1)}[selector]


def _clamp_from(n_from: int, lowest: int, what: str) -> int:
    if n_from < lowest:
        print(f"warning: {what} starts at n={lowest}; clamping --from {n_from} to {lowest}", file=sys.stderr)
        return lowest
    return n_from


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_table(args) -> int:
    table = build_table(args.max_n)
    directory = cache_dir(args.cache_dir)
    path = args.out or os.path.join(directory, f"table-{args.max_n}.txt")
    with _locked(directory):
        table.save(path)
    print(f"max_n={table.max_n} delta_sha256={table.delta_checksum()} path={path}")
    if args.max_n <= 20:
        print("p=[" + ",".join(map(str, table.p)) + "]")
        print("delta=[" + ",".join(map(str, table.delta)) + "]")
    return EXIT_PROVED


VERIFY_CHECKS = ("sign", "dexcess", "convexity", "logconcave", "turan", "ybounds",
                 "envelope", "equidist", "mainterm", "series", "pn")


def run_verify(check: str, n_from: int, n_to: int, ks: Sequence[int], prec: int,
               table: CrankParityTable, d: Optional[int] = None) -> list[cert.Certificate]:
    if check == "sign":
        return [cert.check_sign_alternation(table, n_from, n_to)]
    if check == "dexcess":
        if d is not None:
            return [cert.check_d_excess(table, d, n_to, prec)]
        return [cert.check_d_excess_supporting(table, max(n_from, 1), n_to, prec)]
    if check == "convexity":
        return [cert.check_convexity(table, k, _clamp_from(n_from, 1, check), n_to) for k in ks]
    if check == "logconcave":
        return [cert.check_log_concavity(table, k, _clamp_from(n_from, 1, check), n_to) for k in ks]
    if check == "turan":
        return [cert.check_higher_turan(table, k, _clamp_from(n_from, 1, check), n_to) for k in ks]
    if check == "ybounds":
        return [cert.check_y_envelope(table, k, n_from, n_to, max(prec, 256)) for k in ks]
    if check == "envelope":
        return [cert.check_envelope_containment(table, n_from, n_to, prec)]
    if check == "equidist":
        return [cert.check_equidistribution(table, n_from, n_to, prec, k) for k in ks]
    if check == "mainterm":
        return [cert.check_delta_main_term(table, n_from, n_to, prec)]
    if check == "series":
        return [cert.check_ckl_series(table, _clamp_from(n_from, 1, check), n_to, prec)]
    if check == "pn":
        return [cert.check_p_asymptotic(table, _clamp_from(n_from, 1, check), n_to, prec)]
    raise UsageError(f"unknown check {check!r}")


def cmd_verify(args) -> int:
    extra = {"convexity": 1, "logconcave": 1, "turan": 2, "ybounds": 1}.get(args.check, 0)
    table = obtain_table(args.to + extra, cache_dir(args.cache_dir))
    certs = run_verify(args.check, args.from_, args.to, _ks(args.k), args.precision, table, args.d)
    _emit_certificates(certs, args.format, sys.stdout)
    return _exit_code(certs)


def cmd_certify(args) -> int:
    if args.check == "logconcave":
        certs = [cert.certify_log_concavity_analytic(args.from_, args.to, args.precision)]
    elif args.check == "turan":
        certs = [cert.certify_higher_turan_analytic(args.from_, args.to, args.precision)]
    elif args.check == "envelope":
        table = obtain_table(args.to, cache_dir(args.cache_dir))
        certs = [cert.check_envelope_containment(table, args.from_, args.to, args.precision)]
    else:
        raise UsageError(f"unknown certificate {args.check!r}")
    _emit_certificates(certs, args.format, sys.stdout)
    return _exit_code(certs)


def _fmt_bool(v: Optional[bool]) -> str:
    return {True: "true", False: "false", None: "undecided"}[v]


def _fraction_decimal(x: Fraction, prec: int) -> str:
    return RealInterval.exact(x, prec).to_decimal(DIGITS)


def report_rows(table: CrankParityTable, n_from: int, n_to: int, prec: int) -> list[dict]:
    """One dict per n with the columns in :data:`REPORT_COLUMNS` (all strings)."""
    rows = []
    for n in range(n_from, n_to + 1):
        row = {c: "" for c in REPORT_COLUMNS}
        d = table.delta[n]
        row.update(n=str(n), p=str(table.p[n]), delta=str(d), m0=str(table.m0[n]), m1=str(table.m1[n]))
        row["sign"] = _fmt_bool((d if n % 2 == 0 else -d) > 0)
        if n >= 1:
            wp = asy.working_precision(n, prec)
            row["mu"] = asy.mu(n, wp).to_decimal(DIGITS)
            if n >= 3:
                main = asy.main_term(n, wp)
                row["main_term"] = main.to_decimal(DIGITS)
                row["e_beta_ratio"] = (abs(d - main) / asy.e_beta_bound(n, wp)).to_decimal(DIGITS)
            for k in (0, 1):
                M = table.m(k)
                if n + 1 <= table.max_n and M[n] > 0:
                    row[f"y{k}"] = _fraction_decimal(cert.y_k_exact(n, k, table), wp)
                if n + 1 <= table.max_n:
                    row[f"convex{k}"] = _fmt_bool(M[n - 1] + M[n + 1] > 2 * M[n])
                    row[f"logconcave{k}"] = _fmt_bool(M[n] * M[n] > M[n - 1] * M[n + 1])
                if n + 2 <= table.max_n:
                    row[f"turan{k}"] = _fmt_bool(cert.higher_turan_holds(M, n))
            if n >= 4:
                dev = max(abs(Fraction(table.m(k)[n], table.p[n]) - Fraction(1, 2)) for k in (0, 1))
                verdict, _ = decide(lambda p: asy.equidistribution_bound(n, p).ge(dev), wp)
                row["equidist"] = _fmt_bool(verdict)
        rows.append(row)
    return rows


def report_certificates(table: CrankParityTable, n_from: int, n_to: int, prec: int) -> list[cert.Certificate]:
    """Per-theorem verdicts over the report range, from the established thresholds on."""
    out = [cert.check_sign_alternation(table, n_from, n_to)]
    if n_to >= 3:
        out.append(cert.check_delta_main_term(table, max(n_from, 3), n_to, prec))
    for k, (cv, lc, tu) in ((0, (39, 94, 207)), (1, (38, 93, 206))):
        out.append(cert.check_convexity(table, k, max(n_from, cv), n_to))
        out.append(cert.check_log_concavity(table, k, max(n_from, lc), n_to))
        out.append(cert.check_higher_turan(table, k, max(n_from, tu), n_to))
    if n_to >= 4:
        out.append(cert.check_equidistribution(table, max(n_from, 4), n_to, prec))
    return out


def render_report(rows: list[dict], certs: list[cert.Certificate], fmt: str) -> str:
    buf = io.StringIO()
    if fmt == "csv":
        w = csv.DictWriter(buf, fieldnames=REPORT_COLUMNS, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    elif fmt == "json":
        doc = {"columns": list(REPORT_COLUMNS), "rows": rows, "certificates": [c.to_dict() for c in certs]}
        buf.write(json.dumps(doc, sort_keys=True, indent=1) + "\n")
    else:
        for r in rows:
            buf.write(" ".join(f"{c}={r[c]}" for c in REPORT_COLUMNS if r[c]) + "\n")
        buf.write("\n")
        for c in certs:
            buf.write(_describe(c) + "\n")
    return buf.getvalue()


def cmd_report(args) -> int:
    table = obtain_table(args.to + 2, cache_dir(args.cache_dir))
    rows = report_rows(table, args.from_, args.to, args.precision)
    certs = report_certificates(table, args.from_, args.to, args.precision)
    text = render_report(rows, certs, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_PROVED


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def _precision(value: str) -> int:
    p = int(value)
    if p < 64:
        raise argparse.ArgumentTypeError("precision must be at least 64 bits")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="crankparity", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache-dir", default=None, help=f"table cache directory (env {CACHE_ENV})")
    common.add_argument("--precision", type=_precision, default=asy.DEFAULT_PREC, help="working precision in bits")
    common.add_argument("--format", choices=("csv", "json", "text"), default=None,
                        help="output format (default: text; csv for report)")

    p_table = sub.add_parser("table", parents=[common], help="build and cache an exact table")
    p_table.add_argument("--max-n", type=int, required=True)
    p_table.add_argument("--out", default=None)
    p_table.set_defaults(func=cmd_table)

    p_verify = sub.add_parser("verify", parents=[common], help="exact checks on a table range")
    p_verify.add_argument("check", choices=VERIFY_CHECKS)
    p_verify.add_argument("--from", dest="from_", type=int, required=True)
    p_verify.add_argument("--to", type=int, required=True)
    p_verify.add_argument("--k", choices=("0", "1", "both"), default="both")
    p_verify.add_argument("--d", type=int, default=None, help="excess d for the dexcess check")
    p_verify.set_defaults(func=cmd_verify)

    p_cert = sub.add_parser("certify", parents=[common], help="analytic certificates in the asymptotic regime")
    p_cert.add_argument("check", choices=("logconcave", "turan", "envelope"))
    p_cert.add_argument("--from", dest="from_", type=int, required=True)
    p_cert.add_argument("--to", type=int, required=True)
    p_cert.add_argument("--k", choices=("0", "1", "both"), default="both")
    p_cert.set_defaults(func=cmd_certify)

    p_report = sub.add_parser("report", parents=[common], help="consolidated per-n report")
    p_report.add_argument("--from", dest="from_", type=int, required=True)
    p_report.add_argument("--to", type=int, required=True)
    p_report.add_argument("--out", default=None)
    p_report.set_defaults(func=cmd_report)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PROVED
    if getattr(args, "to", 0) is not None and hasattr(args, "from_") and args.to < args.from_:
        print("error: --to must not be smaller than --from", file=sys.stderr)
        return EXIT_USAGE
    if getattr(args, "max_n", 0) < 0:
        print("error: --max-n must be non-negative", file=sys.stderr)
        return EXIT_USAGE
    if args.format is None:
        args.format = "csv" if args.command == "report" else "text"
    try:
        return args.func(args)
    except asy.HypothesisNotMet as exc:
        print(f"error: hypothesis not met: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IndeterminateError as exc:
        print(f"indeterminate: {exc}", file=sys.stderr)
        return EXIT_INDETERMINATE
    except (OSError, ValueError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
