"""Command-line front end.

Subcommands: eval (sequence terms), congruence (one congruence instance,
closed form vs oracle), primetest (criterion vs oracle for one n), and scan
(parallel agreement sweeps). The data stream is JSON lines on stdout with big
integers as decimal strings; diagnostics go to stderr. Exit codes: 0 all
checks hold, 1 mathematical mismatch, 2 usage or precondition error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from math import gcd
from typing import Any, Iterable, Iterator, Optional

from .congruences import (
    FAMILIES,
    GENERAL_FAMILIES,
    CongruenceReport,
    evaluate_congruence,
)
from .errors import InternalInvariantViolation, LucasKitError
from .primality import (
    PrimalityVerdict,
    divisor_sum_breakdown,
    fibonacci_primality_test,
    fibonacci_sum_residue_direct,
    is_prime_oracle,
    mersenne_primality_test,
    remark_check,
)
from .residues import ResidueClass, TrivialModulus
from .sequences import make_params, u_at, u_pair_mod, v_at

PRIMETEST_METHODS = (
    "mersenne-sum",
    "mersenne-sum-direct",
    "fib-sum",
    "fib-sum-direct",
    "divisor-sum",
    "oracle",
)
SCAN_METHODS = ("mersenne-sum", "fib-sum", "remark", "divisor-sum", "congruence-grid")

# Coefficient grid shared by the congruence-grid scan: P in 1..5, Q in -3..3,
# coprime pairs only.
COEFFICIENT_GRID = tuple(
    (p, q)
    for p in range(1, 6)
    for q in range(-3, 4)
    if gcd(p, abs(q)) == 1
)
SHIFT_R_RANGE = range(0, 7)


def _encode_outcome(x: ResidueClass | TrivialModulus) -> dict[str, Any]:
    if isinstance(x, TrivialModulus):
        return {"trivial_modulus": True}
    return {"value": str(x.value), "modulus": str(x.modulus)}


def _encode_report(report: CongruenceReport) -> dict[str, Any]:
    return {
        "family": report.family,
        "p": report.p_coeff,
        "q": report.q_coeff,
        "k": report.k,
        "n": report.n,
        "r": report.r,
        "lhs": _encode_outcome(report.lhs),
        "rhs": _encode_outcome(report.rhs),
        "case_tag": report.case_tag.value if report.case_tag else None,
        "holds": report.holds,
    }


def _encode_verdict(verdict: PrimalityVerdict) -> dict[str, Any]:
    return {
        "n": verdict.n,
        "method": verdict.method,
        "residue": str(verdict.sum_residue.value),
        "modulus": str(verdict.sum_residue.modulus),
        "criterion_says_prime": verdict.criterion_says_prime,
        "oracle_says_prime": verdict.oracle_says_prime,
        "agree": verdict.agree,
        "elapsed": verdict.elapsed,
    }


def _emit(record: dict[str, Any], args: argparse.Namespace) -> None:
    if args.no_timing:
        record = {k: v for k, v in record.items() if k not in ("elapsed", "wall_time")}
    if args.pretty:
        width = max(len(k) for k in record)
        for key, val in record.items():
            print(f"{key:<{width}}  {val}")
    else:
        print(json.dumps(record, separators=(",", ":")))


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_eval(args: argparse.Namespace) -> int:
    params = make_params(args.p, args.q)
    record: dict[str, Any] = {"p": args.p, "q": args.q, "n": args.n}
    if args.mod is not None:
        u_res, u_next = u_pair_mod(params, args.n, args.mod)
        record["mod"] = str(args.mod)
        record["u"] = str(u_res)
        if args.with_v:
            record["v"] = str((2 * u_next - args.p * u_res) % args.mod)
    else:
        record["u"] = str(u_at(params, args.n))
        if args.with_v:
            record["v"] = str(v_at(params, args.n))
    _emit(record, args)
    return 0


def cmd_congruence(args: argparse.Namespace) -> int:
    report = evaluate_congruence(
        args.family, p=args.p, q=args.q, k=args.k, n=args.n, r=args.r
    )
    _emit(_encode_report(report), args)
    return 0 if report.holds else 1


def cmd_primetest(args: argparse.Namespace) -> int:
    n = args.n
    method = args.method
    if method == "oracle":
        started = time.perf_counter()
        prime = is_prime_oracle(n)
        _emit(
            {
                "n": n,
                "method": "oracle",
                "prime": prime,
                "elapsed": time.perf_counter() - started,
            },
            args,
        )
        return 0
    if method == "divisor-sum":
        started = time.perf_counter()
        breakdown = divisor_sum_breakdown(n)
        elapsed = time.perf_counter() - started
        oracle = is_prime_oracle(n)
        agree = breakdown.is_integer == oracle
        _emit(
            {
                "n": n,
                "method": "divisor-sum",
                "total": str(breakdown.total),
                "is_integer": breakdown.is_integer,
                "criterion_says_prime": breakdown.is_integer,
                "oracle_says_prime": oracle,
                "agree": agree,
                "elapsed": elapsed,
            },
            args,
        )
        return 0 if agree else 1
    if method in ("fib-sum", "fib-sum-direct") and args.diagnostic:
        # Residue report only, outside the criterion's hypotheses; no verdict.
        started = time.perf_counter()
        residue = fibonacci_sum_residue_direct(n)
        _emit(
            {
                "n": n,
                "method": method,
                "diagnostic": True,
                "residue": str(residue.value),
                "modulus": str(residue.modulus),
                "oracle_says_prime": is_prime_oracle(n),
                "elapsed": time.perf_counter() - started,
            },
            args,
        )
        return 0
    if method.startswith("mersenne-sum"):
        verdict = mersenne_primality_test(
            n, path="direct" if method.endswith("direct") else "fast"
        )
    else:
        verdict = fibonacci_primality_test(
            n, path="direct" if method.endswith("direct") else "fast"
        )
    _emit(_encode_verdict(verdict), args)
    return 0 if verdict.agree else 1


# ---------------------------------------------------------------------------
# Scan machinery: items, per-item checks, parallel driver
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScanReport:
    method: str
    lo: int
    hi: int
    checked: int
    skipped: int
    skipped_values: Optional[tuple[int, ...]]
    mismatches: tuple[tuple[int, str], ...]
    workers: int
    wall_time: float


def _scan_items(method: str, lo: int, hi: int) -> Iterable[Any]:
    if method == "congruence-grid":
        items = []
        for p, q in COEFFICIENT_GRID:
            for k in range(max(lo, 1), hi + 1):
                for n in range(max(lo, 0), hi + 1):
                    for family in ("lemma1", "lemma2", "cor6", "cor7", "main"):
                        items.append((family, p, q, k, n, None))
                    for r in SHIFT_R_RANGE:
                        items.append(("shift", p, q, k, n, r))
        return items
    return range(lo, hi + 1)


def _scan_check(method: str, item: Any) -> tuple[int, Optional[bool], str]:
    """Check one scan item; ok=None means the item was skipped (precondition)."""
    if method == "congruence-grid":
        family, p, q, k, n, r = item
        if family == "main" and n < 1:
            return n, None, ""
        report = evaluate_congruence(family, p=p, q=q, k=k, n=n, r=r)
        if isinstance(report.rhs, TrivialModulus):
            return n, None, ""
        detail = f"family={family} p={p} q={q} k={k} n={n}" + (
            f" r={r}" if r is not None else ""
        )
        return n, report.holds, detail
    n = item
    if method == "mersenne-sum":
        if n < 2:
            return n, None, ""
        verdict = mersenne_primality_test(n)
        return (
            n,
            verdict.agree,
            f"residue={verdict.sum_residue.value} criterion={verdict.criterion_says_prime} "
            f"oracle={verdict.oracle_says_prime}",
        )
    if method == "fib-sum":
        if n % 4 != 1 or n < 5 or n in (9, 25):
            return n, None, ""
        verdict = fibonacci_primality_test(n)
        return (
            n,
            verdict.agree,
            f"residue={verdict.sum_residue.value} criterion={verdict.criterion_says_prime} "
            f"oracle={verdict.oracle_says_prime}",
        )
    if method == "remark":
        if n % 4 != 3 or n < 3:
            return n, None, ""
        ok = remark_check(n)
        return n, ok, "" if ok else "nonzero sum residue"
    if method == "divisor-sum":
        if n < 2:
            return n, None, ""
        breakdown = divisor_sum_breakdown(n)
        oracle = is_prime_oracle(n)
        ok = breakdown.is_integer == oracle and (
            not oracle or breakdown.total == n - 1
        )
        return n, ok, f"total={breakdown.total} oracle={oracle}"
    raise ValueError(f"unknown scan method {method!r}")


def _resolve_workers(flag_value: Optional[int]) -> int:
    if flag_value is not None:
        if flag_value < 1:
            raise ValueError("--workers must be >= 1")
        return flag_value
    env = os.environ.get("LUCAS_WORKERS")
    if env:
        try:
            value = int(env)
        except ValueError:
            raise ValueError(f"LUCAS_WORKERS must be an integer, got {env!r}")
        if value < 1:
            raise ValueError("LUCAS_WORKERS must be >= 1")
        return value
    return os.cpu_count() or 1


def run_scan(
    method: str, lo: int, hi: int, workers: int = 1, fail_fast: bool = False
) -> ScanReport:
    """Run one agreement sweep; results are aggregated in input order."""
    if lo > hi:
        raise ValueError(f"--from {lo} exceeds --to {hi}")
    if method not in SCAN_METHODS:
        raise ValueError(f"unknown scan method {method!r}")
    items = list(_scan_items(method, lo, hi))
    per_value_scan = method != "congruence-grid"
    started = time.perf_counter()
    checked = 0
    skipped = 0
    skipped_values: list[int] = []
    mismatches: list[tuple[int, str]] = []
    check = partial(_scan_check, method)

    def consume(results: Iterator[tuple[int, Optional[bool], str]]) -> None:
        nonlocal checked, skipped
        for key, ok, detail in results:
            if ok is None:
                skipped += 1
                if per_value_scan:
                    skipped_values.append(key)
                continue
            checked += 1
            if not ok:
                mismatches.append((key, detail))
                if fail_fast:
                    return

    if workers <= 1:
        consume(map(check, items))
    else:
        pool = ProcessPoolExecutor(max_workers=workers)
        try:
            chunk = max(1, len(items) // (workers * 8))
            consume(pool.map(check, items, chunksize=chunk))
        finally:
            pool.shutdown(wait=False, cancel_futures=True)

    return ScanReport(
        method=method,
        lo=lo,
        hi=hi,
        checked=checked,
        skipped=skipped,
        skipped_values=tuple(skipped_values) if per_value_scan else None,
        mismatches=tuple(mismatches),
        workers=workers,
        wall_time=time.perf_counter() - started,
    )


def cmd_scan(args: argparse.Namespace) -> int:
    workers = _resolve_workers(args.workers)
    report = run_scan(args.method, args.lo, args.hi, workers, args.fail_fast)
    record: dict[str, Any] = {
        "method": report.method,
        "from": report.lo,
        "to": report.hi,
        "checked": report.checked,
        "skipped": report.skipped,
    }
    if report.skipped_values is not None:
        record["skipped_values"] = list(report.skipped_values)
    record["mismatches"] = [{"n": n, "detail": d} for n, d in report.mismatches]
    record["workers"] = report.workers
    record["wall_time"] = report.wall_time
    _emit(record, args)
    return 0 if not report.mismatches else 1


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lucaskit",
        description="Lucas sequence evaluation, congruence verification, and "
        "sum-based primality criteria with machine-readable output.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--pretty", action="store_true", help="human table instead of JSON")
        p.add_argument(
            "--no-timing",
            action="store_true",
            help="omit timing fields for byte-identical reruns",
        )

    p_eval = sub.add_parser("eval", help="evaluate U_n (and V_n) exactly or mod m")
    p_eval.add_argument("-p", type=int, required=True, help="coefficient P")
    p_eval.add_argument("-q", type=int, required=True, help="coefficient Q")
    p_eval.add_argument("-n", type=int, required=True, help="index")
    p_eval.add_argument("--mod", type=int, default=None, help="reduce mod this value")
    p_eval.add_argument("--with-v", action="store_true", help="also print V_n")
    add_output_flags(p_eval)
    p_eval.set_defaults(func=cmd_eval)

    p_cong = sub.add_parser(
        "congruence", help="check one congruence instance, closed form vs oracle"
    )
    p_cong.add_argument("--family", choices=FAMILIES, required=True)
    p_cong.add_argument(
        "-p", type=int, default=None, help=f"coefficient P (required for {'/'.join(GENERAL_FAMILIES)})"
    )
    p_cong.add_argument("-q", type=int, default=None, help="coefficient Q")
    p_cong.add_argument("-k", type=int, required=True)
    p_cong.add_argument("-n", type=int, required=True)
    p_cong.add_argument("-r", type=int, default=None, help="shift (shift family only)")
    add_output_flags(p_cong)
    p_cong.set_defaults(func=cmd_congruence)

    p_prime = sub.add_parser("primetest", help="run a primality criterion against the oracle")
    p_prime.add_argument("--method", choices=PRIMETEST_METHODS, required=True)
    p_prime.add_argument("-n", type=int, required=True)
    p_prime.add_argument(
        "--diagnostic",
        action="store_true",
        help="fib methods only: report the raw sum residue for any n >= 3, no verdict",
    )
    add_output_flags(p_prime)
    p_prime.set_defaults(func=cmd_primetest)

    p_scan = sub.add_parser("scan", help="parallel agreement sweep over a range")
    p_scan.add_argument("--method", choices=SCAN_METHODS, required=True)
    p_scan.add_argument("--from", dest="lo", type=int, required=True)
    p_scan.add_argument("--to", dest="hi", type=int, required=True)
    p_scan.add_argument(
        "--workers",
        type=int,
        default=None,
        help="worker processes (default: LUCAS_WORKERS or the CPU count)",
    )
    p_scan.add_argument("--fail-fast", action="store_true", help="stop at first mismatch")
    add_output_flags(p_scan)
    p_scan.set_defaults(func=cmd_scan)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InternalInvariantViolation as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return 1
    except (LucasKitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
