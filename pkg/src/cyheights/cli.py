"""Command-line front end.

Commands answer single-instance queries (height, zeta, stickelberger,
kummer) or sweep a prime range (survey).  Primary output goes to stdout
in the requested format; anything diagnostic, including timings, goes to
stderr, so re-running a command with a warm cache is byte-identical on
stdout.

Exit codes: 0 all requested checks passed, 1 a computed value disagreed
with a theorem prediction, 2 invalid input, 3 a size budget or p-adic
precision limit was exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import gcd

from . import fermat, kummer
from .character_sums import JacobiCache
from .errors import BudgetError, InputError, PrecisionError
from .finite_field import is_prime

CACHE_ENV_VAR = "CYHEIGHTS_CACHE_DIR"

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INVALID = 2
EXIT_BUDGET = 3


@dataclass(frozen=True)
class RunConfig:
    """Shared plumbing resolved from flags and the environment."""

    command: str
    output_format: str
    cache_dir: str | None
    jobs: int


# --- output helpers ---


def _emit_json(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _emit_csv(schema: str, fieldnames: list[str], rows: list[dict]) -> None:
    out = io.StringIO()
    out.write(f"# schema=cyheights.{schema}\n")
    writer = csv.DictWriter(out, fieldnames=fieldnames)
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    sys.stdout.write(out.getvalue())


def _diag(msg: str) -> None:
    sys.stderr.write(msg + "\n")


def _jacobi_cache(cfg: RunConfig) -> JacobiCache | None:
    if cfg.cache_dir is None:
        return None
    return JacobiCache(os.path.join(cfg.cache_dir, "jacobi_sums_v1.json"))


# --- height ---


def _cmd_height(cfg: RunConfig, args) -> int:
    params = fermat.FermatParams.create(args.p, args.m, args.r)
    count = fermat.slope_deficient_count(args.p, args.m, args.r,
                                         budget=args.alpha_budget)
    height = (fermat.HeightValue.finite(count) if count
              else fermat.INFINITE)
    predicted = fermat.predicted_height(args.p, args.m, args.r)
    agree = None if predicted is None else (height == predicted)
    payload = {
        "command": "height",
        "p": params.p, "m": params.m, "r": params.r,
        "f": params.f, "q": params.q,
        "alpha_count": fermat.alpha_count(params.m, params.r),
        "height": height.json(),
        "slope_deficient_count": count,
        "predicted_height": None if predicted is None else predicted.json(),
        "agree": agree,
    }
    if args.full:
        payload.update(fermat.variety_report(args.p, args.m, args.r,
                                             budget=args.alpha_budget))
    if cfg.output_format == "json":
        _emit_json(payload)
    elif cfg.output_format == "csv":
        fields = ["p", "m", "r", "f", "q", "height",
                  "slope_deficient_count", "predicted_height", "agree"]
        _emit_csv("height/v1", fields, [{k: payload[k] for k in fields}])
    else:
        print(f"Fermat variety m={params.m} r={params.r} over "
              f"GF({params.p}^{params.f}): height {height}")
        print(f"slope-deficient eigenvalues: {count} of "
              f"{payload['alpha_count']}")
        if predicted is None:
            print("no closed-form prediction applies (needs m = r + 2, r >= 2)")
        else:
            print(f"predicted height: {predicted}   "
                  f"agree: {'yes' if agree else 'NO'}")
        if args.full:
            print(f"Newton slopes: "
                  + " ".join(f"{s}x{mult}" for s, mult in payload["slopes"]))
            print(f"Hodge numbers: {payload['hodge']}")
            print(f"fully rigged: {payload['fully_rigged']}")
    return EXIT_OK if agree in (None, True) else EXIT_MISMATCH


# --- zeta ---


def _cmd_zeta(cfg: RunConfig, args) -> int:
    zeta = fermat.zeta_fermat(args.p, args.m, args.r,
                              cache=_jacobi_cache(cfg),
                              alpha_budget=args.alpha_budget,
                              table_budget=args.table_budget,
                              cache_dir=cfg.cache_dir)
    checks = []
    for s in args.check:
        n_zeta = fermat.point_count_from_zeta(zeta, s)
        n_brute = fermat.brute_force_point_count(
            args.p, args.m, args.r, s, budget=args.point_budget,
            table_budget=args.table_budget, cache_dir=cfg.cache_dir)
        checks.append({"s": s, "zeta_count": n_zeta,
                       "brute_force_count": n_brute,
                       "match": n_zeta == n_brute})
    all_match = all(c["match"] for c in checks)
    payload = {
        "command": "zeta",
        "p": zeta.p, "m": zeta.m, "r": zeta.r, "q": zeta.q,
        "degree": zeta.degree,
        "poly_coeffs": list(zeta.poly_coeffs),
        "sign_exponent": zeta.sign_exponent,
        "pole_q_powers": list(zeta.pole_q_powers),
        "checks": checks,
        "all_match": all_match,
    }
    if cfg.output_format == "json":
        _emit_json(payload)
    elif cfg.output_format == "csv":
        fields = ["p", "m", "r", "s", "zeta_count", "brute_force_count",
                  "match"]
        rows = [{"p": zeta.p, "m": zeta.m, "r": zeta.r, **c} for c in checks]
        _emit_csv("zeta-checks/v1", fields, rows)
    else:
        poles = " ".join(f"(1-q^{i}T)" for i in zeta.pole_q_powers)
        print(f"Z(T) = P(T)^{zeta.sign_exponent} / [{poles}],  "
              f"q = {zeta.q}, deg P = {zeta.degree}")
        print(f"P(T) coefficients: {list(zeta.poly_coeffs)}")
        for c in checks:
            flag = "match" if c["match"] else "MISMATCH"
            print(f"N_{c['s']}: zeta {c['zeta_count']} vs brute force "
                  f"{c['brute_force_count']}  [{flag}]")
    return EXIT_OK if all_match else EXIT_MISMATCH


# --- stickelberger ---


def _cmd_stickelberger(cfg: RunConfig, args) -> int:
    report = fermat.stickelberger_check(args.p, args.m, args.r,
                                        cache=_jacobi_cache(cfg),
                                        precision=args.precision,
                                        alpha_budget=args.alpha_budget,
                                        table_budget=args.table_budget,
                                        cache_dir=cfg.cache_dir)
    equal = sum(1 for row in report.rows if row.equal)
    payload = {
        "command": "stickelberger",
        "p": report.p, "m": report.m, "r": report.r,
        "f": report.f, "q": report.q,
        "total": len(report.rows),
        "equal_count": equal,
        "all_equal": report.all_equal,
        "precision_failures": len(report.precision_failures),
        "rows": [
            {"alpha": list(row.alpha), "exponent": row.exponent,
             "valuation": row.valuation, "equal": row.equal,
             "error": row.error}
            for row in report.rows
        ],
    }
    if cfg.output_format == "json":
        _emit_json(payload)
    elif cfg.output_format == "csv":
        fields = ["alpha", "exponent", "valuation", "equal", "error"]
        rows = [{"alpha": " ".join(map(str, row.alpha)),
                 "exponent": row.exponent, "valuation": row.valuation,
                 "equal": row.equal, "error": row.error}
                for row in report.rows]
        _emit_csv("stickelberger/v1", fields, rows)
    else:
        print(f"(p={report.p}, m={report.m}, r={report.r}): {equal}/"
              f"{len(report.rows)} Jacobi-sum valuations equal their "
              f"Stickelberger exponents")
        for row in report.mismatches:
            print(f"  MISMATCH alpha={row.alpha}: exponent {row.exponent}, "
                  f"valuation {row.valuation}")
        for row in report.precision_failures:
            print(f"  PRECISION alpha={row.alpha}: {row.error}")
    if report.mismatches:
        return EXIT_MISMATCH
    if report.precision_failures:
        return EXIT_BUDGET
    return EXIT_OK


# --- survey ---


def _primes_in(lo: int, hi: int) -> list[int]:
    return [p for p in range(max(lo, 2), hi) if is_prime(p)]


def _height_row(task: tuple[int, int, int]) -> dict:
    p, m, r = task
    height = fermat.height_fermat(p, m, r)
    predicted = fermat.predicted_height(p, m, r)
    return {
        "p": p,
        "f": fermat.order_mod(p, m),
        "height": height.json(),
        "predicted_height": None if predicted is None else predicted.json(),
        "agree": None if predicted is None else height == predicted,
    }


def _artin_row(task: tuple[int, int, int]) -> dict:
    p, m, r = task
    cmp = fermat.artin_comparison(p, m, r)
    return {"p": p, "additive_type": cmp.additive_type,
            "fully_rigged": cmp.fully_rigged}


def _kummer_row(task: tuple[int, int, int]) -> dict:
    p, _, _ = task
    height = kummer.kummer_example_height(p)
    predicted = (fermat.HeightValue.finite(1) if p % 3 == 1
                 else fermat.INFINITE)
    return {"p": p, "height": height.json(),
            "predicted_height": predicted.json(),
            "agree": height == predicted}


_SURVEY_KINDS = {
    "height": (_height_row, "survey-height/v1",
               ["p", "f", "height", "predicted_height", "agree"]),
    "artin": (_artin_row, "survey-artin/v1",
              ["p", "additive_type", "fully_rigged"]),
    "kummer": (_kummer_row, "survey-kummer/v1",
               ["p", "height", "predicted_height", "agree"]),
}


def _cmd_survey(cfg: RunConfig, args) -> int:
    worker, schema, fields = _SURVEY_KINDS[args.kind]
    if args.kind == "kummer":
        primes = [p for p in _primes_in(max(args.p_min, 5), args.p_max)]
        m, r = 0, 0
    else:
        if args.m is None or args.r is None:
            raise InputError(f"survey {args.kind} requires --m and --r")
        m, r = args.m, args.r
        primes = [p for p in _primes_in(args.p_min, args.p_max)
                  if gcd(p, m) == 1]
    if not primes:
        raise InputError("empty prime range")
    tasks = [(p, m, r) for p in primes]

    started = time.monotonic()
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            rows = list(pool.map(worker, tasks))
    else:
        rows = [worker(t) for t in tasks]
    rows.sort(key=lambda row: row["p"])
    _diag(f"survey {args.kind}: {len(rows)} rows in "
          f"{time.monotonic() - started:.2f}s with jobs={cfg.jobs}")

    payload = {"command": "survey", "kind": args.kind,
               "m": args.m, "r": args.r, "rows": rows}
    if cfg.output_format == "json":
        _emit_json(payload)
    elif cfg.output_format == "csv":
        _emit_csv(schema, fields, rows)
    else:
        print(f"survey {args.kind}" +
              (f" m={args.m} r={args.r}" if args.kind != "kummer" else "") +
              f" for primes in [{args.p_min}, {args.p_max})")
        for row in rows:
            print("  " + "  ".join(f"{k}={row[k]}" for k in fields))
    bad = [row for row in rows if row.get("agree") is False]
    return EXIT_MISMATCH if bad else EXIT_OK


# --- kummer ---


def _cmd_kummer(cfg: RunConfig, args) -> int:
    curve = kummer.EllipticCurve.create(args.p, args.a, args.b)
    points = kummer.ec_count_points(curve)
    trace = curve.p + 1 - points
    rank = 0 if trace == 0 else 1
    curve_height = 1 if rank == 1 else 2
    quotient = kummer.kummer_height(
        kummer.AbelianData(3, kummer.product_p_rank(rank, rank, rank)))
    default_curve = (args.a, args.b) == (0, 1)
    predicted = None
    if default_curve:
        predicted = (fermat.HeightValue.finite(1) if args.p % 3 == 1
                     else fermat.INFINITE)
    agree = None if predicted is None else quotient == predicted
    payload = {
        "command": "kummer",
        "p": args.p, "a": curve.a, "b": curve.b,
        "points": points, "trace": trace, "p_rank": rank,
        "abelian_dim": 3,
        "curve_formal_height": curve_height,
        "quotient_height": quotient.json(),
        "predicted_height": None if predicted is None else predicted.json(),
        "agree": agree,
    }
    if cfg.output_format == "json":
        _emit_json(payload)
    elif cfg.output_format == "csv":
        fields = ["p", "a", "b", "points", "trace", "p_rank", "abelian_dim",
                  "curve_formal_height", "quotient_height",
                  "predicted_height", "agree"]
        _emit_csv("kummer/v1", fields, [{k: payload[k] for k in fields}])
    else:
        print(f"E: y^2 = x^3 + {curve.a}x + {curve.b} over GF({args.p}): "
              f"#E = {points}, a_p = {trace}, p-rank {rank}")
        print(f"formal-group height of E: {curve_height}")
        print(f"height of the E^3 Kummer quotient: {quotient}")
        if predicted is not None:
            print(f"predicted (p mod 3 = {args.p % 3}): {predicted}   "
                  f"agree: {'yes' if agree else 'NO'}")
    return EXIT_OK if agree in (None, True) else EXIT_MISMATCH


# --- parser and dispatch ---


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", choices=["text", "json", "csv"],
                     default="text", help="output format (default: text)")
    sub.add_argument("--cache-dir", default=None,
                     help=f"cache directory (or ${CACHE_ENV_VAR})")
    sub.add_argument("--jobs", type=int, default=None,
                     help="worker processes for surveys "
                          "(default: CPU count)")
    sub.add_argument("--alpha-budget", type=int,
                     default=fermat.DEFAULT_ALPHA_BUDGET,
                     help="max exponent vectors to enumerate")
    sub.add_argument("--table-budget", type=int, default=1 << 24,
                     help="max field cardinality for dense tables")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cyheights",
        description="Arithmetic invariants of Fermat and Kummer Calabi-Yau "
                    "varieties in positive characteristic, exactly.")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("height", help="formal-group height by slope counting")
    sub.add_argument("--p", type=int, required=True)
    sub.add_argument("--m", type=int, required=True)
    sub.add_argument("--r", type=int, required=True)
    sub.add_argument("--full", action="store_true",
                     help="include slopes, Hodge numbers and the "
                          "algebraic-cycle predicate in the report")
    _add_common(sub)
    sub.set_defaults(run=_cmd_height)

    sub = subs.add_parser("zeta", help="zeta function and point-count checks")
    sub.add_argument("--p", type=int, required=True)
    sub.add_argument("--m", type=int, required=True)
    sub.add_argument("--r", type=int, required=True)
    sub.add_argument("--check", type=_parse_s_list, default=[],
                     help="comma-separated extension degrees s to verify "
                          "against brute-force counts")
    sub.add_argument("--point-budget", type=int,
                     default=fermat.DEFAULT_POINT_BUDGET,
                     help="max candidate tuples for brute-force counting")
    _add_common(sub)
    sub.set_defaults(run=_cmd_zeta)

    sub = subs.add_parser("stickelberger",
                          help="compare Jacobi-sum valuations with "
                               "Stickelberger exponents")
    sub.add_argument("--p", type=int, required=True)
    sub.add_argument("--m", type=int, required=True)
    sub.add_argument("--r", type=int, required=True)
    sub.add_argument("--precision", type=int, default=None,
                     help="initial p-adic working precision")
    _add_common(sub)
    sub.set_defaults(run=_cmd_stickelberger)

    sub = subs.add_parser("survey", help="sweep a range of primes")
    sub.add_argument("kind", choices=sorted(_SURVEY_KINDS))
    sub.add_argument("--m", type=int, default=None)
    sub.add_argument("--r", type=int, default=None)
    sub.add_argument("--p-min", type=int, default=2)
    sub.add_argument("--p-max", type=int, required=True)
    _add_common(sub)
    sub.set_defaults(run=_cmd_survey)

    sub = subs.add_parser("kummer", help="elliptic-curve and Kummer heights")
    sub.add_argument("--p", type=int, required=True)
    sub.add_argument("--a", type=int, default=0)
    sub.add_argument("--b", type=int, default=1)
    _add_common(sub)
    sub.set_defaults(run=_cmd_kummer)

    return parser


def _parse_s_list(text: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad s-list {text!r}") from exc
    if any(s < 1 for s in values):
        raise argparse.ArgumentTypeError("s values must be >= 1")
    return values


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cache_dir = args.cache_dir or os.environ.get(CACHE_ENV_VAR) or None
    jobs = args.jobs
    if jobs is None:
        jobs = (os.cpu_count() or 1) if args.command == "survey" else 1
    if jobs < 1:
        _diag("error: --jobs must be >= 1")
        return EXIT_INVALID
    for name in ("alpha_budget", "table_budget", "point_budget"):
        if getattr(args, name, 1) < 1:
            _diag(f"error: --{name.replace('_', '-')} must be positive")
            return EXIT_INVALID
    cfg = RunConfig(args.command, args.format, cache_dir, jobs)
    started = time.monotonic()
    try:
        code = args.run(cfg, args)
    except InputError as exc:
        _diag(f"error: {exc}")
        return EXIT_INVALID
    except (BudgetError, PrecisionError) as exc:
        _diag(f"error: {exc}")
        return EXIT_BUDGET
    _diag(f"{args.command} finished in {time.monotonic() - started:.2f}s")
    return code


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
