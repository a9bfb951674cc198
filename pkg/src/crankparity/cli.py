"""Command-line frontend: coefficient tables, identity verification sweeps,
asymptotic reports, distinct-parts tables, ladder dumps, and raw series
dumps.

Every command is deterministic for a given configuration; --parallel only
fans the per-n asymptotic evaluations out to worker processes and reassembles
them in index order, so it never changes an emitted number.  Exit status is
0 exactly when everything requested passed.

Big integers in JSON output are serialized as decimal strings (coefficients
overflow 64-bit machinery long before the default truncations).  If
CRANK_PARITY_CACHE_DIR is set, expensive series are persisted there in the
debug dump format (one "exponent<TAB>coefficient" line per exponent) and
reused across runs.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import circle, cranks, distinct, fivetower, partitions
from .series import IntLaurentSeries, TruncationError, dump_series, load_series

SCHEMA = "crank-parity/1"

_CHECK_DEFAULT_TERMS = {
    "family": 10_000,
    "ramatype": 400,
    "chan": 300,
    "combproof": 300,
    "claimL": 40,
    "informative": 2000,
    "watson-whipple": 1000,
}


@dataclass
class RunConfig:
    terms: int | None = None
    precision_bits: int = 128
    oracle_max: int = 60
    output: str = "text"
    parallel: bool = False

    def __post_init__(self):
        if self.terms is not None and self.terms < 8:
            raise ValueError("--terms must be at least 8")
        if self.precision_bits < 53:
            raise ValueError("--precision-bits must be at least 53")
        if not 0 < self.oracle_max <= 90:
            raise ValueError("--oracle-max must be in 1..90")
        if self.output not in ("json", "csv", "text"):
            raise ValueError(f"unknown output format {self.output}")

    def check_terms(self, check: str) -> int:
        if self.terms is not None:
            return self.terms
        return _CHECK_DEFAULT_TERMS.get(check, 2000)


def _crank_series(trunc: int) -> IntLaurentSeries:
    """Crank-parity series, going through the on-disk cache if configured."""
    cache_dir = os.environ.get("CRANK_PARITY_CACHE_DIR")
    if cache_dir:
        path = os.path.join(cache_dir, f"crank_parity.{trunc}.tsv")
        if os.path.exists(path):
            with open(path, "r", encoding="ascii") as fp:
                return load_series(fp)
        series = cranks.crank_parity_series(trunc)
        os.makedirs(cache_dir, exist_ok=True)
        with open(path, "w", encoding="ascii") as fp:
            dump_series(series, fp)
        return series
    return cranks.crank_parity_series(trunc)


def _emit(payload: dict, rows: list[dict], columns: list[str],
          config: RunConfig) -> None:
    if config.output == "json":
        print(json.dumps({"schema": SCHEMA, **payload, "rows": rows},
                         indent=2))
    elif config.output == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow(columns)
        for row in rows:
            writer.writerow([row[c] for c in columns])
    else:
        widths = {c: max(len(c), *(len(str(r[c])) for r in rows)) if rows
                  else len(c) for c in columns}
        print("  ".join(c.ljust(widths[c]) for c in columns))
        for row in rows:
            print("  ".join(str(row[c]).ljust(widths[c]) for c in columns))


# ---------------------------------------------------------------------------
# coeffs
# ---------------------------------------------------------------------------

def cmd_coeffs(args, config: RunConfig) -> int:
    n_lo, n_hi = args.n_lo, args.n_hi
    if n_lo < 0 or n_hi < n_lo:
        raise SystemExit("coeffs: need 0 <= N_LO <= N_HI")
    source = args.source
    terms = config.terms if config.terms is not None else 2000
    if source in ("series", "both") and n_hi >= terms:
        raise SystemExit(
            f"coeffs: truncation {terms} too small for n = {n_hi}; rerun "
            f"with --terms at least {n_hi + 1}")
    if source in ("oracle", "both") and n_hi > config.oracle_max:
        raise SystemExit(
            f"coeffs: oracle sweep capped at {config.oracle_max}; raise "
            "--oracle-max (hard limit 90)")

    series = _crank_series(max(terms, n_hi + 1)) \
        if source in ("series", "both") else None
    rows = []
    for n in range(n_lo, n_hi + 1):
        row: dict = {"n": n, "series": "", "oracle": "", "flag": ""}
        if series is not None:
            row["series"] = str(series.coeff(n))
        if source in ("oracle", "both") and n >= 1:
            row["oracle"] = str(partitions.crank_parity_oracle(n))
        if source == "both" and n >= 1:
            if n == 1:
                row["flag"] = "anomaly"
            else:
                row["flag"] = ("match" if row["series"] == row["oracle"]
                               else "MISMATCH")
        rows.append(row)
    _emit({"command": "coeffs"}, rows, ["n", "series", "oracle", "flag"],
          config)
    return 0 if all(r["flag"] != "MISMATCH" for r in rows) else 1


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _verify_family(args, config: RunConfig) -> dict:
    alpha = args.alpha
    n_max = args.n_max if args.n_max is not None else \
        config.check_terms("family")
    report = cranks.verify_family_congruence(
        alpha, n_max, series=_crank_series(n_max + 1))
    return {
        "check": "family",
        "passed": report.passed,
        "count": len(report.tested_n),
        "detail": report.to_json_dict(),
        "first_counterexample": report.failures[0] if report.failures
        else None,
    }


def _verify_simple(name: str, fn, terms: int) -> dict:
    ok = fn(terms)
    return {"check": name, "passed": bool(ok), "count": terms,
            "first_counterexample": None if ok else "see check definition"}


def _verify_ladder(args, config: RunConfig) -> dict:
    alpha_max = args.alpha_max if args.alpha_max is not None else 2
    states = fivetower.ladder(alpha_max)
    worst = []
    for state in states:
        if state.nu == 0:
            continue
        a = (state.nu - 1) // 2
        for j, c in state.gpoly.as_dict().items():
            if state.nu % 2:
                required = a + 1 + (j - 1) // 2
            else:
                required = a + 1 + j // 2
            if c and fivetower.five_adic(c) < required:
                worst.append((state.nu, j))
    return {"check": "ladder", "passed": not worst,
            "count": len(states) - 1,
            "first_counterexample": worst[0] if worst else None}


def _verify_claim_l(args, config: RunConfig) -> dict:
    alpha = args.alpha if args.alpha is not None else 1
    terms = config.check_terms("claimL")
    ok = fivetower.ladder_subsequence_check(alpha, terms)
    return {"check": "claimL", "passed": bool(ok), "count": terms,
            "first_counterexample": None}


def _verify_adh(args, config: RunConfig) -> dict:
    n_max = min(args.n_max if args.n_max is not None else config.oracle_max,
                config.oracle_max)
    values = distinct.bootstrap_t_values(n_max)
    bad = [n for n in range(1, n_max + 1)
           if distinct.multiplicative_t(n, values)
           != partitions.distinct_rank_parity(n).diff]
    return {"check": "adh", "passed": not bad, "count": n_max,
            "first_counterexample": bad[0] if bad else None}


def _verify_weighted(args, config: RunConfig) -> dict:
    n_max = min(args.n_max if args.n_max is not None else 40,
                config.oracle_max)
    series = _crank_series(n_max + 1)
    bad = []
    for n in range(1, n_max + 1):
        total, total1 = partitions.omega_totals(n)
        if not (total == total1 == series.coeff(n)
                and partitions.omega_weights_agree(n)):
            bad.append(n)
    return {"check": "weighted", "passed": not bad, "count": n_max,
            "first_counterexample": bad[0] if bad else None}


def cmd_verify(args, config: RunConfig) -> int:
    check = args.check
    if check == "family":
        result = _verify_family(args, config)
    elif check == "ramatype":
        result = _verify_simple("ramatype", cranks.subsequence_5n4_check,
                                config.check_terms("ramatype"))
    elif check == "chan":
        result = _verify_simple("chan", cranks.chan_expansion_check,
                                config.check_terms("chan"))
    elif check == "combproof":
        result = _verify_simple("combproof", cranks.run_weight_identity_check,
                                config.check_terms("combproof"))
    elif check == "ladder":
        result = _verify_ladder(args, config)
    elif check == "claimL":
        result = _verify_claim_l(args, config)
    elif check == "informative":
        result = _verify_simple("informative", distinct.gf_identity_check,
                                config.check_terms("informative"))
    elif check == "watson-whipple":
        result = _verify_simple("watson-whipple",
                                distinct.watson_whipple_check,
                                config.check_terms("watson-whipple"))
    elif check == "adh":
        result = _verify_adh(args, config)
    elif check == "weighted":
        result = _verify_weighted(args, config)
    else:  # pragma: no cover - argparse restricts choices
        raise SystemExit(f"unknown check {check}")

    if config.output == "json":
        print(json.dumps({"schema": SCHEMA, **result}, default=str, indent=2))
    elif config.output == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow(["check", "passed", "count", "first_counterexample"])
        writer.writerow([result["check"], result["passed"], result["count"],
                         result["first_counterexample"]])
    else:
        state = "PASS" if result["passed"] else "FAIL"
        extra = "" if result["passed"] else \
            f" (first counterexample: {result['first_counterexample']})"
        print(f"{state} {result['check']}: {result['count']} cases{extra}")
    return 0 if result["passed"] else 1


# ---------------------------------------------------------------------------
# asymptotic
# ---------------------------------------------------------------------------

def _asymptotic_worker(payload):
    n, exact, bits = payload
    main = circle.main_term(n, bits)
    return circle.AsymptoticReport.build(n, exact, main)


def cmd_asymptotic(args, config: RunConfig) -> int:
    n_lo, n_hi = args.n_lo, args.n_hi
    if n_lo < 1 or n_hi < n_lo:
        raise SystemExit("asymptotic: need 1 <= N_LO <= N_HI")
    series = _crank_series(n_hi + 1)
    jobs = [(n, series.coeff(n), config.precision_bits)
            for n in range(n_lo, n_hi + 1)]
    if config.parallel and len(jobs) > 1:
        try:
            with ProcessPoolExecutor() as pool:
                reports = list(pool.map(_asymptotic_worker, jobs))
        except OSError:
            reports = [_asymptotic_worker(job) for job in jobs]
    else:
        reports = [_asymptotic_worker(job) for job in jobs]

    digits = max(10, int(config.precision_bits * 0.301) - 2)
    rows = [dict(zip(["n", "exact", "main", "abs_error", "bound", "pass"],
                     r.csv_row(digits))) for r in reports]
    if config.output == "json":
        _emit({"command": "asymptotic"}, rows,
              ["n", "exact", "main", "abs_error", "bound", "pass"], config)
    else:
        writer = csv.writer(sys.stdout)
        writer.writerow(["n", "exact", "main", "abs_error", "bound", "pass"])
        for r in rows:
            writer.writerow([r["n"], r["exact"], r["main"], r["abs_error"],
                             r["bound"], r["pass"]])
    return 0 if all(r.passed for r in reports) else 1


# ---------------------------------------------------------------------------
# distinct
# ---------------------------------------------------------------------------

def cmd_distinct(args, config: RunConfig) -> int:
    n_lo, n_hi = args.n_lo, args.n_hi
    if n_lo < 1 or n_hi < n_lo:
        raise SystemExit("distinct: need 1 <= N_LO <= N_HI")
    rows = []
    ok = True
    for n in range(n_lo, n_hi + 1):
        value = distinct.distinct_crank_exact(n)
        row = {
            "n": n,
            "case": distinct.distinct_crank_case(n),
            "value": value,
            "oracle": "",
            "floor_term": distinct.floor_part(n),
            "ceil_term": distinct.ceil_part(n),
        }
        if n <= config.oracle_max:
            oracle = partitions.distinct_crank_parity(n).diff
            row["oracle"] = oracle
            ok = ok and oracle == value
        rows.append(row)
    _emit({"command": "distinct"}, rows,
          ["n", "case", "value", "oracle", "floor_term", "ceil_term"], config)
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# ladder dump
# ---------------------------------------------------------------------------

def cmd_ladder(args, config: RunConfig) -> int:
    alpha_max = args.alpha_max if args.alpha_max is not None else 2
    imax = args.imax
    a_rows, b_rows = fivetower.compute_transfer_matrices(imax)
    states = fivetower.ladder(alpha_max)

    def encode_rows(rows):
        return {str(i): {str(j): str(c) for j, c in sorted(row.items())}
                for i, row in rows.items()}

    ladder_payload = []
    for state in states:
        entries = {str(j): str(c) for j, c in state.gpoly.as_dict().items()}
        vals = {str(j): fivetower.five_adic(c)
                for j, c in state.gpoly.as_dict().items() if c}
        ladder_payload.append({"nu": state.nu, "entries": entries,
                               "valuations": vals})
    payload = {
        "schema": SCHEMA,
        "command": "ladder",
        "alpha_max": alpha_max,
        "A": encode_rows(a_rows),
        "B": encode_rows(b_rows),
        "ladder": ladder_payload,
    }
    if config.output == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow(["nu", "j", "entry", "valuation"])
        for item in ladder_payload:
            for j, c in item["entries"].items():
                writer.writerow([item["nu"], j, c,
                                 item["valuations"].get(j, "")])
    else:
        print(json.dumps(payload, indent=2))
    return 0


# ---------------------------------------------------------------------------
# dump-series
# ---------------------------------------------------------------------------

_SERIES_BUILDERS = {
    "crank": lambda t: _crank_series(t),
    "rank": cranks.rank_parity_series,
    "partition": cranks.partition_series,
    "hauptmodul": fivetower.hauptmodul,
    "multiplier": fivetower.ladder_multiplier,
    "newton": fivetower.newton_quotient,
}


def cmd_dump_series(args, config: RunConfig) -> int:
    terms = config.terms if config.terms is not None else 2000
    series = _SERIES_BUILDERS[args.name](terms)
    dump_series(series, sys.stdout)
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crank-parity",
        description="Crank-parity partition function: exact series, "
                    "congruence sweeps, circle-method asymptotics, and the "
                    "distinct-parts closed form.")
    parser.add_argument("--terms", type=int, default=None,
                        help="series truncation (per-check defaults apply "
                             "when omitted)")
    parser.add_argument("--precision-bits", type=int, default=128)
    parser.add_argument("--oracle-max", type=int, default=60,
                        help="enumeration oracle cap (hard limit 90)")
    parser.add_argument("--output", choices=("json", "csv", "text"),
                        default="text")
    parser.add_argument("--parallel", action="store_true",
                        help="evaluate asymptotic sweeps in worker processes")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", help="coefficient table: series vs oracle")
    p.add_argument("n_lo", type=int)
    p.add_argument("n_hi", type=int)
    p.add_argument("--source", choices=("series", "oracle", "both"),
                   default="both")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("verify", help="run one named verification sweep")
    p.add_argument("check", choices=("family", "ramatype", "chan",
                                     "combproof", "ladder", "claimL",
                                     "informative", "watson-whipple", "adh",
                                     "weighted"))
    p.add_argument("--alpha", type=int, default=0,
                   help="congruence level (family, claimL)")
    p.add_argument("--alpha-max", type=int, default=None,
                   help="ladder depth (ladder)")
    p.add_argument("--n-max", type=int, default=None,
                   help="sweep bound (family, adh, weighted)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("asymptotic",
                       help="per-n asymptotic reports as CSV")
    p.add_argument("n_lo", type=int)
    p.add_argument("n_hi", type=int)
    p.set_defaults(func=cmd_asymptotic)

    p = sub.add_parser("distinct",
                       help="closed-form distinct-parts table")
    p.add_argument("n_lo", type=int)
    p.add_argument("n_hi", type=int)
    p.set_defaults(func=cmd_distinct)

    p = sub.add_parser("ladder", help="dump transfer matrices and ladder")
    p.add_argument("--alpha-max", type=int, default=None)
    p.add_argument("--imax", type=int, default=6,
                   help="transfer matrix row count")
    p.set_defaults(func=cmd_ladder)

    p = sub.add_parser("dump-series",
                       help="raw exponent<TAB>coefficient dump")
    p.add_argument("name", choices=sorted(_SERIES_BUILDERS))
    p.set_defaults(func=cmd_dump_series)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(terms=args.terms,
                           precision_bits=args.precision_bits,
                           oracle_max=args.oracle_max,
                           output=args.output,
                           parallel=args.parallel)
    except ValueError as exc:
        print(f"crank-parity: {exc}", file=sys.stderr)
        return 2
    try:
        return args.func(args, config)
    except TruncationError as exc:
        print(f"crank-parity: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
