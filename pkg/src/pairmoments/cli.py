"""Command-line interface.

Subcommands: ``sequences`` (integer sequences with dual computation paths),
``moments`` (weighted moments, cumulants, semicircle mixtures), ``randmat``
(Monte Carlo spectral checks), ``permcheck`` (symmetric-group positivity and
metric suite), ``verify`` (the self-verification suites).

Exit codes: 0 all checks passed, 1 a mathematical check failed, 2 usage or
configuration error.  Output is CSV (default) or JSON with insertion-ordered
keys; exact rationals print as ``p/q`` and floats with 15 significant
digits.  Identical invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from fractions import Fraction

from . import __version__
from . import moments as mo
from . import pairings as pa
from . import permgroup as pg
from . import randmat as rm
from . import verify as ve
from . import weights as we
from .exceptions import DualPathMismatchError, SizeLimitError

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

WEIGHT_CHOICES = ("const", "qcr", "scc", "bH", "betah")


def format_number(x) -> str:
    """p/q for rationals, 15 significant digits for floats."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        return f"{x:.15g}"
    return str(x)


def _json_ready(x):
    if isinstance(x, (bool, int)) or x is None:
        return x
    if isinstance(x, Fraction):
        return format_number(x)
    if isinstance(x, float):
        return float(f"{x:.15g}") if math.isfinite(x) else str(x)
    return str(x)


def emit(rows: list[dict], meta: dict, fmt: str, out) -> None:
    """Write one table. CSV: header then rows; JSON: meta plus `rows`."""
    if fmt == "json":
        doc = {k: _json_ready(v) for k, v in meta.items()}
        doc["rows"] = [{k: _json_ready(v) for k, v in row.items()} for row in rows]
        out.write(json.dumps(doc, indent=2, sort_keys=False))
        out.write("\n")
        return
    if rows:
        writer = csv.writer(out, lineterminator="\n")
        header = list(rows[0].keys())
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_number(row[k]) for k in header])


def parse_rational(text: str):
    """Exact Fraction for p/q, integer, or decimal strings; float otherwise."""
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        return float(text)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("csv", "json"), default="csv",
                   help="output format (default csv)")
    p.add_argument("--out", default="-", metavar="PATH",
                   help="output file, '-' for stdout (default)")
    p.add_argument("--threads", type=int,
                   default=int(os.environ.get("PAIRMOMENTS_THREADS", "1")),
                   help="worker count for enumeration folds "
                        "(default $PAIRMOMENTS_THREADS or 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pairmoments",
        description="Pair-partition combinatorics, moment calculus, and group positivity checks.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sequences", help="integer sequences with dual computation paths")
    p.add_argument("--which", required=True,
                   choices=("pairings", "catalan", "connected", "singletons", "moments"))
    p.add_argument("--max", type=int, required=True, metavar="N",
                   help="largest half-size n (cap applies)")
    p.add_argument("--cap", type=int, default=pa.DEFAULT_MAX_N,
                   help=f"enumeration cap on n (default {pa.DEFAULT_MAX_N}, "
                        f"hard ceiling {pa.HARD_MAX_N})")
    _add_common(p)

    p = sub.add_parser("moments", help="moments and free cumulants of a weight")
    p.add_argument("--weight", required=True, choices=WEIGHT_CHOICES,
                   help="const: 1; qcr: q^cr; scc: s^(n-cc); bH: b^(n-h); betah: beta^h")
    p.add_argument("--param", default=None,
                   help="weight parameter (fraction/decimal parsed exactly)")
    p.add_argument("--N", type=int, required=True, help="half-orders 1..N")
    p.add_argument("--mix", default=None, metavar="B",
                   help="also mix with a free semicircle at weight b in [0,1]")
    p.add_argument("--cap", type=int, default=pa.DEFAULT_MAX_N)
    _add_common(p)

    p = sub.add_parser("randmat", help="Monte Carlo spectral moments of Markov matrices")
    p.add_argument("--n", type=int, required=True, help="matrix dimension")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--kmax", type=int, default=6)
    p.add_argument("--dist", choices=rm.ENTRY_DISTRIBUTIONS, default="rademacher")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--hist", default=None, metavar="PATH",
                   help="also write an eigenvalue histogram CSV for trial 0")
    p.add_argument("--bins", type=int, default=50)
    _add_common(p)

    p = sub.add_parser("permcheck", help="positivity and metric suite on S(n)")
    p.add_argument("--n", type=int, required=True,
                   help=f"group degree (at most {pg.MAX_KERNEL_DEGREE})")
    p.add_argument("--b", default="2", help="base for the b^h kernel (default 2)")
    p.add_argument("--x", type=float, default=1.0, help="rate for exp(-x*H) (default 1)")
    p.add_argument("--tol", type=float, default=1e-8)
    _add_common(p)

    p = sub.add_parser("verify", help="run the self-verification suite")
    p.add_argument("--level", choices=("quick", "full"), required=True)
    _add_common(p)

    return parser


def _sequence_rows(which: str, nmax: int, cap: int, workers: int) -> list[dict]:
    rows = []
    if which == "pairings":
        for n in range(1, nmax + 1):
            streamed = sum(1 for _ in pa.enumerate_pairings(n, max_n=cap))
            rows.append({"n": n, "value": streamed,
                         "oracle": pa.pairing_count(n),
                         "agree": streamed == pa.pairing_count(n)})
    elif which == "catalan":
        for n in range(1, nmax + 1):
            dist = pa.statistic_distribution(n, max_n=cap, workers=workers)
            cr0 = sum(v for (cr, _, _), v in dist.counts.items() if cr == 0)
            formula = pa.count_nc_pairings(n)
            rows.append({"n": n, "value": formula, "oracle": cr0,
                         "agree": formula == cr0})
    elif which == "connected":
        recur = pa.riordan_connected(nmax)
        for n in range(1, nmax + 1):
            dist = pa.statistic_distribution(n, max_n=cap, workers=workers)
            brute = sum(v for (_, _, cc), v in dist.counts.items() if cc == 1)
            rows.append({"n": n, "value": recur[n - 1], "oracle": brute,
                         "agree": recur[n - 1] == brute})
    elif which == "singletons":
        for n in range(1, nmax + 1):
            dist = pa.statistic_distribution(n, max_n=cap, workers=workers)
            brute = sum(h * v for (_, h, _), v in dist.counts.items())
            p = [pa.pairing_count(k) for k in range(n)]
            closed = n * sum(p[k] * p[n - 1 - k] for k in range(n))
            rows.append({"n": n, "value": closed, "oracle": brute,
                         "agree": closed == brute})
    elif which == "moments":
        direct = mo.markov_limit_moments(nmax, max_n=cap)
        conv = mo.free_convolve(mo.semicircle_moments(nmax), mo.gaussian_moments(nmax))
        for n in range(1, nmax + 1):
            a, b = direct.moment(2 * n), conv.moment(2 * n)
            rows.append({"n": n, "value": a, "oracle": b, "agree": a == b})
    return rows


def cmd_sequences(args, out) -> int:
    if args.cap > pa.HARD_MAX_N:
        raise SizeLimitError(
            f"cap {args.cap} exceeds the hard ceiling {pa.HARD_MAX_N} (2n = {2 * pa.HARD_MAX_N})"
        )
    if args.max < 1 or args.max > args.cap:
        raise SizeLimitError(
            f"--max {args.max} outside 1..cap ({args.cap}); raise --cap up to {pa.HARD_MAX_N}"
        )
    rows = _sequence_rows(args.which, args.max, args.cap, args.threads)
    emit(rows, {"command": "sequences", "which": args.which, "max": args.max},
         args.format, out)
    return EXIT_OK if all(r["agree"] for r in rows) else EXIT_CHECK_FAILED


def _make_weight(name: str, param) -> we.WeightSpec:
    if name == "const":
        return we.Constant1()
    if param is None:
        raise ValueError(f"--param is required for weight {name!r}")
    return {
        "qcr": we.CrossingPower,
        "scc": we.ComponentPower,
        "bH": we.SingletonHPower,
        "betah": we.SingletonCountPower,
    }[name](param)


def cmd_moments(args, out) -> int:
    param = parse_rational(args.param) if args.param is not None else None
    spec = _make_weight(args.weight, param)
    if args.N < 1 or args.N > args.cap:
        raise SizeLimitError(f"--N {args.N} outside 1..cap ({args.cap})")
    seq = mo.moments_of_weight(spec, args.N, max_n=args.cap)
    cums = mo.cumulants_from_connected(spec, args.N, max_n=args.cap)
    mix_seq = None
    status = EXIT_OK
    if args.mix is not None:
        b = parse_rational(args.mix)
        try:
            mix_seq = mo.semicircle_mix_moments(spec, b, args.N, max_n=args.cap)
        except DualPathMismatchError as exc:
            print(f"error: {exc}", file=sys.stderr)
            status = EXIT_CHECK_FAILED
    rows = []
    for n in range(1, args.N + 1):
        row = {"order": 2 * n,
               "moment": seq.moment(2 * n),
               "cumulant": cums.cumulant(2 * n)}
        if mix_seq is not None:
            row["mix_moment"] = mix_seq.moment(2 * n)
        rows.append(row)
    meta = {"command": "moments", "weight": args.weight,
            "param": param, "N": args.N}
    if args.mix is not None:
        meta["mix"] = parse_rational(args.mix)
        meta["mix_paths_agree"] = status == EXIT_OK
    emit(rows, meta, args.format, out)
    return status


def cmd_randmat(args, out) -> int:
    cfg = rm.McConfig(n=args.n, trials=args.trials, kmax=args.kmax,
                      dist=args.dist, seed=args.seed)
    report = rm.run_mc(cfg)
    rows = [
        {"k": r.k, "mean": r.mean, "stderr": r.stderr,
         "target": r.target, "z": r.z, "passed": r.passed}
        for r in report.rows
    ]
    meta = {"command": "randmat", "n": cfg.n, "trials": cfg.trials,
            "kmax": cfg.kmax, "dist": cfg.dist, "seed": cfg.seed,
            "even_pass": report.even_pass, "odd_pass": report.odd_pass}
    emit(rows, meta, args.format, out)
    if args.hist is not None:
        if args.n > 400:
            raise SizeLimitError(
                "histogram export runs the dense Jacobi solver; use --n <= 400"
            )
        from .rng import substream_seed

        matrix = rm.sample_markov(cfg.n, cfg.dist, substream_seed(cfg.seed, 0))
        with open(args.hist, "w") as fh:
            fh.write("bin_left,bin_right,count\n")
            for left, right, count in rm.eigenvalue_histogram(matrix, bins=args.bins):
                fh.write(f"{left:.15g},{right:.15g},{count}\n")
    return EXIT_OK if report.even_pass else EXIT_CHECK_FAILED


def cmd_permcheck(args, out) -> int:
    n = args.n
    if n < 2 or n > pg.MAX_KERNEL_DEGREE:
        raise SizeLimitError(
            f"--n must be in 2..{pg.MAX_KERNEL_DEGREE} (kernel order {math.factorial(pg.MAX_KERNEL_DEGREE)} max)"
        )
    if args.tol <= 0:
        raise ValueError(f"--tol must be positive, got {args.tol}")
    b = parse_rational(args.b)
    x = args.x
    rows = []

    split = pg.check_isolated_split(n - 1)
    rows.append({"check": "isolated-split", "passed": split.passed,
                 "min_eig": "", "detail": split.detail})

    kernels = [
        ("psd-h", lambda s: float(pg.isolated_fixed_points(s))),
        (f"psd-b^h(b={format_number(b)})", lambda s: float(b) ** pg.isolated_fixed_points(s)),
        (f"psd-exp(-{format_number(x)}H)", lambda s: math.exp(-x * pg.big_h(s))),
    ]
    for name, f in kernels:
        ok, min_eig = pg.check_positive_definite(n, f, tol=args.tol)
        rows.append({"check": name, "passed": ok, "min_eig": min_eig, "detail": ""})

    cnd = pg.check_cnd(n, tol=args.tol)
    rows.append({"check": "cnd-H", "passed": cnd.passed,
                 "min_eig": cnd.centered_min_eig, "detail": cnd.detail})

    metric = pg.metric_checks(n)
    rows.append({"check": "metric", "passed": metric.passed,
                 "min_eig": "", "detail": metric.detail})

    emit(rows, {"command": "permcheck", "n": n, "b": b, "x": x, "tol": args.tol},
         args.format, out)
    return EXIT_OK if all(r["passed"] for r in rows) else EXIT_CHECK_FAILED


def cmd_verify(args, out) -> int:
    results = ve.run_level(args.level, workers=args.threads)
    # timings go to stderr so the report itself is deterministic
    for r in results:
        print(f"{r.name}: {'ok' if r.passed else 'FAILED'} in {r.elapsed:.2f}s",
              file=sys.stderr)
    rows = [
        {"check": r.name, "passed": r.passed, "detail": r.detail}
        for r in results
    ]
    emit(rows, {"command": "verify", "level": args.level}, args.format, out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_CHECK_FAILED


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {
        "sequences": cmd_sequences,
        "moments": cmd_moments,
        "randmat": cmd_randmat,
        "permcheck": cmd_permcheck,
        "verify": cmd_verify,
    }[args.command]
    try:
        if args.out == "-":
            return handler(args, sys.stdout)
        with open(args.out, "w") as fh:
            return handler(args, fh)
    except (SizeLimitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
