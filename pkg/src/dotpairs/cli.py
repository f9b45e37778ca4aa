"""Command-line front end.

Exit codes: 0 success, 1 bad input or parameters, 2 a construction failed
validation or a hard bound check failed, 3 the two counters disagree.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import constructions, pointfile, verifier
from .counting import count_pi_bruteforce, count_pi_fast
from .geometry import dual_richness_histogram, flat_stats, spanned_richness_histogram
from .scalars import ScalarParseError, parse_scalar

EXIT_OK, EXIT_INPUT, EXIT_VALIDATION, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _int_list(text: str) -> list:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}") from exc


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad number {text!r}") from exc


def _seed(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _load(path):
    try:
        return pointfile.load(path)
    except (OSError, pointfile.PointFileError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _constants(P, args):
    try:
        alpha = parse_scalar(args.alpha, P.field)
        beta = parse_scalar(args.beta, P.field)
    except ScalarParseError as exc:
        raise UsageError(str(exc)) from exc
    if alpha == 0 or beta == 0:
        raise UsageError("alpha and beta must be nonzero")
    return alpha, beta


def cmd_gen(args) -> int:
    name = args.construction
    params = {
        "line-fan": lambda: {"n": args.n, "s": args.s},
        "separated-grid": lambda: {"n": args.n, "m": args.m},
        "pencil": lambda: {"k": args.k},
        "highdim-cubic": lambda: {"a_count": args.a_count, "beta": args.beta},
    }[name]()
    if any(v is None for v in params.values()):
        missing = ", ".join(k for k, v in params.items() if v is None)
        raise UsageError(f"{name} needs: {missing}")
    try:
        P = constructions.generate(name, **params)
    except constructions.ConstructionError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_VALIDATION
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    report = constructions.validate_construction(P, (name, params))
    text = pointfile.to_json(P)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(report.summary())
    else:
        sys.stdout.write(text)
        print(report.summary(), file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_VALIDATION


def cmd_count(args) -> int:
    P = _load(args.input)
    alpha, beta = _constants(P, args)
    totals = {}
    if args.method in ("fast", "both"):
        dec = count_pi_fast(P, alpha, beta)
        totals["fast"] = dec.total
        if args.verbose:
            for p, (wa, wb, prod) in dec.per_point.items():
                coords = ", ".join(str(c) for c in p)
                print(f"({coords}): wt_alpha={wa} wt_beta={wb} |pi|={prod}")
    if args.method in ("brute", "both"):
        totals["brute"] = count_pi_bruteforce(P, alpha, beta).total
    if len(set(totals.values())) > 1:
        print(f"counter mismatch: fast={totals['fast']} brute={totals['brute']}",
              file=sys.stderr)
        return EXIT_MISMATCH
    print(next(iter(totals.values())))
    return EXIT_OK


def cmd_stats(args) -> int:
    P = _load(args.input)
    stats = flat_stats(P)
    print(f"n: {P.n}")
    print(f"d: {P.dim}")
    print(f"field: {P.field}")
    print(f"s_star: {stats.s_star}")
    if P.dim >= 3:
        print(f"t_star: {stats.t_star}")
    if args.gamma is not None:
        try:
            gamma = parse_scalar(args.gamma, P.field)
        except ScalarParseError as exc:
            raise UsageError(str(exc)) from exc
        if gamma == 0:
            raise UsageError("gamma must be nonzero")
        hist = dual_richness_histogram(P, gamma)
        for k, c in hist.counts.items():
            print(f"f_={k}: {c}")
    if args.g:
        if P.dim > 3:
            raise UsageError("spanned histogram supported for d <= 3 only")
        hist = spanned_richness_histogram(P, args.k_min or P.dim)
        if hist.infinite_detected:
            print(f"infinite_detected: true (a line holds {hist.line_max} points)")
        for k in range(hist.k_min, max(hist.max_weight(), hist.line_max, hist.k_min) + 1):
            print(f"g_{k}: {hist.g(k)} (g'_{k} = {hist.at_least(k)})")
    return EXIT_OK


def _emit(reports, args):
    text = verifier.reports_to_json(reports)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if args.csv:
        Path(args.csv).write_text(verifier.reports_to_csv(reports), encoding="utf-8")


def cmd_verify(args) -> int:
    P = _load(args.input)
    alpha, beta = _constants(P, args)
    reports = verifier.verify_all(P, alpha, beta, args.eps_fp2, args.eps_rd)
    _emit(reports, args)
    failed = [r.bound_id for r in reports if r.verdict == verifier.FAIL]
    for r in reports:
        print(f"{r.verdict:>11}  {r.bound_id}", file=sys.stderr)
    if failed:
        print(f"hard checks failed: {', '.join(failed)}", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


def cmd_sweep(args) -> int:
    try:
        if args.kind == "covert-senger":
            if args.q is None or args.n is None:
                raise UsageError("covert-senger needs --q and --n")
            reports = verifier.covert_senger_sweep(args.q, args.n, args.trials, args.seed)
        elif args.kind == "st-ratio":
            reports = verifier.st_ratio_sweep(args.n or [16, 36, 64, 100])
        else:
            if args.construction != "line-fan":
                raise UsageError("envelope-trend supports --construction line-fan")
            reports = verifier.envelope_trend(args.n or [60, 120, 240], float(args.s_exponent))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    for r in reports:
        if r.seed is None:
            r.seed = args.seed
    text = verifier.reports_to_csv(reports)
    if args.csv:
        Path(args.csv).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    ratios = [float(r.ratio) for r in reports
              if r.ratio is not None and not r.bound_id.endswith("_mean")]
    if ratios:
        print(f"{args.kind}: {len(ratios)} rows, ratio min {min(ratios):.6g} "
              f"max {max(ratios):.6g} mean {sum(ratios) / len(ratios):.6g}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dotpairs",
                                     description="Count and bound pairs of dot products.")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a lower-bound construction")
    g.add_argument("construction", choices=constructions.CONSTRUCTIONS)
    g.add_argument("--n", type=int)
    g.add_argument("--s", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--k", type=int)
    g.add_argument("--a-count", type=int)
    g.add_argument("--beta", type=_fraction, default=Fraction(5))
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("count", help="count Pi_{alpha,beta}")
    c.add_argument("input")
    c.add_argument("--alpha", default="1")
    c.add_argument("--beta", default="1")
    c.add_argument("--method", choices=("fast", "brute", "both"), default="fast")
    c.add_argument("--verbose", action="store_true")
    c.set_defaults(func=cmd_count)

    st = sub.add_parser("stats", help="flat statistics and richness histograms")
    st.add_argument("input")
    st.add_argument("--gamma")
    st.add_argument("--g", action="store_true", help="spanned-hyperplane histogram (d <= 3)")
    st.add_argument("--k-min", type=int)
    st.set_defaults(func=cmd_stats)

    v = sub.add_parser("verify", help="run every applicable bound check")
    v.add_argument("input")
    v.add_argument("--alpha", default="1")
    v.add_argument("--beta", default="1")
    v.add_argument("--eps-fp2", type=float, default=verifier.DEFAULT_FP2_EPSILON)
    v.add_argument("--eps-rd", type=float, default=verifier.DEFAULT_RD_EPSILON)
    v.add_argument("--out")
    v.add_argument("--csv")
    v.set_defaults(func=cmd_verify)

    sw = sub.add_parser("sweep", help="experiment sweeps written as CSV")
    sw.add_argument("kind", choices=("covert-senger", "st-ratio", "envelope-trend"))
    sw.add_argument("--q", type=int)
    sw.add_argument("--n", type=_int_list)
    sw.add_argument("--trials", type=int, default=5)
    sw.add_argument("--seed", type=_seed, default=0)
    sw.add_argument("--construction", default="line-fan")
    sw.add_argument("--s-exponent", type=_fraction, default=Fraction(2, 3))
    sw.add_argument("--csv")
    sw.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
