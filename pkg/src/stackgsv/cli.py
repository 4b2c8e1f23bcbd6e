"""Command-line interface: ``stackgsv compute | verify | gen | bench``.

Exit codes: 0 success, 1 I/O or config error, 2 invalid pair,
3 verification failure.
"""

import argparse
import csv
import sys
import time

import numpy as np

from . import __version__
from .bench import ConfigError, load_bench_config, run_bench, summarize, write_report
from .config import get_tolerances
from .conversion import Mode, gsv, sorted_pairs, stacked_svd_parts, unitary_equivalence_residual
from .errors import (InfeasibleSpec, InvalidInput, NotGMP, NotPositiveDefinite,
                     ParseError, ShapeMismatch, UnsupportedFormat)
from .generate import PairGenSpec, generate_pair
from .mmio import read_matrix_market, write_matrix_market
from .oracle import brute_force_gsv_diagonal, det_residual, det_residual_scale, oracle_gsv
from .pair import MatrixPair
from .results import ResultRecord, write_result

EXIT_OK, EXIT_IO, EXIT_INVALID_PAIR, EXIT_VERIFY = 0, 1, 2, 3

_IO_ERRORS = (OSError, ParseError, UnsupportedFormat, InvalidInput, InfeasibleSpec, ConfigError)


def _err(msg):
    print(f"stackgsv: {msg}", file=sys.stderr)


def _load_pair(args):
    a = read_matrix_market(args.a)
    b = read_matrix_market(args.b)
    return MatrixPair(a, b)


def build_record(pair, spectrum, seed=None):
    t0 = time.perf_counter()
    dets = [det_residual(pair, a, b) for a, b in spectrum.pairs]
    timings = dict(spectrum.timings_ms)
    timings["det_residual_ms"] = 1e3 * (time.perf_counter() - t0)
    return ResultRecord(
        shape=pair.shape,
        mode=spectrum.mode.value,
        alpha=spectrum.alpha.tolist(),
        beta=spectrum.beta.tolist(),
        pair_sum_residuals=spectrum.pair_sum_residual.tolist(),
        det_residuals=dets,
        stacked_condition=spectrum.certificate.condition_number,
        timings_ms=timings,
        seed=seed,
    )


def cmd_compute(args):
    pair = _load_pair(args)
    spectrum = gsv(pair, Mode(args.mode))
    record = build_record(pair, spectrum)
    m, p, n = pair.shape
    print(f"pair shape (m, p, n) = ({m}, {p}, {n}), mode = {spectrum.mode.value}")
    print(f"stacked condition number = {record.stacked_condition:.6e}")
    for i, (a, b) in enumerate(spectrum.pairs, start=1):
        print(f"  {i:4d}  alpha = {a!r:<22} beta = {b!r}")
    if args.out:
        write_result(record, args.out, args.format)
    return EXIT_OK


def _diagonal_entries(mat, n):
    """Diagonal of ``mat`` padded to length n, or None if ``mat`` is not diagonal."""
    k = min(mat.shape)
    d = np.zeros(n, dtype=mat.dtype)
    d[:k] = np.diag(mat)[:k]
    off = mat.copy()
    off[np.arange(k), np.arange(k)] = 0
    return None if np.any(off != 0) else d


def verification_checks(pair):
    """All verify-time diagnostics as a dict of name -> scaled value."""
    checks = {}
    ind = gsv(pair, Mode.INDEPENDENT)
    comp = gsv(pair, Mode.COMPLEMENTARY)
    ind_p = sorted_pairs(ind.alpha, ind.beta)
    comp_p = sorted_pairs(comp.alpha, comp.beta)
    checks["mode_discrepancy"] = float(np.max(np.abs(ind_p - comp_p)))
    checks["pair_sum_residual"] = float(np.max(ind.pair_sum_residual))
    try:
        orc = oracle_gsv(pair)
        orc_p = sorted_pairs(orc.alpha, orc.beta)
        checks["oracle_discrepancy"] = float(np.max(np.abs(comp_p - orc_p)))
    except NotPositiveDefinite:
        checks["oracle_discrepancy"] = float("inf")
    scale = det_residual_scale(pair)
    checks["det_residual"] = max(det_residual(pair, a, b) for a, b in comp.pairs) / scale
    norm_ab = float(np.linalg.norm(pair.a) + np.linalg.norm(pair.b))
    try:
        ra, rb = unitary_equivalence_residual(pair, stacked_svd_parts(pair))
        checks["unitary_equivalence_a"] = ra / norm_ab
        checks["unitary_equivalence_b"] = rb / norm_ab
    except NotPositiveDefinite:
        checks["unitary_equivalence_a"] = checks["unitary_equivalence_b"] = float("inf")
    da = _diagonal_entries(pair.a, pair.n)
    db = _diagonal_entries(pair.b, pair.n)
    if da is not None and db is not None:
        closed = np.array(brute_force_gsv_diagonal(np.abs(da), np.abs(db)))
        checks["closed_form_discrepancy"] = float(np.max(np.abs(comp_p - closed)))
    return checks, comp


def cmd_verify(args):
    pair = _load_pair(args)
    tol = get_tolerances().verify_default if args.tol is None else args.tol
    checks, comp = verification_checks(pair)
    print(f"pair shape (m, p, n) = {pair.shape}, "
          f"stacked condition number = {comp.certificate.condition_number:.6e}")
    failed = []
    for name, value in checks.items():
        ok = value <= tol
        print(f"  {'PASS' if ok else 'FAIL'}  {name:<26} {value:.3e}")
        if not ok:
            failed.append(name)
    if failed:
        _err(f"verification failed (tol={tol:g}): {', '.join(failed)}")
        return EXIT_VERIFY
    return EXIT_OK


def _parse_cluster(items):
    if not items:
        return None
    out = []
    for item in items:
        value, _, mult = item.partition(":")
        try:
            out.append((float(value), int(mult or 1)))
        except ValueError:
            raise InfeasibleSpec(f"bad cluster entry {item!r}, expected VALUE:MULT") from None
    return out


def cmd_gen(args):
    spec = PairGenSpec(args.m, args.p, args.n, args.kind, args.cond, args.seed,
                       _parse_cluster(args.cluster))
    pair, alpha, beta = generate_pair(spec, return_truth=True)
    write_matrix_market(pair.a, args.a)
    write_matrix_market(pair.b, args.b)
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(("index", "alpha", "beta"))
            for i, (a, b) in enumerate(zip(alpha, beta), start=1):
                w.writerow([i, repr(float(a)), repr(float(b))])
    print(f"wrote A {pair.a.shape} to {args.a}, B {pair.b.shape} to {args.b}")
    return EXIT_OK


def cmd_bench(args):
    config = load_bench_config(args.config)
    report = run_bench(config)
    lp = write_report(report, args.out)
    failures = sum(r.status != "ok" for r in report.records)
    for (shape, cond, mode), med in summarize(report).items():
        print(f"  {shape} cond={cond:.0e} {mode:<26} median max_err = {med:.3e}")
    print(f"{len(report.records)} records ({failures} failed) -> {args.out}, {lp}")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="stackgsv", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"stackgsv {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def pair_args(p):
        p.add_argument("--a", required=True, help="Matrix Market file for A")
        p.add_argument("--b", required=True, help="Matrix Market file for B")

    p = sub.add_parser("compute", help="compute generalized singular values")
    pair_args(p)
    p.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.COMPLEMENTARY.value)
    p.add_argument("--out", help="result file")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", help="cross-check conversion, oracle and residuals")
    pair_args(p)
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate a pair with planted GSVs")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kind", choices=("real", "complex"), default="real")
    p.add_argument("--cond", type=float, default=1.0, help="stacked condition target")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cluster", nargs="*", metavar="VALUE:MULT",
                   help="planted alpha values with multiplicities")
    p.add_argument("--a", required=True, help="output file for A")
    p.add_argument("--b", required=True, help="output file for B")
    p.add_argument("--out", help="CSV file for the planted (alpha, beta)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="accuracy versus conditioning sweep")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True, help="report CSV (long table goes beside it)")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (NotGMP, ShapeMismatch) as exc:
        _err(f"invalid pair: {exc}")
        return EXIT_INVALID_PAIR
    except _IO_ERRORS as exc:
        _err(str(exc))
        return EXIT_IO
