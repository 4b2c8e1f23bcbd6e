"""Accuracy-versus-conditioning benchmark against planted GSVs.

Config files are TOML::

    shapes = [[3, 3, 3], [8, 5, 6]]   # (m, p, n) triples
    conditions = [1e2, 1e8]           # stacked condition targets
    trials = 5
    seed = 7
    modes = ["conversion-independent", "conversion-complementary", "oracle"]
    scalar_kind = "real"              # optional, "real" or "complex"
    workers = 1                       # optional, threads for trials

Every (cell, mode, trial) yields one record.  Each trial draws its pair
from a seed derived from ``(seed, cell index, trial index)``, so results do
not depend on scheduling.
"""

import csv
import dataclasses
import math
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from typing import List, Tuple

import numpy as np

from . import __version__
from .conversion import Mode, gsv, sorted_pairs
from .generate import PairGenSpec, generate_pair
from .oracle import oracle_gsv

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

ALL_MODES = ("conversion-independent", "conversion-complementary", "oracle", "oracle-refined")
DEFAULT_MODES = ALL_MODES[:3]

LONG_COLUMNS = ("m", "p", "n", "cond", "mode", "trial", "max_err", "median_err", "ms")
REPORT_COLUMNS = ("m", "p", "n", "cond", "scalar_kind", "mode", "trial", "seed",
                  "status", "max_err", "median_err", "ms", "message")


class ConfigError(ValueError):
    pass


@dataclasses.dataclass(frozen=True)
class BenchConfig:
    shapes: Tuple[Tuple[int, int, int], ...]
    conditions: Tuple[float, ...]
    trials: int = 1
    seed: int = 0
    modes: Tuple[str, ...] = DEFAULT_MODES
    scalar_kind: str = "real"
    workers: int = 1

    def __post_init__(self):
        if not self.shapes or not self.conditions:
            raise ConfigError("shape and condition grids must be non-empty")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        bad = set(self.modes) - set(ALL_MODES)
        if bad or not self.modes:
            raise ConfigError(f"unknown modes {sorted(bad)}; choose from {ALL_MODES}")
        for shape in self.shapes:
            if len(shape) != 3 or min(shape) < 1:
                raise ConfigError(f"bad shape {shape}")
        if any(not c >= 1 for c in self.conditions):
            raise ConfigError("condition targets must be >= 1")

    @property
    def cells(self):
        return [(s, c) for s in self.shapes for c in self.conditions]


def load_bench_config(path):
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    known = {f.name for f in dataclasses.fields(BenchConfig)}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    try:
        return BenchConfig(
            shapes=tuple(tuple(int(x) for x in s) for s in data["shapes"]),
            conditions=tuple(float(c) for c in data["conditions"]),
            trials=int(data.get("trials", 1)),
            seed=int(data.get("seed", 0)),
            modes=tuple(data.get("modes", DEFAULT_MODES)),
            scalar_kind=str(data.get("scalar_kind", "real")),
            workers=int(data.get("workers", 1)),
        )
    except KeyError as exc:
        raise ConfigError(f"missing config key {exc}") from None
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None


def trial_seed(seed, cell, trial):
    state = np.random.SeedSequence([seed, cell, trial]).generate_state(2, np.uint64)
    return int(state[0])


@dataclasses.dataclass(frozen=True)
class TrialRecord:
    m: int
    p: int
    n: int
    cond: float
    scalar_kind: str
    mode: str
    trial: int
    seed: int
    status: str
    max_err: float
    median_err: float
    ms: float
    message: str = ""


@dataclasses.dataclass
class ExperimentReport:
    records: List[TrialRecord]
    tool_version: str
    seed: int


def _run_mode(mode, pair):
    if mode == "conversion-independent":
        s = gsv(pair, Mode.INDEPENDENT)
    elif mode == "conversion-complementary":
        s = gsv(pair, Mode.COMPLEMENTARY)
    elif mode == "oracle":
        s = oracle_gsv(pair, refine=0)
    else:
        s = oracle_gsv(pair, refine=1)
    return s.alpha, s.beta


def pair_errors(alpha, beta, true_alpha, true_beta):
    """Per-pair max(|d alpha|, |d beta|) after sorting both lists identically."""
    got = sorted_pairs(alpha, beta)
    want = sorted_pairs(true_alpha, true_beta)
    return np.max(np.abs(got - want), axis=1)


def run_trial(config, cell, trial):
    (m, p, n), cond = config.cells[cell]
    seed = trial_seed(config.seed, cell, trial)
    common = dict(m=m, p=p, n=n, cond=cond, scalar_kind=config.scalar_kind,
                  trial=trial, seed=seed)
    spec = PairGenSpec(m, p, n, config.scalar_kind, cond, seed)
    try:
        pair, ta, tb = generate_pair(spec, return_truth=True)
    except Exception as exc:  # recorded, not fatal
        return [TrialRecord(mode=mode, status="failed", max_err=math.nan,
                            median_err=math.nan, ms=math.nan,
                            message=f"generate: {exc}", **common)
                for mode in config.modes]
    out = []
    for mode in config.modes:
        t0 = time.perf_counter()
        try:
            alpha, beta = _run_mode(mode, pair)
        except Exception as exc:
            ms = 1e3 * (time.perf_counter() - t0)
            out.append(TrialRecord(mode=mode, status="failed", max_err=math.nan,
                                   median_err=math.nan, ms=ms,
                                   message=f"{type(exc).__name__}: {exc}", **common))
            continue
        ms = 1e3 * (time.perf_counter() - t0)
        err = pair_errors(alpha, beta, ta, tb)
        out.append(TrialRecord(mode=mode, status="ok", max_err=float(err.max()),
                               median_err=float(np.median(err)), ms=ms, **common))
    return out


def run_bench(config):
    jobs = [(c, t) for c in range(len(config.cells)) for t in range(config.trials)]
    if config.workers > 1:
        with ThreadPoolExecutor(config.workers) as pool:
            chunks = list(pool.map(lambda job: run_trial(config, *job), jobs))
    else:
        chunks = [run_trial(config, c, t) for c, t in jobs]
    mode_rank = {m: i for i, m in enumerate(config.modes)}
    records = [r for chunk in chunks for r in chunk]
    order = {cell: i for i, cell in enumerate(config.cells)}
    records.sort(key=lambda r: (order[((r.m, r.p, r.n), r.cond)], mode_rank[r.mode], r.trial))
    return ExperimentReport(records, __version__, config.seed)


def long_path(report_path):
    p = str(report_path)
    stem = p[:-4] if p.endswith(".csv") else p
    return stem + "_long.csv"


def _cell(v):
    if isinstance(v, float):
        return repr(v)
    return v


def write_report(report, path):
    """Write the full report to ``path`` and the plot-ready long table beside it."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(f"# stackgsv {report.tool_version} seed={report.seed}\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(REPORT_COLUMNS)
        for r in report.records:
            w.writerow([_cell(getattr(r, c)) for c in REPORT_COLUMNS])
    lp = long_path(path)
    with open(lp, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(LONG_COLUMNS)
        for r in report.records:
            w.writerow([_cell(getattr(r, c)) for c in LONG_COLUMNS])
    return lp


def summarize(report):
    """Median over trials of max_err, per (shape, cond, mode); failures ignored."""
    groups = {}
    for r in report.records:
        groups.setdefault(((r.m, r.p, r.n), r.cond, r.mode), []).append(r.max_err)
    return {k: float(np.nanmedian(v)) if not np.all(np.isnan(v)) else math.nan
            for k, v in groups.items()}
