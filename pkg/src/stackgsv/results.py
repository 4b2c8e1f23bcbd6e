"""Per-run result records and their CSV / JSON renderings."""

import csv
import dataclasses
import io
import json
from typing import Optional

import numpy as np

from .errors import InvalidInput

CSV_COLUMNS = ("index", "alpha", "beta", "pair_sum_residual", "det_residual")


@dataclasses.dataclass
class ResultRecord:
    shape: tuple
    mode: str
    alpha: list
    beta: list
    pair_sum_residuals: list
    det_residuals: list
    stacked_condition: float
    timings_ms: dict = dataclasses.field(default_factory=dict)
    seed: Optional[int] = None

    def __post_init__(self):
        n = self.shape[2]
        lengths = {len(self.alpha), len(self.beta),
                   len(self.pair_sum_residuals), len(self.det_residuals)}
        if lengths != {n}:
            raise InvalidInput(
                f"pairs and diagnostics must all have length n={n}, got {sorted(lengths)}")

    @property
    def pairs(self):
        return list(zip(self.alpha, self.beta))

    def to_dict(self):
        return {
            "shape": list(self.shape),
            "mode": self.mode,
            "pairs": [[a, b] for a, b in self.pairs],
            "diagnostics": {
                "pair_sum_residuals": list(self.pair_sum_residuals),
                "det_residuals": list(self.det_residuals),
                "stacked_condition": self.stacked_condition,
            },
            "timings_ms": dict(self.timings_ms),
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, d):
        diag = d["diagnostics"]
        return cls(
            shape=tuple(d["shape"]),
            mode=d["mode"],
            alpha=[p[0] for p in d["pairs"]],
            beta=[p[1] for p in d["pairs"]],
            pair_sum_residuals=list(diag["pair_sum_residuals"]),
            det_residuals=list(diag["det_residuals"]),
            stacked_condition=diag["stacked_condition"],
            timings_ms=dict(d.get("timings_ms", {})),
            seed=d.get("seed"),
        )


def _num(x):
    return repr(float(x))


def format_csv(record):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    rows = zip(record.alpha, record.beta, record.pair_sum_residuals, record.det_residuals)
    for i, (a, b, ps, dr) in enumerate(rows, start=1):
        w.writerow([i, _num(a), _num(b), _num(ps), _num(dr)])
    return buf.getvalue()


def format_json(record):
    def default(o):
        if isinstance(o, np.generic):
            return o.item()
        raise TypeError(type(o))
    return json.dumps(record.to_dict(), indent=2, default=default) + "\n"


def write_result(record, path, format="csv"):
    if format == "csv":
        text = format_csv(record)
    elif format == "json":
        text = format_json(record)
    else:
        raise ValueError(f"unknown format {format!r}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _reject_constant(name):
    raise InvalidInput(f"non-finite value {name} in result file")


def read_result_json(path):
    with open(path, encoding="utf-8") as fh:
        return ResultRecord.from_dict(json.load(fh, parse_constant=_reject_constant))
