"""Monte Carlo experiments: first moments and concentration windows.

Every trial draws its own graph from ``trial_seed(seed, trial_index)``, so
results do not depend on how trials are scheduled or how many workers run them.
"""

from __future__ import annotations

import csv
import json
import math
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable, Optional

import numpy as np

from ..asymptotics import concentration_window_dense
from ..exact import as_rational, expected_induced_rooted_forests, expected_induced_trees
from .counting import count_induced_pair
from .graph import sample_gnp, trial_seed
from .search import SEARCH_CAP, SearchCapError, max_induced_all

__all__ = [
    "ExperimentRecord",
    "MomentSummary",
    "moment_experiment",
    "concentration_experiment",
    "write_jsonl",
    "read_jsonl",
    "write_csv",
]


@dataclass(frozen=True)
class ExperimentRecord:
    """One trial. ``observed`` maps a statistic name to its value."""

    kind: str
    n: int
    p: float
    delta: int
    trial_index: int
    base_seed: int
    seed: int
    observed: dict
    window: Optional[tuple] = None
    wall_time: float = 0.0

    def to_dict(self) -> dict:
        d = asdict(self)
        if self.window is not None:
            d["window"] = list(self.window)
        return d


def _map(fn: Callable, items: Iterable, jobs: int):
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def _moment_trial(args):
    n, k, p, delta, seed, index = args
    s = trial_seed(seed, index)
    t0 = time.perf_counter()
    y, z = count_induced_pair(sample_gnp(n, p, s), k, delta)
    return ExperimentRecord("moment", n, p, delta, index, seed, s, {"Y": y, "Z": z},
                            wall_time=time.perf_counter() - t0)


@dataclass(frozen=True)
class MomentSummary:
    statistic: str
    sample_mean: float
    std_error: float
    exact_expectation: Fraction
    z_score: float

    def to_dict(self) -> dict:
        return {
            "statistic": self.statistic,
            "sample_mean": self.sample_mean,
            "std_error": self.std_error,
            "exact_expectation": str(self.exact_expectation),
            "exact_expectation_float": float(self.exact_expectation),
            "z_score": self.z_score,
        }


def _summarise(name, values, exact):
    arr = np.asarray(values, dtype=float)
    mean = float(arr.mean())
    se = float(arr.std(ddof=1) / math.sqrt(arr.size)) if arr.size > 1 else 0.0
    if se > 0:
        z = (mean - float(exact)) / se
    else:
        # degenerate sample: every trial returned the same count
        z = 0.0 if Fraction(int(arr[0])) == exact else math.inf
    return MomentSummary(name, mean, se, exact, z)


def moment_experiment(n: int, k: int, p, delta: int, trials: int, seed: int,
                      jobs: int = 1, min_trials: int = 100):
    """Sample ``Y_k`` and ``Z_k`` over ``trials`` graphs and compare with their exact means.

    ``p`` may be a Fraction or ``'a/b'`` string; the exact expectation uses the
    rational value and the sampler its float.
    Returns ``(records, {"Y": MomentSummary, "Z": MomentSummary})``.
    """
    if trials < min_trials:
        raise ValueError(f"need at least {min_trials} trials, got {trials}")
    p_exact = as_rational(p)
    pf = float(p_exact)
    records = _map(_moment_trial, [(n, k, pf, delta, seed, i) for i in range(trials)], jobs)
    summary = {
        "Y": _summarise("Y", [r.observed["Y"] for r in records], expected_induced_trees(n, k, p_exact, delta)),
        "Z": _summarise("Z", [r.observed["Z"] for r in records],
                        expected_induced_rooted_forests(n, k, p_exact, delta)),
    }
    return records, summary


def _concentration_trial(args):
    n, p, delta, seed, index, window = args
    s = trial_seed(seed, index)
    t0 = time.perf_counter()
    res = max_induced_all(sample_gnp(n, p, s), delta)
    observed = {
        "T": res["tree"].size,
        "F": res["forest"].size,
        "F_unbounded": res["forest_unbounded"].size,
        "witness_T": list(res["tree"].witness),
        "witness_F": list(res["forest"].witness),
        "nodes": res["forest_unbounded"].nodes_explored,
    }
    return ExperimentRecord("concentration", n, p, delta, index, seed, s, observed,
                            window=window, wall_time=time.perf_counter() - t0)


@dataclass
class ConcentrationSummary:
    n: int
    p: float
    delta: int
    trials: int
    window: tuple
    slack: int
    histogram_T: dict = field(default_factory=dict)
    histogram_F: dict = field(default_factory=dict)
    inside_T: float = 0.0
    inside_F: float = 0.0
    inside_slack_T: float = 0.0
    inside_slack_F: float = 0.0
    sandwich_holds: bool = True

    def to_dict(self) -> dict:
        d = asdict(self)
        d["window"] = list(self.window)
        return d


def concentration_experiment(n: int, p: float, delta: int, trials: int, seed: int,
                             epsilon: float = 0.1, slack: int = 2, jobs: int = 1,
                             cap: int = SEARCH_CAP):
    """Exact ``T_delta``, ``F_delta`` and unbounded ``F`` per trial against the dense window."""
    if n > cap:
        raise SearchCapError(f"n={n} exceeds the exact-search cap {cap}")
    p = float(p)
    pred = concentration_window_dense(n, p, delta, epsilon)
    window = pred.window_dense
    records = _map(_concentration_trial, [(n, p, delta, seed, i, window) for i in range(trials)], jobs)
    lo, hi = window
    ts = [r.observed["T"] for r in records]
    fs = [r.observed["F"] for r in records]

    def frac(values, a, b):
        return sum(a <= v <= b for v in values) / len(values) if values else 0.0

    summary = ConcentrationSummary(
        n=n, p=p, delta=delta, trials=trials, window=window, slack=slack,
        histogram_T=dict(sorted(Counter(ts).items())),
        histogram_F=dict(sorted(Counter(fs).items())),
        inside_T=frac(ts, lo, hi),
        inside_F=frac(fs, lo, hi),
        inside_slack_T=frac(ts, lo - slack, hi + slack),
        inside_slack_F=frac(fs, lo - slack, hi + slack),
        sandwich_holds=all(
            r.observed["T"] <= r.observed["F"] <= r.observed["F_unbounded"] for r in records
        ),
    )
    return records, summary, pred


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    raise TypeError(f"not JSON serialisable: {type(x).__name__}")


def write_jsonl(records: Iterable[ExperimentRecord], path, append: bool = True) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("a" if append else "w") as fh:
        for r in records:
            fh.write(json.dumps(r.to_dict(), sort_keys=True, default=_jsonable) + "\n")
    return path


def read_jsonl(path) -> list[dict]:
    with Path(path).open() as fh:
        return [json.loads(line) for line in fh if line.strip()]


def write_csv(rows: list[dict], path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fields: list[str] = []
    for row in rows:
        for key in row:
            if key not in fields:
                fields.append(key)
    with path.open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=fields)
        writer.writeheader()
        for row in rows:
            writer.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in row.items()})
    return path
