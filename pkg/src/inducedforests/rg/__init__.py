"""Random-graph experiments: sampling, exact induced search and moment checks."""

from .counting import COUNT_K_CAP, count_induced_pair, count_induced_structures
from .experiments import (
    ExperimentRecord,
    concentration_experiment,
    moment_experiment,
    read_jsonl,
    write_csv,
    write_jsonl,
)
from .graph import SampledGraph, is_induced_ok, sample_gnp, trial_seed
from .search import SEARCH_CAP, SearchCapError, SearchResult, max_induced_all, max_induced_bounded

__all__ = [
    "COUNT_K_CAP",
    "SEARCH_CAP",
    "ExperimentRecord",
    "SampledGraph",
    "SearchCapError",
    "SearchResult",
    "concentration_experiment",
    "count_induced_pair",
    "count_induced_structures",
    "is_induced_ok",
    "max_induced_all",
    "max_induced_bounded",
    "moment_experiment",
    "read_jsonl",
    "sample_gnp",
    "trial_seed",
    "write_csv",
    "write_jsonl",
]
