"""Exhaustive feature-subset search over the breast-cancer pipeline.

Every subset of the ten canonical features is reduced to 3-vectors and
given the same fixed-budget plane search; subsets are then ranked by
accuracy.  All stages are deterministic, and parallel runs merge results
by enumeration index, so the ranking never depends on worker scheduling.
"""

from __future__ import annotations

import csv
import json
import multiprocessing
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .datasets import WDBC_FEATURES, wdbc_schema
from .errors import InputError
from .pipeline import reduce_dataset
from .separators import (
    Hyperplane,
    PocketConfig,
    binary_rule,
    evaluate_rule,
    search_separator_pocket,
)


@dataclass(frozen=True)
class SearchConfig:
    """Fixed search budget shared by every subset, plus runtime knobs."""

    max_epochs: int = 50
    normalize: bool = False
    jobs: int = 1

    def __post_init__(self):
        if self.jobs < 1:
            raise InputError(f"jobs must be >= 1, got {self.jobs}")


@dataclass(frozen=True)
class SubsetResult:
    features: tuple[str, ...]
    plane: Hyperplane
    accuracy: float
    lossy_count: int

    def __post_init__(self):
        features = tuple(self.features)
        if not features:
            raise InputError("subset must be non-empty")
        unknown = [f for f in features if f not in WDBC_FEATURES]
        if unknown:
            raise InputError(f"unknown features {unknown!r}")
        if not 0.0 <= self.accuracy <= 1.0:
            raise InputError(f"accuracy out of range: {self.accuracy}")
        object.__setattr__(self, "features", features)


def enumerate_subsets(min_size: int, max_size: int) -> list[tuple[str, ...]]:
    """All feature subsets with sizes in [min_size, max_size], ordered by
    size then lexicographically over the canonical feature order."""
    if not 1 <= min_size <= max_size <= len(WDBC_FEATURES):
        raise InputError(
            f"need 1 <= min_size <= max_size <= {len(WDBC_FEATURES)}, "
            f"got [{min_size}, {max_size}]"
        )
    return [
        subset
        for size in range(min_size, max_size + 1)
        for subset in combinations(WDBC_FEATURES, size)
    ]


def evaluate_subset(
    records: Sequence, subset: Sequence[str], config: SearchConfig = SearchConfig()
) -> SubsetResult:
    """Reduce all records over the subset's 3xK schema and fit a plane."""
    subset = tuple(subset)
    samples, errors = reduce_dataset(
        records, wdbc_schema(subset), normalize=config.normalize
    )
    if errors:
        raise InputError(
            f"subset {'+'.join(subset)}: {len(errors)} samples failed: {errors[0]}"
        )
    if any(s.label is None for s in samples):
        raise InputError(f"subset {'+'.join(subset)}: unlabeled samples cannot be scored")
    points = [s.vector.values for s in samples]
    labels = [s.label for s in samples]
    plane = search_separator_pocket(points, labels, PocketConfig(config.max_epochs))
    report = evaluate_rule(binary_rule(plane, set(labels)), points, labels)
    lossy_count = sum(1 for s in samples if s.vector.lossy)
    return SubsetResult(subset, plane, report.accuracy, lossy_count)


def _canonical_index(features: tuple[str, ...]) -> tuple[int, ...]:
    return tuple(WDBC_FEATURES.index(f) for f in features)


def rank_subsets(results: Sequence[SubsetResult]) -> list[SubsetResult]:
    """Order results by accuracy (desc), then size, then canonical order."""
    if not results:
        raise InputError("no results to rank")
    return sorted(
        results,
        key=lambda r: (-r.accuracy, len(r.features), _canonical_index(r.features)),
    )


_WORKER: tuple | None = None


def _init_worker(records, config):
    global _WORKER
    _WORKER = (records, config)


def _eval_in_worker(subset):
    records, config = _WORKER
    return evaluate_subset(records, subset, config)


def run_search(
    records: Sequence,
    config: SearchConfig = SearchConfig(),
    min_size: int = 1,
    max_size: int = len(WDBC_FEATURES),
) -> list[SubsetResult]:
    """Evaluate every subset in the size range; result order follows
    :func:`enumerate_subsets` regardless of worker count."""
    subsets = enumerate_subsets(min_size, max_size)
    if config.jobs == 1:
        return [evaluate_subset(records, s, config) for s in subsets]
    with multiprocessing.Pool(
        processes=config.jobs, initializer=_init_worker, initargs=(list(records), config)
    ) as pool:
        # Pool.map returns results in argument order
        return pool.map(_eval_in_worker, subsets, chunksize=8)


def write_ranking_csv(ranked: Sequence[SubsetResult], path):
    """One row per subset: features, size, accuracy, plane, lossy count."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(
            ["features", "size", "accuracy", "nx", "ny", "nz", "offset", "lossy_count"]
        )
        for r in ranked:
            writer.writerow(
                ["+".join(r.features), len(r.features), repr(r.accuracy)]
                + [repr(c) for c in r.plane.normal]
                + [repr(r.plane.offset), r.lossy_count]
            )


def write_ranking_json(ranked: Sequence[SubsetResult], path, config: SearchConfig):
    doc = {
        "config": {
            "max_epochs": config.max_epochs,
            "normalize": config.normalize,
        },
        "results": [
            {
                "features": list(r.features),
                "accuracy": r.accuracy,
                "plane": {"normal": list(r.plane.normal), "offset": r.plane.offset},
                "lossy_count": r.lossy_count,
            }
            for r in ranked
        ],
    }
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
