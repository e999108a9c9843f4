"""Schema-driven reduction of flat records to coefficient vectors.

A schema names the matrix rows (measurement types) and columns (features)
and maps each cell to a source field of the record.  Reducing a sample
builds its cost matrix, formulates the penalty polynomial, and projects it
to a fixed-length vector; reducing a dataset does this per record with no
cross-sample state, so record order never influences any output value.
Equivalence grouping then partitions the reduced samples by coefficient
agreement within a tolerance.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import InputError, SampleError
from .polynomial import (
    DEFAULT_TOLERANCE,
    CoefficientVector,
    CostMatrix,
    PseudoBooleanPolynomial,
    degree_project,
    equivalent,
    formulate,
)


@dataclass(frozen=True)
class SampleSchema:
    """Layout of one sample's cost matrix over the fields of a flat record.

    ``cell_map`` assigns every (row_label, col_label) pair its source field
    name; the mapping must cover the full grid and no two cells may read
    the same field.
    """

    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]
    cell_map: Mapping[tuple[str, str], str]

    def __post_init__(self):
        rows = tuple(self.row_labels)
        cols = tuple(self.col_labels)
        if not rows or not cols:
            raise InputError("schema needs at least one row and one column label")
        if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
            raise InputError("schema labels must be unique per axis")
        cell_map = dict(self.cell_map)
        want = {(r, c) for r in rows for c in cols}
        if set(cell_map) != want:
            missing = sorted(want - set(cell_map))
            extra = sorted(set(cell_map) - want)
            raise InputError(
                f"cell_map must cover the full grid; missing {missing!r}, extra {extra!r}"
            )
        fields = list(cell_map.values())
        if len(set(fields)) != len(fields):
            dupes = sorted({f for f in fields if fields.count(f) > 1})
            raise InputError(f"cell_map reuses record fields: {dupes!r}")
        object.__setattr__(self, "row_labels", rows)
        object.__setattr__(self, "col_labels", cols)
        object.__setattr__(self, "cell_map", cell_map)

    @property
    def fields_used(self) -> tuple[str, ...]:
        """Mapped field names in row-major grid order."""
        return tuple(
            self.cell_map[(r, c)] for r in self.row_labels for c in self.col_labels
        )


@dataclass(frozen=True)
class ReducedSample:
    """One sample after reduction: its polynomial and degree projection."""

    id: str
    vector: CoefficientVector
    polynomial: PseudoBooleanPolynomial
    label: str | None = None

    def __post_init__(self):
        check = degree_project(self.polynomial)
        if check.values != self.vector.values or check.lossy != self.vector.lossy:
            raise InputError(
                f"sample {self.id!r}: vector is not the projection of its polynomial"
            )


@dataclass(frozen=True)
class EquivalenceGroup:
    """Samples whose reduced polynomials coincide within tolerance.

    Groups are the connected components of the pairwise relation, so two
    members may differ by slightly more than the tolerance when a chain of
    intermediate members links them; the relation itself is not transitive.
    The representative polynomial belongs to the earliest member by input
    order.
    """

    polynomial: PseudoBooleanPolynomial
    ids: tuple[str, ...]
    labels: tuple[str | None, ...]

    def __post_init__(self):
        if len(self.ids) != len(self.labels):
            raise InputError("ids and labels must align")

    @property
    def size(self) -> int:
        return len(self.ids)

    @property
    def distinct_labels(self) -> tuple[str, ...]:
        return tuple(sorted({l for l in self.labels if l is not None}))

    @property
    def mixed(self) -> bool:
        return len(self.distinct_labels) > 1


def _extract_cells(record, schema: SampleSchema) -> list[list[float]]:
    """Pull the schema-mapped grid out of a record, validating each cell."""
    sample_id = record.id
    cells = []
    for r in schema.row_labels:
        row = []
        for c in schema.col_labels:
            name = schema.cell_map[(r, c)]
            if name not in record.fields:
                raise SampleError(sample_id, name, "field missing from record")
            raw = record.fields[name]
            try:
                value = float(raw)
            except (TypeError, ValueError):
                raise SampleError(sample_id, name, f"not a number: {raw!r}") from None
            if not math.isfinite(value):
                raise SampleError(sample_id, name, f"not finite: {raw!r}")
            if value < 0:
                raise SampleError(sample_id, name, f"negative cost: {value!r}")
            row.append(value)
        cells.append(row)
    return cells


def _reduce_cells(sample_id, label, cells, schema: SampleSchema) -> ReducedSample:
    matrix = CostMatrix(schema.row_labels, schema.col_labels, tuple(map(tuple, cells)))
    poly = formulate(matrix)
    return ReducedSample(sample_id, degree_project(poly), poly, label)


def reduce_sample(record, schema: SampleSchema) -> ReducedSample:
    """Reduce one record (anything with .id, .fields, .label) per the schema.

    Raises :class:`SampleError` carrying the sample id and offending field
    name when a mapped field is missing, non-numeric, non-finite, or
    negative.
    """
    return _reduce_cells(record.id, record.label, _extract_cells(record, schema), schema)


def reduce_dataset(
    records: Sequence, schema: SampleSchema, normalize: bool = False
) -> tuple[list[ReducedSample], list[SampleError]]:
    """Reduce every record, collecting per-sample failures instead of aborting.

    Returns (samples, errors); both preserve input order.  With
    ``normalize`` on, each schema column is min-max rescaled to [0, 1]
    over all of its cells across rows of all valid records before
    reduction (a constant column becomes all zeros).  Statistics come from
    valid records only, so a corrupt row cannot shift everyone else's
    coordinates.
    """
    if not records:
        raise InputError("no records to reduce")
    extracted: list[tuple[int, object, list[list[float]]]] = []
    errors: list[SampleError] = []
    for pos, record in enumerate(records):
        try:
            extracted.append((pos, record, _extract_cells(record, schema)))
        except SampleError as err:
            errors.append(err)
    if normalize and extracted:
        n = len(schema.col_labels)
        for j in range(n):
            column = [row[j] for _, _, cells in extracted for row in cells]
            lo, hi = min(column), max(column)
            span = hi - lo
            for _, _, cells in extracted:
                for row in cells:
                    row[j] = (row[j] - lo) / span if span > 0 else 0.0
    samples = [
        _reduce_cells(record.id, record.label, cells, schema)
        for _, record, cells in extracted
    ]
    return samples, errors


def _natural_key(sample_id: str):
    # "9" sorts before "10" when ids are numeric strings
    parts = re.split(r"(\d+)", str(sample_id))
    return tuple(int(p) if p.isdigit() else p for p in parts)


def group_equivalent(
    samples: Iterable[ReducedSample], tol: float = DEFAULT_TOLERANCE
) -> list[EquivalenceGroup]:
    """Partition samples into equivalence groups (transitive closure).

    Every sample lands in exactly one group; singletons are included.
    Groups are ordered by their smallest member id (numeric-aware string
    order); members keep input order.
    """
    items = list(samples)
    if not items:
        return []
    num_vars = items[0].polynomial.num_vars
    for s in items[1:]:
        if s.polynomial.num_vars != num_vars:
            raise InputError(
                f"mixed variable counts: {num_vars} vs {s.polynomial.num_vars} "
                f"(sample {s.id!r})"
            )

    parent = list(range(len(items)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            ri, rj = find(i), find(j)
            if ri != rj and equivalent(items[i].polynomial, items[j].polynomial, tol):
                parent[max(ri, rj)] = min(ri, rj)

    members: dict[int, list[int]] = {}
    for i in range(len(items)):
        members.setdefault(find(i), []).append(i)
    groups = [
        EquivalenceGroup(
            polynomial=items[idxs[0]].polynomial,
            ids=tuple(items[i].id for i in idxs),
            labels=tuple(items[i].label for i in idxs),
        )
        for idxs in members.values()
    ]
    groups.sort(key=lambda g: min(_natural_key(i) for i in g.ids))
    return groups
