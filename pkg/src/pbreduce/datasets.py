"""CSV loading and matrix schemas for the bundled datasets.

Loaders return flat :class:`DatasetRecord` objects; the companion schema
constructors say how those fields fold into a cost matrix.  The iris
layout folds four measurements into a 2x2 grid (sepal/petal x
length/width); the breast-cancer layout folds summary statistics into a
3xK grid (mean/se/worst x chosen features).  A small JSON schema document
lets any other CSV flow through the same pipeline.

Parsing is locale-independent: plain decimal numbers, comma delimiter,
header row required.
"""

from __future__ import annotations

import csv
import json
import math
import re
import warnings
from dataclasses import dataclass

from .errors import DataQualityWarning, DegenerateDataError, InputError, ParseError
from .pipeline import SampleSchema

#: Canonical measured-feature order for the breast-cancer dataset.
WDBC_FEATURES = (
    "radius",
    "texture",
    "perimeter",
    "area",
    "smoothness",
    "compactness",
    "concavity",
    "concave_points",
    "symmetry",
    "fractal_dimension",
)

WDBC_STATS = ("mean", "se", "worst")

IRIS_FIELDS = ("sepal length", "sepal width", "petal length", "petal width")


@dataclass(frozen=True)
class DatasetRecord:
    """One flat data row: id, numeric fields by name, optional class label."""

    id: str
    fields: dict[str, float]
    label: str | None = None

    def __post_init__(self):
        for name, value in self.fields.items():
            if not math.isfinite(value):
                raise InputError(f"record {self.id!r}: field {name!r} is not finite")


def _clean_header(name: str) -> str:
    """Normalize a header cell: lowercase, drop unit parens, squeeze spaces."""
    name = re.sub(r"\([^)]*\)", " ", name.lower())
    return re.sub(r"\s+", " ", name).strip()


def _read_csv(path) -> tuple[list[str], list[list[str]]]:
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = [row for row in csv.reader(fh) if row]
    except OSError as err:
        raise ParseError(f"cannot read {path}: {err}") from err
    if not rows:
        raise ParseError(f"{path}: empty file, expected a header row")
    return rows[0], rows[1:]


def _parse_cell(raw: str, row_num: int, column: str) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise ParseError(
            f"row {row_num}, column {column!r}: not a number: {raw!r}"
        ) from None
    if not math.isfinite(value):
        raise ParseError(f"row {row_num}, column {column!r}: not finite: {raw!r}")
    return value


def load_iris(path) -> list[DatasetRecord]:
    """Load an iris-shaped CSV: four measurement columns plus a target column.

    Headers match case-insensitively with unit suffixes like "(cm)"
    stripped.  An "id" column is used when present, else rows are numbered
    from 1.
    """
    header, data = _read_csv(path)
    cleaned = [_clean_header(h) for h in header]
    index = {}
    for want in IRIS_FIELDS + ("target",):
        if want not in cleaned:
            raise ParseError(f"{path}: missing column {want!r} (have {cleaned!r})")
        index[want] = cleaned.index(want)
    id_col = cleaned.index("id") if "id" in cleaned else None
    if not data:
        raise DegenerateDataError(f"{path}: header only, no data rows")
    records = []
    for n, row in enumerate(data, start=2):
        if len(row) != len(header):
            raise ParseError(f"row {n}: expected {len(header)} cells, got {len(row)}")
        fields = {
            name: _parse_cell(row[index[name]], n, name) for name in IRIS_FIELDS
        }
        sample_id = row[id_col].strip() if id_col is not None else str(n - 1)
        records.append(DatasetRecord(sample_id, fields, row[index["target"]].strip()))
    return records


def iris_schema() -> SampleSchema:
    """2x2 grid: rows sepal/petal, columns length/width."""
    return SampleSchema(
        row_labels=("sepal", "petal"),
        col_labels=("length", "width"),
        cell_map={
            (part, dim): f"{part} {dim}"
            for part in ("sepal", "petal")
            for dim in ("length", "width")
        },
    )


def load_wdbc(path) -> list[DatasetRecord]:
    """Load the breast-cancer CSV: id, diagnosis (M/B), then 30 numeric columns
    ordered as 10 means, 10 standard errors, 10 worsts.

    Column meaning is positional; fields are named "<stat>_<feature>".
    A record whose worst statistic falls below its mean (worst is the mean
    of the three largest measurements, so it can't) loads anyway but emits
    a :class:`DataQualityWarning`.
    """
    header, data = _read_csv(path)
    if len(header) != 32:
        raise ParseError(f"{path}: expected 32 columns, got {len(header)}")
    if header[1].strip() in ("M", "B"):
        raise ParseError(f"{path}: first row looks like data; a header row is required")
    if not data:
        raise DegenerateDataError(f"{path}: header only, no data rows")
    names = [f"{stat}_{feat}" for stat in WDBC_STATS for feat in WDBC_FEATURES]
    records = []
    for n, row in enumerate(data, start=2):
        if len(row) != 32:
            raise ParseError(f"row {n}: expected 32 cells, got {len(row)}")
        sample_id = row[0].strip()
        code = row[1].strip()
        if code == "M":
            label = "malignant"
        elif code == "B":
            label = "benign"
        else:
            raise ParseError(f"row {n}: unknown diagnosis code {code!r}")
        fields = {
            name: _parse_cell(raw, n, name) for name, raw in zip(names, row[2:])
        }
        odd = [f for f in WDBC_FEATURES if fields[f"worst_{f}"] < fields[f"mean_{f}"]]
        if odd:
            warnings.warn(
                f"record {sample_id!r}: worst < mean for {', '.join(odd)}",
                DataQualityWarning,
                stacklevel=2,
            )
        records.append(DatasetRecord(sample_id, fields, label))
    return records


def wdbc_schema(features=None) -> SampleSchema:
    """3xK grid: rows mean/se/worst, columns the chosen features
    (default: all ten, canonical order)."""
    if features is None:
        features = WDBC_FEATURES
    features = tuple(features)
    unknown = [f for f in features if f not in WDBC_FEATURES]
    if unknown:
        raise InputError(f"unknown features {unknown!r}; valid: {list(WDBC_FEATURES)}")
    return SampleSchema(
        row_labels=WDBC_STATS,
        col_labels=features,
        cell_map={
            (stat, feat): f"{stat}_{feat}" for stat in WDBC_STATS for feat in features
        },
    )


def load_with_schema(data_path, schema_path) -> tuple[list[DatasetRecord], SampleSchema]:
    """Generic loader: a JSON schema document routes any CSV into the pipeline.

    The document names the grid and the CSV columns feeding it::

        {
          "row_labels": ["sepal", "petal"],
          "col_labels": ["length", "width"],
          "cells": {"sepal": {"length": "sepal length", ...}, ...},
          "id_column": "id",
          "label_column": "target"
        }

    ``id_column`` and ``label_column`` are optional (rows are numbered when
    the id column is absent).  All other CSV columns load as numeric
    fields under cleaned names; the schema picks which ones feed the
    matrix, so a subset schema still sees full records.
    """
    try:
        with open(schema_path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as err:
        raise ParseError(f"cannot read {schema_path}: {err}") from err
    except json.JSONDecodeError as err:
        raise ParseError(f"{schema_path}: invalid JSON: {err}") from err
    for key in ("row_labels", "col_labels", "cells"):
        if key not in doc:
            raise ParseError(f"{schema_path}: missing key {key!r}")
    rows = tuple(doc["row_labels"])
    cols = tuple(doc["col_labels"])
    try:
        cell_map = {(r, c): doc["cells"][r][c] for r in rows for c in cols}
    except (KeyError, TypeError):
        raise ParseError(f"{schema_path}: cells must map every row to every column") from None
    schema = SampleSchema(rows, cols, cell_map)

    header, data = _read_csv(data_path)
    cleaned = [_clean_header(h) for h in header]
    id_column = doc.get("id_column")
    label_column = doc.get("label_column")
    for special in (id_column, label_column):
        if special is not None and _clean_header(special) not in cleaned:
            raise ParseError(f"{data_path}: missing column {special!r}")
    missing = [f for f in schema.fields_used if f not in cleaned]
    if missing:
        raise ParseError(f"{data_path}: schema references absent columns {missing!r}")
    if not data:
        raise DegenerateDataError(f"{data_path}: header only, no data rows")

    id_idx = cleaned.index(_clean_header(id_column)) if id_column else None
    label_idx = cleaned.index(_clean_header(label_column)) if label_column else None
    skip = {i for i in (id_idx, label_idx) if i is not None}
    records = []
    for n, row in enumerate(data, start=2):
        if len(row) != len(header):
            raise ParseError(f"row {n}: expected {len(header)} cells, got {len(row)}")
        fields = {
            cleaned[i]: _parse_cell(row[i], n, cleaned[i])
            for i in range(len(header))
            if i not in skip
        }
        records.append(
            DatasetRecord(
                row[id_idx].strip() if id_idx is not None else str(n - 1),
                fields,
                row[label_idx].strip() if label_idx is not None else None,
            )
        )
    return records, schema


def write_records(records, path, field_order=None):
    """Write records to CSV (id, label, then fields); inverse of read_records."""
    if not records:
        raise InputError("no records to write")
    names = list(field_order) if field_order else sorted(records[0].fields)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", "label"] + names)
        for rec in records:
            missing = [n for n in names if n not in rec.fields]
            if missing:
                raise InputError(f"record {rec.id!r} lacks fields {missing!r}")
            writer.writerow(
                [rec.id, "" if rec.label is None else rec.label]
                + [repr(rec.fields[n]) for n in names]
            )


def read_records(path) -> list[DatasetRecord]:
    """Read a CSV written by :func:`write_records`."""
    header, data = _read_csv(path)
    if header[:2] != ["id", "label"]:
        raise ParseError(f"{path}: expected 'id,label,...' header, got {header[:2]!r}")
    names = header[2:]
    records = []
    for n, row in enumerate(data, start=2):
        if len(row) != len(header):
            raise ParseError(f"row {n}: expected {len(header)} cells, got {len(row)}")
        fields = {
            name: _parse_cell(raw, n, name) for name, raw in zip(names, row[2:])
        }
        records.append(DatasetRecord(row[0], fields, row[1] or None))
    return records
