import pytest

from pbreduce import DataQualityWarning, DegenerateDataError, InputError, ParseError
from pbreduce.datasets import (
    WDBC_FEATURES,
    DatasetRecord,
    iris_schema,
    load_iris,
    load_wdbc,
    load_with_schema,
    read_records,
    wdbc_schema,
    write_records,
)
from tests.conftest import DATA

WDBC_HEADER = (
    "id,diagnosis,"
    + ",".join(f"mean_{f}" for f in WDBC_FEATURES)
    + ","
    + ",".join(f"se_{f}" for f in WDBC_FEATURES)
    + ","
    + ",".join(f"worst_{f}" for f in WDBC_FEATURES)
)


def wdbc_line(sample_id, code, mean=1.0, se=0.1, worst=2.0):
    cells = [str(mean)] * 10 + [str(se)] * 10 + [str(worst)] * 10
    return f"{sample_id},{code}," + ",".join(cells)


def test_bundled_iris_loads_completely(iris_records):
    assert len(iris_records) == 150
    first = iris_records[0]
    assert first.id == "1"
    assert first.fields == {
        "sepal length": 5.1,
        "sepal width": 3.5,
        "petal length": 1.4,
        "petal width": 0.2,
    }
    assert first.label == "setosa"
    labels = {r.label for r in iris_records}
    assert labels == {"setosa", "versicolor", "virginica"}


def test_iris_headers_tolerate_case_and_units(tmp_path):
    path = tmp_path / "iris.csv"
    path.write_text(
        "Sepal Length (cm),SEPAL WIDTH,petal length (mm),petal width,TARGET\n"
        "5.1,3.5,1.4,0.2,setosa\n"
    )
    (rec,) = load_iris(path)
    assert rec.fields["sepal length"] == 5.1
    assert rec.id == "1"  # no id column: rows numbered from 1


def test_iris_parse_errors_name_the_location(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text(
        "id,sepal length,sepal width,petal length,petal width,target\n"
        "1,5.1,3.5,1.4,0.2,setosa\n"
        "2,5.1,oops,1.4,0.2,setosa\n"
    )
    with pytest.raises(ParseError, match=r"row 3.*sepal width.*oops"):
        load_iris(path)

    missing = tmp_path / "missing.csv"
    missing.write_text("id,sepal length,target\n1,5.1,setosa\n")
    with pytest.raises(ParseError, match="sepal width"):
        load_iris(missing)


def test_iris_empty_inputs_are_rejected(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    with pytest.raises(ParseError, match="empty"):
        load_iris(empty)
    header_only = tmp_path / "header.csv"
    header_only.write_text("id,sepal length,sepal width,petal length,petal width,target\n")
    with pytest.raises(DegenerateDataError, match="header only"):
        load_iris(header_only)


def test_bundled_wdbc_loads_completely(wdbc_records):
    assert len(wdbc_records) == 569
    by_label = {"malignant": 0, "benign": 0}
    for rec in wdbc_records:
        by_label[rec.label] += 1
        assert len(rec.fields) == 30
    assert by_label == {"malignant": 212, "benign": 357}
    first = wdbc_records[0]
    assert first.fields["mean_radius"] == 17.99
    assert first.fields["worst_fractal_dimension"] == 0.1189


def test_wdbc_rejects_malformed_files(tmp_path):
    bad_code = tmp_path / "code.csv"
    bad_code.write_text(WDBC_HEADER + "\n" + wdbc_line("1", "X") + "\n")
    with pytest.raises(ParseError, match="diagnosis code 'X'"):
        load_wdbc(bad_code)

    narrow = tmp_path / "narrow.csv"
    narrow.write_text("id,diagnosis,mean_radius\n1,M,17.99\n")
    with pytest.raises(ParseError, match="32 columns"):
        load_wdbc(narrow)

    headerless = tmp_path / "headerless.csv"
    headerless.write_text(wdbc_line("1", "M") + "\n" + wdbc_line("2", "B") + "\n")
    with pytest.raises(ParseError, match="header row is required"):
        load_wdbc(headerless)


def test_wdbc_worst_below_mean_warns_but_loads(tmp_path):
    path = tmp_path / "odd.csv"
    path.write_text(
        WDBC_HEADER + "\n"
        + wdbc_line("1", "M") + "\n"
        + wdbc_line("2", "B", mean=5.0, worst=1.0) + "\n"
    )
    with pytest.warns(DataQualityWarning, match="record '2'.*radius"):
        records = load_wdbc(path)
    assert len(records) == 2


def test_schema_constructors_cover_their_grids():
    iris = iris_schema()
    assert iris.cell_map[("petal", "width")] == "petal width"
    full = wdbc_schema()
    assert full.col_labels == WDBC_FEATURES
    assert full.cell_map[("worst", "radius")] == "worst_radius"
    sub = wdbc_schema(("radius", "texture"))
    assert sub.col_labels == ("radius", "texture")
    with pytest.raises(InputError, match="unknown features"):
        wdbc_schema(("radius", "girth"))


def test_schema_file_loader_matches_the_dedicated_loader(iris_records):
    records, schema = load_with_schema(DATA / "iris.csv", DATA / "iris_schema.json")
    assert records == iris_records
    assert schema == iris_schema()


def test_schema_file_errors(tmp_path):
    data = tmp_path / "d.csv"
    data.write_text("id,a,b,target\n1,1.0,2.0,x\n")
    schema = tmp_path / "s.json"
    schema.write_text(
        '{"row_labels": ["r"], "col_labels": ["c"],'
        ' "cells": {"r": {"c": "absent"}}, "id_column": "id"}'
    )
    with pytest.raises(ParseError, match="absent"):
        load_with_schema(data, schema)

    schema.write_text('{"row_labels": ["r"], "col_labels": ["c"]}')
    with pytest.raises(ParseError, match="cells"):
        load_with_schema(data, schema)

    schema.write_text("{not json")
    with pytest.raises(ParseError, match="invalid JSON"):
        load_with_schema(data, schema)


def test_records_round_trip_through_csv(tmp_path, iris_records):
    path = tmp_path / "rt.csv"
    write_records(iris_records, path)
    assert read_records(path) == iris_records

    unlabeled = [DatasetRecord("1", {"a": 0.125}, None)]
    write_records(unlabeled, path)
    assert read_records(path) == unlabeled


def test_records_reject_non_finite_fields():
    with pytest.raises(InputError, match="finite"):
        DatasetRecord("1", {"a": float("inf")})
