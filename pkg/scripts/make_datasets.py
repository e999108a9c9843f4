#!/usr/bin/env python3
"""Regenerate the bundled CSV copies of the Iris and WDBC datasets.

Both files are written from the copies that ship with scikit-learn, so no
network access is needed.  Run from the repository root:

    python scripts/make_datasets.py
"""

import csv
import pathlib

from sklearn.datasets import load_breast_cancer, load_iris

DATA_DIR = pathlib.Path(__file__).resolve().parent.parent / "data"

WDBC_FEATURES = [
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
]


def write_iris(path):
    bunch = load_iris()
    names = [bunch.target_names[t] for t in bunch.target]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            [
                "id",
                "sepal length (cm)",
                "sepal width (cm)",
                "petal length (cm)",
                "petal width (cm)",
                "target",
            ]
        )
        for i, (row, name) in enumerate(zip(bunch.data, names), start=1):
            writer.writerow([i] + [repr(float(v)) for v in row] + [name])
    print(f"wrote {path} ({len(names)} rows)")


def write_wdbc(path):
    bunch = load_breast_cancer()
    # scikit-learn's column order is 10 means, 10 standard errors, 10 worsts,
    # matching the UCI layout this repo's loader expects.
    header = ["id", "diagnosis"]
    for stat in ("mean", "se", "worst"):
        header.extend(f"{stat}_{feat}" for feat in WDBC_FEATURES)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for i, (row, target) in enumerate(zip(bunch.data, bunch.target), start=1):
            diagnosis = "M" if target == 0 else "B"
            writer.writerow([i, diagnosis] + [repr(float(v)) for v in row])
    print(f"wrote {path} ({len(bunch.target)} rows)")


if __name__ == "__main__":
    DATA_DIR.mkdir(exist_ok=True)
    write_iris(DATA_DIR / "iris.csv")
    write_wdbc(DATA_DIR / "wdbc.csv")
