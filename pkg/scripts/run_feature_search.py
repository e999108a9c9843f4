#!/usr/bin/env python3
"""Rank every feature subset of the breast-cancer data by plane accuracy.

    python scripts/run_feature_search.py [--jobs 4] [--epochs 50] \
        [--min-size 1] [--max-size 10] [--out out/search]

All 1023 subsets take a few minutes serially; --jobs splits the work
without changing a byte of the output.  Afterwards the script reports
where the eight-feature subset (everything except area and
concave_points) landed in the ranking.
"""

import argparse
import csv
import pathlib
import sys

from pbreduce.cli import main as pbreduce

REPO = pathlib.Path(__file__).resolve().parent.parent
DATASET = REPO / "data" / "wdbc.csv"
EIGHT_SUBSET = "+".join(
    (
        "radius",
        "texture",
        "perimeter",
        "smoothness",
        "compactness",
        "concavity",
        "symmetry",
        "fractal_dimension",
    )
)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=REPO / "out" / "search", type=pathlib.Path)
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--epochs", type=int, default=50)
    parser.add_argument("--min-size", type=int, default=1)
    parser.add_argument("--max-size", type=int, default=10)
    args = parser.parse_args()

    code = pbreduce(
        [
            "search-features",
            "--dataset", str(DATASET),
            "--jobs", str(args.jobs),
            "--epochs", str(args.epochs),
            "--min-size", str(args.min_size),
            "--max-size", str(args.max_size),
            "--out", str(args.out),
        ]
    )
    if code != 0:
        sys.exit(f"search exited {code}")

    with open(args.out / "ranking.csv", newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    for rank, row in enumerate(rows, start=1):
        if row["features"] == EIGHT_SUBSET:
            decile = (10 * rank + len(rows) - 1) // len(rows)
            print(
                f"eight-feature subset: rank {rank}/{len(rows)} "
                f"(decile {decile}), accuracy {row['accuracy']}"
            )
            break
    else:
        print("eight-feature subset not in this ranking (size range excludes 8)")
    print(f"outputs in {args.out}")


if __name__ == "__main__":
    main()
