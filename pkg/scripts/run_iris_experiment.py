#!/usr/bin/env python3
"""Run the full Iris pipeline: reduce, classify with the two shipped
boundary lines, plot, and list equivalence groups.

    python scripts/run_iris_experiment.py [--out out/iris]

Every output is deterministic; rerunning reproduces the files byte for
byte.  Expect 148/150 correct: two samples sit on the wrong side of the
versicolor/virginica line, one of them only barely (distance -0.021).
"""

import argparse
import json
import pathlib
import sys

from pbreduce.cli import main as pbreduce

REPO = pathlib.Path(__file__).resolve().parent.parent
DATASET = REPO / "data" / "iris.csv"
RULE = REPO / "rules" / "iris_lines.txt"


def run(*argv):
    code = pbreduce([str(a) for a in argv])
    if code != 0:
        sys.exit(f"step {argv[0]} exited {code}")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=REPO / "out" / "iris", type=pathlib.Path)
    out = parser.parse_args().out

    run("reduce", "--dataset", DATASET, "--out", out)
    run("cluster", "--dataset", DATASET, "--rule", RULE, "--out", out)
    run(
        "plot",
        "--reduced", out / "reduced.csv",
        "--rule", RULE,
        "--out", out / "plot.svg",
    )
    run("equivalence", "--dataset", DATASET, "--out", out)

    report = json.loads((out / "report.json").read_text())
    wrong = [s for s in report["samples"] if s["actual"] != s["predicted"]]
    print(f"\n{report['correct']}/{report['total']} classified correctly")
    for s in wrong:
        print(
            f"  id {s['id']}: {s['actual']} landed on the {s['predicted']} side "
            f"(distance {s['distance']:+.4f})"
        )
    print(f"outputs in {out}")


if __name__ == "__main__":
    main()
