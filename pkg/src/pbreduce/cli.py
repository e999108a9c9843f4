"""Command-line surface: reduce, cluster, search-features, plot, equivalence.

Every command is deterministic: identical inputs and flags produce
byte-identical output files.  Exit codes: 0 success, 1 fatal input error,
2 completed with per-sample failures (an errors sidecar is written).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass
from itertools import permutations

from .datasets import (
    WDBC_FEATURES,
    iris_schema,
    load_iris,
    load_wdbc,
    load_with_schema,
    wdbc_schema,
)
from .errors import InputError, ParseError
from .feature_search import (
    SearchConfig,
    rank_subsets,
    run_search,
    write_ranking_csv,
    write_ranking_json,
)
from .pipeline import group_equivalent, reduce_dataset
from .polynomial import DEFAULT_TOLERANCE, to_text
from .separators import evaluate_rule, rule_from_text, rule_to_dict
from .svgplot import svg_scatter_2d, svg_scatter_3d

COEFF_NAMES = ("c0", "c1", "c2")
DEFAULT_MAPPING = ("c0", "c1", "c2")


@dataclass(frozen=True)
class RunConfig:
    """Everything a command needs, with defaults reproducing the bundled
    experiments: tolerance 1e-9, no normalization, abscissa = degree-1
    coefficient in 2-D, (x, y, z) = (c0, c1, c2) in 3-D."""

    dataset: str | None = None
    schema: str = "iris"
    tolerance: float = DEFAULT_TOLERANCE
    normalize: bool = False
    axes: str = "c1c0"
    mapping: tuple[str, str, str] = DEFAULT_MAPPING
    epochs: int = 50
    jobs: int = 1
    min_size: int = 1
    max_size: int = len(WDBC_FEATURES)
    features: tuple[str, ...] | None = None
    rule: str | None = None
    reduced: str | None = None
    out: str = "."

    def __post_init__(self):
        if self.axes not in ("c1c0", "c0c1"):
            raise InputError(f"axes must be c1c0 or c0c1, got {self.axes!r}")
        if sorted(self.mapping) != sorted(DEFAULT_MAPPING):
            raise InputError(
                f"mapping must be a permutation of c0,c1,c2, got {self.mapping!r}"
            )
        if self.tolerance < 0:
            raise InputError("tolerance must be >= 0")


def _load(config: RunConfig):
    if config.dataset is None:
        raise InputError("no dataset given")
    if config.schema == "iris":
        return load_iris(config.dataset), iris_schema()
    if config.schema == "wdbc":
        return load_wdbc(config.dataset), wdbc_schema(config.features)
    return load_with_schema(config.dataset, config.schema)


def _outdir(config: RunConfig) -> str:
    os.makedirs(config.out, exist_ok=True)
    return config.out


def _axis_pair(config: RunConfig) -> tuple[int, int]:
    return (1, 0) if config.axes == "c1c0" else (0, 1)


def _mapping_indices(mapping) -> tuple[int, int, int]:
    return tuple(COEFF_NAMES.index(name) for name in mapping)


def _to_points(samples, dim, config: RunConfig):
    if any(len(s.vector.values) != dim for s in samples):
        got = len(samples[0].vector.values)
        raise InputError(f"samples have {got} coefficients, need {dim}")
    if dim == 2:
        i, j = _axis_pair(config)
        return [(s.vector.values[i], s.vector.values[j]) for s in samples]
    idx = _mapping_indices(config.mapping)
    return [tuple(s.vector.values[i] for i in idx) for s in samples]


def _write_json(doc, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")


def _write_error_sidecar(errors, outdir) -> str:
    path = os.path.join(outdir, "errors.csv")
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["id", "field", "reason"])
        for err in errors:
            writer.writerow([err.sample_id, err.field, err.reason])
    return path


def cmd_reduce(config: RunConfig) -> int:
    """Write per-sample coefficient vectors and polynomial text forms."""
    records, schema = _load(config)
    samples, errors = reduce_dataset(records, schema, normalize=config.normalize)
    outdir = _outdir(config)
    width = len(schema.row_labels)
    csv_path = os.path.join(outdir, "reduced.csv")
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["id", "label"] + list(COEFF_NAMES[:width]) + ["lossy"])
        for s in samples:
            writer.writerow(
                [s.id, s.label or ""]
                + [repr(v) for v in s.vector.values]
                + ["true" if s.vector.lossy else "false"]
            )
    text_path = os.path.join(outdir, "polynomials.txt")
    with open(text_path, "w", encoding="utf-8") as fh:
        for s in samples:
            fh.write(
                f"{s.id}\t{s.label or ''}\t"
                f"{to_text(s.polynomial, var_names=schema.row_labels)}\n"
            )
    print(f"reduced {len(samples)}/{len(records)} samples -> {csv_path}")
    if errors:
        sidecar = _write_error_sidecar(errors, outdir)
        print(f"{len(errors)} samples failed -> {sidecar}", file=sys.stderr)
        return 2
    return 0


def _report_doc(report, rule) -> dict:
    return {
        "accuracy": report.accuracy,
        "correct": report.correct,
        "total": report.total,
        "confusion": {
            f"{actual}->{predicted}": count
            for (actual, predicted), count in sorted(report.confusion.items())
        },
        "rule": rule_to_dict(rule),
        "samples": [
            {"id": i, "actual": a, "predicted": p, "distance": d}
            for i, a, p, d in zip(
                report.ids, report.actual, report.predicted, report.distances
            )
        ],
    }


def _report_text(report, sweep=None) -> str:
    lines = [
        f"samples:  {report.total}",
        f"correct:  {report.correct}",
        f"accuracy: {report.accuracy:.4f}",
        "",
        "confusion (actual -> predicted):",
    ]
    for (actual, predicted), count in sorted(report.confusion.items()):
        lines.append(f"  {actual:<12} -> {predicted:<12} {count}")
    wrong = report.misclassified()
    lines.append("")
    lines.append(f"misclassified ({len(wrong)}):")
    by_id = {i: (a, p, d) for i, a, p, d in zip(
        report.ids, report.actual, report.predicted, report.distances
    )}
    for sample_id in wrong:
        actual, predicted, distance = by_id[sample_id]
        lines.append(
            f"  id {sample_id}: {actual} classified as {predicted}"
            f" (distance {distance:+.4f})"
        )
    if sweep:
        lines.append("")
        lines.append("accuracy by coordinate mapping (x,y,z):")
        for name, acc in sweep.items():
            lines.append(f"  {name}: {acc:.4f}")
    return "\n".join(lines) + "\n"


def cmd_cluster(config: RunConfig) -> int:
    """Classify reduced samples with a rule file and report accuracy."""
    if config.rule is None:
        raise InputError("cluster needs --rule")
    try:
        with open(config.rule, encoding="utf-8") as fh:
            rule = rule_from_text(fh.read())
    except OSError as err:
        raise ParseError(f"cannot read rule file: {err}") from err
    records, schema = _load(config)
    samples, errors = reduce_dataset(records, schema, normalize=config.normalize)
    if not samples:
        raise InputError("no samples survived reduction")
    if any(s.label is None for s in samples):
        raise InputError("dataset has unlabeled samples; cannot score a rule")
    labels = [s.label for s in samples]
    ids = [s.id for s in samples]
    points = _to_points(samples, rule.dimension, config)
    report = evaluate_rule(rule, points, labels, ids)

    sweep = None
    if rule.dimension == 3:
        sweep = {}
        for perm in permutations(COEFF_NAMES):
            cfg = RunConfig(mapping=perm)
            pts = [
                tuple(s.vector.values[i] for i in _mapping_indices(perm))
                for s in samples
            ]
            sweep[",".join(perm)] = evaluate_rule(rule, pts, labels, ids).accuracy

    outdir = _outdir(config)
    doc = _report_doc(report, rule)
    if sweep is not None:
        doc["mapping_sweep"] = sweep
        doc["mapping"] = ",".join(config.mapping)
    _write_json(doc, os.path.join(outdir, "report.json"))
    text = _report_text(report, sweep)
    with open(os.path.join(outdir, "report.txt"), "w", encoding="utf-8") as fh:
        fh.write(text)
    print(
        f"accuracy {report.accuracy:.4f} ({report.correct}/{report.total})"
        f" -> {os.path.join(outdir, 'report.json')}"
    )
    if sweep is not None:
        best = max(sweep.items(), key=lambda kv: (kv[1], kv[0]))
        print(f"best mapping in sweep: {best[0]} at {best[1]:.4f}")
    if errors:
        _write_error_sidecar(errors, outdir)
        return 2
    return 0


def cmd_search_features(config: RunConfig) -> int:
    """Rank every feature subset by separating-plane accuracy."""
    if config.dataset is None:
        raise InputError("no dataset given")
    records = load_wdbc(config.dataset)
    search = SearchConfig(
        max_epochs=config.epochs, normalize=config.normalize, jobs=config.jobs
    )
    results = run_search(records, search, config.min_size, config.max_size)
    ranked = rank_subsets(results)
    outdir = _outdir(config)
    csv_path = os.path.join(outdir, "ranking.csv")
    write_ranking_csv(ranked, csv_path)
    write_ranking_json(ranked, os.path.join(outdir, "ranking.json"), search)
    best = ranked[0]
    print(
        f"ranked {len(ranked)} subsets -> {csv_path}\n"
        f"best: {'+'.join(best.features)} at accuracy {best.accuracy:.4f}"
    )
    return 0


def _read_reduced_csv(path):
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = [row for row in csv.reader(fh) if row]
    except OSError as err:
        raise ParseError(f"cannot read {path}: {err}") from err
    if not rows:
        raise ParseError(f"{path}: empty file")
    header = rows[0]
    if header[:2] != ["id", "label"] or header[-1] != "lossy":
        raise ParseError(f"{path}: expected header id,label,c0,...,lossy")
    coeff_cols = header[2:-1]
    if len(coeff_cols) > 3:
        raise ParseError(f"{len(coeff_cols)} coefficients exceed plotting range (3)")
    if len(coeff_cols) < 2 or list(coeff_cols) != list(COEFF_NAMES[: len(coeff_cols)]):
        raise ParseError(f"{path}: unexpected coefficient columns {coeff_cols!r}")
    if len(rows) == 1:
        raise ParseError(f"{path}: no data rows")
    ids, labels, vectors = [], [], []
    for n, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise ParseError(f"row {n}: expected {len(header)} cells")
        ids.append(row[0])
        labels.append(row[1] or None)
        try:
            vectors.append(tuple(float(v) for v in row[2:-1]))
        except ValueError:
            raise ParseError(f"row {n}: non-numeric coefficient") from None
    return ids, labels, vectors


def cmd_plot(config: RunConfig) -> int:
    """Render a reduced-coordinates CSV (plus optional rule) to SVG."""
    if config.reduced is None:
        raise InputError("plot needs --reduced")
    _, labels, vectors = _read_reduced_csv(config.reduced)
    dim = len(vectors[0])
    rule = None
    if config.rule is not None:
        try:
            with open(config.rule, encoding="utf-8") as fh:
                rule = rule_from_text(fh.read())
        except OSError as err:
            raise ParseError(f"cannot read rule file: {err}") from err
        if rule.dimension != dim:
            raise InputError(
                f"rule is {rule.dimension}-D but reduced data is {dim}-D"
            )
    if dim == 2:
        i, j = _axis_pair(config)
        points = [(v[i], v[j]) for v in vectors]
        names = (COEFF_NAMES[i], COEFF_NAMES[j])
        svg = svg_scatter_2d(
            points,
            labels,
            lines=rule.clauses if rule else (),
            axis_names=names,
        )
    else:
        idx = _mapping_indices(config.mapping)
        points = [tuple(v[i] for i in idx) for v in vectors]
        svg = svg_scatter_3d(
            points,
            labels,
            plane=rule.clauses[0][0] if rule else None,
            axis_names=tuple(config.mapping),
        )
    out = config.out if config.out.endswith(".svg") else config.out + ".svg"
    parent = os.path.dirname(out)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(svg)
    print(f"wrote {out}")
    return 0


def cmd_equivalence(config: RunConfig) -> int:
    """Report groups of samples sharing a reduced polynomial."""
    records, schema = _load(config)
    samples, errors = reduce_dataset(records, schema, normalize=config.normalize)
    groups = group_equivalent(samples, config.tolerance)
    shared = [g for g in groups if g.size >= 2]
    outdir = _outdir(config)
    doc = {
        "tolerance": config.tolerance,
        "samples": len(samples),
        "groups_total": len(groups),
        "groups": [
            {
                "ids": list(g.ids),
                "labels": ["" if l is None else l for l in g.labels],
                "polynomial": to_text(g.polynomial, var_names=schema.row_labels),
                "mixed_labels": g.mixed,
            }
            for g in shared
        ],
    }
    _write_json(doc, os.path.join(outdir, "equivalence.json"))
    lines = [
        f"{len(shared)} groups of size >= 2 among {len(samples)} samples"
        f" (tolerance {config.tolerance})"
    ]
    for g in shared:
        lines.append(
            f"  ids {', '.join(g.ids)} [{', '.join(l or '-' for l in g.labels)}]: "
            f"{to_text(g.polynomial, var_names=schema.row_labels)}"
        )
        if g.mixed:
            lines.append(
                f"  WARNING: group mixes labels {', '.join(g.distinct_labels)}"
            )
    text = "\n".join(lines) + "\n"
    with open(os.path.join(outdir, "equivalence.txt"), "w", encoding="utf-8") as fh:
        fh.write(text)
    print(lines[0])
    if errors:
        _write_error_sidecar(errors, outdir)
        return 2
    return 0


def _add_io_args(sub, dataset=True, schema=True):
    if dataset:
        sub.add_argument("--dataset", required=True, help="input CSV path")
    if schema:
        sub.add_argument(
            "--schema",
            default="iris",
            help="iris, wdbc, or a path to a schema JSON document (default: iris)",
        )
        sub.add_argument(
            "--features", help="comma-separated feature subset (wdbc schema)"
        )
    sub.add_argument("--normalize", action="store_true",
                     help="min-max rescale each column over the dataset first")
    sub.add_argument("--out", default=".", help="output directory (default: .)")


def _add_geometry_args(sub):
    sub.add_argument(
        "--axes",
        choices=["c1c0", "c0c1"],
        default="c1c0",
        help="2-D plotting order abscissa,ordinate (default c1c0: x=degree-1, y=constant)",
    )
    sub.add_argument(
        "--mapping",
        default="c0,c1,c2",
        help="3-D coefficient-to-axis mapping, e.g. c1,c0,c2 (default c0,c1,c2)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pbreduce",
        description="Reduce multidimensional samples to low-dimensional "
        "coefficient vectors and separate the clusters with lines or planes.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("reduce", help="reduce a dataset to coefficient vectors")
    _add_io_args(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("cluster", help="classify reduced samples with a rule file")
    _add_io_args(p)
    _add_geometry_args(p)
    p.add_argument("--rule", required=True, help="plain-text rule file")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("search-features", help="rank feature subsets by accuracy")
    _add_io_args(p, schema=False)
    p.add_argument("--min-size", type=int, default=1)
    p.add_argument("--max-size", type=int, default=len(WDBC_FEATURES))
    p.add_argument("--epochs", type=int, default=50, help="pocket budget per subset")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers")
    p.set_defaults(func=cmd_search_features)

    p = sub.add_parser("plot", help="render a reduced CSV (and rule) to SVG")
    p.add_argument("--reduced", required=True, help="reduced.csv from the reduce command")
    p.add_argument("--rule", help="optional rule file to overlay")
    _add_geometry_args(p)
    p.add_argument("--out", default="plot.svg", help="output SVG path")
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("equivalence", help="group samples by shared reduction")
    _add_io_args(p)
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    p.set_defaults(func=cmd_equivalence)

    return parser


def config_from_args(args) -> RunConfig:
    mapping = DEFAULT_MAPPING
    if getattr(args, "mapping", None):
        mapping = tuple(part.strip() for part in args.mapping.split(","))
        if len(mapping) != 3:
            raise InputError(f"mapping needs three names, got {args.mapping!r}")
    features = None
    if getattr(args, "features", None):
        features = tuple(part.strip() for part in args.features.split(","))
    return RunConfig(
        dataset=getattr(args, "dataset", None),
        schema=getattr(args, "schema", "iris"),
        tolerance=getattr(args, "tolerance", DEFAULT_TOLERANCE),
        normalize=getattr(args, "normalize", False),
        axes=getattr(args, "axes", "c1c0"),
        mapping=mapping,
        epochs=getattr(args, "epochs", 50),
        jobs=getattr(args, "jobs", 1),
        min_size=getattr(args, "min_size", 1),
        max_size=getattr(args, "max_size", len(WDBC_FEATURES)),
        features=features,
        rule=getattr(args, "rule", None),
        reduced=getattr(args, "reduced", None),
        out=getattr(args, "out", "."),
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = config_from_args(args)
        return args.func(config)
    except (InputError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
