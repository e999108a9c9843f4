"""Linear decision geometry over reduced coordinates.

An oriented hyperplane splits 2-D or 3-D space by the sign of
``normal . v + offset``; a decision rule chains hyperplanes, assigning a
class on the first nonpositive side (boundaries included) and a fallback
class otherwise.  Two searches find separating planes for binary-labeled
point sets: a deterministic pocket perceptron for everyday use and an
exhaustive candidate enumeration that serves as a small-instance oracle.

Both searches and the report builder are pure functions of their inputs;
rerunning any of them reproduces identical results bit for bit.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import DegenerateDataError, InputError, ParseError, SizeLimitError

AXIS_NAMES = ("x", "y", "z")

#: Points at most this many rows may go through the exhaustive search.
EXACT_SEARCH_LIMIT = 200

# candidate planes are also nudged off their anchor points by this fraction
# of the data's coordinate span, so anchor points can land on either side
EXACT_SHIFT_FRACTION = 1e-9


@dataclass(frozen=True)
class Hyperplane:
    """Oriented plane: v is on the positive side iff normal . v + offset > 0."""

    normal: tuple[float, ...]
    offset: float

    def __post_init__(self):
        normal = tuple(float(c) for c in self.normal)
        if len(normal) not in (2, 3):
            raise InputError(f"normal must have 2 or 3 components, got {len(normal)}")
        if not all(math.isfinite(c) for c in normal) or not math.isfinite(float(self.offset)):
            raise InputError("hyperplane coefficients must be finite")
        if all(c == 0.0 for c in normal):
            raise InputError("normal must not be the zero vector")
        object.__setattr__(self, "normal", normal)
        object.__setattr__(self, "offset", float(self.offset))

    @property
    def dimension(self) -> int:
        return len(self.normal)

    def side_value(self, point: Sequence[float]) -> float:
        """Raw normal . point + offset; scale-dependent, sign is the side."""
        if len(point) != self.dimension:
            raise InputError(
                f"point has {len(point)} coordinates, plane expects {self.dimension}"
            )
        return math.fsum(c * float(v) for c, v in zip(self.normal, point)) + self.offset

    def signed_distance(self, point: Sequence[float]) -> float:
        """Orthogonal distance with the side as its sign; scale-invariant."""
        return self.side_value(point) / math.hypot(*self.normal)


@dataclass(frozen=True)
class DecisionRule:
    """Ordered (hyperplane, class) clauses plus a fallback class.

    A point gets the class of the first clause whose nonpositive side
    contains it, else the fallback.
    """

    clauses: tuple[tuple[Hyperplane, str], ...]
    fallback: str

    def __post_init__(self):
        clauses = tuple((plane, str(cls)) for plane, cls in self.clauses)
        if not clauses:
            raise InputError("a decision rule needs at least one hyperplane")
        dims = {plane.dimension for plane, _ in clauses}
        if len(dims) != 1:
            raise InputError(f"clauses mix dimensions: {sorted(dims)}")
        object.__setattr__(self, "clauses", clauses)
        object.__setattr__(self, "fallback", str(self.fallback))

    @property
    def dimension(self) -> int:
        return self.clauses[0][0].dimension

    @property
    def classes(self) -> tuple[str, ...]:
        return tuple(sorted({cls for _, cls in self.clauses} | {self.fallback}))


@dataclass(frozen=True)
class ClassificationReport:
    """Per-sample predictions with signed distances and aggregate counts.

    The signed distance is measured from the hyperplane that decided the
    sample: the clause that fired, or the last clause for fallback
    predictions.
    """

    ids: tuple[str, ...]
    predicted: tuple[str, ...]
    actual: tuple[str, ...]
    distances: tuple[float, ...]
    accuracy: float
    confusion: dict

    @property
    def correct(self) -> int:
        return sum(p == a for p, a in zip(self.predicted, self.actual))

    @property
    def total(self) -> int:
        return len(self.ids)

    def misclassified(self) -> tuple[str, ...]:
        return tuple(
            i for i, p, a in zip(self.ids, self.predicted, self.actual) if p != a
        )


def classify(rule: DecisionRule, point: Sequence[float]) -> str:
    """First clause whose nonpositive side holds the point wins; else fallback."""
    for plane, cls in rule.clauses:
        if plane.side_value(point) <= 0.0:
            return cls
    return rule.fallback


def _deciding_plane(rule: DecisionRule, point) -> tuple[str, Hyperplane]:
    for plane, cls in rule.clauses:
        if plane.side_value(point) <= 0.0:
            return cls, plane
    return rule.fallback, rule.clauses[-1][0]


def evaluate_rule(
    rule: DecisionRule,
    points: Sequence[Sequence[float]],
    labels: Sequence[str],
    ids: Sequence[str] | None = None,
) -> ClassificationReport:
    """Score a rule over labeled points.

    Accuracy is exactly correct/total; the confusion mapping counts
    (actual, predicted) pairs.
    """
    if not points:
        raise InputError("cannot evaluate a rule over zero points")
    if len(points) != len(labels):
        raise InputError(f"{len(points)} points vs {len(labels)} labels")
    if ids is None:
        ids = tuple(str(i + 1) for i in range(len(points)))
    elif len(ids) != len(points):
        raise InputError(f"{len(points)} points vs {len(ids)} ids")
    predicted = []
    distances = []
    for point in points:
        cls, plane = _deciding_plane(rule, point)
        predicted.append(cls)
        distances.append(plane.signed_distance(point))
    actual = tuple(str(l) for l in labels)
    confusion: dict[tuple[str, str], int] = {}
    for a, p in zip(actual, predicted):
        confusion[(a, p)] = confusion.get((a, p), 0) + 1
    correct = sum(p == a for p, a in zip(predicted, actual))
    return ClassificationReport(
        ids=tuple(str(i) for i in ids),
        predicted=tuple(predicted),
        actual=actual,
        distances=tuple(distances),
        accuracy=correct / len(points),
        confusion=confusion,
    )


def confidence(plane: Hyperplane, point: Sequence[float]) -> float:
    """Orthogonal distance from the plane; 0 on the boundary."""
    return abs(plane.signed_distance(point))


# -- searches -----------------------------------------------------------------


@dataclass(frozen=True)
class PocketConfig:
    """Budget for the pocket search; everything else is fixed for determinism."""

    max_epochs: int = 50

    def __post_init__(self):
        if self.max_epochs < 1:
            raise InputError(f"max_epochs must be >= 1, got {self.max_epochs}")


def _check_binary(points, labels):
    X = np.asarray(points, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] not in (2, 3):
        raise InputError("points must be 2-D or 3-D coordinate rows")
    if not np.isfinite(X).all():
        raise InputError("points must be finite")
    if len(labels) != len(X):
        raise InputError(f"{len(X)} points vs {len(labels)} labels")
    classes = sorted({str(l) for l in labels})
    if len(classes) == 1:
        raise DegenerateDataError(f"need two classes, got only {classes[0]!r}")
    if len(classes) > 2:
        raise InputError(f"binary search only; got classes {classes}")
    if len(X) < 2:
        raise InputError("need at least 2 points")
    # lexicographically first class sits on the nonpositive side
    targets = np.where(np.asarray([str(l) for l in labels]) == classes[0], -1.0, 1.0)
    return X, targets, classes


def _fallback_plane(X) -> Hyperplane:
    # all candidate constructions degenerated; return a fixed axis plane
    normal = (1.0,) + (0.0,) * (X.shape[1] - 1)
    return Hyperplane(normal, -float(np.mean(X[:, 0])))


def _rule_accuracy(signed, targets) -> float:
    predictions = np.where(signed <= 0.0, -1.0, 1.0)
    return float(np.mean(predictions == targets))


def search_separator_pocket(
    points, labels, config: PocketConfig = PocketConfig()
) -> Hyperplane:
    """Deterministic pocket perceptron for binary-labeled 2-D/3-D points.

    Training runs in per-dimension min-max scaled space (raw coefficient
    scales differ by orders of magnitude, which stalls the perceptron) and
    the pocket plane is mapped back exactly, so the returned hyperplane
    applies to the original coordinates.  No randomness anywhere: zero
    initialization, fixed index-order sweeps, best-accuracy weights kept,
    ties keeping the earlier state.
    """
    X, targets, _ = _check_binary(points, labels)
    lo = X.min(axis=0)
    span = X.max(axis=0) - lo
    live = span > 0
    scaled = np.zeros_like(X)
    scaled[:, live] = (X[:, live] - lo[live]) / span[live]
    if not live.any():
        return _fallback_plane(X)

    n, dim = X.shape
    augmented = np.hstack([scaled, np.ones((n, 1))])
    weights = np.zeros(dim + 1)
    pocket: tuple[float, np.ndarray] | None = None
    for _ in range(config.max_epochs):
        mistakes = 0
        for i in range(n):
            side = float(augmented[i] @ weights)
            guess = -1.0 if side <= 0.0 else 1.0
            if guess == targets[i]:
                continue
            mistakes += 1
            weights = weights + targets[i] * augmented[i]
            if np.any(weights[:dim] != 0.0):
                acc = _rule_accuracy(augmented @ weights, targets)
                if pocket is None or acc > pocket[0]:
                    pocket = (acc, weights.copy())
        if mistakes == 0:
            break
    if pocket is None:
        return _fallback_plane(X)

    best = pocket[1]
    normal = np.zeros(dim)
    normal[live] = best[:dim][live] / span[live]
    offset = float(best[dim] - np.sum(best[:dim][live] * lo[live] / span[live]))
    if not np.any(normal != 0.0):
        return _fallback_plane(X)
    return Hyperplane(tuple(float(c) for c in normal), offset)


def _pair_rows(X):
    pairs = np.asarray(list(combinations(range(len(X)), 2)), dtype=np.intp)
    if len(pairs) == 0:
        return None
    return X[pairs[:, 0]], X[pairs[:, 1]]


def _candidate_batches(X, eps):
    """Yield (normals, offsets) candidate batches for the exhaustive search.

    Anchored family: the plane through every point pair (2-D) or triple
    (3-D), rebuilt with each anchor displaced +eps or -eps along the base
    unit normal.  Displacing anchors independently tilts the plane, so
    every combination of sides for the anchor points is realized with a
    margin of about eps; pure shifts (all displacements equal) come out as
    special cases.  Midpoint bisectors (normal q - p through the midpoint,
    shifted {0, +eps, -eps}) cover layouts the anchored family cannot
    build, e.g. two points in 3-D or fully collinear data, and one
    axis-aligned plane through the coordinate mean backstops everything
    else.  Orientation flips are the caller's job.
    """
    n, dim = X.shape
    signs = (eps, -eps)
    if dim == 2 and n >= 2:
        P0, P1 = _pair_rows(X)
        E = P1 - P0
        base = np.stack([-E[:, 1], E[:, 0]], axis=1)
        length = np.linalg.norm(base, axis=1)
        keep = length > 0.0
        P0, E, length = P0[keep], E[keep], length[keep]
        unit = base[keep] / length[:, None]
        for s0 in signs:
            for s1 in signs:
                edge = E + (s1 - s0) * unit
                normals = np.stack([-edge[:, 1], edge[:, 0]], axis=1)
                anchors = P0 + s0 * unit
                yield normals, -np.einsum("ij,ij->i", normals, anchors)
    if dim == 3 and n >= 3:
        triples = np.asarray(list(combinations(range(n), 3)), dtype=np.intp)
        P0 = X[triples[:, 0]]
        E1 = X[triples[:, 1]] - P0
        E2 = X[triples[:, 2]] - P0
        base = np.cross(E1, E2)
        length = np.linalg.norm(base, axis=1)
        keep = length > 0.0
        P0, E1, E2, length = P0[keep], E1[keep], E2[keep], length[keep]
        unit = base[keep] / length[:, None]
        for s0 in signs:
            for s1 in signs:
                for s2 in signs:
                    normals = np.cross(E1 + (s1 - s0) * unit, E2 + (s2 - s0) * unit)
                    anchors = P0 + s0 * unit
                    yield normals, -np.einsum("ij,ij->i", normals, anchors)
    if n >= 2:
        P0, P1 = _pair_rows(X)
        E = P1 - P0
        length = np.linalg.norm(E, axis=1)
        keep = length > 0.0
        E, length = E[keep], length[keep]
        mid = (P0 + P1)[keep] / 2.0
        offsets = -np.einsum("ij,ij->i", E, mid)
        for shift in (0.0, eps, -eps):
            yield E, offsets - shift * length
    fallback = _fallback_plane(X)
    normal = np.asarray([fallback.normal], dtype=np.float64)
    for shift in (0.0, eps, -eps):
        # the fallback normal is a unit vector, so the shift is literal
        yield normal, np.asarray([fallback.offset - shift])


def search_separator_exact(points, labels) -> Hyperplane:
    """Best plane over an exhaustive candidate family (small instances only).

    Scores every candidate from :func:`_candidate_batches` in both
    orientations and returns the maximum-accuracy plane under rule
    semantics (nonpositive side = lexicographically first class).  Ties go
    to the earliest candidate in batch order, positive orientation first,
    which makes reruns bit-identical.
    """
    X, targets, _ = _check_binary(points, labels)
    n = len(X)
    if n > EXACT_SEARCH_LIMIT:
        raise SizeLimitError(
            f"{n} points exceed the exhaustive-search limit of {EXACT_SEARCH_LIMIT}"
        )
    span = X.max(axis=0) - X.min(axis=0)
    eps = EXACT_SHIFT_FRACTION * (float(span.max()) if span.max() > 0 else 1.0)

    truth_negative = targets == -1.0
    best_acc = -1.0
    best: tuple[np.ndarray, float] | None = None
    row_budget = max(1, 4_000_000 // n)
    for normals, offsets in _candidate_batches(X, eps):
        keep = np.linalg.norm(normals, axis=1) > 0.0
        if not keep.all():
            normals, offsets = normals[keep], offsets[keep]
        for orient in (1.0, -1.0):
            for start in range(0, len(normals), row_budget):
                W = orient * normals[start : start + row_budget]
                B = orient * offsets[start : start + row_budget]
                signed = W @ X.T + B[:, None]
                acc = np.mean((signed <= 0.0) == truth_negative, axis=1)
                idx = int(np.argmax(acc))
                if float(acc[idx]) > best_acc:
                    best_acc = float(acc[idx])
                    best = (W[idx].copy(), float(B[idx]))
    assert best is not None
    return Hyperplane(tuple(float(c) for c in best[0]), best[1])


def binary_rule(plane: Hyperplane, classes: Iterable[str]) -> DecisionRule:
    """One-plane rule matching the search convention: the lexicographically
    first of the two classes takes the nonpositive side."""
    ordered = sorted({str(c) for c in classes})
    if len(ordered) != 2:
        raise InputError(f"need exactly two classes, got {ordered}")
    return DecisionRule(((plane, ordered[0]),), ordered[1])


# -- serialization ------------------------------------------------------------


def _fmt(value: float) -> str:
    return repr(float(value))


def rule_to_text(rule: DecisionRule) -> str:
    """Render a rule as one inequality per line plus an else line, e.g.::

        -0.25*x + 1.0*y + -2.0 <= 0 -> setosa
        else -> virginica
    """
    lines = []
    for plane, cls in rule.clauses:
        terms = [
            f"{_fmt(c)}*{AXIS_NAMES[d]}" for d, c in enumerate(plane.normal)
        ]
        terms.append(_fmt(plane.offset))
        lines.append(f"{' + '.join(terms)} <= 0 -> {cls}")
    lines.append(f"else -> {rule.fallback}")
    return "\n".join(lines) + "\n"


_TERM_RE = re.compile(
    r"([+-]?\s*(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*(?:\*\s*([xyz]))?"
)
_RHS_RE = re.compile(r"^\s*0\s*->\s*(\S.*?)\s*$")
_ELSE_RE = re.compile(r"^else\s*->\s*(\S.*?)\s*$")


def _parse_clause(line: str, line_num: int) -> tuple[dict[str, float], float, str]:
    left, sep, right = line.partition("<=")
    if not sep:
        raise ParseError(f"line {line_num}: expected '<= 0 -> class': {line!r}")
    rhs = _RHS_RE.match(right)
    if not rhs:
        raise ParseError(f"line {line_num}: right side must be '0 -> class': {line!r}")
    coeffs: dict[str, float] = {}
    constant = 0.0
    consumed = 0
    for match in _TERM_RE.finditer(left):
        value = float(match.group(1).replace(" ", ""))
        var = match.group(2)
        if var is None:
            constant += value
        elif var in coeffs:
            raise ParseError(f"line {line_num}: variable {var!r} appears twice")
        else:
            coeffs[var] = value
        consumed += 1
    leftovers = _TERM_RE.sub("", left).replace("+", "").strip()
    if consumed == 0 or leftovers:
        raise ParseError(f"line {line_num}: cannot parse terms in {left.strip()!r}")
    return coeffs, constant, rhs.group(1)


def rule_from_text(text: str) -> DecisionRule:
    """Parse the :func:`rule_to_text` format.

    Blank lines and '#' comments are skipped.  All variable coefficients
    are explicit numbers; a clause may omit variables (coefficient 0).
    The rule is 3-D when any clause mentions z, else 2-D.
    """
    clauses_raw = []
    fallback = None
    for line_num, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if fallback is not None:
            raise ParseError(f"line {line_num}: content after the else line")
        matched = _ELSE_RE.match(line)
        if matched:
            fallback = matched.group(1)
            continue
        clauses_raw.append(_parse_clause(line, line_num))
    if fallback is None:
        raise ParseError("missing final 'else -> class' line")
    if not clauses_raw:
        raise ParseError("no hyperplane lines before the else line")
    dim = 3 if any("z" in coeffs for coeffs, _, _ in clauses_raw) else 2
    clauses = tuple(
        (
            Hyperplane(
                tuple(coeffs.get(v, 0.0) for v in AXIS_NAMES[:dim]), constant
            ),
            cls,
        )
        for coeffs, constant, cls in clauses_raw
    )
    return DecisionRule(clauses, fallback)


def rule_to_dict(rule: DecisionRule) -> dict:
    return {
        "clauses": [
            {"normal": list(plane.normal), "offset": plane.offset, "class": cls}
            for plane, cls in rule.clauses
        ],
        "fallback": rule.fallback,
    }


def rule_from_dict(doc: dict) -> DecisionRule:
    try:
        clauses = tuple(
            (Hyperplane(tuple(c["normal"]), c["offset"]), c["class"])
            for c in doc["clauses"]
        )
        return DecisionRule(clauses, doc["fallback"])
    except (KeyError, TypeError) as err:
        raise ParseError(f"malformed rule document: {err}") from None
