"""Pseudo-Boolean polynomial algebra over per-sample cost matrices.

A sample is an m x n grid of non-negative finite costs: rows are
measurement types, columns are features.  Each column is sorted ascending
and its successive cost differences become monomial coefficients on nested
prefix terms (the penalty ladder of keeping fewer rows); summing the
ladders of all columns yields a multilinear polynomial in one Boolean
variable per row.  Evaluating that polynomial at the assignment that sets
y_i = 0 exactly on a kept row subset S recovers the column-minima cost of
S, so the compact form carries the full aggregation objective.

All values are immutable and every operation is a pure function.  Sums are
accumulated with ``math.fsum`` (exactly rounded), so coefficients do not
depend on row or column ordering of the input matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import InputError

#: Default coefficient-comparison tolerance for equivalence checks.
DEFAULT_TOLERANCE = 1e-9


def _as_float(value, where: str) -> float:
    try:
        out = float(value)
    except (TypeError, ValueError):
        raise InputError(f"{where} must be a number, got {value!r}") from None
    return out


@dataclass(frozen=True)
class CostMatrix:
    """Per-sample cost grid with labeled rows (measurement types) and columns
    (features).  Cells must be finite and non-negative; labels unique."""

    rows: tuple[str, ...]
    cols: tuple[str, ...]
    cells: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        rows = tuple(self.rows)
        cols = tuple(self.cols)
        if not rows or not cols:
            raise InputError("cost matrix needs at least one row and one column")
        if len(set(rows)) != len(rows):
            raise InputError(f"duplicate row labels: {rows!r}")
        if len(set(cols)) != len(cols):
            raise InputError(f"duplicate column labels: {cols!r}")
        if len(self.cells) != len(rows):
            raise InputError(
                f"expected {len(rows)} cell rows, got {len(self.cells)}"
            )
        cells = []
        for r, row in zip(rows, self.cells):
            if len(row) != len(cols):
                raise InputError(
                    f"row {r!r} has {len(row)} cells, expected {len(cols)}"
                )
            checked = []
            for c, raw in zip(cols, row):
                v = _as_float(raw, f"cell ({r!r}, {c!r})")
                if not math.isfinite(v):
                    raise InputError(f"cell ({r!r}, {c!r}) is not finite: {raw!r}")
                if v < 0:
                    raise InputError(f"cell ({r!r}, {c!r}) is negative: {raw!r}")
                checked.append(v)
            cells.append(tuple(checked))
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "cells", tuple(cells))

    @classmethod
    def from_rows(cls, cells, rows=None, cols=None) -> "CostMatrix":
        """Build a matrix from nested lists, defaulting labels to r1..rm / c1..cn."""
        m = len(cells)
        n = len(cells[0]) if m else 0
        if rows is None:
            rows = tuple(f"r{i + 1}" for i in range(m))
        if cols is None:
            cols = tuple(f"c{j + 1}" for j in range(n))
        return cls(tuple(rows), tuple(cols), tuple(tuple(r) for r in cells))

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    @property
    def num_cols(self) -> int:
        return len(self.cols)


@dataclass(frozen=True)
class Monomial:
    """A coefficient times a product of distinct row variables.

    ``term`` is the strictly increasing tuple of row indices whose
    variables appear in the product; the constant term of a polynomial is
    held separately, so terms are never empty.
    """

    coefficient: float
    term: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficient", _as_float(self.coefficient, "coefficient"))
        term = tuple(int(i) for i in self.term)
        if not term:
            raise InputError("monomial term must be non-empty")
        if any(b <= a for a, b in zip(term, term[1:])):
            raise InputError(f"term must be strictly increasing, got {term!r}")
        object.__setattr__(self, "term", term)

    @property
    def degree(self) -> int:
        return len(self.term)


@dataclass(frozen=True)
class PseudoBooleanPolynomial:
    """A constant plus monomials over ``num_vars`` Boolean row variables.

    Construction accepts any well-formed monomial list; :func:`reduce`
    produces the canonical form (similar monomials merged, zero
    coefficients dropped, terms ordered by degree then lexicographically).
    """

    num_vars: int
    constant: float
    monomials: tuple[Monomial, ...]

    def __post_init__(self):
        if self.num_vars < 1:
            raise InputError(f"num_vars must be >= 1, got {self.num_vars}")
        object.__setattr__(self, "constant", _as_float(self.constant, "constant"))
        monomials = tuple(self.monomials)
        for mono in monomials:
            if mono.term[-1] >= self.num_vars:
                raise InputError(
                    f"term {mono.term!r} references variable beyond num_vars={self.num_vars}"
                )
        object.__setattr__(self, "monomials", monomials)

    def coefficient_of(self, term: Sequence[int]) -> float:
        """Sum of coefficients of monomials carrying exactly this term."""
        key = tuple(term)
        return math.fsum(m.coefficient for m in self.monomials if m.term == key)

    def is_reduced(self) -> bool:
        keys = [(m.degree, m.term) for m in self.monomials]
        return keys == sorted(set(keys)) and all(
            m.coefficient != 0.0 for m in self.monomials
        )


@dataclass(frozen=True)
class CoefficientVector:
    """Degree-aggregated view of a reduced polynomial.

    ``values[d]`` is the sum of coefficients of all degree-d monomials
    (``values[0]`` is the constant); ``lossy`` is True when some degree
    carried two or more distinct terms, i.e. variable identity was merged
    away by the aggregation.
    """

    values: tuple[float, ...]
    lossy: bool

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    def __len__(self) -> int:
        return len(self.values)


def formulate(matrix: CostMatrix) -> PseudoBooleanPolynomial:
    """Build the reduced penalty polynomial of a cost matrix.

    Per column, rows are sorted ascending by cost (ties by row index); the
    smallest cost joins the constant and each successive difference
    becomes a monomial on the prefix of rows sorted so far.  The result is
    in reduced canonical form, with one variable per matrix row.
    """
    m = matrix.num_rows
    constant_parts: list[float] = []
    term_parts: dict[tuple[int, ...], list[float]] = {}
    for j in range(matrix.num_cols):
        order = sorted(range(m), key=lambda i: (matrix.cells[i][j], i))
        costs = [matrix.cells[i][j] for i in order]
        constant_parts.append(costs[0])
        for k in range(m - 1):
            term = tuple(sorted(order[: k + 1]))
            term_parts.setdefault(term, []).append(costs[k + 1] - costs[k])
    monomials = []
    for term in sorted(term_parts, key=lambda t: (len(t), t)):
        coeff = math.fsum(term_parts[term])
        if coeff != 0.0:
            monomials.append(Monomial(coeff, term))
    return PseudoBooleanPolynomial(m, math.fsum(constant_parts), tuple(monomials))


def reduce(poly: PseudoBooleanPolynomial) -> PseudoBooleanPolynomial:
    """Merge similar monomials, drop zero coefficients, order canonically.

    Idempotent; evaluation at every Boolean point is unchanged.
    """
    parts: dict[tuple[int, ...], list[float]] = {}
    for mono in poly.monomials:
        parts.setdefault(mono.term, []).append(mono.coefficient)
    monomials = []
    for term in sorted(parts, key=lambda t: (len(t), t)):
        coeff = math.fsum(parts[term])
        if coeff != 0.0:
            monomials.append(Monomial(coeff, term))
    return PseudoBooleanPolynomial(poly.num_vars, poly.constant, tuple(monomials))


def evaluate(poly: PseudoBooleanPolynomial, assignment: Sequence[float]) -> float:
    """Evaluate at a 0/1 assignment vector of length ``num_vars``.

    Fractional assignments compute the multilinear extension, which is
    occasionally useful but not required anywhere in the pipeline.
    """
    if len(assignment) != poly.num_vars:
        raise InputError(
            f"assignment length {len(assignment)} != num_vars {poly.num_vars}"
        )
    parts = [poly.constant]
    for mono in poly.monomials:
        prod = mono.coefficient
        for i in mono.term:
            prod *= assignment[i]
        parts.append(prod)
    return math.fsum(parts)


def subset_indicator(num_vars: int, row_subset: Iterable[int]) -> tuple[int, ...]:
    """Assignment with y_i = 0 exactly on the kept rows of ``row_subset``."""
    kept = set(row_subset)
    return tuple(0 if i in kept else 1 for i in range(num_vars))


def column_minima_cost(matrix: CostMatrix, row_subset: Iterable[int]) -> float:
    """Total cost of describing the sample with only the rows in the subset:
    the sum over columns of the minimum cost among kept rows.

    This is the brute-force objective the polynomial encodes; for every
    non-empty subset S, ``evaluate(formulate(M), subset_indicator(m, S))``
    equals this value.
    """
    subset = sorted(set(row_subset))
    if not subset:
        raise InputError("row subset must be non-empty")
    if subset[0] < 0 or subset[-1] >= matrix.num_rows:
        raise InputError(
            f"row subset {subset!r} out of range for {matrix.num_rows} rows"
        )
    return math.fsum(
        min(matrix.cells[i][j] for i in subset) for j in range(matrix.num_cols)
    )


def best_row_subset(matrix: CostMatrix, size: int) -> tuple[tuple[int, ...], float]:
    """Exhaustively find the cheapest row subset of the given size.

    Returns the lexicographically smallest minimizer and its cost.  Meant
    for small row counts; the pipeline itself keeps all rows.
    """
    if not 1 <= size <= matrix.num_rows:
        raise InputError(
            f"subset size {size} out of range [1, {matrix.num_rows}]"
        )
    best: tuple[tuple[int, ...], float] | None = None
    for subset in combinations(range(matrix.num_rows), size):
        value = column_minima_cost(matrix, subset)
        if best is None or value < best[1]:
            best = (subset, value)
    assert best is not None
    return best


def degree_project(poly: PseudoBooleanPolynomial) -> CoefficientVector:
    """Collapse a reduced polynomial to its per-degree coefficient totals.

    The vector has length ``num_vars`` (degrees 0..m-1, the range a
    formulated polynomial can occupy); ``lossy`` flags degrees where two
    or more distinct terms were merged.
    """
    if not poly.is_reduced():
        raise InputError("degree_project requires a reduced canonical polynomial")
    buckets: list[list[float]] = [[] for _ in range(poly.num_vars)]
    for mono in poly.monomials:
        if mono.degree >= poly.num_vars:
            raise InputError(
                f"degree {mono.degree} monomial does not fit a length-{poly.num_vars} projection"
            )
        buckets[mono.degree].append(mono.coefficient)
    values = [poly.constant] + [math.fsum(buckets[d]) for d in range(1, poly.num_vars)]
    lossy = any(len(b) >= 2 for b in buckets)
    return CoefficientVector(tuple(values), lossy)


def equivalent(
    a: PseudoBooleanPolynomial,
    b: PseudoBooleanPolynomial,
    tol: float = DEFAULT_TOLERANCE,
) -> bool:
    """True when constants and every term coefficient agree within ``tol``.

    Both polynomials must be reduced and share ``num_vars``; a term absent
    from one side counts as zero.
    """
    if a.num_vars != b.num_vars:
        raise InputError(f"num_vars mismatch: {a.num_vars} != {b.num_vars}")
    if tol < 0:
        raise InputError(f"tolerance must be >= 0, got {tol}")
    if abs(a.constant - b.constant) > tol:
        return False
    ca = {m.term: m.coefficient for m in a.monomials}
    cb = {m.term: m.coefficient for m in b.monomials}
    for term in ca.keys() | cb.keys():
        if abs(ca.get(term, 0.0) - cb.get(term, 0.0)) > tol:
            return False
    return True


def _format_coeff(value: float) -> str:
    if value == int(value) and abs(value) < 1e15:
        return f"{value:.1f}"
    return f"{value:.12g}"


def to_text(poly: PseudoBooleanPolynomial, var_names: Sequence[str] | None = None) -> str:
    """Render e.g. ``6.0 + 2.4*y2`` (or ``2.4*y[petal]`` with names)."""
    if var_names is not None and len(var_names) != poly.num_vars:
        raise InputError("var_names length must equal num_vars")

    def var(i: int) -> str:
        return f"y[{var_names[i]}]" if var_names is not None else f"y{i + 1}"

    pieces = [_format_coeff(poly.constant)]
    for mono in poly.monomials:
        factors = "*".join(var(i) for i in mono.term)
        pieces.append(f"{_format_coeff(mono.coefficient)}*{factors}")
    return " + ".join(pieces)
