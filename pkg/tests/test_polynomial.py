import math
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pbreduce import (
    CostMatrix,
    InputError,
    Monomial,
    PseudoBooleanPolynomial,
    best_row_subset,
    column_minima_cost,
    degree_project,
    equivalent,
    evaluate,
    formulate,
    reduce,
    subset_indicator,
    to_text,
)

finite_costs = st.floats(min_value=0.0, max_value=100.0, allow_nan=False)


@st.composite
def cost_matrices(draw, max_rows=5, max_cols=6):
    m = draw(st.integers(min_value=1, max_value=max_rows))
    n = draw(st.integers(min_value=1, max_value=max_cols))
    cells = draw(
        st.lists(
            st.lists(finite_costs, min_size=n, max_size=n),
            min_size=m,
            max_size=m,
        )
    )
    return CostMatrix.from_rows(cells)


def all_nonempty_subsets(m):
    for size in range(1, m + 1):
        yield from combinations(range(m), size)


# -- worked examples kept as frozen oracles ---------------------------------


def test_two_by_two_collapses_to_constant_plus_one_term():
    matrix = CostMatrix.from_rows(
        [[5.4, 3.0], [4.5, 1.5]], rows=("sepal", "petal"), cols=("length", "width")
    )
    poly = formulate(matrix)
    assert poly.constant == pytest.approx(6.0, abs=1e-12)
    assert len(poly.monomials) == 1
    assert poly.monomials[0].term == (1,)
    assert poly.monomials[0].coefficient == pytest.approx(2.4, abs=1e-12)
    assert to_text(poly) == "6.0 + 2.4*y2"


def test_nearby_samples_share_a_reduction():
    a = formulate(CostMatrix.from_rows([[5.4, 3.4], [1.7, 0.2]]))
    b = formulate(CostMatrix.from_rows([[5.1, 3.7], [1.5, 0.4]]))
    for poly in (a, b):
        assert poly.constant == pytest.approx(1.9, abs=1e-12)
        assert [m.term for m in poly.monomials] == [(1,)]
        assert poly.monomials[0].coefficient == pytest.approx(6.9, abs=1e-12)
    assert equivalent(a, b)


def test_three_row_ladder_and_projection():
    matrix = CostMatrix.from_rows([[3, 1], [1, 2], [2, 5]])
    poly = formulate(matrix)
    assert poly.constant == 2.0
    assert [(m.term, m.coefficient) for m in poly.monomials] == [
        ((0,), 1.0),
        ((1,), 1.0),
        ((0, 1), 3.0),
        ((1, 2), 1.0),
    ]
    vec = degree_project(poly)
    assert vec.values == (2.0, 2.0, 4.0)
    assert vec.lossy

    assert best_row_subset(matrix, 1) == ((1,), 3.0)
    assert best_row_subset(matrix, 2) == ((0, 1), 2.0)


def test_single_row_matrix_is_pure_constant():
    poly = formulate(CostMatrix.from_rows([[2.0, 3.0, 4.0]]))
    assert poly.constant == 9.0
    assert poly.monomials == ()
    vec = degree_project(poly)
    assert vec.values == (9.0,)
    assert not vec.lossy


def test_sort_ties_break_toward_earlier_rows():
    # equal costs: the earlier row is treated as cheaper, so the prefix
    # term references it and the tied difference contributes zero
    poly = formulate(CostMatrix.from_rows([[1.0, 5.0], [1.0, 2.0]]))
    assert poly.constant == 3.0
    assert [(m.term, m.coefficient) for m in poly.monomials] == [((1,), 3.0)]


def test_all_zero_matrix_formulates_to_zero():
    poly = formulate(CostMatrix.from_rows([[0.0, 0.0], [0.0, 0.0]]))
    assert poly.constant == 0.0
    assert poly.monomials == ()


def test_identical_rows_leave_only_the_row_sum():
    poly = formulate(CostMatrix.from_rows([[2.0, 7.0], [2.0, 7.0], [2.0, 7.0]]))
    assert poly.constant == 9.0
    assert poly.monomials == ()


def test_dropping_the_cheap_row_costs_its_savings():
    # keeping only the expensive first row prices both columns at that row
    matrix = CostMatrix.from_rows([[5.4, 3.0], [4.5, 1.5]])
    poly = formulate(matrix)
    assert evaluate(poly, subset_indicator(2, (0,))) == pytest.approx(8.4, abs=1e-12)
    assert column_minima_cost(matrix, (0,)) == pytest.approx(8.4, abs=1e-12)
    # keeping both rows (or just the cheap one) stays at the constant
    assert evaluate(poly, subset_indicator(2, (0, 1))) == pytest.approx(6.0, abs=1e-12)
    assert column_minima_cost(matrix, (1,)) == pytest.approx(6.0, abs=1e-12)


def test_reduce_drops_exact_cancellations():
    poly = PseudoBooleanPolynomial(
        num_vars=2,
        constant=1.5,
        monomials=(Monomial(2.0, (1,)), Monomial(-2.0, (1,))),
    )
    reduced = reduce(poly)
    assert reduced.constant == 1.5
    assert reduced.monomials == ()


# -- the objective identity the construction exists for ----------------------


@settings(max_examples=300)
@given(cost_matrices())
def test_polynomial_recovers_column_minima_objective(matrix):
    poly = formulate(matrix)
    for subset in all_nonempty_subsets(matrix.num_rows):
        want = column_minima_cost(matrix, subset)
        got = evaluate(poly, subset_indicator(matrix.num_rows, subset))
        assert math.isclose(got, want, rel_tol=1e-9, abs_tol=1e-9)


@settings(max_examples=200)
@given(cost_matrices())
def test_keeping_all_rows_costs_the_constant(matrix):
    poly = formulate(matrix)
    full = column_minima_cost(matrix, range(matrix.num_rows))
    assert math.isclose(poly.constant, full, rel_tol=1e-9, abs_tol=1e-9)


@settings(max_examples=200)
@given(cost_matrices())
def test_formulated_polynomials_are_reduced_with_nonnegative_coefficients(matrix):
    poly = formulate(matrix)
    assert poly.is_reduced()
    assert all(m.coefficient > 0 for m in poly.monomials)
    assert reduce(poly) == poly


@settings(max_examples=100)
@given(cost_matrices(max_rows=4, max_cols=4))
def test_column_order_never_matters(matrix):
    base = formulate(matrix)
    n = matrix.num_cols
    for perm in permutations(range(n)):
        shuffled = CostMatrix(
            matrix.rows,
            tuple(matrix.cols[j] for j in perm),
            tuple(tuple(row[j] for j in perm) for row in matrix.cells),
        )
        assert formulate(shuffled) == base


@settings(max_examples=100)
@given(cost_matrices(max_rows=4, max_cols=4))
def test_row_order_never_changes_the_projection(matrix):
    base = degree_project(formulate(matrix))
    m = matrix.num_rows
    for perm in permutations(range(m)):
        shuffled = CostMatrix(
            tuple(matrix.rows[i] for i in perm),
            matrix.cols,
            tuple(matrix.cells[i] for i in perm),
        )
        vec = degree_project(formulate(shuffled))
        assert vec.values == base.values
        assert vec.lossy == base.lossy


@settings(max_examples=200)
@given(cost_matrices(max_rows=4, max_cols=4))
def test_projection_conserves_mass_and_constant(matrix):
    # summing the degree buckets equals evaluating at all-ones, and the
    # degree-0 slot equals evaluating at all-zeros; projection loses which
    # rows carry a coefficient, never how much of it there is
    poly = formulate(matrix)
    vec = degree_project(poly)
    ones = (1,) * matrix.num_rows
    zeros = (0,) * matrix.num_rows
    assert math.isclose(
        math.fsum(vec.values), evaluate(poly, ones), rel_tol=1e-9, abs_tol=1e-9
    )
    assert vec.values[0] == evaluate(poly, zeros) == poly.constant


@settings(max_examples=200)
@given(cost_matrices(max_rows=4, max_cols=4), st.randoms(use_true_random=False))
def test_reduce_merges_any_monomial_shuffle_back(matrix, rng):
    poly = formulate(matrix)
    split = []
    for mono in poly.monomials:
        half = mono.coefficient / 2
        split += [Monomial(half, mono.term), Monomial(mono.coefficient - half, mono.term)]
    rng.shuffle(split)
    messy = PseudoBooleanPolynomial(poly.num_vars, poly.constant, tuple(split))
    again = reduce(messy)
    assert again.is_reduced()
    assert equivalent(again, poly, tol=1e-12)


# -- equivalence and projection edges ----------------------------------------


def test_equivalent_treats_missing_terms_as_zero():
    a = PseudoBooleanPolynomial(2, 1.0, (Monomial(5e-10, (0,)),))
    b = PseudoBooleanPolynomial(2, 1.0, ())
    assert equivalent(a, b)
    assert not equivalent(a, b, tol=1e-10)


def test_equivalent_checks_constants_and_var_counts():
    a = PseudoBooleanPolynomial(2, 1.0, ())
    assert not equivalent(a, PseudoBooleanPolynomial(2, 1.1, ()))
    with pytest.raises(InputError):
        equivalent(a, PseudoBooleanPolynomial(3, 1.0, ()))
    with pytest.raises(InputError):
        equivalent(a, a, tol=-1.0)


def test_degree_project_rejects_unreduced_input():
    messy = PseudoBooleanPolynomial(2, 0.0, (Monomial(1.0, (1,)), Monomial(1.0, (0,))))
    with pytest.raises(InputError):
        degree_project(messy)


def test_degree_project_rejects_full_degree_terms():
    # a formulated polynomial never reaches degree m, so the projection
    # refuses terms that would fall outside its m slots
    poly = PseudoBooleanPolynomial(2, 0.0, (Monomial(1.0, (0, 1)),))
    with pytest.raises(InputError):
        degree_project(poly)


# -- validation ---------------------------------------------------------------


def test_matrix_rejects_bad_cells():
    with pytest.raises(InputError, match="negative"):
        CostMatrix.from_rows([[1.0, -0.5]])
    with pytest.raises(InputError, match="finite"):
        CostMatrix.from_rows([[float("nan")]])
    with pytest.raises(InputError, match="finite"):
        CostMatrix.from_rows([[float("inf")]])
    with pytest.raises(InputError, match="number"):
        CostMatrix.from_rows([["wide"]])


def test_matrix_rejects_bad_shapes_and_labels():
    with pytest.raises(InputError):
        CostMatrix.from_rows([])
    with pytest.raises(InputError):
        CostMatrix.from_rows([[1.0], [2.0, 3.0]])
    with pytest.raises(InputError, match="duplicate row"):
        CostMatrix.from_rows([[1.0], [2.0]], rows=("a", "a"))
    with pytest.raises(InputError, match="duplicate column"):
        CostMatrix.from_rows([[1.0, 2.0]], cols=("x", "x"))


def test_monomial_terms_must_be_strictly_increasing():
    with pytest.raises(InputError):
        Monomial(1.0, ())
    with pytest.raises(InputError):
        Monomial(1.0, (2, 1))
    with pytest.raises(InputError):
        Monomial(1.0, (1, 1))


def test_polynomial_rejects_out_of_range_terms():
    with pytest.raises(InputError):
        PseudoBooleanPolynomial(2, 0.0, (Monomial(1.0, (2,)),))


def test_evaluate_checks_assignment_length():
    poly = formulate(CostMatrix.from_rows([[1.0], [2.0]]))
    with pytest.raises(InputError):
        evaluate(poly, (0,))


def test_subset_helpers_reject_bad_subsets():
    matrix = CostMatrix.from_rows([[1.0], [2.0]])
    with pytest.raises(InputError):
        column_minima_cost(matrix, [])
    with pytest.raises(InputError):
        column_minima_cost(matrix, [5])
    with pytest.raises(InputError):
        best_row_subset(matrix, 0)


def test_to_text_names_variables_when_asked():
    poly = formulate(
        CostMatrix.from_rows([[3, 1], [1, 2], [2, 5]], rows=("a", "b", "c"))
    )
    assert to_text(poly) == "2.0 + 1.0*y1 + 1.0*y2 + 3.0*y1*y2 + 1.0*y2*y3"
    assert (
        to_text(poly, var_names=("a", "b", "c"))
        == "2.0 + 1.0*y[a] + 1.0*y[b] + 3.0*y[a]*y[b] + 1.0*y[b]*y[c]"
    )
    with pytest.raises(InputError):
        to_text(poly, var_names=("a",))
