"""Penalty-based pseudo-Boolean reduction of labeled samples to
low-dimensional coefficient vectors, plus linear cluster separation."""

from .datasets import (
    WDBC_FEATURES,
    DatasetRecord,
    iris_schema,
    load_iris,
    load_wdbc,
    load_with_schema,
    wdbc_schema,
)
from .errors import (
    DataQualityWarning,
    DegenerateDataError,
    InputError,
    ParseError,
    SampleError,
    SizeLimitError,
)
from .feature_search import (
    SearchConfig,
    SubsetResult,
    enumerate_subsets,
    evaluate_subset,
    rank_subsets,
    run_search,
)
from .pipeline import (
    EquivalenceGroup,
    ReducedSample,
    SampleSchema,
    group_equivalent,
    reduce_dataset,
    reduce_sample,
)
from .polynomial import (
    DEFAULT_TOLERANCE,
    CoefficientVector,
    CostMatrix,
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
from .separators import (
    ClassificationReport,
    DecisionRule,
    Hyperplane,
    PocketConfig,
    binary_rule,
    classify,
    confidence,
    evaluate_rule,
    rule_from_text,
    rule_to_text,
    search_separator_exact,
    search_separator_pocket,
)

__version__ = "0.1.0"

__all__ = [
    "ClassificationReport",
    "CoefficientVector",
    "CostMatrix",
    "DEFAULT_TOLERANCE",
    "DataQualityWarning",
    "DatasetRecord",
    "DecisionRule",
    "DegenerateDataError",
    "EquivalenceGroup",
    "Hyperplane",
    "InputError",
    "Monomial",
    "ParseError",
    "PocketConfig",
    "PseudoBooleanPolynomial",
    "ReducedSample",
    "SampleError",
    "SampleSchema",
    "SearchConfig",
    "SizeLimitError",
    "SubsetResult",
    "WDBC_FEATURES",
    "best_row_subset",
    "binary_rule",
    "classify",
    "column_minima_cost",
    "confidence",
    "degree_project",
    "enumerate_subsets",
    "equivalent",
    "evaluate",
    "evaluate_rule",
    "evaluate_subset",
    "formulate",
    "group_equivalent",
    "iris_schema",
    "load_iris",
    "load_wdbc",
    "load_with_schema",
    "rank_subsets",
    "reduce",
    "reduce_dataset",
    "reduce_sample",
    "rule_from_text",
    "rule_to_text",
    "run_search",
    "search_separator_exact",
    "search_separator_pocket",
    "subset_indicator",
    "to_text",
    "wdbc_schema",
]
