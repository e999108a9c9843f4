import pytest

from pbreduce import InputError
from pbreduce.feature_search import (
    SearchConfig,
    SubsetResult,
    enumerate_subsets,
    evaluate_subset,
    rank_subsets,
    run_search,
    write_ranking_csv,
)
from pbreduce.separators import Hyperplane

# the strongest 8-feature combination drops area and concave_points
EIGHT_FEATURES = (
    "radius",
    "texture",
    "perimeter",
    "smoothness",
    "compactness",
    "concavity",
    "symmetry",
    "fractal_dimension",
)


def test_enumeration_counts_and_order():
    full = enumerate_subsets(1, 10)
    assert len(full) == 1023
    assert full[0] == ("radius",)
    assert full[-1] == enumerate_subsets(10, 10)[0]
    assert len(full[-1]) == 10
    sizes = [len(s) for s in full]
    assert sizes == sorted(sizes)

    eights = enumerate_subsets(8, 8)
    assert len(eights) == 45
    assert EIGHT_FEATURES in eights


def test_enumeration_rejects_bad_ranges():
    for bad in [(0, 3), (3, 2), (1, 11)]:
        with pytest.raises(InputError):
            enumerate_subsets(*bad)


def test_subset_result_validation():
    plane = Hyperplane((1.0, 0.0, 0.0), 0.0)
    with pytest.raises(InputError, match="non-empty"):
        SubsetResult((), plane, 0.5, 0)
    with pytest.raises(InputError, match="unknown"):
        SubsetResult(("girth",), plane, 0.5, 0)
    with pytest.raises(InputError, match="accuracy"):
        SubsetResult(("radius",), plane, 1.5, 0)


def test_evaluate_subset_is_deterministic(wdbc_records):
    config = SearchConfig(max_epochs=5)
    first = evaluate_subset(wdbc_records, ("radius", "texture"), config)
    second = evaluate_subset(wdbc_records, ("radius", "texture"), config)
    assert first == second
    assert first.features == ("radius", "texture")
    assert 0.0 <= first.accuracy <= 1.0
    assert first.lossy_count == 0


def test_single_feature_subsets_still_flow(wdbc_records):
    result = evaluate_subset(wdbc_records, ("radius",), SearchConfig(max_epochs=3))
    assert result.plane.dimension == 3


def test_ranking_tie_policy():
    plane = Hyperplane((1.0, 0.0, 0.0), 0.0)
    small = SubsetResult(("radius", "texture", "perimeter"), plane, 0.9, 0)
    large = SubsetResult(("radius", "texture", "perimeter", "area", "symmetry"), plane, 0.9, 0)
    better = SubsetResult(("area",), plane, 0.95, 0)
    later = SubsetResult(("texture", "perimeter", "area"), plane, 0.9, 0)
    ranked = rank_subsets([later, large, small, better])
    assert ranked == [better, small, later, large]
    with pytest.raises(InputError):
        rank_subsets([])


def test_parallel_schedule_matches_serial(wdbc_records):
    serial = run_search(wdbc_records, SearchConfig(max_epochs=3, jobs=1), 1, 1)
    parallel = run_search(wdbc_records, SearchConfig(max_epochs=3, jobs=2), 1, 1)
    assert serial == parallel
    assert [r.features for r in serial] == enumerate_subsets(1, 1)


def test_ranking_csv_shape(tmp_path, wdbc_records):
    results = run_search(wdbc_records, SearchConfig(max_epochs=3), 1, 1)
    out = tmp_path / "ranking.csv"
    write_ranking_csv(rank_subsets(results), out)
    lines = out.read_text().splitlines()
    assert lines[0] == "features,size,accuracy,nx,ny,nz,offset,lossy_count"
    assert len(lines) == 11
