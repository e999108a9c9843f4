import pytest

from pbreduce import InputError
from pbreduce.separators import Hyperplane
from pbreduce.svgplot import svg_scatter_2d, svg_scatter_3d

POINTS_2D = [(7.0, 1.6), (2.4, 6.0), (2.5, 7.0), (1.9, 6.9)]
LABELS = ["setosa", "versicolor", "virginica", "setosa"]
LINE = Hyperplane((-0.25, 1.0), -2.0)

POINTS_3D = [(1.0, 2.0, 3.0), (4.0, 5.0, 6.0), (0.5, 4.0, 2.0), (3.0, 1.0, 5.0)]


def test_2d_plot_is_deterministic_and_complete():
    first = svg_scatter_2d(POINTS_2D, LABELS, lines=[(LINE, "edge")], title="demo")
    second = svg_scatter_2d(POINTS_2D, LABELS, lines=[(LINE, "edge")], title="demo")
    assert first == second
    assert first.count("<circle") == 4
    assert first.count("stroke-dasharray") == 1
    assert "demo" in first and "edge" in first
    for cls in set(LABELS):
        assert cls in first


def test_3d_plot_draws_cube_points_and_plane():
    plane = Hyperplane((0.0, 0.0, 1.0), -4.0)  # z = 4 slices the data cube
    svg = svg_scatter_3d(POINTS_3D, LABELS, plane=plane)
    assert svg == svg_scatter_3d(POINTS_3D, LABELS, plane=plane)
    assert svg.count("<circle") == 4
    assert svg.count('stroke="#cccccc"') == 12
    assert "<polygon" in svg


def test_plane_missing_the_cube_leaves_no_trace():
    plane = Hyperplane((0.0, 0.0, 1.0), -1e9)
    svg = svg_scatter_3d(POINTS_3D, LABELS, plane=plane)
    assert "<polygon" not in svg


def test_unlabeled_points_get_a_bucket():
    svg = svg_scatter_2d([(0.0, 0.0), (1.0, 1.0)], [None, "a"])
    assert "unlabeled" in svg


def test_degenerate_spans_still_render():
    svg = svg_scatter_2d([(1.0, 2.0), (1.0, 2.0)], ["a", "b"])
    assert svg.count("<circle") == 2
    svg3 = svg_scatter_3d([(1.0, 2.0, 3.0)], ["a"])
    assert svg3.count("<circle") == 1


def test_plot_input_validation():
    with pytest.raises(InputError, match="no points"):
        svg_scatter_2d([], [])
    with pytest.raises(InputError):
        svg_scatter_2d([(1.0, 2.0, 3.0)], ["a"])
    with pytest.raises(InputError):
        svg_scatter_2d([(1.0, 2.0)], ["a", "b"])
    with pytest.raises(InputError, match="2-D"):
        svg_scatter_2d([(1.0, 2.0)], ["a"], lines=[(Hyperplane((1, 0, 0), 0), "")])
    with pytest.raises(InputError, match="3-D"):
        svg_scatter_3d(POINTS_3D, LABELS, plane=LINE)
