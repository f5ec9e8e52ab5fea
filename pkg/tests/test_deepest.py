import math

import numpy as np
import pytest

from deepvote.audit import dispersion_configuration, extremes_configuration, noshow_closed_forms
from deepvote.datasets import hull_escape_election
from deepvote.deepest import (
    CLOSED_FORM,
    GRID_REGION,
    INTERVAL_BOX,
    SCALAR_OPTIMIZER,
    deepest_grid,
    deepest_point,
    deepest_wlp,
    in_convex_hull,
    scalar_pnorm_argmin,
)
from deepvote.depth import DepthSpec, depth_grid, depth_values
from deepvote.exceptions import EmptyInput, UnsupportedDimension
from deepvote.grades import GradingMatrix

from oracles import grid_argmin_scalar


def test_example_median(example):
    r = deepest_wlp(example, 1)
    np.testing.assert_array_equal(r.canonical_point, [0.54, 0.67])
    assert r.method == CLOSED_FORM and r.residual == 0.0


def test_example_midrange(example):
    r = deepest_wlp(example, math.inf)
    np.testing.assert_array_equal(r.canonical_point, [0.69, 0.445])


def test_example_mean(example):
    r = deepest_wlp(example, 2)
    np.testing.assert_allclose(r.canonical_point, [9.58 / 15, 7.91 / 15], rtol=0, atol=1e-15)


@pytest.mark.parametrize("p", [1.5, 2.5, 3])
def test_single_candidate_closed_forms(p):
    w = 2 ** (1 / (p - 1))
    low = deepest_wlp(GradingMatrix([[0.5, 0.5, 0.0]]), p).canonical_point[0]
    assert low == pytest.approx(0.5 * w / (1 + w), abs=1e-10)
    mid = deepest_wlp(GradingMatrix([[0.0, 1.0, 0.0]]), p).canonical_point[0]
    assert mid == pytest.approx(1 / (1 + w), abs=1e-10)


def test_single_candidate_p15_value():
    assert deepest_wlp(GradingMatrix([[0.5, 0.5, 0.0]]), 1.5).canonical_point[0] == pytest.approx(0.4, abs=1e-10)
    assert deepest_wlp(GradingMatrix([[0.0, 1.0, 0.0]]), 3).canonical_point[0] == pytest.approx(1 / (1 + math.sqrt(2)), abs=1e-10)


def test_hull_escape():
    m = hull_escape_election(0.2, 0.5, 0.9)
    r = deepest_wlp(m, 1)
    np.testing.assert_array_equal(r.canonical_point, [0.0, 0.0, 0.0])
    assert not in_convex_hull(r.canonical_point, m.profiles)
    assert in_convex_hull(m.profiles.mean(axis=0), m.profiles)


def test_even_count_median_box():
    m = GradingMatrix([[0.2, 0.4, 0.6, 0.8], [0.1, 0.1, 0.3, 0.3]])
    r = deepest_wlp(m, 1)
    assert r.set_kind == INTERVAL_BOX
    np.testing.assert_array_equal(r.lower, [0.4, 0.1])
    np.testing.assert_array_equal(r.upper, [0.6, 0.3])
    np.testing.assert_array_equal(r.canonical_point, [0.6, 0.3])
    corners = np.array([[0.4, 0.1], [0.4, 0.3], [0.6, 0.1], [0.5, 0.2]])
    np.testing.assert_allclose(depth_values(corners, m, DepthSpec.wlp(1)), r.depth, rtol=1e-14)
    assert r.to_dict()["deepest_set"]["lower"] == [0.4, 0.1]


# scalar solver

def test_scalar_unanimity():
    for p in (1.1, 2, 7.5):
        assert scalar_pnorm_argmin([0.37] * 5, p) == 0.37


@pytest.mark.parametrize("p", [1.1, 1.5, 2, 3, 10])
def test_scalar_symmetry(p):
    assert scalar_pnorm_argmin([0.0, 1.0], p) == pytest.approx(0.5, abs=1e-12)


def test_scalar_dispersion_second_coordinate():
    assert scalar_pnorm_argmin([1.0, 0.1, 0.1], 1.5) == pytest.approx(0.28, abs=1e-10)


def test_scalar_empty():
    with pytest.raises(EmptyInput):
        scalar_pnorm_argmin([], 2)


@pytest.mark.parametrize("p", [1.3, 2.0, 4.0])
def test_scalar_against_brute_force(p, rng):
    for _ in range(3):
        g = rng.random(7).tolist()
        assert scalar_pnorm_argmin(g, p) == pytest.approx(grid_argmin_scalar(g, p), abs=2e-5)


@pytest.mark.parametrize("p", [1.1, 1.5, 3, 10])
def test_scalar_restarts_agree(p, rng):
    for _ in range(10):
        g = rng.random(int(rng.integers(1, 20)))
        ref = scalar_pnorm_argmin(g, p)
        for _ in range(20):
            lo = g.min() - rng.random()
            hi = g.max() + rng.random()
            assert abs(scalar_pnorm_argmin(g, p, (lo, hi)) - ref) <= 1e-8


def test_scalar_bad_bracket():
    with pytest.raises(ValueError):
        scalar_pnorm_argmin([0.2, 0.8], 2, (0.3, 1.0))


@pytest.mark.parametrize("p", [1.5, 2.5, 4])
def test_componentwise_decomposition(p, rng):
    m = GradingMatrix(rng.random((4, 11)))
    r = deepest_wlp(m, p)
    assert r.method == SCALAR_OPTIMIZER
    for i in range(4):
        assert r.canonical_point[i] == scalar_pnorm_argmin(m.row(i), p)


def test_general_solver_matches_mean(example, rng):
    for row in [*example.grades, *rng.random((20, 9))]:
        assert abs(scalar_pnorm_argmin(row, 2.0) - row.mean()) <= 1e-10


def test_large_p_tends_to_midrange(example):
    mid = deepest_wlp(example, math.inf).canonical_point
    # at p = 64 the heavier upper tail of c2 still pulls the optimum ~3e-3 off the midrange
    assert np.abs(deepest_wlp(example, 64).canonical_point - mid).max() <= 5e-3
    assert np.abs(deepest_wlp(example, 512).canonical_point - mid).max() <= 1e-3


@pytest.mark.parametrize("p", [1.1, 1.5, 1.9, 2.5, 3, 5])
@pytest.mark.parametrize("eps", [0.05, 0.1, 0.3])
def test_three_voter_closed_forms(p, eps):
    for m, kind in ((dispersion_configuration(eps), 1.5), (extremes_configuration(eps), 3)):
        got = deepest_wlp(m, p).canonical_point
        w = 2 ** (1 / (p - 1))
        if kind < 2:
            expected = [0.5 * w / (1 + w), (1 + w * eps) / (1 + w)]
        else:
            expected = [1 / (1 + w), 0.5 * w / (1 + w) + eps]
        np.testing.assert_allclose(got, expected, rtol=0, atol=1e-8)
        np.testing.assert_allclose(expected, noshow_closed_forms(kind, eps) if p == kind else expected)


@pytest.mark.parametrize("p", [1.5, 2, 3])
@pytest.mark.parametrize("h", [0.01, 0.005])
def test_grid_argmax_near_solution(example, p, h):
    target = deepest_wlp(example, p).canonical_point
    got = np.array(depth_grid(example, DepthSpec.wlp(p), h).argmax())
    assert np.abs(got - target).max() <= h + 1e-12


@pytest.mark.parametrize("p", [1, 1.7, 2, 3])
def test_deepest_beats_random_points(p, rng):
    m = GradingMatrix(rng.random((3, 12)))
    r = deepest_wlp(m, p)
    assert np.all((0 <= r.canonical_point) & (r.canonical_point <= 1))
    others = depth_values(rng.random((2000, 3)), m, DepthSpec.wlp(p))
    assert others.max() <= r.depth + 1e-12


def test_midrange_minimizes_largest_deviation(rng):
    # the objective behind the midrange: sum over candidates of the worst deviation over voters
    axis = np.arange(101) / 100
    for _ in range(20):
        m = GradingMatrix(rng.random((2, int(rng.integers(1, 31)))))
        worst = [np.abs(axis[:, None] - row[None, :]).max(axis=1) for row in m.grades]
        total = worst[0][:, None] + worst[1][None, :]
        a, b = np.unravel_index(np.argmin(total), total.shape)
        mid = deepest_wlp(m, math.inf).canonical_point
        assert np.abs([axis[a], axis[b]] - mid).max() <= 0.01 + 1e-12


def test_wlinf_depth_peaks_away_from_midrange(example):
    # the mean-of-max-deviation depth is not separable; on the example its
    # lattice maximum sits far from the midrange point
    grid = depth_grid(example, DepthSpec.wlinf(), 0.005)
    assert grid.argmax() == (0.5, 0.65)
    mid = deepest_wlp(example, math.inf)
    assert grid.values.max() > mid.depth


# grid search

def test_grid_single_voter():
    r = deepest_grid(GradingMatrix([[0.3], [0.8]]), DepthSpec.wlp(2, grid_resolution=0.1))
    assert r.set_kind == GRID_REGION
    np.testing.assert_array_equal(r.region, [[0.3, 0.8]])
    np.testing.assert_array_equal(r.canonical_point, [0.3, 0.8])


def test_grid_tukey_example(example):
    r = deepest_grid(example, DepthSpec.tukey(grid_resolution=0.005))
    assert np.abs(r.canonical_point - [0.65, 0.51]).max() <= 0.05
    assert r.diagnostics["lattice_max_depth"] == 5 / 15
    assert r.depth == 5 / 15


def test_grid_liu_example(example):
    r = deepest_grid(example, DepthSpec.liu(grid_resolution=0.005))
    np.testing.assert_array_equal(r.canonical_point, [0.59, 0.67])
    assert r.depth == 204 / 455


def test_grid_needs_two_candidates(rng):
    with pytest.raises(UnsupportedDimension):
        deepest_point(GradingMatrix(rng.random((3, 5))), DepthSpec.liu())


def test_result_serializes(example):
    doc = deepest_point(example, DepthSpec.tukey(grid_resolution=0.02)).to_dict()
    assert doc["method"] == "grid_search"
    assert doc["deepest_set"]["kind"] == "grid_region"
    assert doc["deepest_set"]["size"] >= 1
