import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from deepvote.depth import DepthSpec
from deepvote.exceptions import EmptyInput, UnsupportedDimension
from deepvote.grades import GradeScale, GradingMatrix, quantize
from deepvote.voting import (
    TieBreak,
    approval_count,
    default_rule_name,
    elect,
    elect_rule,
    majority_grade,
    range_grade,
    ranking_argmax,
    resolve_rule,
)

grades_2d = arrays(
    np.float64,
    st.tuples(st.integers(1, 4), st.integers(1, 12)),
    elements=st.floats(0, 1, allow_nan=False),
)


@pytest.mark.parametrize("rule, winner", [("wl1", "c2"), ("wl2", "c1"), ("wl3", "c1"), ("wlinf", "c1")])
def test_example_winners(example, rule, winner):
    out = elect(example, DepthSpec.parse(rule))
    assert out.winner_label == winner
    assert out.winner_set == (int(winner[1]) - 1,)


def test_unanimous_favourite():
    m = GradingMatrix([[1.0] * 5, [0.0] * 5, [0.0] * 5])
    for spec in (DepthSpec.wlp(1), DepthSpec.wlp(2), DepthSpec.wlp(3.5), DepthSpec.wlinf()):
        out = elect(m, spec)
        assert out.winner == 0
        assert out.aggregated_grades[0] == 1.0


def test_example_majority_grade(example):
    assert majority_grade(example.row(0)) == 0.54


@pytest.mark.parametrize("grades, expected", [
    ([0.1, 0.9, 0.5], 0.5),
    ([0.2, 0.4, 0.6, 0.8], 0.6),
    ([0.3], 0.3),
])
def test_majority_grade(grades, expected):
    assert majority_grade(grades) == expected


def test_example_range_grade(example):
    assert range_grade(example.row(1)) == pytest.approx(7.91 / 15, abs=1e-15)


@pytest.mark.parametrize("grades, expected", [([0.0, 1.0], 0.5), ([1, 1, 0, 0], 0.5), ([0.7] * 9, 0.7)])
def test_range_grade(grades, expected):
    assert range_grade(grades) == expected


@pytest.mark.parametrize("fn", [majority_grade, range_grade])
def test_empty_rows_rejected(fn):
    with pytest.raises(EmptyInput):
        fn([])


# ties

def test_tie_policies():
    m = GradingMatrix([[0.2, 0.8], [0.8, 0.2], [0.1, 0.1]], candidate_labels=["zed", "amy", "bob"])
    spec = DepthSpec.wlp(2)
    report = elect(m, spec)
    assert report.winner is None and report.winner_label is None
    assert report.winner_set == (0, 1)
    assert elect(m, spec, TieBreak.LOWEST).winner == 0
    assert elect(m, spec, TieBreak.LABEL).winner_label == "amy"


def test_tiebreak_parse():
    assert TieBreak.parse(" Label ") is TieBreak.LABEL
    with pytest.raises(ValueError):
        TieBreak.parse("coin")


def test_even_electorate_uses_upper_middle():
    # lower middles would favour c2, upper middles favour c1
    m = GradingMatrix([[0.1, 0.2, 0.7, 0.9], [0.3, 0.4, 0.5, 0.6]])
    out = elect(m, DepthSpec.wlp(1))
    np.testing.assert_array_equal(out.aggregated_grades, [0.7, 0.5])
    assert out.winner == 0


def test_grid_rules_need_two_candidates():
    m = GradingMatrix(np.full((3, 4), 0.5))
    with pytest.raises(UnsupportedDimension):
        elect(m, DepthSpec.tukey())


# rule catalogue

@pytest.mark.parametrize("selector, name, kind", [
    ("mj", "MajorityJudgment", "wlp"),
    ("rv", "RangeVoting", "wlp"),
    ("approval", "ApprovalVoting", "wlp"),
    ("midrange", "MidrangeVoting", "wlinf"),
    ("wl3", "DeepestVoting[wL3]", "wlp"),
    ("wlp:1.5", "DeepestVoting[wL1.5]", "wlp"),
    ("tukey", "DeepestVoting[tukey]", "tukey"),
])
def test_resolve_rule(selector, name, kind):
    got_name, spec = resolve_rule(selector)
    assert got_name == name and spec.kind == kind


def test_default_rule_name():
    assert default_rule_name(DepthSpec.wlinf()) == "DeepestVoting[wLinf]"


def test_approval_needs_binary_grades(example):
    with pytest.raises(ValueError):
        elect_rule(example, "approval")
    b = quantize(example, GradeScale.binary())
    assert elect_rule(b, "approval").rule_name == "ApprovalVoting"


def test_outcome_document(example):
    doc = elect_rule(example, "mj").to_dict()
    assert doc["rule_name"] == "MajorityJudgment"
    assert doc["winner"] == "c2" and doc["winner_set"] == ["c2"]
    assert doc["aggregated_grades"] == {"c1": 0.54, "c2": 0.67}
    assert doc["deepest"]["method"] == "closed_form"


# special cases

@settings(max_examples=150, deadline=None)
@given(grades_2d)
def test_mean_rule_matches_range_ranking(g):
    m = GradingMatrix(g)
    scores = [range_grade(r) for r in m.grades]
    assert elect(m, DepthSpec.wlp(2)).winner_set == ranking_argmax(scores)


@settings(max_examples=150, deadline=None)
@given(grades_2d)
def test_median_rule_matches_majority_grades(g):
    m = GradingMatrix(g)
    out = elect(m, DepthSpec.wlp(1))
    np.testing.assert_array_equal(out.aggregated_grades, [majority_grade(r) for r in m.grades])


@settings(max_examples=150, deadline=None)
@given(arrays(np.int8, st.tuples(st.integers(1, 4), st.integers(1, 15)), elements=st.integers(0, 1)))
def test_binary_mean_rule_matches_approval_counts(b):
    m = GradingMatrix(b.astype(float), scale=GradeScale.binary())
    counts = [approval_count(r) for r in m.grades]
    assert elect(m, DepthSpec.wlp(2)).winner_set == ranking_argmax(counts)


# grading conditions

RULES = [DepthSpec.wlp(1), DepthSpec.wlp(1.5), DepthSpec.wlp(2), DepthSpec.wlp(3), DepthSpec.wlinf()]


@pytest.mark.parametrize("spec", RULES, ids=lambda s: s.name)
def test_candidate_permutation(spec, rng):
    for _ in range(20):
        m = GradingMatrix(rng.random((4, int(rng.integers(1, 12)))))
        perm = rng.permutation(4)
        base = elect(m, spec)
        out = elect(m.permute_candidates(perm), spec)
        np.testing.assert_array_equal(out.aggregated_grades, base.aggregated_grades[perm])
        assert sorted(perm[list(out.winner_set)]) == sorted(base.winner_set)


@pytest.mark.parametrize("spec", RULES, ids=lambda s: s.name)
def test_voter_permutation(spec, rng):
    for _ in range(20):
        m = GradingMatrix(rng.random((3, int(rng.integers(1, 15)))))
        out = elect(m.permute_voters(rng.permutation(m.n_voters)), spec)
        np.testing.assert_array_equal(out.aggregated_grades, elect(m, spec).aggregated_grades)


@pytest.mark.parametrize("spec", RULES, ids=lambda s: s.name)
@pytest.mark.parametrize("alpha", [0.0, 0.1, 1 / 3, 0.77, 1.0])
def test_constant_row_keeps_its_grade(spec, alpha, rng):
    g = rng.random((3, 7))
    g[1] = alpha
    assert elect(GradingMatrix(g), spec).aggregated_grades[1] == alpha


@pytest.mark.parametrize("spec", RULES, ids=lambda s: s.name)
def test_raising_a_grade_never_hurts(spec, rng):
    for _ in range(30):
        g = rng.random((2, int(rng.integers(1, 10))))
        before = elect(GradingMatrix(g), spec).aggregated_grades[0]
        j = int(rng.integers(g.shape[1]))
        g[0, j] = rng.uniform(g[0, j], 1.0)
        assert elect(GradingMatrix(g), spec).aggregated_grades[0] >= before


@pytest.mark.parametrize("spec", RULES, ids=lambda s: s.name)
def test_other_rows_are_irrelevant(spec, rng):
    g = rng.random((4, 9))
    base = elect(GradingMatrix(g), spec).aggregated_grades[2]
    for _ in range(10):
        h = rng.random((4, 9))
        h[2] = g[2]
        assert elect(GradingMatrix(h), spec).aggregated_grades[2] == base


def test_solver_ties_use_tolerance():
    # identical rows solved iteratively tie exactly
    g = np.array([[0.1, 0.4, 0.9], [0.1, 0.4, 0.9]])
    out = elect(GradingMatrix(g), DepthSpec.wlp(3))
    assert out.winner_set == (0, 1)


def test_deepest_metadata_is_carried(example):
    out = elect(example, DepthSpec.wlp(3))
    assert out.deepest.method == "scalar_optimizer"
    assert out.deepest.residual <= 1e-10
    assert math.isclose(out.deepest.canonical_point[0], out.aggregated_grades[0])
