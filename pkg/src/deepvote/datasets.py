"""Reference electorates used throughout the tests, demos and the ``reproduce`` command."""

from __future__ import annotations

import numpy as np

from .grades import GradeScale, GradingMatrix

# 15 voters grading 2 candidates; columns are (c1, c2)
EXAMPLE_CONTINUOUS = np.array([
    [0.59, 0.67], [0.49, 0.79], [0.45, 0.73], [0.43, 0.66], [0.46, 0.79],
    [0.44, 0.71], [0.54, 0.79], [0.59, 0.67], [0.43, 0.78], [0.48, 0.63],
    [0.95, 0.13], [0.95, 0.17], [0.92, 0.14], [0.91, 0.15], [0.95, 0.10],
])

# the same ballots as printed on the 6-level scale (N = 5)
EXAMPLE_DISCRETE = np.array([[0.4, 0.6]] * 10 + [[0.8, 0.0]] * 5)

EXAMPLE_BINARY = np.array([[0.0, 1.0]] * 10 + [[1.0, 0.0]] * 5)

# published deepest-point coordinates for the example, two decimals
EXAMPLE_DEEPEST_POINTS = {
    "wl1": (0.54, 0.67),
    "wl2": (0.64, 0.53),
    "wl3": (0.67, 0.48),
    "wl4": (0.68, 0.47),
    "wlinf": (0.69, 0.45),
    "tukey": (0.65, 0.51),
    "liu": (0.59, 0.67),
}

EXAMPLE_WINNERS = {
    "wl1": "c2", "wl2": "c1", "wl3": "c1", "wl4": "c1",
    "wlinf": "c1", "tukey": "c1", "liu": "c2",
}


def example_election(scale: str = "continuous") -> GradingMatrix:
    """The 15-voter, 2-candidate example on the requested scale."""
    if scale == "continuous":
        return GradingMatrix.from_ballots(EXAMPLE_CONTINUOUS)
    if scale == "discrete":
        return GradingMatrix.from_ballots(EXAMPLE_DISCRETE, scale=GradeScale.discrete(5))
    if scale == "binary":
        return GradingMatrix.from_ballots(EXAMPLE_BINARY, scale=GradeScale.binary())
    raise ValueError(f"unknown scale {scale!r}")


def hull_escape_election(a: float = 0.2, b: float = 0.5, c: float = 0.9) -> GradingMatrix:
    """Three voters, three candidates, each voter grading only one candidate.

    With 0 < a < b < c <= 1 the L1 deepest point is the origin, which lies
    outside the convex hull of the three ballots.
    """
    if not 0 < a < b < c <= 1:
        raise ValueError("need 0 < a < b < c <= 1")
    return GradingMatrix(np.diag([a, b, c]))
