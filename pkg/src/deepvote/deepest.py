"""Deepest points of the grade scatterplot over the unit cube.

For the weighted L^p family the problem splits into one scalar problem per
candidate: minimise ``sum_j |g_j - x|^p`` over x. Closed forms cover p = 1
(median interval), p = 2 (mean) and p = inf (midrange); other p go through a
derivative bisection. Halfspace and simplicial depths are maximised on a
lattice and summarised by the centroid of the maximising nodes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog

from .depth import (
    LIU,
    TUKEY,
    WLINF,
    WLP,
    DepthSpec,
    depth_denominator,
    depth_grid,
    evaluate_depth,
)
from .exceptions import EmptyInput, UnsupportedDimension
from .grades import GradingMatrix

CLOSED_FORM = "closed_form"
SCALAR_OPTIMIZER = "scalar_optimizer"
GRID_SEARCH = "grid_search"

SINGLE_POINT = "single_point"
INTERVAL_BOX = "interval_box"
GRID_REGION = "grid_region"

BRACKET_TOL = 1e-12
# ties between lattice values of the weighted L^p depths
GRID_TIE_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class DeepestResult:
    """A deepest point together with a description of the whole deepest set.

    ``set_kind`` is one of ``single_point``, ``interval_box`` (then ``lower``
    and ``upper`` bound the box) or ``grid_region`` (then ``region`` lists
    the maximising lattice nodes). ``depth`` is the depth at
    ``canonical_point``.
    """

    canonical_point: np.ndarray
    set_kind: str
    depth: float
    method: str
    residual: float = 0.0
    lower: np.ndarray | None = None
    upper: np.ndarray | None = None
    region: np.ndarray | None = None
    exact: bool = True
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        doc = {
            "canonical_point": [float(v) for v in self.canonical_point],
            "deepest_set": {"kind": self.set_kind},
            "depth": float(self.depth),
            "method": self.method,
            "residual": float(self.residual),
            "exact": self.exact,
        }
        if self.set_kind == INTERVAL_BOX:
            doc["deepest_set"]["lower"] = [float(v) for v in self.lower]
            doc["deepest_set"]["upper"] = [float(v) for v in self.upper]
        elif self.set_kind == GRID_REGION:
            doc["deepest_set"]["size"] = int(len(self.region))
            doc["deepest_set"]["lower"] = [float(v) for v in self.region.min(axis=0)]
            doc["deepest_set"]["upper"] = [float(v) for v in self.region.max(axis=0)]
        if self.diagnostics:
            doc["diagnostics"] = dict(self.diagnostics)
        return doc


def _slope(x: float, grades: np.ndarray, p: float) -> float:
    # derivative of sum_j |g_j - x|^p up to the factor p; fsum keeps it
    # independent of voter order and monotone in every grade
    diff = x - grades
    return math.fsum(np.sign(diff) * np.abs(diff) ** (p - 1))


def _bisect(grades: np.ndarray, p: float, lo: float, hi: float) -> tuple[float, float]:
    # Only the bracket width stops the search: an absolute slope test fires
    # spuriously once |g - x|^(p-1) underflows for large p, and a fixed
    # number of sign decisions keeps the result monotone in every grade.
    while hi - lo > BRACKET_TOL:
        mid = 0.5 * (lo + hi)
        s = _slope(mid, grades, p)
        if s == 0.0:
            return mid, 0.0
        if s > 0:
            hi = mid
        else:
            lo = mid
    mid = 0.5 * (lo + hi)
    return mid, p * abs(_slope(mid, grades, p))


def scalar_pnorm_argmin(grades, p: float, bracket: tuple[float, float] | None = None) -> float:
    """Unique minimiser of ``sum_j |g_j - x|^p`` for finite p > 1.

    The derivative is continuous and strictly increasing, so bisection on it
    converges from any bracket holding every grade. The default bracket is
    the grade range [0, 1], which keeps the answer monotone in each grade.

    >>> round(scalar_pnorm_argmin([0.0, 1.0, 0.0], 3.0), 8)
    0.41421356
    """
    x, _ = _scalar_solve(grades, p, bracket)
    return x


def _scalar_solve(grades, p: float, bracket=None) -> tuple[float, float]:
    g = np.asarray(grades, dtype=float).reshape(-1)
    if g.size == 0:
        raise EmptyInput("no grades to aggregate")
    if not (p > 1 and math.isfinite(p)):
        raise ValueError("scalar solver needs a finite p > 1")
    lo, hi = (0.0, 1.0) if bracket is None else map(float, bracket)
    if lo > g.min() or hi < g.max():
        raise ValueError(f"bracket [{lo}, {hi}] does not hold every grade")
    if g.min() == g.max():
        return float(g[0]), 0.0
    return _bisect(g, float(p), lo, hi)


def majority_grade(grades) -> float:
    """Middle order statistic, taking the upper middle for an even count.

    >>> majority_grade([0.2, 0.4, 0.6, 0.8])
    0.6
    """
    r = np.sort(np.asarray(grades, dtype=float).reshape(-1))
    if r.size == 0:
        raise EmptyInput("no grades to aggregate")
    return float(r[r.size // 2])


def range_grade(grades) -> float:
    """Mean grade, correctly rounded and exact for unanimous rows."""
    g = np.asarray(grades, dtype=float).reshape(-1)
    if g.size == 0:
        raise EmptyInput("no grades to aggregate")
    if g.min() == g.max():
        return float(g[0])
    return min(max(math.fsum(g) / g.size, float(g.min())), float(g.max()))


def midrange_grade(grades) -> float:
    g = np.asarray(grades, dtype=float).reshape(-1)
    if g.size == 0:
        raise EmptyInput("no grades to aggregate")
    return 0.5 * (float(g.min()) + float(g.max()))


def _median_interval(row: np.ndarray) -> tuple[float, float]:
    r = np.sort(row)
    n = r.size
    if n % 2:
        return float(r[n // 2]), float(r[n // 2])
    return float(r[n // 2 - 1]), float(r[n // 2])


def deepest_wlp(m: GradingMatrix, p: float) -> DeepestResult:
    """Deepest point of the weighted L^p depth, ``p`` in [1, inf].

    For p = 1 with an even electorate the deepest set is the box of median
    intervals; its canonical point takes the upper middle grade of every
    row, which is the majority grade.
    """
    if not p >= 1:
        raise ValueError(f"p = {p} < 1 is not supported")
    rows = m.grades
    d = m.n_candidates
    if m.n_voters == 0:
        raise EmptyInput("no voters")
    lower = upper = None
    residual = 0.0
    method = CLOSED_FORM
    set_kind = SINGLE_POINT
    if p == 1:
        bounds = np.array([_median_interval(r) for r in rows])
        point = np.array([majority_grade(r) for r in rows])
        lower, upper = bounds[:, 0], bounds[:, 1]
        if np.any(lower < upper):
            set_kind = INTERVAL_BOX
        else:
            lower = upper = None
    elif p == 2:
        point = np.array([range_grade(r) for r in rows])
    elif p == math.inf:
        point = np.array([midrange_grade(r) for r in rows])
    else:
        solved = [_scalar_solve(r, p) for r in rows]
        point = np.array([s[0] for s in solved])
        residual = max(s[1] for s in solved)
        method = SCALAR_OPTIMIZER
    spec = DepthSpec.wlp(p)
    depth = evaluate_depth(point, m, spec).value
    return DeepestResult(
        canonical_point=point.reshape(d),
        set_kind=set_kind,
        depth=depth,
        method=method,
        residual=residual,
        lower=lower,
        upper=upper,
    )


def deepest_grid(m: GradingMatrix, spec: DepthSpec) -> DeepestResult:
    """Maximise the depth on the lattice of pitch ``spec.grid_resolution``.

    Every lattice node attaining the maximum joins the deepest region and
    the canonical point is the region's centroid. Halfspace and simplicial
    depths compare integer counts; the L^p depths use a 1e-12 tolerance.
    """
    if m.n_candidates != 2:
        raise UnsupportedDimension("grid search for the deepest point needs exactly two candidates")
    grid = depth_grid(m, spec, spec.grid_resolution)
    if grid.counts is not None:
        flat = grid.counts.ravel()
        mask = flat == flat.max()
        best = flat.max() / depth_denominator(m, spec)
    else:
        flat = grid.values.ravel()
        mask = flat >= flat.max() - GRID_TIE_TOL
        best = flat.max()
    region = grid.points[mask]
    centroid = region.mean(axis=0)
    depth = evaluate_depth(centroid, m, spec).value
    return DeepestResult(
        canonical_point=centroid,
        set_kind=GRID_REGION,
        depth=depth,
        method=GRID_SEARCH,
        region=region,
        exact=False,
        diagnostics={
            "grid_resolution": spec.grid_resolution,
            "lattice_max_depth": float(best),
            "region_size": int(mask.sum()),
        },
    )


def deepest_point(m: GradingMatrix, spec: DepthSpec) -> DeepestResult:
    if spec.kind in (WLP, WLINF):
        return deepest_wlp(m, spec.exponent)
    if spec.kind in (TUKEY, LIU):
        return deepest_grid(m, spec)
    raise ValueError(f"unknown depth kind {spec.kind!r}")


def in_convex_hull(x, points, tol: float = 1e-9) -> bool:
    """Whether ``x`` is a convex combination of the rows of ``points`` (LP feasibility)."""
    P = np.atleast_2d(np.asarray(points, dtype=float))
    x = np.asarray(x, dtype=float).reshape(-1)
    k = len(P)
    A_eq = np.vstack([P.T, np.ones((1, k))])
    b_eq = np.concatenate([x, [1.0]])
    res = linprog(np.zeros(k), A_eq=A_eq, b_eq=b_eq, bounds=[(0, None)] * k, method="highs")
    if res.status != 0:
        return False
    return bool(np.abs(A_eq @ res.x - b_eq).max() <= tol)
