"""Depth functions of a point with respect to the voters' grade scatterplot.

Four families are available:

* weighted L^p depth with power weight, ``1 / (1 + mean_j sum_i |x_i - g_ij|^p)``;
* its L^inf counterpart, ``1 / (1 + mean_j max_i |x_i - g_ij|)``;
* Tukey's halfspace depth (exact for d <= 2, sampled above);
* Liu's simplicial depth over closed simplices of distinct voters.

Halfspace and simplicial depths are carried internally as integer counts so
that ties between lattice nodes are decided exactly.
"""

from __future__ import annotations

import io
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DimensionMismatch, TooFewVoters, UnsupportedDimension
from .grades import GradingMatrix

WLP = "wlp"
WLINF = "wlinf"
TUKEY = "tukey"
LIU = "liu"

# sign-of-determinant and barycentric slack; grades live in [0, 1]
GEOM_TOL = 1e-12

_CHUNK = 2048


@dataclass(frozen=True)
class DepthSpec:
    """Selects a depth family and the parameters of its solvers.

    ``tukey_directions`` only matters for halfspace depth with d > 2 and
    ``grid_resolution`` is the lattice pitch used when the deepest set is
    located by grid search. ``1 / grid_resolution`` must be an integer.
    """

    kind: str
    p: float | None = None
    tukey_directions: int = 1000
    grid_resolution: float = 0.005
    seed: int = 0

    def __post_init__(self):
        if self.kind not in (WLP, WLINF, TUKEY, LIU):
            raise ValueError(f"unknown depth kind {self.kind!r}")
        if self.kind == WLP:
            if self.p is None or not math.isfinite(self.p):
                raise ValueError("weighted L^p depth needs a finite p (use wlinf for p = inf)")
            if self.p < 1:
                raise ValueError(f"p = {self.p} < 1 does not give a unique deepest point")
            object.__setattr__(self, "p", float(self.p))
        elif self.p is not None:
            raise ValueError(f"{self.kind} depth takes no p")
        if self.tukey_directions < 100:
            raise ValueError("tukey_directions must be at least 100")
        lattice_steps(self.grid_resolution)

    @classmethod
    def wlp(cls, p: float, **kw) -> "DepthSpec":
        if p == math.inf:
            return cls(WLINF, **kw)
        return cls(WLP, p, **kw)

    @classmethod
    def wlinf(cls, **kw) -> "DepthSpec":
        return cls(WLINF, **kw)

    @classmethod
    def tukey(cls, **kw) -> "DepthSpec":
        return cls(TUKEY, **kw)

    @classmethod
    def liu(cls, **kw) -> "DepthSpec":
        return cls(LIU, **kw)

    @classmethod
    def parse(cls, selector: str, **kw) -> "DepthSpec":
        """Parse ``wl1``, ``wl2.5``, ``wlp:<p>``, ``wlinf``, ``tukey`` or ``liu``."""
        s = selector.strip().lower()
        if s in ("wlinf", "wlp:inf"):
            return cls.wlinf(**kw)
        if s in (TUKEY, LIU):
            return cls(s, **kw)
        for prefix in ("wlp:", "wl"):
            if s.startswith(prefix):
                try:
                    p = float(s[len(prefix):])
                except ValueError:
                    break
                return cls.wlp(p, **kw)
        raise ValueError(f"unknown depth selector {selector!r}")

    @property
    def exponent(self) -> float | None:
        """p for the weighted L^p family (inf for wlinf), None otherwise."""
        if self.kind == WLP:
            return self.p
        if self.kind == WLINF:
            return math.inf
        return None

    @property
    def name(self) -> str:
        if self.kind == WLP:
            return f"wl{self.p:g}"
        return self.kind

    @property
    def is_grid_based(self) -> bool:
        return self.kind in (TUKEY, LIU)


@dataclass(frozen=True)
class DepthValue:
    value: float
    exact: bool = True


def lattice_steps(resolution: float) -> int:
    """Number of lattice steps M such that M * resolution == 1."""
    if not 0 < resolution < 1:
        raise ValueError(f"resolution {resolution} must lie in (0, 1)")
    steps = round(1.0 / resolution)
    if abs(steps * resolution - 1.0) > 1e-9:
        raise ValueError(f"1 / resolution must be an integer, got {1.0 / resolution}")
    return steps


def lattice(resolution: float) -> np.ndarray:
    steps = lattice_steps(resolution)
    return np.arange(steps + 1) / steps


def _point(x, m: GradingMatrix) -> np.ndarray:
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.shape[0] != m.n_candidates:
        raise DimensionMismatch(f"point has {x.shape[0]} coordinates, matrix has {m.n_candidates} candidates")
    return x


def _points(X, d: int) -> np.ndarray:
    X = np.atleast_2d(np.asarray(X, dtype=float))
    if X.shape[1] != d:
        raise DimensionMismatch(f"points have {X.shape[1]} coordinates, expected {d}")
    return X


# weighted L^p family

def _wl_loss(X: np.ndarray, P: np.ndarray, p: float) -> np.ndarray:
    out = np.empty(len(X))
    for s in range(0, len(X), _CHUNK):
        diff = np.abs(P[None, :, :] - X[s:s + _CHUNK, None, :])
        if p == math.inf:
            per_voter = diff.max(axis=2)
        else:
            per_voter = (diff ** p).sum(axis=2)
        out[s:s + _CHUNK] = per_voter.mean(axis=1)
    return out


def wlp_depth(x, m: GradingMatrix, p: float) -> float:
    """Weighted L^p depth with weight x -> x^p.

    >>> from deepvote.grades import GradingMatrix
    >>> wlp_depth([1, 1], GradingMatrix([[0.0], [0.0]]), 1)
    0.3333333333333333
    """
    if not (p >= 1 and math.isfinite(p)):
        raise ValueError("p must be finite and >= 1")
    x = _point(x, m)
    return float(1.0 / (1.0 + _wl_loss(x[None], m.profiles, float(p))[0]))


def wlinf_depth(x, m: GradingMatrix) -> float:
    x = _point(x, m)
    return float(1.0 / (1.0 + _wl_loss(x[None], m.profiles, math.inf)[0]))


# halfspace depth

def _halfspace_counts_1d(X: np.ndarray, P: np.ndarray) -> np.ndarray:
    x = X[:, 0][:, None]
    g = P[:, 0][None, :]
    return np.minimum((g <= x).sum(axis=1), (g >= x).sum(axis=1))


def _halfspace_counts_2d(X: np.ndarray, P: np.ndarray) -> np.ndarray:
    # A closed halfplane through x holds n minus the points of the opposite
    # open halfplane; the fullest open halfplane can be rotated until its
    # boundary touches a data direction, so it is one of the n angular
    # windows [theta_i, theta_i + pi).
    n = len(P)
    out = np.empty(len(X), dtype=np.int64)
    for s in range(0, len(X), _CHUNK):
        V = P[None, :, :] - X[s:s + _CHUNK, None, :]
        coincident = np.all(np.abs(V) <= GEOM_TOL, axis=2)
        vx, vy = V[..., 0], V[..., 1]
        cross = vx[:, :, None] * vy[:, None, :] - vy[:, :, None] * vx[:, None, :]
        dot = vx[:, :, None] * vx[:, None, :] + vy[:, :, None] * vy[:, None, :]
        window = (cross > GEOM_TOL) | ((np.abs(cross) <= GEOM_TOL) & (dot > 0))
        window &= ~coincident[:, None, :]
        window &= ~coincident[:, :, None]
        fullest = window.sum(axis=2).max(axis=1)
        out[s:s + _CHUNK] = n - fullest
    return out


def _sample_directions(d: int, count: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    u = rng.standard_normal((count, d))
    return u / np.linalg.norm(u, axis=1, keepdims=True)


def _halfspace_count_sampled(x: np.ndarray, P: np.ndarray, directions: int, seed: int) -> int:
    d = len(x)
    V = P - x
    coincident = np.all(np.abs(V) <= GEOM_TOL, axis=1)
    normals = [_sample_directions(d, directions, seed)]
    movable = V[~coincident]
    for combo in itertools.combinations(range(len(movable)), d - 1):
        A = movable[list(combo)]
        _, sv, vt = np.linalg.svd(A)
        if sv[-1] > GEOM_TOL:
            normals.append(vt[-1][None])
    U = np.vstack(normals)
    U = np.vstack([U, -U])
    proj = V @ U.T
    closed = (proj >= -GEOM_TOL).sum(axis=0)
    return int(closed.min())


def halfspace_count(x, m: GradingMatrix, directions: int = 1000, seed: int = 0) -> int:
    """Fewest voters in a closed halfspace containing ``x``.

    Exact for one and two candidates. With more candidates the minimum is
    taken over ``directions`` random normals plus every hyperplane through
    ``x`` and d - 1 voters, which can only over-estimate the true count.
    """
    x = _point(x, m)
    P = m.profiles
    d = m.n_candidates
    if d == 1:
        return int(_halfspace_counts_1d(x[None], P)[0])
    if d == 2:
        return int(_halfspace_counts_2d(x[None], P)[0])
    return _halfspace_count_sampled(x, P, directions, seed)


def tukey_depth(x, m: GradingMatrix, directions: int = 1000, seed: int = 0) -> float:
    return halfspace_count(x, m, directions, seed) / m.n_voters


# simplicial depth

def _simplex_contains(V: np.ndarray, X: np.ndarray) -> np.ndarray:
    """Closed containment of each row of ``X`` in the hull of the rows of ``V``."""
    k = len(V)
    a = V[0]
    if k == 1:
        return np.all(np.abs(X - a) <= GEOM_TOL, axis=1)
    E = (V[1:] - a).T
    sv = np.linalg.svd(E, compute_uv=False)
    if sv[-1] <= GEOM_TOL:
        # affinely dependent vertices: the hull is the union of the hulls of
        # the facets (Caratheodory)
        inside = np.zeros(len(X), dtype=bool)
        for drop in range(k):
            inside |= _simplex_contains(np.delete(V, drop, axis=0), X)
        return inside
    R = (X - a).T
    lam = np.linalg.pinv(E) @ R
    resid = np.abs(E @ lam - R).max(axis=0)
    return (
        (resid <= GEOM_TOL)
        & np.all(lam >= -GEOM_TOL, axis=0)
        & (lam.sum(axis=0) <= 1 + GEOM_TOL)
    )


def _simplex_counts(X: np.ndarray, P: np.ndarray) -> np.ndarray:
    n, d = P.shape
    counts = np.zeros(len(X), dtype=np.int64)
    for combo in itertools.combinations(range(n), d + 1):
        counts += _simplex_contains(P[list(combo)], X)
    return counts


def simplex_count(x, m: GradingMatrix) -> int:
    """Number of (d+1)-subsets of voters whose closed hull contains ``x``."""
    x = _point(x, m)
    if m.n_voters < m.n_candidates + 1:
        raise TooFewVoters(f"simplicial depth needs at least {m.n_candidates + 1} voters")
    return int(_simplex_counts(x[None], m.profiles)[0])


def simplicial_depth(x, m: GradingMatrix) -> float:
    """Share of voter simplices (distinct voters, closed hulls) containing ``x``."""
    count = simplex_count(x, m)
    return count / math.comb(m.n_voters, m.n_candidates + 1)


# dispatch

def depth_counts(X, m: GradingMatrix, spec: DepthSpec) -> np.ndarray:
    """Integer numerators of halfspace or simplicial depth at many points."""
    X = _points(X, m.n_candidates)
    P = m.profiles
    d = m.n_candidates
    if spec.kind == TUKEY:
        if d == 1:
            return _halfspace_counts_1d(X, P)
        if d == 2:
            return _halfspace_counts_2d(X, P)
        return np.array([
            _halfspace_count_sampled(x, P, spec.tukey_directions, spec.seed) for x in X
        ])
    if spec.kind == LIU:
        if m.n_voters < d + 1:
            raise TooFewVoters(f"simplicial depth needs at least {d + 1} voters")
        return _simplex_counts(X, P)
    raise ValueError(f"{spec.kind} depth has no integer form")


def depth_denominator(m: GradingMatrix, spec: DepthSpec) -> int:
    if spec.kind == TUKEY:
        return m.n_voters
    if spec.kind == LIU:
        return math.comb(m.n_voters, m.n_candidates + 1)
    raise ValueError(f"{spec.kind} depth has no integer form")


def depth_values(X, m: GradingMatrix, spec: DepthSpec) -> np.ndarray:
    """Evaluate the selected depth at each row of ``X``."""
    X = _points(X, m.n_candidates)
    if spec.kind in (WLP, WLINF):
        return 1.0 / (1.0 + _wl_loss(X, m.profiles, spec.exponent))
    return depth_counts(X, m, spec) / depth_denominator(m, spec)


def evaluate_depth(x, m: GradingMatrix, spec: DepthSpec) -> DepthValue:
    x = _point(x, m)
    exact = not (spec.kind == TUKEY and m.n_candidates > 2)
    return DepthValue(float(depth_values(x[None], m, spec)[0]), exact)


@dataclass(frozen=True, eq=False)
class DepthGrid:
    """Depth sampled on the square lattice of [0,1]^2.

    ``values[a, b]`` is the depth at ``(x1[a], x2[b])``. Row-major order runs
    over x1 in the outer loop and x2 in the inner loop. ``counts`` holds the
    integer numerators for halfspace and simplicial depth.
    """

    x1: np.ndarray
    x2: np.ndarray
    values: np.ndarray
    counts: np.ndarray | None
    spec: DepthSpec

    @property
    def points(self) -> np.ndarray:
        g1, g2 = np.meshgrid(self.x1, self.x2, indexing="ij")
        return np.column_stack([g1.ravel(), g2.ravel()])

    def rows(self):
        for a, u in enumerate(self.x1):
            for b, v in enumerate(self.x2):
                yield float(u), float(v), float(self.values[a, b])

    def argmax(self) -> tuple[float, float]:
        a, b = np.unravel_index(np.argmax(self.values), self.values.shape)
        return float(self.x1[a]), float(self.x2[b])

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("x1,x2,depth\n")
        for u, v, val in self.rows():
            buf.write(f"{u:.17g},{v:.17g},{val:.17g}\n")
        return buf.getvalue()


def depth_grid(m: GradingMatrix, spec: DepthSpec, resolution: float) -> DepthGrid:
    """Evaluate ``spec`` on the lattice {0, h, ..., 1}^2 for a two-candidate election."""
    if m.n_candidates != 2:
        raise UnsupportedDimension("depth grids are only produced for two candidates")
    axis = lattice(resolution)
    g1, g2 = np.meshgrid(axis, axis, indexing="ij")
    X = np.column_stack([g1.ravel(), g2.ravel()])
    counts = None
    if spec.is_grid_based:
        counts = depth_counts(X, m, spec).reshape(g1.shape)
        values = counts / depth_denominator(m, spec)
    else:
        values = depth_values(X, m, spec).reshape(g1.shape)
    return DepthGrid(axis, axis.copy(), values, counts, spec)
