"""Slow, independent reference computations used to freeze expected values.

Nothing here imports the package's geometry or solvers; inputs are plain
lists of tuples.
"""

import itertools
import math

TOL = 1e-12


def wlp_depth_loops(x, ballots, p):
    total = 0.0
    for ballot in ballots:
        for xi, gi in zip(x, ballot):
            total += abs(gi - xi) ** p
    return 1.0 / (1.0 + total / len(ballots))


def wlinf_depth_loops(x, ballots):
    total = 0.0
    for ballot in ballots:
        total += max(abs(gi - xi) for xi, gi in zip(x, ballot))
    return 1.0 / (1.0 + total / len(ballots))


def _orient(a, b, c):
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _on_segment(a, b, x):
    if abs(_orient(a, b, x)) > TOL:
        return False
    return (min(a[0], b[0]) - TOL <= x[0] <= max(a[0], b[0]) + TOL
            and min(a[1], b[1]) - TOL <= x[1] <= max(a[1], b[1]) + TOL)


def triangle_contains(a, b, c, x):
    """Closed containment by orientation signs, degenerate triangles included."""
    if abs(_orient(a, b, c)) <= TOL:
        return _on_segment(a, b, x) or _on_segment(b, c, x) or _on_segment(a, c, x)
    o = (_orient(a, b, x), _orient(b, c, x), _orient(c, a, x))
    return all(v >= -TOL for v in o) or all(v <= TOL for v in o)


def simplicial_depth_enum(x, ballots):
    if len(ballots[0]) == 1:
        hits = sum(
            min(a[0], b[0]) - TOL <= x[0] <= max(a[0], b[0]) + TOL
            for a, b in itertools.combinations(ballots, 2)
        )
        return hits / math.comb(len(ballots), 2)
    hits = sum(triangle_contains(a, b, c, x) for a, b, c in itertools.combinations(ballots, 3))
    return hits / math.comb(len(ballots), 3)


def tukey_depth_enum(x, ballots):
    """Minimum closed-halfplane count over every pairwise bisector of critical normals."""
    n = len(ballots)
    vecs = [(b[0] - x[0], b[1] - x[1]) for b in ballots]
    moving = [v for v in vecs if abs(v[0]) > TOL or abs(v[1]) > TOL]
    if not moving:
        return 1.0
    candidates = []
    critical = []
    for vx, vy in moving:
        r = math.hypot(vx, vy)
        candidates += [(vx / r, vy / r), (-vx / r, -vy / r)]
        critical += [(-vy / r, vx / r), (vy / r, -vx / r)]
    for (ax, ay), (bx, by) in itertools.combinations(critical, 2):
        sx, sy = ax + bx, ay + by
        r = math.hypot(sx, sy)
        if r > 1e-9:
            candidates += [(sx / r, sy / r), (-sx / r, -sy / r)]
    best = n
    for ux, uy in candidates:
        count = sum(ux * vx + uy * vy >= -TOL for vx, vy in vecs)
        best = min(best, count)
    return best / n


def tukey_depth_1d(x, grades):
    return min(sum(g <= x for g in grades), sum(g >= x for g in grades)) / len(grades)


def grid_argmin_scalar(grades, p, steps=200000):
    """Argmin of sum |g - x|^p over a fine lattice of [0, 1]."""
    best, arg = math.inf, None
    for k in range(steps + 1):
        x = k / steps
        f = sum(abs(g - x) ** p for g in grades)
        if f < best:
            best, arg = f, x
    return arg
