"""Endpoint sets of two-level curvature models.

The infinite-dimensional family of monotone-curvature arcs with prescribed
end curvatures and length collapses, for endpoint studies, to a grid over
piecewise-constant profiles with two levels: every spiral shares its
endpoint with some such profile.  This module evaluates the closed-form
endpoint maps, enumerates the model grid, and attaches the two parametric
boundary curves (gamma1: full-length single arcs, gamma2: two extreme-level
arcs with a sweeping join).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import least_squares

from .errors import InvalidDataError
from .geom import Pose

__all__ = ["z1", "z2", "z3", "BoundaryCurve", "EndpointSet",
           "endpoint_set_spiral", "fixed_turning_subset",
           "gamma2_canonical_check", "Gamma2Diagnostic"]

# below this the closed form loses digits to cancellation; the 3-term
# series is good to ~4e-20 relative there (both branches agree to 1e-12
# at the crossover)
_SERIES_CUTOFF = 1e-6


def z1(k: float, l: float) -> complex:
    """Endpoint of the arc of curvature k and length l traced from the
    origin along the X axis."""
    if l < 0.0:
        raise InvalidDataError("arc length must be nonnegative")
    u = k * l
    if abs(u) < _SERIES_CUTOFF:
        iu = 1j * u
        return l * (1.0 + iu / 2.0 + iu * iu / 6.0)
    return (2.0 / k) * math.sin(0.5 * u) * cmath.exp(0.5j * u)


def z2(q1: float, l1: float, q2: float, l2: float) -> complex:
    """Endpoint of the two-arc profile (q1 over l1, then q2 over l2)."""
    return z1(q1, l1) + cmath.exp(1j * q1 * l1) * z1(q2, l2)


def z3(q1: float, l1: float, q2: float, l2: float,
       q3: float, l3: float) -> complex:
    """Endpoint of the three-arc profile."""
    return (z1(q1, l1)
            + cmath.exp(1j * q1 * l1) * z1(q2, l2)
            + cmath.exp(1j * (q1 * l1 + q2 * l2)) * z1(q3, l3))


def _z1_vec(k: np.ndarray, l: np.ndarray) -> np.ndarray:
    k = np.asarray(k, dtype=float)
    l = np.asarray(l, dtype=float)
    u = k * l
    small = np.abs(u) < _SERIES_CUTOFF
    ks = np.where(small, 1.0, k)
    out = (2.0 / ks) * np.sin(0.5 * u) * np.exp(0.5j * u)
    iu = 1j * u
    series = l * (1.0 + iu / 2.0 + iu * iu / 6.0)
    return np.where(small, series, out)


def _z2_vec(q1, l1, q2, l2) -> np.ndarray:
    return _z1_vec(q1, l1) + np.exp(1j * np.asarray(q1) * l1) * _z1_vec(q2, l2)


@dataclass(frozen=True)
class BoundaryCurve:
    """Named sampled boundary curve with its parameter values."""

    name: str
    params: np.ndarray
    points: np.ndarray

    def transformed(self, rot: complex, shift: complex) -> "BoundaryCurve":
        return BoundaryCurve(self.name, self.params,
                             self.points * rot + shift)


@dataclass(frozen=True)
class EndpointSet:
    """Point cloud of model endpoints with generating parameters attached.

    boundary_loop is a closed polyline (last point joins the first)
    enclosing the cloud where such a loop is known in closed form;
    boundary_is_simple flags self-intersection of that loop (possible for
    large turnings), in which case containment tests need the even-odd
    rule.
    """

    points: np.ndarray
    params: np.ndarray
    bounds: Tuple[BoundaryCurve, ...]
    boundary_loop: np.ndarray
    boundary_is_simple: bool

    def transformed(self, rot: complex, shift: complex) -> "EndpointSet":
        return EndpointSet(self.points * rot + shift, self.params,
                           tuple(b.transformed(rot, shift)
                                 for b in self.bounds),
                           self.boundary_loop * rot + shift,
                           self.boundary_is_simple)


def _polygon_areas(geom) -> list:
    if geom.geom_type == "Polygon":
        return [geom.area]
    if hasattr(geom, "geoms"):
        out = []
        for g in geom.geoms:
            out.extend(_polygon_areas(g))
        return out
    return []


def _loop_is_simple(loop: np.ndarray) -> bool:
    """True when the even-odd fill of the loop is one significant face.

    Sampled boundary polylines of mutually tangent bounds can graze each
    other and produce zero-area slivers; those do not count as
    self-intersection.  A loop whose fill splits into several faces of
    comparable area (crossing bounds, large turnings) returns False.
    """
    from shapely import make_valid
    from shapely.geometry import LinearRing, Polygon

    if len(loop) < 3:
        return True
    coords = np.column_stack([loop.real, loop.imag])
    try:
        ring = LinearRing(coords)
    except Exception:
        return False
    if ring.is_valid and ring.is_simple:
        return True
    areas = _polygon_areas(make_valid(Polygon(coords)))
    total = sum(areas)
    if not areas or total <= 0.0:
        return False
    return total - max(areas) <= 1e-9 * total


def _interior_grid(lo: float, hi: float, n: int) -> np.ndarray:
    # open-interval nodes at j/(n+1); grids with n -> 2n+1 nest
    j = np.arange(1, n + 1, dtype=float)
    return lo + (hi - lo) * j / (n + 1.0)


def _apply_start(es: EndpointSet, start: Optional[Pose]) -> EndpointSet:
    if start is None:
        return es
    rot = cmath.exp(1j * start.tau)
    return es.transformed(rot, complex(start.x, start.y))


def endpoint_set_spiral(k1: float, k2: float, L: float, grid: int = 64,
                        start: Optional[Pose] = None) -> EndpointSet:
    """Endpoints of all two-level profiles with levels strictly inside
    (k1, k2), total length L, enumerated on a grid x grid x grid lattice.

    Attaches gamma1 (single arcs of length L, curvature spanning
    [k1, k2]) and gamma2 (profiles at the extreme levels k1, k2 with the
    split sweeping [0, L]); together they close up into boundary_loop.
    """
    if not (L > 0.0) or not math.isfinite(L):
        raise InvalidDataError("total length must be positive")
    if k1 == k2 or not (math.isfinite(k1) and math.isfinite(k2)):
        raise InvalidDataError("end curvatures must differ")
    if grid < 2:
        raise InvalidDataError("grid needs at least 2 steps")
    lo, hi = min(k1, k2), max(k1, k2)
    q = _interior_grid(lo, hi, grid)
    l1 = _interior_grid(0.0, L, grid)
    q1g, q2g, l1g = np.meshgrid(q, q, l1, indexing="ij")
    # two-level bracket: levels strictly ordered the way k1, k2 are
    keep = (q1g < q2g) if k1 < k2 else (q1g > q2g)
    q1v, q2v, l1v = q1g[keep], q2g[keep], l1g[keep]
    pts = _z2_vec(q1v, l1v, q2v, L - l1v)

    # the loop needs dense chords: polyline sag falls off quadratically
    # while the cloud's approach to the boundary only shrinks like 1/grid
    n = 16 * grid + 1
    qs = np.linspace(k1, k2, n)
    g1 = BoundaryCurve("gamma1", qs, _z1_vec(qs, np.full_like(qs, L)))
    ts = np.linspace(0.0, L, n)
    g2 = BoundaryCurve("gamma2", ts,
                       _z2_vec(np.full_like(ts, k1), L - ts,
                               np.full_like(ts, k2), ts))
    # gamma1 runs k1 -> k2, gamma2 ends at the full-length k2 arc; walking
    # gamma2 backwards returns to gamma1's start
    loop = np.concatenate([g1.points, g2.points[::-1][1:-1]])
    es = EndpointSet(points=pts,
                     params=np.column_stack([q1v, q2v, l1v]),
                     bounds=(g1, g2),
                     boundary_loop=loop,
                     boundary_is_simple=_loop_is_simple(loop))
    return _apply_start(es, start)


def fixed_turning_subset(k1: float, k2: float, L: float, theta: float,
                         grid: int = 64,
                         start: Optional[Pose] = None) -> EndpointSet:
    """Endpoints of two-level profiles constrained to a fixed turning
    theta = q1*l1 + q2*(L - l1).

    The free parameters reduce to (q1, l1); q2 follows from the
    constraint and tuples violating the level bracket are dropped.
    Boundary families pin one level to its extreme value: "free-head"
    varies the first-arc level against a k2 tail, "free-tail" the
    second-arc level behind a k1 head.
    """
    if not (L > 0.0):
        raise InvalidDataError("total length must be positive")
    lo, hi = min(k1, k2), max(k1, k2)
    if not (lo * L < theta < hi * L):
        raise InvalidDataError(
            "turning %g is outside the attainable range (%g, %g)"
            % (theta, lo * L, hi * L))
    q1 = _interior_grid(k1, k2, grid)
    l1 = _interior_grid(0.0, L, grid)
    q1g, l1g = np.meshgrid(q1, l1, indexing="ij")
    q2g = (theta - q1g * l1g) / (L - l1g)
    if k1 < k2:
        keep = (q1g < q2g) & (q2g < k2) & (k1 < q1g)
    else:
        keep = (q1g > q2g) & (q2g > k2) & (k1 > q1g)
    q1v, q2v, l1v = q1g[keep], q2g[keep], l1g[keep]
    pts = _z2_vec(q1v, l1v, q2v, L - l1v)

    # both families parametrized by the length t of the pinned-level arc;
    # they meet at t* where the free level reaches k1 (resp. k2)
    tstar = (theta - k1 * L) / (k2 - k1)
    n = 16 * grid + 1
    ta = np.linspace(0.0, tstar, n)
    qa = (theta - k2 * ta) / (L - ta)
    fa = BoundaryCurve("free-head", ta, _z2_vec(qa, L - ta,
                                                np.full_like(ta, k2), ta))
    tb = np.linspace(tstar, L, n)
    qb = (theta - k1 * (L - tb)) / tb
    fb = BoundaryCurve("free-tail", tb, _z2_vec(np.full_like(tb, k1),
                                                L - tb, qb, tb))
    # free-head starts and free-tail ends at the single-arc point
    # z1(theta/L, L), so the concatenation closes up
    loop = np.concatenate([fa.points, fb.points[1:-1]])
    es = EndpointSet(points=pts,
                     params=np.column_stack([q1v, q2v, l1v]),
                     bounds=(fa, fb),
                     boundary_loop=loop,
                     boundary_is_simple=_loop_is_simple(loop))
    return _apply_start(es, start)


@dataclass(frozen=True)
class Gamma2Diagnostic:
    """Result of fitting gamma2, after the normalizing motion, to its
    canonical cycloidal form."""

    kind: str
    residual: float
    radii: Tuple[float, ...]
    rates: Tuple[float, ...]


def _two_circle_model(x, t):
    a, b, w1, w2 = x
    return a * np.exp(1j * w1 * t) + b * np.exp(1j * w2 * t)


def _involute_model(x, t):
    r, w = x
    return r * np.exp(1j * w * t) * (1.0 - 1j * w * t)


def _cycloid_model(x, t):
    p = complex(x[0], x[1])
    v = complex(x[2], x[3])
    b = complex(x[4], x[5])
    return p + v * t + b * np.exp(1j * x[6] * t)


def gamma2_canonical_check(k1: float, k2: float, L: float,
                           samples: int = 160) -> Gamma2Diagnostic:
    """Fit the gamma2 boundary to its canonical cycloidal class.

    For k1 != 0 the curve is moved to canonical position (origin shifted
    to the start-circle center, rotation by k1*L - pi/2) and fitted with a
    two-circle trace a*e^(i*w1*t) + b*e^(i*w2*t): opposite rates give a
    hypocycloid, equal-sign rates an epicycloid.  k2 = 0 yields the
    involute of the start circle of curvature, fitted in its own
    canonical form.
    """
    if k1 == k2:
        raise InvalidDataError("end curvatures must differ")
    t = np.linspace(0.0, L, samples)
    g2 = _z2_vec(np.full_like(t, k1), L - t, np.full_like(t, k2), t)
    if k1 == 0.0:
        # straight start piece: the rolling support is a line, so the
        # trace is a plain cycloid, base point + drift + one circle
        w = g2 - L - 1j / k2
        x0 = np.array([0.0, 0.0, -1.0, 0.0, 0.0, -1.0 / k2, k2])
        fit = least_squares(
            lambda x: _pack(_cycloid_model(x, t) - w), x0, method="lm")
        res = float(np.max(np.abs(_cycloid_model(fit.x, t) - w)))
        return Gamma2Diagnostic("cycloid", res, (abs(complex(*fit.x[4:6])),),
                                (fit.x[6],))
    else:
        w = 1j * cmath.exp(-1j * k1 * L) * (g2 - 1j / k1)
        if k2 == 0.0:
            x0 = np.array([1.0 / k1, -k1])
            fit = least_squares(
                lambda x: _pack(_involute_model(x, t) - w), x0,
                method="lm")
            res = float(np.max(np.abs(_involute_model(fit.x, t) - w)))
            return Gamma2Diagnostic("circle-involute", res,
                                    (abs(fit.x[0]),), (fit.x[1],))
        x0 = np.array([1.0 / k1 - 1.0 / k2, 1.0 / k2, -k1, k2 - k1])
        kind = "hypocycloid" if k1 * (k2 - k1) > 0.0 else "epicycloid"
    fit = least_squares(lambda x: _pack(_two_circle_model(x, t) - w), x0,
                        method="lm")
    res = float(np.max(np.abs(_two_circle_model(fit.x, t) - w)))
    return Gamma2Diagnostic(kind, res, (abs(fit.x[0]), abs(fit.x[1])),
                            (fit.x[2], fit.x[3]))


def _pack(zv: np.ndarray) -> np.ndarray:
    return np.concatenate([zv.real, zv.imag])
