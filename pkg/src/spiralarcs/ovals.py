"""Closeness modelling for closed convex curves with four curvature extrema.

A candidate closed curve has periodic piecewise curvature k(s) >= 0 with
exactly four extrema k1 < k2 > k3 < k4 > k1 reached after arcs of lengths
L1..L4.  Splitting the curve at two opposite vertices gives two one-vertex
curves; for a fixed turning mu of the first half, each half's reachable
endpoints form a planar set.  The two sets intersect exactly when a closed
curve with that mu exists, so sweeping mu and testing intersection probes
how much freedom the closure conditions really leave.
"""

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
import shapely
from scipy.optimize import brentq, least_squares
from shapely.geometry import MultiPoint, Polygon

from .curves import PiecewiseConstCurve
from .errors import InvalidDataError, SolverError
from .model import (BoundaryCurve, EndpointSet, _interior_grid, _z1_vec,
                    z1)

_TWO_PI = 2.0 * math.pi

# Concave-hull tightness for recovering the unnamed boundary arcs from the
# sampled cloud.  Smaller hugs tighter; calibrated so the closed-form
# bound samples stay on the hull without the hull fragmenting.
_HULL_RATIO = 0.12


@dataclass(frozen=True)
class OvalSpec:
    """Arc lengths and curvature extrema of a four-vertex candidate."""

    k1: float
    k2: float
    k3: float
    k4: float
    L1: float
    L2: float
    L3: float
    L4: float

    def __post_init__(self):
        vals = (self.k1, self.k2, self.k3, self.k4,
                self.L1, self.L2, self.L3, self.L4)
        if not all(math.isfinite(v) for v in vals):
            raise InvalidDataError("oval spec values must be finite")
        if min(self.L1, self.L2, self.L3, self.L4) <= 0.0:
            raise InvalidDataError("arc lengths must be positive")
        if min(self.k1, self.k2, self.k3, self.k4) < 0.0:
            raise InvalidDataError("curvature levels must be nonnegative")
        if not (self.k1 < self.k2 and self.k3 < self.k2
                and self.k3 < self.k4 and self.k1 < self.k4):
            raise InvalidDataError(
                "extrema must alternate: k1 < k2 > k3 < k4 > k1")

    @property
    def perimeter(self) -> float:
        return self.L1 + self.L2 + self.L3 + self.L4

    @property
    def scale(self) -> float:
        # linear size of the endpoint sets; half the perimeter bounds the
        # diameter of anything either half-curve can reach
        return 0.5 * self.perimeter


@dataclass(frozen=True)
class OneVertexModel:
    """Four-segment curve rising to one curvature maximum, then falling.

    levels = (r1, r2, f1, f2) with r1 <= r2 (rising part) and f1 >= f2
    (falling part); splits = (x, y) are the lengths of the first segment
    of each part; lengths = (La, Lb) are the part totals.
    """

    levels: Tuple[float, float, float, float]
    splits: Tuple[float, float]
    lengths: Tuple[float, float]

    def __post_init__(self):
        r1, r2, f1, f2 = self.levels
        x, y = self.splits
        La, Lb = self.lengths
        if not (La > 0.0 and Lb > 0.0):
            raise InvalidDataError("part lengths must be positive")
        if not (0.0 <= x <= La and 0.0 <= y <= Lb):
            raise InvalidDataError("splits must lie inside their parts")
        if not (r1 <= r2 and f1 >= f2):
            raise InvalidDataError(
                "levels must rise before the vertex and fall after it")

    @property
    def segments(self) -> Tuple[Tuple[float, float], ...]:
        r1, r2, f1, f2 = self.levels
        x, y = self.splits
        La, Lb = self.lengths
        segs = ((r1, x), (r2, La - x), (f1, y), (f2, Lb - y))
        return tuple((k, l) for k, l in segs if l > 0.0)

    @property
    def turning(self) -> float:
        return sum(k * l for k, l in self.segments)

    def curve(self) -> PiecewiseConstCurve:
        return PiecewiseConstCurve(self.segments)


@dataclass(frozen=True)
class ClosenessReport:
    """Outcome of sweeping one turning parameter over its natural range."""

    parameter: str
    entries: Tuple[Tuple[float, bool, float], ...]
    contacts: Tuple[float, ...]
    verdict: str


@dataclass(frozen=True)
class OvalCertificate:
    """An explicit closed curve witnessing that closure is possible."""

    mu: float
    vertex: complex
    segments: Tuple[Tuple[float, float], ...]
    turning: float
    endpoint_gap: float
    min_level: float


def natural_mu_range(spec: OvalSpec) -> Tuple[float, float]:
    """Turning range over the first two arcs forced by the level brackets.

    May be empty (lo >= hi), which the caller interprets as "no such
    oval".
    """
    lo = max(spec.k1 * spec.L1 + spec.k3 * spec.L2,
             _TWO_PI - spec.k4 * (spec.L3 + spec.L4))
    hi = min(spec.k2 * (spec.L1 + spec.L2),
             _TWO_PI - (spec.k3 * spec.L3 + spec.k1 * spec.L4))
    return (lo, hi)


def natural_nu_range(spec: OvalSpec) -> Tuple[float, float]:
    """Same bracket argument applied to the two arcs around the vertex
    pair of maximal curvature."""
    lo = max(spec.k3 * (spec.L2 + spec.L3),
             _TWO_PI - (spec.k4 * spec.L4 + spec.k2 * spec.L1))
    hi = min(spec.k2 * spec.L2 + spec.k4 * spec.L3,
             _TWO_PI - spec.k1 * (spec.L4 + spec.L1))
    return (lo, hi)


def _chain_vec(segs) -> np.ndarray:
    """Endpoints of piecewise-constant chains, vectorized over members.

    segs is a sequence of (k_array, l_array) pairs, one per segment.
    """
    total = None
    phase = None
    for k, l in segs:
        step = _z1_vec(np.asarray(k, dtype=float), np.asarray(l, dtype=float))
        if phase is not None:
            step = step * phase
        total = step if total is None else total + step
        turn = np.asarray(k, dtype=float) * np.asarray(l, dtype=float)
        rot = np.exp(1j * turn)
        phase = rot if phase is None else phase * rot
    return total


def _raw_cloud(ka: float, kb: float, kc: float, La: float, Lb: float,
               theta: float, grid: int):
    """Endpoint cloud of the rising/falling two-part model in its own
    frame (start at the origin heading along +x), turning fixed to theta.

    Levels kb > max(ka, kc).  Enumerates interior grids over two rising
    levels, the rising split, the first falling level and the falling
    split; the last falling level is solved from the turning constraint
    and bracket-filtered.
    """
    lo = ka * La + kc * Lb
    hi = kb * (La + Lb)
    if not (lo < theta < hi):
        raise InvalidDataError(
            "turning %.6f outside the feasible interval (%.6f, %.6f)"
            % (theta, lo, hi))
    rg = _interior_grid(ka, kb, grid)
    fg = _interior_grid(kc, kb, grid)
    xg = _interior_grid(0.0, La, grid)
    yg = _interior_grid(0.0, Lb, grid)
    i1, i2 = np.triu_indices(grid, 1)
    r1p, r2p = rg[i1], rg[i2]

    r1, x, f1, y = [a.ravel() for a in
                    np.meshgrid(r1p, xg, fg, yg, indexing="ij")]
    r2 = np.meshgrid(r2p, xg, fg, yg, indexing="ij")[0].ravel()
    f2 = (theta - r1 * x - r2 * (La - x) - f1 * y) / (Lb - y)
    keep = (f2 > kc) & (f2 < f1)
    if not np.any(keep):
        raise InvalidDataError(
            "no admissible curve on the grid for turning %.6f" % theta)
    r1, r2, x, f1, f2, y = (a[keep] for a in (r1, r2, x, f1, f2, y))
    pts = _chain_vec([(r1, x), (r2, La - x), (f1, y), (f2, Lb - y)])
    params = np.column_stack([r1, r2, x, f1, f2, y])
    return pts, params


def _bound_ab(ka: float, kb: float, kc: float, La: float, Lb: float,
              theta: float, samples: int):
    """Two-arc boundary family: q1 on La then q2 on Lb, q1*La+q2*Lb=theta,
    parametrized by u = (q2-q1)/2."""
    T = La + Lb
    u_lo = max((theta - kb * T) / (2.0 * Lb), (kc * T - theta) / (2.0 * La))
    u_hi = min((theta - ka * T) / (2.0 * Lb), (kb * T - theta) / (2.0 * La))
    if u_lo > u_hi:
        raise InvalidDataError("two-arc bound family is empty")
    u = np.linspace(u_lo, u_hi, samples)
    if u_lo < 0.0 < u_hi:
        u = np.unique(np.concatenate([u, [0.0]]))
    q1 = (theta - 2.0 * u * Lb) / T
    q2 = (theta + 2.0 * u * La) / T
    pts = _chain_vec([(q1, np.full_like(q1, La)),
                      (q2, np.full_like(q2, Lb))])
    return u, pts


def _bound_cd(ka: float, kb: float, kc: float, La: float, Lb: float,
              theta: float, samples: int):
    """Three-arc boundary family at the extreme levels ka, kb, kc with
    lengths solved from total length and turning, parametrized by
    v = (l3-l1)/2."""
    T = La + Lb
    den = 2.0 * kb - ka - kc
    lead = kb * T - theta
    v_lo = max((lead - La * den) / (2.0 * (kb - kc)),
               -lead / (2.0 * (kb - ka)))
    v_hi = min(lead / (2.0 * (kb - kc)),
               (Lb * den - lead) / (2.0 * (kb - ka)))
    if v_lo > v_hi:
        raise InvalidDataError("three-arc bound family is empty")
    v = np.linspace(v_lo, v_hi, samples)
    if v_lo < 0.0 < v_hi:
        v = np.unique(np.concatenate([v, [0.0]]))
    l1 = (lead - 2.0 * v * (kb - kc)) / den
    l3 = l1 + 2.0 * v
    l2 = T - l1 - l3
    pts = _chain_vec([(np.full_like(l1, ka), l1),
                      (np.full_like(l2, kb), l2),
                      (np.full_like(l3, kc), l3)])
    return v, pts


def _region_loop(points: np.ndarray) -> np.ndarray:
    """Boundary ring of the endpoint set: concave hull of all samples.

    Falls back to the convex hull when the triangulation degenerates
    (clouds collapse toward a curve near the turning limits).
    """
    mp = MultiPoint(np.column_stack([points.real, points.imag]))
    try:
        hull = shapely.concave_hull(mp, ratio=_HULL_RATIO)
    except Exception:
        hull = None
    if hull is None or hull.geom_type != "Polygon" or not hull.is_valid:
        hull = mp.convex_hull
    if hull.geom_type != "Polygon":
        # everything is collinear; report the degenerate outline
        xy = np.asarray(hull.coords)
        return xy[:, 0] + 1j * xy[:, 1]
    xy = np.asarray(hull.exterior.coords)[:-1]
    return xy[:, 0] + 1j * xy[:, 1]


def _build_args(spec: OvalSpec, value: float, orientation: str,
                parameter: str):
    """Raw-frame build parameters and the frame map for each of the four
    (parameter, orientation) combinations.

    The first set is traced from the origin along direction -pi/2; the
    second is the reversed complementary arc (curvature -k(s4-s)) traced
    along +pi/2, which equals the conjugate of a raw build on the
    complementary data.
    """
    s = spec
    if parameter == "mu":
        if orientation == "first":
            args = (s.k1, s.k2, s.k3, s.L1, s.L2, value)
            tf = lambda z: -1j * z
        else:
            args = (s.k1, s.k4, s.k3, s.L4, s.L3, _TWO_PI - value)
            tf = lambda z: np.conj(-1j * z)
    elif parameter == "nu":
        if orientation == "first":
            args = (-s.k2, -s.k3, -s.k4, s.L2, s.L3, -value)
            tf = lambda z: -1j * np.conj(z)
        else:
            args = (-s.k2, -s.k1, -s.k4, s.L1, s.L4, value - _TWO_PI)
            tf = lambda z: 1j * z
    else:
        raise InvalidDataError("parameter must be 'mu' or 'nu'")
    return args, tf


def one_vertex_endpoint_set(spec: OvalSpec, value: float,
                            orientation: str = "first", grid: int = 8,
                            parameter: str = "mu") -> EndpointSet:
    """Reachable endpoints of one half of the candidate at fixed turning.

    orientation "first" models the half from the low-curvature vertex
    (turning = value), "second" the reversed complementary half (turning
    = value - 2*pi).  Bounds carry the two closed-form boundary families;
    the rest of the boundary comes from the cloud's concave hull.
    """
    if orientation not in ("first", "second"):
        raise InvalidDataError("orientation must be 'first' or 'second'")
    if grid < 2:
        raise InvalidDataError("grid must be at least 2")
    args, tf = _build_args(spec, value, orientation, parameter)
    pts, params = _raw_cloud(*args, grid)
    samples = 16 * grid + 1
    u, ab = _bound_ab(*args, samples)
    v, cd = _bound_cd(*args, samples)
    pts, ab, cd = tf(pts), tf(ab), tf(cd)
    tag = "1" if orientation == "first" else "2"
    bounds = (BoundaryCurve("A%sB%s" % (tag, tag), u, ab),
              BoundaryCurve("C%sD%s" % (tag, tag), v, cd))
    loop = _region_loop(np.concatenate([pts, ab, cd]))
    return EndpointSet(points=pts, params=params, bounds=bounds,
                       boundary_loop=loop, boundary_is_simple=True)


def _region_or_none(spec, value, orientation, grid, parameter):
    try:
        es = one_vertex_endpoint_set(spec, value, orientation, grid,
                                     parameter)
    except InvalidDataError:
        return None
    loop = es.boundary_loop
    if len(loop) < 3:
        return None
    return Polygon(np.column_stack([loop.real, loop.imag]))


def overlap_area(spec: OvalSpec, value: float, grid: int = 8,
                 parameter: str = "mu") -> float:
    """Intersection area of the two endpoint sets (0 when either half
    has no admissible curve at this turning)."""
    a = _region_or_none(spec, value, "first", grid, parameter)
    b = _region_or_none(spec, value, "second", grid, parameter)
    if a is None or b is None:
        return 0.0
    return a.intersection(b).area


def closeness_sweep(spec: OvalSpec,
                    values: Optional[Sequence[float]] = None,
                    grid: int = 8, parameter: str = "mu",
                    resolution: float = 1e-3 * math.pi,
                    samples: int = 41) -> ClosenessReport:
    """Sweep the turning parameter, record where the two sets intersect,
    and locate the contact values by bisection.

    Intersection means overlap area above 1e-6 * scale^2, which ignores
    sliver overlaps from boundary sampling jitter.
    """
    rng = (natural_mu_range(spec) if parameter == "mu"
           else natural_nu_range(spec))
    lo, hi = rng
    if not lo < hi:
        return ClosenessReport(parameter, (), (), "never")
    if values is None:
        j = np.arange(1, samples + 1, dtype=float)
        values = lo + (hi - lo) * j / (samples + 1.0)
    values = sorted(float(v) for v in values)
    threshold = 1e-6 * spec.scale ** 2

    def hit(value):
        return overlap_area(spec, value, grid, parameter) > threshold

    entries = []
    for value in values:
        area = overlap_area(spec, value, grid, parameter)
        entries.append((value, area > threshold, area))

    contacts = []
    for (v0, s0, _), (v1, s1, _) in zip(entries, entries[1:]):
        if s0 == s1:
            continue
        a, b = v0, v1
        while b - a > resolution:
            mid = 0.5 * (a + b)
            if hit(mid) == s0:
                a = mid
            else:
                b = mid
        contacts.append(0.5 * (a + b))
    verdict = "intersects" if any(s for _, s, _ in entries) else "never"
    return ClosenessReport(parameter, tuple(entries), tuple(contacts),
                           verdict)


def _refine_member(args, tf, target: complex, params: np.ndarray,
                   pts: np.ndarray):
    """Adjust the nearest enumerated curve so its endpoint hits target.

    Keeps the turning constraint exact by re-solving the last level from
    the other five parameters while the optimizer moves the two splits
    and the first falling level.
    """
    ka, kb, kc, La, Lb, theta = args
    i = int(np.argmin(np.abs(pts - target)))
    r1, r2, x0, f1_0, _, y0 = params[i]

    def endpoint(x, f1, y):
        f2 = (theta - r1 * x - r2 * (La - x) - f1 * y) / (Lb - y)
        z = (z1(r1, x) + cmath.exp(1j * r1 * x) * z1(r2, La - x)
             + cmath.exp(1j * (r1 * x + r2 * (La - x)))
             * (z1(f1, y) + cmath.exp(1j * f1 * y) * z1(f2, Lb - y)))
        return tf(z), f2

    def resid(w):
        z, _ = endpoint(*w)
        return [z.real - target.real, z.imag - target.imag]

    eps = 1e-9
    sol = least_squares(
        resid, [x0, f1_0, y0],
        bounds=([eps, kc + eps, eps], [La - eps, kb - eps, Lb - eps]))
    x, f1, y = sol.x
    z, f2 = endpoint(x, f1, y)
    gap = abs(z - target)
    model = OneVertexModel(levels=(r1, r2, f1, f2), splits=(x, y),
                           lengths=(La, Lb))
    return model, gap


def closure_certificate(spec: OvalSpec, mu: float,
                        grid: int = 8) -> OvalCertificate:
    """Assemble an explicit closed curve for a turning where the two
    endpoint sets intersect.

    Picks a point in the overlap, refines one member curve from each set
    to end there, and glues the second (reversed back) onto the first.
    The result has total turning exactly 2*pi; the endpoint gap measures
    how exactly the two halves meet.
    """
    a = _region_or_none(spec, mu, "first", grid, "mu")
    b = _region_or_none(spec, mu, "second", grid, "mu")
    if a is None or b is None:
        raise SolverError("a half-curve set is empty at mu=%.6f" % mu)
    inter = a.intersection(b)
    if inter.is_empty or inter.area <= 0.0:
        raise SolverError("the endpoint sets do not intersect at mu=%.6f"
                          % mu)
    rp = inter.representative_point()
    target = complex(rp.x, rp.y)

    args1, tf1 = _build_args(spec, mu, "first", "mu")
    pts1, params1 = _raw_cloud(*args1, grid)
    m1, gap1 = _refine_member(args1, tf1, target, params1, tf1(pts1))

    args2, tf2 = _build_args(spec, mu, "second", "mu")
    pts2, params2 = _raw_cloud(*args2, grid)
    m2, gap2 = _refine_member(args2, tf2, target, params2, tf2(pts2))

    # the second model traces the reversed complementary arc, so its
    # segments rejoin the oval in reverse order
    segments = m1.segments + tuple(reversed(m2.segments))
    curve = PiecewiseConstCurve(segments)
    end = curve.end_pose()
    gap = abs(complex(end.x, end.y))
    return OvalCertificate(mu=mu, vertex=target, segments=segments,
                           turning=curve.turning,
                           endpoint_gap=max(gap, gap1, gap2),
                           min_level=min(k for k, _ in segments))


def phi(x: float, p: float, q: float) -> float:
    """Contact equation for the symmetric candidate (kappa1=p, kappa2=q).

    Vanishing of phi(x; p, q) in x states that the single-arc member of
    one set's two-arc bound meets the v=0 member of the other set's
    three-arc bound.  At p=0 or q=0 the generic expression vanishes
    identically, so the leading term in the small parameter is used
    instead (same root, nonzero scale).
    """
    if not (math.isfinite(x) and math.isfinite(p) and math.isfinite(q)):
        raise InvalidDataError("phi arguments must be finite")
    if p == q:
        raise InvalidDataError("phi requires distinct kappa values")
    if p == 0.0:
        return ((x - 2.0 * q) * math.sin(0.5 * x)
                - x * (q + 0.5 * (x - _TWO_PI)) * math.cos(0.5 * x))
    if q == 0.0:
        return ((x - 2.0 * p) * math.sin(0.5 * x)
                + 0.5 * x * (2.0 * p + x - _TWO_PI))
    return (q * (x - 2.0 * p) * math.sin(0.5 * x)
            + x * (q - p) * math.sin(q * (2.0 * p + x - _TWO_PI)
                                     / (2.0 * (q - p))))


def symmetric_natural_range(kappa1: float,
                            kappa2: float) -> Tuple[float, float]:
    """Natural mu range for the symmetric candidate (same for nu)."""
    if kappa1 + kappa2 <= math.pi:
        return (_TWO_PI - 2.0 * kappa2, 2.0 * kappa2)
    return (2.0 * kappa1, _TWO_PI - 2.0 * kappa1)


def _unique_root(f: Callable[[float], float], lo: float, hi: float,
                 scan: int = 2048) -> float:
    xs = np.linspace(lo, hi, scan)[1:-1]
    vals = np.array([f(x) for x in xs])
    sign = np.sign(vals)
    nz = sign != 0
    idx = np.where(np.diff(sign[nz]) != 0)[0]
    xs_nz = xs[nz]
    if len(idx) == 0:
        raise SolverError(
            "no sign change in (%.6f, %.6f); scanned values range "
            "[%.3e, %.3e]" % (lo, hi, vals.min(), vals.max()))
    if len(idx) > 1:
        raise SolverError("multiple sign changes in (%.6f, %.6f)"
                          % (lo, hi))
    a, b = xs_nz[idx[0]], xs_nz[idx[0] + 1]
    return brentq(f, a, b, xtol=1e-13)


def solve_symmetric_limits(kappa1: float, kappa2: float
                           ) -> Tuple[float, float, float, float]:
    """Contact turnings (mu', mu'', nu', nu'') for the symmetric case.

    mu'' is the unique root of phi(.; kappa1, kappa2) in the natural
    range, mu' = 2*pi - mu''; nu' is the root with the kappa roles
    swapped, nu'' = 2*pi - nu'.
    """
    if not (0.0 <= kappa1 < 0.5 * math.pi < kappa2):
        raise InvalidDataError(
            "need 0 <= kappa1 < pi/2 < kappa2 for a closable candidate")
    lo, hi = symmetric_natural_range(kappa1, kappa2)
    mu_hi = _unique_root(lambda x: phi(x, kappa1, kappa2), lo, hi)
    nu_lo = _unique_root(lambda x: phi(x, kappa2, kappa1), lo, hi)
    return (_TWO_PI - mu_hi, mu_hi, nu_lo, _TWO_PI - nu_lo)
