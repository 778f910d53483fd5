"""Planar geometry primitives for arc-spline work on spiral (monotone
curvature) curves.

Conventions used throughout the package:

* curves are parametrized by arc length and the tangent angle tau obeys
  dtau/ds = k, so positive curvature turns counterclockwise;
* a chord frame puts the start of a curve at (-c, 0) and the end at (c, 0),
  where 2c is the chord length;
* angles stored in chord data and curvature elements are normalized to
  (-pi, pi].

The central scalar here is the tangency invariant Q of a pair of boundary
curvature elements: Q = (k1*c + sin(alpha)) * (k2*c - sin(beta)) + sin(omega)^2.
Geometrically Q = sin(psi/2)^2 where psi is the intersection angle of the two
directed curvature circles; Q < 0 means the circles are disjoint (one strictly
inside the other), which is exactly the configuration admitting a one-piece
spiral that is not a biarc.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidDataError

# Default tolerance for geometric predicates (dimensionless or relative to
# the chord half-length c, depending on context).
DEFAULT_EPS = 1e-9


def normalize_angle(theta: float) -> float:
    """Reduce an angle to the interval (-pi, pi]."""
    r = math.remainder(theta, 2.0 * math.pi)
    if r <= -math.pi:
        r += 2.0 * math.pi
    return r


# ---------------------------------------------------------------------------
# poses and rigid motions


@dataclass(frozen=True)
class Pose:
    """Position plus tangent direction. tau is kept as given (tracing
    accumulates turning past pi, which callers may care about)."""

    x: float
    y: float
    tau: float

    @property
    def point(self) -> complex:
        return complex(self.x, self.y)


@dataclass(frozen=True)
class RigidMotion:
    """Orientation-preserving isometry: rotate by `rot` about the origin,
    then translate by (dx, dy)."""

    rot: float
    dx: float
    dy: float

    def apply(self, pts):
        """Apply to an (N, 2) array or a single (x, y) pair."""
        pts = np.asarray(pts, dtype=float)
        c, s = math.cos(self.rot), math.sin(self.rot)
        x = pts[..., 0] * c - pts[..., 1] * s + self.dx
        y = pts[..., 0] * s + pts[..., 1] * c + self.dy
        return np.stack([x, y], axis=-1)

    def apply_complex(self, z: complex) -> complex:
        return z * complex(math.cos(self.rot), math.sin(self.rot)) + complex(self.dx, self.dy)

    def apply_pose(self, pose: Pose) -> Pose:
        p = self.apply((pose.x, pose.y))
        return Pose(float(p[0]), float(p[1]), pose.tau + self.rot)

    def inverse(self) -> "RigidMotion":
        c, s = math.cos(self.rot), math.sin(self.rot)
        # inverse rotation applied to -translation
        return RigidMotion(-self.rot, -(self.dx * c + self.dy * s), -(-self.dx * s + self.dy * c))

    def compose(self, other: "RigidMotion") -> "RigidMotion":
        """Motion equal to applying `other` first, then self."""
        p = self.apply((other.dx, other.dy))
        return RigidMotion(self.rot + other.rot, float(p[0]), float(p[1]))


# ---------------------------------------------------------------------------
# curvature elements and chord data


@dataclass(frozen=True)
class CurvatureElement:
    """A point with tangent direction and signed curvature: the G^2 jet of a
    curve at one point. k = 0 denotes a straight element."""

    x: float
    y: float
    tau: float
    k: float

    def __post_init__(self):
        for name in ("x", "y", "tau", "k"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidDataError(f"curvature element field {name} is not finite")
        object.__setattr__(self, "tau", normalize_angle(self.tau))

    @property
    def point(self) -> complex:
        return complex(self.x, self.y)

    def circle(self):
        """Center (complex) and unsigned radius of the curvature circle.

        Raises for straight elements (k = 0); callers test k first.
        """
        if self.k == 0.0:
            raise InvalidDataError("straight element has no curvature circle")
        # center sits on the left normal at signed distance 1/k
        center = self.point + 1j * complex(math.cos(self.tau), math.sin(self.tau)) / self.k
        return center, abs(1.0 / self.k)


@dataclass(frozen=True)
class ChordData:
    """G^1 Hermite data in the chord frame: endpoints (-c, 0), (c, 0) with
    tangent angles alpha (start) and beta (end)."""

    c: float
    alpha: float
    beta: float

    def __post_init__(self):
        if not (math.isfinite(self.c) and self.c > 0.0):
            raise InvalidDataError(f"chord half-length must be positive, got {self.c}")
        if not (math.isfinite(self.alpha) and math.isfinite(self.beta)):
            raise InvalidDataError("tangent angles must be finite")
        object.__setattr__(self, "alpha", normalize_angle(self.alpha))
        object.__setattr__(self, "beta", normalize_angle(self.beta))

    @property
    def gamma(self) -> float:
        """Half-difference of the end tangents, (alpha - beta)/2."""
        return 0.5 * (self.alpha - self.beta)

    @property
    def omega(self) -> float:
        """Half-sum of the end tangents, (alpha + beta)/2."""
        return 0.5 * (self.alpha + self.beta)

    @property
    def start(self) -> CurvatureElement:
        raise AttributeError("G^1 data has no boundary curvatures")


@dataclass(frozen=True)
class G2ChordData:
    """G^2 Hermite data: chord-frame tangents plus boundary curvatures."""

    chord: ChordData
    k1: float
    k2: float

    def __post_init__(self):
        if not (math.isfinite(self.k1) and math.isfinite(self.k2)):
            raise InvalidDataError("boundary curvatures must be finite")

    @classmethod
    def from_values(cls, c, alpha, beta, k1, k2) -> "G2ChordData":
        return cls(ChordData(c, alpha, beta), k1, k2)

    # passthrough accessors, used everywhere
    @property
    def c(self) -> float:
        return self.chord.c

    @property
    def alpha(self) -> float:
        return self.chord.alpha

    @property
    def beta(self) -> float:
        return self.chord.beta

    @property
    def gamma(self) -> float:
        return self.chord.gamma

    @property
    def omega(self) -> float:
        return self.chord.omega

    def start_element(self) -> CurvatureElement:
        return CurvatureElement(-self.c, 0.0, self.alpha, self.k1)

    def end_element(self) -> CurvatureElement:
        return CurvatureElement(self.c, 0.0, self.beta, self.k2)


def as_chord(d) -> ChordData:
    """Accept either ChordData or G2ChordData and return the G^1 part."""
    return d.chord if isinstance(d, G2ChordData) else d


# ---------------------------------------------------------------------------
# data symmetries (all preserve the Vogt sign relation)


def reflected_about_chord(d: G2ChordData) -> G2ChordData:
    """Mirror about the chord line: (a, b, k1, k2) -> (-a, -b, -k1, -k2).

    Swaps increasing and decreasing curvature.
    """
    return G2ChordData.from_values(d.c, -d.alpha, -d.beta, -d.k1, -d.k2)


def reflected_about_bisector(d: G2ChordData) -> G2ChordData:
    """Mirror about the chord's perpendicular bisector, re-traced from the
    old end: (a, b, k1, k2) -> (-b, -a, k2, k1)."""
    return G2ChordData.from_values(d.c, -d.beta, -d.alpha, d.k2, d.k1)


def reversed_data(d: G2ChordData) -> G2ChordData:
    """Chord data of the same curve traversed backwards:
    (a, b, k1, k2) -> (b, a, -k2, -k1)."""
    return G2ChordData.from_values(d.c, d.beta, d.alpha, -d.k2, -d.k1)


# ---------------------------------------------------------------------------
# the tangency invariant and admissibility predicates


def q_invariant(d: G2ChordData) -> float:
    """Invariant Q of the two boundary curvature elements.

    Q = (k1*c + sin a)(k2*c - sin b) + sin(omega)^2. Q < 0 iff the directed
    curvature circles are disjoint; Q = 0 iff they are tangent with matching
    direction (the data is realized by a biarc); 0 < Q <= 1 gives circles
    meeting at angle psi with Q = sin(psi/2)^2.
    """
    c = d.c
    return (d.k1 * c + math.sin(d.alpha)) * (d.k2 * c - math.sin(d.beta)) + math.sin(d.omega) ** 2


def vogt_sign_ok(d: G2ChordData) -> bool:
    """Sign relation between curvature growth and tangent sum that every
    spiral arc satisfies: sgn(k2 - k1) == sgn(alpha + beta)."""
    lhs = d.k2 - d.k1
    rhs = d.alpha + d.beta
    if lhs == 0.0 or rhs == 0.0:
        return lhs == 0.0 and rhs == 0.0
    return (lhs > 0.0) == (rhs > 0.0)


def is_short_spiral_data(d: G2ChordData) -> bool:
    """True iff the data admits a short spiral (one that meets the complement
    of its chord within the chord line only).

    Requires Q < 0 together with angle bounds whose strict/non-strict ends
    depend on the curvature growth direction. k1 == k2 with alpha != beta is
    rejected: constant boundary curvature contradicts strict monotonicity.
    """
    if d.k1 == d.k2:
        if d.alpha != d.beta:
            raise InvalidDataError("k1 == k2 with alpha != beta is not spiral data")
        return False
    if q_invariant(d) >= 0.0:
        return False
    a, b = d.alpha, d.beta
    pi = math.pi
    if d.k1 < d.k2:
        return (-pi < a <= pi) and (-pi < b <= pi) and (a + b > 0.0)
    return (-pi <= a < pi) and (-pi <= b < pi) and (a + b < 0.0)


# ---------------------------------------------------------------------------
# chord frames


def chord_frame(curve, eps: float = DEFAULT_EPS):
    """Compute (G2ChordData, RigidMotion) for a traced curve.

    The returned motion maps world coordinates into the chord frame (start at
    (-c, 0), end at (c, 0)); its inverse() puts chord-frame geometry back.
    Raises InvalidDataError when the endpoints (almost) coincide.
    """
    start = curve.start
    end = curve.end_pose()
    dx = end.x - start.x
    dy = end.y - start.y
    chord_len = math.hypot(dx, dy)
    if chord_len <= eps * max(1.0, curve.length):
        raise InvalidDataError("degenerate chord: endpoints coincide")
    phi = math.atan2(dy, dx)
    c = 0.5 * chord_len
    mx = 0.5 * (start.x + end.x)
    my = 0.5 * (start.y + end.y)
    # rotate by -phi about the midpoint, then shift midpoint to origin
    cphi, sphi = math.cos(-phi), math.sin(-phi)
    motion = RigidMotion(-phi, -(mx * cphi - my * sphi), -(mx * sphi + my * cphi))
    data = G2ChordData.from_values(
        c,
        normalize_angle(start.tau - phi),
        normalize_angle(end.tau - phi),
        curve.segments[0][0],
        curve.segments[-1][0],
    )
    return data, motion


# ---------------------------------------------------------------------------
# small circle utilities (shared by the inversive-map construction and tests)


def circle_through_3_points(z1: complex, z2: complex, z3: complex):
    """Center and radius of the circle through three points (complex).

    Raises InvalidDataError for (near-)collinear triples.
    """
    # perpendicular bisector intersection via the standard determinant form
    ax, ay = z1.real, z1.imag
    bx, by = z2.real, z2.imag
    cx, cy = z3.real, z3.imag
    dd = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    scale = max(abs(z1 - z2), abs(z2 - z3), abs(z3 - z1))
    if scale == 0.0 or abs(dd) < 1e-14 * scale * scale:
        raise InvalidDataError("points are collinear; no finite circle")
    ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay)
          + (cx * cx + cy * cy) * (ay - by)) / dd
    uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx)
          + (cx * cx + cy * cy) * (bx - ax)) / dd
    center = complex(ux, uy)
    return center, abs(z1 - center)


def orientation_of_3_points(z1: complex, z2: complex, z3: complex) -> int:
    """+1 if the polyline z1->z2->z3 turns counterclockwise, -1 clockwise."""
    cross = ((z2.real - z1.real) * (z3.imag - z2.imag)
             - (z2.imag - z1.imag) * (z3.real - z2.real))
    if cross == 0.0:
        raise InvalidDataError("collinear points have no orientation")
    return 1 if cross > 0.0 else -1
