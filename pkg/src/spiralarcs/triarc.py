"""Three-arc spirals with prescribed endpoint data and length.

The construction maps the two boundary curvature circles to a concentric
pair with an inversive (bilinear) transform fixing the chord endpoints.
Between concentric circles every smooth transition arc is a semicircle
touching them on opposite polar rays, so the family of admissible middle
arcs is a one-parameter sweep; mapped back, it yields three-arc curves
whose lengths cover the whole admissible range.
"""

import cmath
import math
from dataclasses import dataclass
from typing import Optional, Tuple

from .bilens import Bilens
from .curves import PiecewiseConstCurve
from .errors import InvalidDataError, LengthRangeError, SolverError
from .geom import (
    G2ChordData,
    Pose,
    circle_through_3_points,
    q_invariant,
)

__all__ = [
    "MobiusMap",
    "Triarc",
    "mobius_concentric",
    "concentric_frame",
    "inscribed_triarc",
    "solve_length_triarc",
]


@dataclass(frozen=True)
class MobiusMap:
    """w(z) = (z0 + z)/(1 + z0 z) on the chord-normalized plane.

    Fixes z = -1 and z = +1 (the chord endpoints at unit half-chord).
    `kappa` is the radius ratio of the concentric image circles; `branch`
    records which of the two admissible maps this is.
    """

    z0: complex
    branch: str
    kappa: float
    r0: float
    lambda0: float

    def __post_init__(self):
        if abs(abs(self.z0) - 1.0) < 1e-12:
            raise InvalidDataError("degenerate map: |z0| = 1")

    def apply(self, z: complex) -> complex:
        den = 1.0 + self.z0 * z
        if abs(den) == 0.0:
            raise InvalidDataError("point is the pole of the map")
        return (self.z0 + z) / den

    def invert(self, w: complex) -> complex:
        den = 1.0 - self.z0 * w
        if abs(den) == 0.0:
            raise InvalidDataError("point is the pole of the inverse map")
        return (w - self.z0) / den

    @property
    def pole(self) -> Optional[complex]:
        """Preimage of infinity; None when the map is affine (z0 = 0)."""
        if self.z0 == 0.0:
            return None
        return -1.0 / self.z0


@dataclass(frozen=True)
class Triarc:
    """Exactly three (curvature, length) pieces traced from `start`.

    End pieces may carry zero length (the degenerate boundary members).
    """

    start: Pose
    segments: Tuple[Tuple[float, float], ...]

    def __post_init__(self):
        if len(self.segments) != 3:
            raise InvalidDataError("a triarc has exactly three pieces")
        for k, s in self.segments:
            if not (math.isfinite(k) and math.isfinite(s)) or s < 0.0:
                raise InvalidDataError("piece lengths must be finite and >= 0")

    @property
    def curvatures(self) -> Tuple[float, float, float]:
        return tuple(k for k, _ in self.segments)

    @property
    def length(self) -> float:
        return sum(s for _, s in self.segments)

    @property
    def is_spiral(self) -> bool:
        """Strict monotonicity of the curvatures of the nonempty pieces."""
        ks = [k for k, s in self.segments if s > 0.0]
        if len(ks) < 2:
            return True
        d = [b - a for a, b in zip(ks, ks[1:])]
        return all(x > 0.0 for x in d) or all(x < 0.0 for x in d)

    def curve(self) -> PiecewiseConstCurve:
        segs = tuple((k, s) for k, s in self.segments if s > 0.0)
        if not segs:
            raise InvalidDataError("all pieces are empty")
        return PiecewiseConstCurve(segs, self.start)

    def end_pose(self) -> Pose:
        return self.curve().end_pose()


# ---------------------------------------------------------------------------
# the concentricity map


def mobius_concentric(d: G2ChordData) -> MobiusMap:
    """Map sending both boundary curvature circles to concentric images.

    Requires q_invariant(d) < 0 (disjoint, non-nested-tangent circles).  Of
    the two admissible maps the one with ratio kappa > 1 is preferred; the
    other is used when only it produces a valid annulus.
    """
    Q = q_invariant(d)
    if not (Q < 0.0):
        raise InvalidDataError(
            "tangency invariant must be negative for a concentric image")
    den = d.k1 * d.c + math.sin(d.alpha)
    num = d.k2 * d.c - math.sin(d.beta)
    # product of the two enclosure parameters; positive whenever Q < 0
    p1p2 = -num / den
    kplus = (math.sqrt(1.0 - Q) + math.sqrt(-Q)) ** 2
    last_err = None
    for branch, kappa in (("+", kplus), ("-", 1.0 / kplus)):
        try:
            m = _build_map(d, kappa, branch, p1p2)
            _check_annulus(d, m)
            return m
        except InvalidDataError as e:
            last_err = e
    raise InvalidDataError(
        "no concentric image yields a valid annulus: %s" % last_err)


def _build_map(d: G2ChordData, kappa: float, branch: str,
               p1p2: float) -> MobiusMap:
    r0 = math.sqrt(kappa / p1p2)
    om = d.omega
    cot = math.inf if math.sin(om) == 0.0 else math.cos(om) / math.sin(om)
    lam0 = math.pi - d.gamma + math.atan((kappa - 1.0) / (kappa + 1.0) * cot)
    u = r0 * cmath.exp(1j * lam0)
    z0 = (u - 1.0) / (u + 1.0)
    return MobiusMap(z0=z0, branch=branch, kappa=kappa, r0=r0, lambda0=lam0)


def _normalized_boundary_points(d: G2ChordData, first: bool, offset: float):
    """Three points of a boundary curvature circle, chord-normalized."""
    if first:
        anchor, tau, k = -1.0 + 0.0j, d.alpha, d.k1 * d.c
    else:
        anchor, tau, k = 1.0 + 0.0j, d.beta, d.k2 * d.c
    if k == 0.0:
        step = cmath.exp(1j * tau)
        return [anchor + t * step for t in (-0.9 + offset, 0.4, 1.3 - offset)]
    center = anchor + 1j * cmath.exp(1j * tau) / k
    rad = anchor - center
    return [center + rad * cmath.exp(1j * (offset + t))
            for t in (0.0, 2.1, 4.2)]


def _transported_circle(m: MobiusMap, pts):
    return circle_through_3_points(*(m.apply(z) for z in pts))


def _image_boundary_circle(d: G2ChordData, m: MobiusMap, first: bool):
    pole = m.pole
    for offset in (0.0, 0.7, 1.4, 2.3):
        pts = _normalized_boundary_points(d, first, offset)
        if pole is not None and min(abs(z - pole) for z in pts) < 1e-6:
            continue
        return _transported_circle(m, pts)
    raise InvalidDataError("cannot sample the boundary circle away "
                           "from the map pole")


def concentric_frame(d: G2ChordData, m: Optional[MobiusMap] = None):
    """(common center, image radius of start circle, of end circle).

    The two image circles are concentric by construction; their center
    mismatch is averaged out and must be far below the radii.
    """
    if m is None:
        m = mobius_concentric(d)
    o1, r1 = _image_boundary_circle(d, m, True)
    o2, r2 = _image_boundary_circle(d, m, False)
    _require_concentric(o1, r1, o2, r2)
    return 0.5 * (o1 + o2), r1, r2


def _require_concentric(o1, r1, o2, r2):
    big = max(r1, r2)
    if abs(o1 - o2) > 1e-8 * big:
        raise InvalidDataError("image circles are not concentric")
    if abs(r1 - r2) <= 1e-12 * big:
        raise InvalidDataError("image circles coincide; no annulus")


def _check_annulus(d: G2ChordData, m: MobiusMap) -> None:
    o, r1, r2 = concentric_frame(d, m)
    # the smaller image circle must lie strictly inside the larger
    if abs(r1 - r2) <= 1e-12 * max(r1, r2):
        raise InvalidDataError("no annulus between image circles")


# ---------------------------------------------------------------------------
# the inscribed three-arc family


def inscribed_triarc(d: G2ChordData, t: float) -> Triarc:
    """Member t in [0, 1] of the inscribed three-arc family.

    The first piece runs along the start curvature circle, the last along
    the end circle, and the middle piece is the back-mapped transition
    (a semicircle between the concentric image circles).  t = 0 gives the
    boundary two-arc member with the full end-circle piece; t = 1 the one
    with the full start-circle piece.
    """
    if not (0.0 <= t <= 1.0):
        raise InvalidDataError("family parameter must lie in [0, 1]")
    bl = Bilens(d)     # validates admissibility
    fam = bl.family
    c = d.c

    inner = fam.biarc(bl.p1)    # its first piece runs along the start circle
    th1_full = inner.turnings[0]
    s1_full = inner.segment_lengths[0]

    A = complex(-c, 0.0)
    B = complex(c, 0.0)
    if d.k1 == 0.0:
        M = A + t * s1_full * cmath.exp(1j * d.alpha)
        tau_m = d.alpha
    else:
        center1 = A + 1j * cmath.exp(1j * d.alpha) / d.k1
        M = center1 + (A - center1) * cmath.exp(1j * t * th1_full)
        tau_m = d.alpha + t * th1_full
    s1 = t * s1_full

    m = mobius_concentric(d)
    o, r_start, r_end = concentric_frame(d, m)
    Mp = m.apply(M / c)
    ray = Mp - o
    if abs(ray) == 0.0:
        raise InvalidDataError("transition point collapses to the center")
    Np = o - (r_end / abs(ray)) * ray
    N = c * m.invert(Np)

    # middle piece: unique arc from M toward tau_m hitting N
    chord = N - M
    dist = abs(chord)
    if dist <= 1e-14 * c:
        raise InvalidDataError("degenerate transition piece")
    phi = math.remainder(cmath.phase(chord) - tau_m, math.tau)
    k_mid = 2.0 * math.sin(phi) / dist
    if abs(phi) < 1e-13:
        k_mid, s_mid = 0.0, dist
    else:
        s_mid = 2.0 * phi / k_mid    # = phi / (sin(phi)/dist), positive
    tau_n = tau_m + 2.0 * phi

    # last piece: along the end curvature circle from N to B
    rem = math.remainder(d.beta - tau_n, math.tau)
    if d.k2 == 0.0:
        s3 = abs(B - N)
    else:
        if abs(rem) <= 1e-9:
            sweep3 = 0.0
        elif (rem > 0.0) == (d.k2 > 0.0):
            sweep3 = rem
        else:
            sweep3 = rem + math.copysign(math.tau, d.k2)
        s3 = sweep3 / d.k2
    if s3 < 0.0:
        raise SolverError("transition overshoots the end circle")

    tri = Triarc(start=Pose(-c, 0.0, d.alpha),
                 segments=((d.k1, s1), (k_mid, s_mid), (d.k2, s3)))
    end = tri.end_pose()
    if (math.hypot(end.x - c, end.y) > 1e-6 * c
            or abs(math.remainder(end.tau - d.beta, math.tau)) > 1e-6):
        raise SolverError("constructed three-arc curve misses the endpoint "
                          "data; inputs are numerically degenerate")
    return tri


# ---------------------------------------------------------------------------
# length matching


def solve_length_triarc(d: G2ChordData, L0: float) -> Triarc:
    """Three-arc spiral with the given data and length L0.

    L0 must lie between the lengths of the two boundary two-arc members
    (inclusive).  The length along the family is continuous but need not be
    monotone, so the solver scans a grid for the first sign change and then
    bisects.
    """
    if not (L0 > 0.0) or math.isinf(L0):
        raise InvalidDataError("target length must be positive and finite")
    bl = Bilens(d)
    fam = bl.family
    len0 = fam.length(bl.p2)      # t = 0 member
    len1 = fam.length(bl.p1)      # t = 1 member
    lo_len, hi_len = min(len0, len1), max(len0, len1)
    ftol = max(1e-12 * d.c, 1e-10 * L0)
    if not (lo_len - ftol <= L0 <= hi_len + ftol):
        raise LengthRangeError(
            "no inscribed three-arc member has the requested length",
            requested=L0, lower=lo_len, upper=hi_len)

    def f(t: float) -> float:
        return inscribed_triarc(d, t).length - L0

    n = 64
    ts = [i / (n - 1) for i in range(n)]
    fs = [f(t) for t in ts]
    best = min(range(n), key=lambda i: abs(fs[i]))
    if abs(fs[best]) <= ftol:
        return inscribed_triarc(d, ts[best])
    for i in range(n - 1):
        if fs[i] == 0.0 or (fs[i] > 0.0) != (fs[i + 1] > 0.0):
            lo, hi, flo = ts[i], ts[i + 1], fs[i]
            for _ in range(200):
                mid = 0.5 * (lo + hi)
                fm = f(mid)
                if abs(fm) <= ftol / 64.0 or (hi - lo) < 4e-16:
                    return inscribed_triarc(d, mid)
                if (fm > 0.0) == (flo > 0.0):
                    lo, flo = mid, fm
                else:
                    hi = mid
            return inscribed_triarc(d, 0.5 * (lo + hi))
    raise SolverError("length is inside the admissible range but no sign "
                      "change was bracketed on the family grid")
