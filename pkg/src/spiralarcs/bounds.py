"""Sharp length bounds for convex spiral arcs from their endpoint data.

Any admissible data set falls into one of four sign cases; reflections about
the chord line and/or its perpendicular bisector bring it to the reference
case (increasing non-negative curvature, |alpha| < |beta|).  In that frame
the two-arc family in the enclosure region delimits the attainable lengths:
curvature-aware inner bounds, angle-only outer bounds.
"""

import math
from dataclasses import dataclass
from typing import Tuple, Union

from .errors import ConvexityError, InvalidDataError
from .geom import ChordData, G2ChordData, q_invariant

__all__ = ["NormalizedBounds", "LengthBounds", "normalize_case",
           "length_bounds"]


@dataclass(frozen=True)
class NormalizedBounds:
    """Reference-case quantities for the bound formulas.

    tau1/tau2 are the normalized chord angles (tau1 < 0 < tau2), a1/b2 the
    normalized boundary curvatures (curvature times half-chord), b1/a2 the
    derived free-arc curvatures of the two enclosure boundary members, and
    2*xi1, 2*xi2 their turning angles along the boundary circles.
    """

    tau1: float
    tau2: float
    a1: float
    b2: float
    b1: float
    a2: float
    omega: float
    gamma: float
    xi1: float
    xi2: float


@dataclass(frozen=True)
class LengthBounds:
    """Attainable-length interval plus the angle-only outer interval.

    lower/upper are attained exactly by the enclosure boundary members;
    outer_lower is strict (approached, never attained), outer_upper is
    attained only by the member with a straight start piece.
    """

    lower: float
    upper: float
    outer_lower: float
    outer_upper: float
    chord: float

    @property
    def ratios(self) -> Tuple[float, float, float, float]:
        """The same four bounds divided by the chord length."""
        ch = 2.0 * self.chord
        return (self.lower / ch, self.upper / ch,
                self.outer_lower / ch, self.outer_upper / ch)


def _arccot(x: float) -> float:
    # branch with values in (0, pi), so doubled angles cover [0, 2*pi)
    return 0.5 * math.pi - math.atan(x)


def normalize_case(d: G2ChordData):
    """Bring data to the reference sign case; returns (NormalizedBounds,
    symmetry) with symmetry one of "identity", "x", "y", "xy".

    "x" is the reflection about the chord line (all four signs flip), "y"
    the reflection about the chord bisector (angles swap negated, curvatures
    swap).  Raises ConvexityError when the data fits none of the four sign
    cases of the admissible table.
    """
    c, al, be, k1, k2 = d.c, d.alpha, d.beta, d.k1, d.k2
    if abs(al) < abs(be):
        if 0.0 <= k1 < k2 and be > -al > 0.0:
            sym = "identity"
        elif 0.0 >= k1 > k2 and be < -al < 0.0:
            sym = "x"
        else:
            sym = None
    elif abs(al) > abs(be):
        if k1 < k2 <= 0.0 and al > -be > 0.0:
            sym = "xy"
        elif k1 > k2 >= 0.0 and al < -be < 0.0:
            sym = "y"
        else:
            sym = None
    else:
        sym = None
    if sym is None:
        raise ConvexityError(
            "data fits no admissible sign case (non-convex, inflected, "
            "or inconsistent angle/curvature signs)")
    if sym in ("y", "xy"):
        al, be, k1, k2 = -be, -al, k2, k1
    if sym in ("x", "xy"):
        al, be, k1, k2 = -al, -be, -k1, -k2

    tau1, tau2 = al, be
    a1, b2 = k1 * c, k2 * c
    om = 0.5 * (tau1 + tau2)
    ga = 0.5 * (tau1 - tau2)
    sg = math.sin(ga)
    st1, st2 = math.sin(tau1), math.sin(tau2)
    if a1 + st1 >= 0.0:
        raise InvalidDataError(
            "start curvature violates the admissible region (a1 >= -sin "
            "tau1); no spiral with this data exists")
    if b2 - st2 <= 0.0:
        raise InvalidDataError(
            "end curvature violates the admissible region (b2 <= sin tau2); "
            "no spiral with this data exists")
    b1 = (a1 * st2 - sg * sg) / (a1 + st1)
    a2 = -(b2 * st1 + sg * sg) / (b2 - st2)
    if a1 == 0.0:
        xi1 = 0.0
    else:
        xi1 = _arccot((a1 * math.cos(om) + sg) / (-a1 * math.sin(om)))
    xi2 = _arccot((b2 * math.cos(om) + sg) / (b2 * math.sin(om)))
    return NormalizedBounds(tau1=tau1, tau2=tau2, a1=a1, b2=b2, b1=b1,
                            a2=a2, omega=om, gamma=ga, xi1=xi1,
                            xi2=xi2), sym


def _outer_bounds(c: float, tau1: float, tau2: float):
    om = 0.5 * (tau1 + tau2)
    ga = 0.5 * (tau1 - tau2)
    sg = math.sin(ga)
    outer_lo = 2.0 * c * tau1 / math.sin(tau1)
    outer_hi = (2.0 * c * (ga * math.sin(tau1) - math.sin(om) * sg)
                / (sg * sg))
    return outer_lo, outer_hi


def length_bounds(d: Union[G2ChordData, ChordData]) -> LengthBounds:
    """Unimprovable length bounds for a convex spiral with the given data.

    With curvature data present the inner bounds [lower, upper] are attained
    by the enclosure boundary members; tangent-only data gets the angle-only
    interval duplicated into the inner slots.  Single-arc data collapses all
    four bounds to the arc length.
    """
    if isinstance(d, ChordData):
        return _angle_only_bounds(d)
    c = d.c
    if d.k1 == d.k2:
        return _single_arc_bounds(d)
    nb, _ = normalize_case(d)
    qtol = 64.0 * 2.2e-16 * (1.0 + (1.0 + abs(d.k1 * c)) *
                             (1.0 + abs(d.k2 * c)))
    if q_invariant(d) > qtol:
        raise InvalidDataError(
            "boundary curvature circles intersect; no spiral exists")
    outer_lo, outer_hi = _outer_bounds(c, nb.tau1, nb.tau2)
    ch = 2.0 * c
    if abs(nb.a2) < 1e-14:
        # the enclosure degenerates onto the straight-piece member
        lower = outer_hi
    else:
        lower = ch * (-(nb.gamma + nb.xi2) / nb.a2 + nb.xi2 / nb.b2)
    if nb.a1 == 0.0:
        # the chain's last comparison becomes an equality
        upper = outer_hi
    else:
        upper = ch * (nb.xi1 / nb.a1 - (nb.gamma + nb.xi1) / nb.b1)
    return LengthBounds(lower=lower, upper=upper, outer_lower=outer_lo,
                        outer_upper=outer_hi, chord=c)


def _angle_only_bounds(d: ChordData) -> LengthBounds:
    c, al, be = d.c, d.alpha, d.beta
    if al == 0.0 and be == 0.0:
        ch = 2.0 * c
        return LengthBounds(ch, ch, ch, ch, chord=c)
    ok = (al < 0.0 < be) or (be < 0.0 < al)
    if not ok or max(abs(al), abs(be)) > math.pi:
        raise ConvexityError(
            "chord angles fit no admissible convex case")
    if al == -be:
        # only the circular arc realizes opposite equal angles
        L = 2.0 * c * abs(be) / math.sin(abs(be))
        return LengthBounds(L, L, L, L, chord=c)
    tau2 = max(abs(al), abs(be))
    tau1 = -min(abs(al), abs(be))
    outer_lo, outer_hi = _outer_bounds(c, tau1, tau2)
    return LengthBounds(lower=outer_lo, upper=outer_hi,
                        outer_lower=outer_lo, outer_upper=outer_hi, chord=c)


def _single_arc_bounds(d: G2ChordData) -> LengthBounds:
    c, al, be, k = d.c, d.alpha, d.beta, d.k1
    if abs(al + be) > 1e-9 or abs(math.sin(be) - k * c) > \
            1e-9 * max(1.0, abs(k * c)):
        raise ConvexityError(
            "equal boundary curvatures require circular-arc data")
    if be == 0.0:
        L = 2.0 * c
    else:
        L = 2.0 * c * be / math.sin(be)
    return LengthBounds(L, L, L, L, chord=c)
