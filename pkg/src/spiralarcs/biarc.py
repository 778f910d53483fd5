"""One-parameter family of two-arc G1 curves sharing end tangents.

All members start at A=(-c,0) with tangent angle alpha and end at B=(c,0)
with tangent angle beta.  The family parameter p ranges over (0, inf);
these are exactly the members that stay between the two tangent circular
arcs through A and B (the lens).  p -> 0 and p -> inf degenerate to the
lens boundaries (single circular arcs).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import cached_property

from .curves import PiecewiseConstCurve, arc_length_from_chord
from .errors import DegenerateLensError, InvalidDataError
from .geom import ChordData, Pose, normalize_angle

__all__ = ["Biarc", "BiarcFamily"]


@dataclass(frozen=True)
class BiarcFamily:
    """Biarcs through A=(-c,0) and B=(c,0) with fixed end tangents."""

    chord: ChordData

    @classmethod
    def from_angles(cls, c: float, alpha: float, beta: float) -> "BiarcFamily":
        return cls(ChordData(c, alpha, beta))

    @property
    def c(self) -> float:
        return self.chord.c

    @property
    def alpha(self) -> float:
        return self.chord.alpha

    @property
    def beta(self) -> float:
        return self.chord.beta

    def a(self, p: float) -> float:
        """Normalized curvature (curvature times c) of the first arc."""
        self._check_p(p)
        return -math.sin(self.alpha) - math.sin(self.chord.omega) / p

    def b(self, p: float) -> float:
        """Normalized curvature of the second arc."""
        self._check_p(p)
        return math.sin(self.beta) + p * math.sin(self.chord.omega)

    def _check_p(self, p: float) -> None:
        if not (p > 0.0) or math.isinf(p):
            raise InvalidDataError(
                "family parameter must be a finite positive number, got %r" % (p,))

    def biarc(self, p: float) -> "Biarc":
        self._check_p(p)
        return Biarc(self.chord, float(p))

    def join_point(self, p: float) -> complex:
        """Join point of member p; the locus over p>0 is the lens bisector."""
        self._check_p(p)
        g = self.chord.gamma
        num = p * p - 1.0 + 2j * p * math.sin(g)
        den = p * p + 2.0 * p * math.cos(g) + 1.0
        return self.c * num / den

    def join_tangent(self, p: float) -> float:
        """Tangent angle at the join point."""
        self._check_p(p)
        sa, ca = math.sin(0.5 * self.alpha), math.cos(0.5 * self.alpha)
        sb, cb = math.sin(0.5 * self.beta), math.cos(0.5 * self.beta)
        return -2.0 * math.atan2(p * sa + sb, p * ca + cb)

    def turnings(self, p: float) -> tuple[float, float]:
        """Turning angles (theta1, theta2) of the two arcs.

        theta1 + theta2 equals beta - alpha exactly.
        """
        tau = self.join_tangent(p)
        return tau - self.alpha, self.beta - tau

    def length(self, p: float) -> float:
        """Arc length of member p.

        Computed from the join-point chords, which stays accurate when one
        of the arcs is nearly straight (curvature near zero).
        """
        j = self.join_point(p)
        th1, th2 = self.turnings(p)
        d1 = abs(j - complex(-self.c, 0.0))
        d2 = abs(complex(self.c, 0.0) - j)
        return (arc_length_from_chord(d1, th1)
                + arc_length_from_chord(d2, th2))

    @property
    def length_at_zero(self) -> float:
        """Limit of length(p) as p -> 0 (the all-second-arc degeneration)."""
        return 2.0 * self.c * _angle_ratio(self.beta)

    @property
    def length_at_infinity(self) -> float:
        """Limit of length(p) as p -> inf."""
        return 2.0 * self.c * _angle_ratio(self.alpha)

    def length_monotonicity(self) -> int:
        """-1 if length(p) strictly decreases, +1 increases, 0 constant."""
        aa, ab = abs(self.alpha), abs(self.beta)
        if aa < ab:
            return -1
        if aa > ab:
            return 1
        return 0

    def p_matching_start_curvature(self, k1: float) -> float:
        """Member whose first arc has physical curvature k1."""
        den = k1 * self.c + math.sin(self.alpha)
        som = math.sin(self.chord.omega)
        if den == 0.0 or som == 0.0:
            raise DegenerateLensError(
                "no family member attains the requested start curvature")
        return -som / den

    def p_matching_end_curvature(self, k2: float) -> float:
        """Member whose second arc has physical curvature k2."""
        som = math.sin(self.chord.omega)
        if som == 0.0:
            raise DegenerateLensError(
                "no family member attains the requested end curvature")
        return (k2 * self.c - math.sin(self.beta)) / som

    def convexity_threshold(self) -> float | None:
        """Parameter at which one boundary curvature crosses zero.

        Members on one side of the threshold are convex (both arcs turn the
        same way).  Returns None if every member is convex (alpha == beta,
        omega == 0 cases) or the data does not admit one.
        """
        sa, sb = math.sin(self.alpha), math.sin(self.beta)
        som = math.sin(self.chord.omega)
        aa, ab = abs(self.alpha), abs(self.beta)
        if aa < ab and sa != 0.0:
            pbar = -som / sa
        elif aa > ab and som != 0.0:
            pbar = -sb / som
        else:
            return None
        return pbar if pbar > 0.0 else None


def _angle_ratio(x: float) -> float:
    """x / sin(x) with the limit 1 at x = 0."""
    if abs(x) < 1e-8:
        return 1.0 + x * x / 6.0
    return x / math.sin(x)


@dataclass(frozen=True)
class Biarc:
    """One member of a BiarcFamily, realized as geometry in the chord frame."""

    chord: ChordData
    p: float

    @cached_property
    def family(self) -> BiarcFamily:
        return BiarcFamily(self.chord)

    @property
    def c(self) -> float:
        return self.chord.c

    @cached_property
    def a(self) -> float:
        return self.family.a(self.p)

    @cached_property
    def b(self) -> float:
        return self.family.b(self.p)

    @property
    def k1(self) -> float:
        return self.a / self.c

    @property
    def k2(self) -> float:
        return self.b / self.c

    @cached_property
    def join_point(self) -> complex:
        return self.family.join_point(self.p)

    @cached_property
    def join_tangent(self) -> float:
        return self.family.join_tangent(self.p)

    @cached_property
    def turnings(self) -> tuple[float, float]:
        return self.family.turnings(self.p)

    @cached_property
    def segment_lengths(self) -> tuple[float, float]:
        j = self.join_point
        th1, th2 = self.turnings
        d1 = abs(j - complex(-self.c, 0.0))
        d2 = abs(complex(self.c, 0.0) - j)
        return (arc_length_from_chord(d1, th1), arc_length_from_chord(d2, th2))

    @property
    def length(self) -> float:
        s1, s2 = self.segment_lengths
        return s1 + s2

    def curve(self, straight_tol: float = 1e-13) -> PiecewiseConstCurve:
        """The biarc as a traceable two-segment curve in the chord frame.

        A sub-arc whose total turning is below straight_tol is emitted with
        curvature exactly zero, so downstream code sees a clean straight
        segment at the convexity threshold.
        """
        s1, s2 = self.segment_lengths
        th1, th2 = self.turnings
        segs = []
        for s, th in ((s1, th1), (s2, th2)):
            if s <= 0.0:
                raise DegenerateLensError(
                    "degenerate biarc member: sub-arc of nonpositive length")
            k = 0.0 if abs(th) < straight_tol else th / s
            segs.append((k, s))
        return PiecewiseConstCurve(tuple(segs),
                                   Pose(-self.c, 0.0, self.alpha))

    @property
    def alpha(self) -> float:
        return self.chord.alpha

    @property
    def beta(self) -> float:
        return self.chord.beta

    def reflected_join(self) -> complex:
        """Join point mirrored across the chord, for enclosure drawings."""
        return self.join_point.conjugate()
