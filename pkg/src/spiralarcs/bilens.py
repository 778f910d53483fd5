"""Two-sided enclosure of a short spiral between two of its family biarcs.

For admissible G2 chord data, the family members whose first arc matches the
start curvature (parameter p1) and whose second arc matches the end
curvature (parameter p2) bound a crescent-shaped region.  Every short spiral
realizing the data stays inside it, so the region's width is an a-priori
error bound for any approximation picked from the family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .biarc import Biarc, BiarcFamily
from .curves import distance_to_curve
from .errors import DegenerateLensError, InvalidDataError
from .geom import G2ChordData, is_short_spiral_data, q_invariant

__all__ = ["Bilens"]


@dataclass(frozen=True)
class Bilens:
    data: G2ChordData

    def __post_init__(self):
        q = q_invariant(self.data)
        # roundoff floor: data sitting exactly on the tangency boundary
        # (a biarc's own data) evaluates to +-few*eps
        d = self.data
        qtol = 64.0 * 2.2e-16 * (1.0 + (1.0 + abs(d.k1 * d.c)) * (1.0 + abs(d.k2 * d.c)))
        if q > qtol:
            raise InvalidDataError(
                "boundary curvature circles intersect (invariant %.3g > 0): "
                "no spiral realizes this data" % q)
        if q < -qtol and not is_short_spiral_data(self.data):
            raise InvalidDataError(
                "data does not satisfy the short-spiral angle conditions")
        if math.sin(self.data.chord.omega) == 0.0:
            raise DegenerateLensError("end tangents form a degenerate lens")

    @cached_property
    def family(self) -> BiarcFamily:
        return BiarcFamily(self.data.chord)

    @cached_property
    def p1(self) -> float:
        return self.family.p_matching_start_curvature(self.data.k1)

    @cached_property
    def p2(self) -> float:
        return self.family.p_matching_end_curvature(self.data.k2)

    @cached_property
    def inner(self) -> Biarc:
        """Boundary member whose first arc is the start curvature circle."""
        return self.family.biarc(self.p1)

    @cached_property
    def outer(self) -> Biarc:
        """Boundary member whose second arc is the end curvature circle."""
        return self.family.biarc(self.p2)

    @property
    def width(self) -> float:
        """Diameter of the largest circle wedged in the central channel,
        between the second arc of the inner boundary and the first arc of
        the outer one.  Closed form, for data of a convex spiral.

        This equals the maximal inscribed diameter of the whole region
        whenever width_is_exact holds; see max_inscribed_width.
        """
        p1, p2 = self.p1, self.p2
        if p2 <= p1:
            return 0.0
        g = self.data.chord.gamma
        om = self.data.chord.omega
        a2 = self.family.a(p2)
        b1 = self.family.b(p1)
        P = 1.0 + 2.0 * p2 * math.cos(g) + p1 * p2
        disc = P * P + 4.0 * p2 * (p2 - p1) * a2 * b1
        if disc < 0.0:
            raise DegenerateLensError(
                "width form is outside its domain (nonconvex data)")
        return (4.0 * self.data.c * (p2 - p1) * abs(math.sin(om))
                / (P + math.sqrt(disc)))

    @property
    def width_is_exact(self) -> bool:
        """True when no boundary sub-arc sweeps beyond a half turn.

        The two boundaries touch tangentially at each endpoint.  Once the
        sub-arcs on one side sweep past pi, the crescent between them wraps
        around far enough to hold a circle near its widest section, which
        can exceed the central-channel diameter.
        """
        th = self.inner.turnings + self.outer.turnings
        return all(abs(t) <= math.pi for t in th)

    def _lune_diameter(self, first: bool) -> float:
        """Largest circle in the tangent crescent at A (first) or B."""
        if first:
            sweeps = (self.inner.turnings[0], self.outer.turnings[0])
            curvs = (self.family.a(self.p1), self.family.a(self.p2))
        else:
            sweeps = (self.inner.turnings[1], self.outer.turnings[1])
            curvs = (self.family.b(self.p1), self.family.b(self.p2))
        if not all(abs(t) >= math.pi for t in sweeps):
            # widest section not reached; the crescent narrows back to the
            # tangency point, so the channel circle dominates
            return 0.0
        r1, r2 = (abs(self.data.c / k) for k in curvs)
        return 2.0 * abs(r1 - r2)

    def max_inscribed_width(self) -> float:
        """Maximal inscribed-circle diameter over the whole region.

        Equals width when width_is_exact; otherwise takes the endpoint
        crescents into account.
        """
        return max(self.width, self._lune_diameter(True),
                   self._lune_diameter(False))

    def boundary_polygon(self, max_angle: float = 1e-3) -> np.ndarray:
        """Closed polygon: one boundary forward, the other backward."""
        cache = self.__dict__.setdefault("_poly_cache", {})
        if max_angle not in cache:
            fwd = self.inner.curve().sample(max_angle=max_angle)
            bwd = self.outer.curve().sample(max_angle=max_angle)[::-1]
            cache[max_angle] = np.vstack([fwd, bwd[1:]])
        return cache[max_angle]

    def distance_to_boundary(self, x: float, y: float) -> float:
        return min(distance_to_curve(x, y, self.inner.curve()),
                   distance_to_curve(x, y, self.outer.curve()))

    def contains_point(self, x: float, y: float, tol: float = 0.0,
                       max_angle: float = 1e-3) -> bool:
        """Point test against the region (optionally grown by tol).

        The crossing test runs on a sampled polygon; near-boundary points
        (within the polygon's sagitta or the caller's tol) are settled by
        exact distance to the two boundary curves.
        """
        poly = self.boundary_polygon(max_angle=max_angle)
        if _crossing_inside(x, y, poly):
            return True
        if tol > 0.0:
            return self.distance_to_boundary(x, y) <= tol
        return False


def _crossing_inside(x, y, poly):
    xs, ys = poly[:, 0], poly[:, 1]
    x2, y2 = np.roll(xs, -1), np.roll(ys, -1)
    crosses = (ys > y) != (y2 > y)
    with np.errstate(divide="ignore", invalid="ignore"):
        xi = xs + (y - ys) * (x2 - xs) / (y2 - ys)
    hits = crosses & (xi > x)
    return bool(np.count_nonzero(hits) % 2)
