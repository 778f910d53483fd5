"""Piecewise-circular curves: exact tracing, sampling, and symmetries.

A curve is a start pose plus a list of (curvature, length) segments. Arcs are
propagated in closed form; the only numerical care needed is the straight
limit k -> 0, handled by the sinc form of the arc chord:

    endpoint displacement of an arc = l * sinc(k*l/2) * e^{i*k*l/2}

which is exact for every k including 0.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidDataError
from .geom import Pose

# below this |k|*l the quadratic sinc correction is < 1e-24: treat as straight
STRAIGHT_TURN_EPS = 1e-12


def _sinc(x: float) -> float:
    return math.sin(x) / x if abs(x) > 1e-8 else 1.0 - x * x / 6.0


def arc_displacement(k: float, length: float) -> complex:
    """Chord vector of an arc traced from the origin along +x."""
    half = 0.5 * k * length
    return length * _sinc(half) * complex(math.cos(half), math.sin(half))


def arc_length_from_chord(chord: float, turning: float) -> float:
    """Arc length of a circular arc with the given chord and turning angle.

    Stable replacement for c*theta/a when the curvature is (near) zero; valid
    for |turning| < 2*pi.
    """
    half = 0.5 * turning
    if abs(half) < 1e-8:
        return chord * (1.0 + half * half / 6.0)
    return chord * half / math.sin(half)


@dataclass(frozen=True)
class PiecewiseConstCurve:
    """Arc-length parametrized curve with piecewise-constant curvature."""

    segments: tuple
    start: Pose = field(default_factory=lambda: Pose(0.0, 0.0, 0.0))

    def __post_init__(self):
        segs = tuple((float(k), float(l)) for k, l in self.segments)
        if not segs:
            raise InvalidDataError("curve needs at least one segment")
        for k, l in segs:
            if not (math.isfinite(k) and math.isfinite(l)):
                raise InvalidDataError("segment values must be finite")
            if l <= 0.0:
                raise InvalidDataError(f"segment length must be positive, got {l}")
        object.__setattr__(self, "segments", segs)

    @property
    def length(self) -> float:
        return sum(l for _, l in self.segments)

    @property
    def turning(self) -> float:
        return sum(k * l for k, l in self.segments)

    @property
    def k_start(self) -> float:
        return self.segments[0][0]

    @property
    def k_end(self) -> float:
        return self.segments[-1][0]

    def curvature_levels(self):
        return tuple(k for k, _ in self.segments)

    def is_monotone(self, strict: bool = False) -> bool:
        ks = self.curvature_levels()
        up = all((a < b if strict else a <= b) for a, b in zip(ks, ks[1:]))
        dn = all((a > b if strict else a >= b) for a, b in zip(ks, ks[1:]))
        return up or dn

    # -- tracing ----------------------------------------------------------

    def vertex_poses(self):
        """Poses at segment boundaries, start first, end last. The tangent
        accumulates turning (it is not wrapped)."""
        poses = [self.start]
        z = self.start.point
        tau = self.start.tau
        for k, l in self.segments:
            z = z + complex(math.cos(tau), math.sin(tau)) * arc_displacement(k, l)
            tau = tau + k * l
            poses.append(Pose(z.real, z.imag, tau))
        return poses

    def end_pose(self) -> Pose:
        return self.vertex_poses()[-1]

    def pose_at(self, s: float) -> Pose:
        """Pose at arc length s from the start (clamped to [0, length])."""
        s = min(max(s, 0.0), self.length)
        z = self.start.point
        tau = self.start.tau
        remaining = s
        for k, l in self.segments:
            step = min(l, remaining)
            z = z + complex(math.cos(tau), math.sin(tau)) * arc_displacement(k, step)
            tau = tau + k * step
            remaining -= step
            if remaining <= 0.0:
                break
        return Pose(z.real, z.imag, tau)

    def sample(self, max_angle: float = 0.01, min_per_segment: int = 1) -> np.ndarray:
        """(N, 2) polyline including both endpoints; each arc is subdivided so
        no sub-arc turns more than max_angle radians."""
        pts = [(self.start.x, self.start.y)]
        z = self.start.point
        tau = self.start.tau
        for k, l in self.segments:
            n = max(min_per_segment, int(math.ceil(abs(k) * l / max_angle)))
            dl = l / n
            step = arc_displacement(k, dl)
            dtau = k * dl
            for _ in range(n):
                z = z + complex(math.cos(tau), math.sin(tau)) * step
                tau += dtau
                pts.append((z.real, z.imag))
        return np.asarray(pts)

    def sample_with_arclength(self, max_angle: float = 0.01):
        """(points, s) where s[i] is the arc length at points[i]."""
        pts = [(self.start.x, self.start.y)]
        svals = [0.0]
        z = self.start.point
        tau = self.start.tau
        s = 0.0
        for k, l in self.segments:
            n = max(1, int(math.ceil(abs(k) * l / max_angle)))
            dl = l / n
            step = arc_displacement(k, dl)
            dtau = k * dl
            for _ in range(n):
                z = z + complex(math.cos(tau), math.sin(tau)) * step
                tau += dtau
                s += dl
                pts.append((z.real, z.imag))
                svals.append(s)
        return np.asarray(pts), np.asarray(svals)

    # -- symmetries -------------------------------------------------------

    def reverse(self) -> "PiecewiseConstCurve":
        """Same point set traversed backwards (curvatures negate)."""
        end = self.end_pose()
        segs = tuple((-k, l) for k, l in reversed(self.segments))
        return PiecewiseConstCurve(segs, Pose(end.x, end.y, end.tau + math.pi))

    def reflect_x(self) -> "PiecewiseConstCurve":
        """Mirror image about the x axis."""
        segs = tuple((-k, l) for k, l in self.segments)
        return PiecewiseConstCurve(segs, Pose(self.start.x, -self.start.y, -self.start.tau))

    def transformed(self, motion) -> "PiecewiseConstCurve":
        return PiecewiseConstCurve(self.segments, motion.apply_pose(self.start))

    def merged(self, tol: float = 0.0) -> "PiecewiseConstCurve":
        """Coalesce consecutive segments with (near-)equal curvature."""
        segs = []
        for k, l in self.segments:
            if segs and abs(segs[-1][0] - k) <= tol:
                segs[-1] = (segs[-1][0], segs[-1][1] + l)
            else:
                segs.append((k, l))
        return PiecewiseConstCurve(tuple(segs), self.start)


def spiral_from_levels(levels, lengths, start: Pose = Pose(0.0, 0.0, 0.0)) -> PiecewiseConstCurve:
    """Convenience constructor from parallel sequences."""
    return PiecewiseConstCurve(tuple(zip(levels, lengths)), start)


def distance_to_curve(x: float, y: float, curve: PiecewiseConstCurve) -> float:
    """Exact distance from a point to a traced curve (per-segment circles)."""
    p = complex(x, y)
    best = math.inf
    for pose, (k, l) in zip(curve.vertex_poses(), curve.segments):
        z0 = complex(pose.x, pose.y)
        if abs(k) * l < STRAIGHT_TURN_EPS:
            d = cmath.exp(1j * pose.tau)
            t = min(max(((p - z0) / d).real, 0.0), l)
            best = min(best, abs(p - (z0 + t * d)))
            continue
        center = z0 + 1j * cmath.exp(1j * pose.tau) / k
        rel = cmath.phase((p - center) / (z0 - center))
        sweep = k * l
        covered = rel % (2.0 * math.pi) if k > 0 else (-rel) % (2.0 * math.pi)
        if covered <= abs(sweep):
            best = min(best, abs(abs(p - center) - abs(1.0 / k)))
        else:
            zend = center + (z0 - center) * cmath.exp(1j * sweep)
            best = min(best, abs(p - z0), abs(p - zend))
    return best
