"""Length-preserving biarc approximation of convex spiral data.

Given chord-frame Hermite data of a convex spiral and its arc length L,
there is exactly one member of the end-tangent biarc family with the same
length; with curvature data the member also pinches its arc curvatures
strictly between the input's end curvatures.  The length S(p) is strictly
monotone over the admissible bracket, so a safeguarded bracketed search is
globally convergent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .biarc import Biarc, BiarcFamily
from .bilens import Bilens
from .errors import (
    ConvexityError,
    InvalidDataError,
    LengthRangeError,
    SolverError,
)
from .geom import ChordData, G2ChordData

__all__ = ["ApproxResult", "solve_length_biarc", "length_residual"]

_EQUAL_ANGLE_EPS = 1e-8


@dataclass(frozen=True)
class ApproxResult:
    """Solution of the length-matching problem."""

    biarc: Biarc
    p0: float
    q1: float                       # start curvature of the output
    q2: float                       # end curvature of the output
    width_bound: Optional[float]    # enclosure width when curvature data given
    ill_conditioned: bool = False   # length equation nearly degenerate

    @property
    def curve(self):
        return self.biarc.curve()


def length_residual(d, L: float, p: float) -> float:
    """S(p) - L for the family of the given data; monotone in p."""
    fam = BiarcFamily(_chord_of(d))
    return fam.length(p) - L


def _chord_of(d) -> ChordData:
    if isinstance(d, G2ChordData):
        return d.chord
    if isinstance(d, ChordData):
        return d
    raise InvalidDataError("expected chord data, got %r" % (d,))


def _convex_box_ok(alpha: float, beta: float) -> bool:
    t = beta - alpha
    if t >= 0.0:
        return -math.pi <= alpha <= 0.0 <= beta <= math.pi
    return -math.pi <= beta <= 0.0 <= alpha <= math.pi


def solve_length_biarc(d, L: float) -> ApproxResult:
    """Unique biarc with the data's endpoints/tangents and length L.

    With curvature data (G2): the family bracket comes from the enclosure
    region and the output curvatures satisfy k1 <= q1 < q2 <= k2 (strict for
    non-biarc inputs).  With tangent-only data (G1): the bracket spans the
    convex members, so L may range over (outer limit, convexity limit].
    """
    if not (L > 0.0) or math.isinf(L):
        raise InvalidDataError("target length must be positive and finite")
    if isinstance(d, G2ChordData):
        return _solve_g2(d, L)
    return _solve_g1(_chord_of(d), L)


# ---------------------------------------------------------------------------


def _ftol(c: float, L: float) -> float:
    return max(1e-12 * c, 1e-10 * L)


def _result(fam: BiarcFamily, p0: float, width: Optional[float],
            flagged: bool) -> ApproxResult:
    m = fam.biarc(p0)
    return ApproxResult(biarc=m, p0=p0, q1=m.k1, q2=m.k2,
                        width_bound=width, ill_conditioned=flagged)


def _solve_g2(d: G2ChordData, L: float) -> ApproxResult:
    c = d.c
    if d.k1 == d.k2:
        return _solve_single_arc(d, L)
    if d.k1 * d.k2 < 0.0:
        raise ConvexityError(
            "curvature changes sign between the endpoints: data does not "
            "describe a convex spiral")
    if not _convex_box_ok(d.alpha, d.beta):
        raise ConvexityError(
            "chord angles are outside the convex range for this turning")
    sign = 1.0 if (d.k1 + d.k2) > 0.0 else -1.0
    if sign * (d.beta - d.alpha) <= 0.0:
        raise ConvexityError(
            "turning direction contradicts the curvature sign")

    bl = Bilens(d)   # validates the tangency invariant and shortness
    fam = bl.family
    p_lo, p_hi = bl.p1, bl.p2
    gap = p_hi - p_lo
    scale = max(1.0, abs(p_lo), abs(p_hi))
    # biarc inputs land exactly on the tangency boundary; roundoff leaves the
    # bracket ends a few ulps apart, possibly out of order
    if gap < -1e-9 * scale:
        raise SolverError("enclosure bracket is invalid: p1=%g p2=%g"
                          % (p_lo, p_hi))
    if gap <= 1e-11 * scale:
        p_lo = p_hi = 0.5 * (p_lo + p_hi)
    if not (p_lo > 0.0):
        raise SolverError("enclosure bracket is invalid: p1=%g p2=%g"
                          % (p_lo, p_hi))
    return _solve_on_bracket(fam, L, p_lo, p_hi, width=bl.width)


def _solve_single_arc(d: G2ChordData, L: float) -> ApproxResult:
    """k1 == k2: the data describes one circular arc (or a segment)."""
    c, k = d.c, d.k1
    tol = 1e-9 * max(1.0, abs(k) * c)
    if abs(d.alpha + d.beta) > 1e-9 or abs(math.sin(d.beta) - k * c) > tol:
        raise InvalidDataError(
            "equal end curvatures require matching arc data "
            "(opposite chord angles with sin(beta) = k*c)")
    fam = BiarcFamily(d.chord)
    S = fam.length(1.0)
    if abs(S - L) > _ftol(c, L):
        raise LengthRangeError(
            "an arc with this data has length %.17g, not %.17g" % (S, L),
            requested=L, lower=S, upper=S)
    return _result(fam, 1.0, 0.0, False)


def _solve_g1(chord: ChordData, L: float) -> ApproxResult:
    c, al, be = chord.c, chord.alpha, chord.beta
    if al == 0.0 and be == 0.0:
        fam = BiarcFamily(chord)
        if abs(2.0 * c - L) > _ftol(c, L):
            raise LengthRangeError(
                "straight data admits only the chord length %.17g" % (2 * c),
                requested=L, lower=2 * c, upper=2 * c)
        return _result(fam, 1.0, None, False)
    if not _convex_box_ok(al, be):
        raise ConvexityError(
            "chord angles are outside the convex range for this turning")
    fam = BiarcFamily(chord)
    pbar = fam.convexity_threshold()
    if pbar is None:
        raise ConvexityError(
            "no convex family member exists for these chord angles")
    S_bar = fam.length(pbar)
    if abs(al) < abs(be):
        outer = fam.length_at_infinity
    else:
        outer = fam.length_at_zero
    ft = _ftol(c, L)
    lo_len, hi_len = min(S_bar, outer), max(S_bar, outer)
    if L > hi_len + ft:
        raise LengthRangeError(
            "requested length exceeds the convexity limit %.17g" % S_bar,
            requested=L, lower=lo_len, upper=hi_len)
    if L <= lo_len + ft:
        raise LengthRangeError(
            "requested length does not exceed the outer family limit %.17g "
            "(attained only in the degenerate limit)" % outer,
            requested=L, lower=lo_len, upper=hi_len)

    # grow the second bracket end away from pbar until L is enclosed
    if abs(al) < abs(be):
        # S decreases on [pbar, inf)
        p_far = max(2.0 * pbar, 1.0)
        for _ in range(200):
            if fam.length(p_far) < L:
                break
            p_far *= 4.0
        else:
            raise SolverError("could not bracket the requested length")
        p_lo, p_hi = pbar, p_far
    else:
        p_far = min(0.5 * pbar, 1.0)
        for _ in range(200):
            if fam.length(p_far) < L:
                break
            p_far *= 0.25
        else:
            raise SolverError("could not bracket the requested length")
        p_lo, p_hi = p_far, pbar
    return _solve_on_bracket(fam, L, p_lo, p_hi, width=None)


# ---------------------------------------------------------------------------


def _solve_on_bracket(fam: BiarcFamily, L: float, p_lo: float, p_hi: float,
                      width: Optional[float]) -> ApproxResult:
    c = fam.c
    ft = _ftol(c, L)
    f_lo = fam.length(p_lo) - L
    f_hi = fam.length(p_hi) - L

    if p_hi == p_lo:
        # the lens degenerates to a single member (input is itself a biarc)
        if abs(f_lo) > ft:
            raise LengthRangeError(
                "requested length is outside the admissible range",
                requested=L, lower=f_lo + L, upper=f_lo + L)
        return _result(fam, p_lo, width, False)

    if abs(fam.alpha - fam.beta) < _EQUAL_ANGLE_EPS or \
            abs(f_lo - f_hi) <= ft:
        # length barely depends on p: every member matches within
        # tolerance; pick the one whose join sits nearest the chord middle
        if max(abs(f_lo), abs(f_hi)) > 10.0 * max(ft, abs(f_lo - f_hi)):
            raise LengthRangeError(
                "requested length is outside the (degenerate) family range",
                requested=L, lower=min(f_lo, f_hi) + L,
                upper=max(f_lo, f_hi) + L)
        p0 = _join_nearest_middle(fam, p_lo, p_hi)
        return _result(fam, p0, width, True)

    if f_lo * f_hi > 0.0:
        # allow a tolerance pad at the bracket ends
        if abs(f_lo) <= ft or abs(f_hi) <= ft:
            p0 = p_lo if abs(f_lo) <= abs(f_hi) else p_hi
            return _result(fam, p0, width, False)
        raise LengthRangeError(
            "requested length is outside the admissible range",
            requested=L,
            lower=min(f_lo, f_hi) + L, upper=max(f_lo, f_hi) + L)

    # aim well inside the contract tolerance; secant convergence makes the
    # extra iterations essentially free
    p0 = _bisect_secant(lambda p: fam.length(p) - L, p_lo, p_hi,
                        f_lo, f_hi, ft / 64.0)
    return _result(fam, p0, width, False)


def _bisect_secant(f, lo, hi, flo, fhi, ftol, max_iter=200):
    """Bracketed root finder: secant step when it lands inside and shrinks
    the bracket decently, bisection otherwise."""
    for _ in range(max_iter):
        if abs(flo) <= ftol:
            return lo
        if abs(fhi) <= ftol:
            return hi
        if (hi - lo) <= 4.0 * 2.2e-16 * max(abs(lo), abs(hi)):
            return lo if abs(flo) < abs(fhi) else hi
        mid = 0.5 * (lo + hi)
        p = mid
        if fhi != flo:
            sec = lo - flo * (hi - lo) / (fhi - flo)
            # accept the secant point if safely interior
            w = hi - lo
            if lo + 0.01 * w < sec < hi - 0.01 * w:
                p = sec
        fp = f(p)
        if abs(fp) <= ftol:
            return p
        if (fp > 0.0) == (flo > 0.0):
            lo, flo = p, fp
        else:
            hi, fhi = p, fp
    raise SolverError("root finder failed to converge")


def _join_nearest_middle(fam: BiarcFamily, p_lo: float, p_hi: float) -> float:
    from scipy.optimize import minimize_scalar

    if p_lo >= p_hi:
        return p_lo
    r = minimize_scalar(lambda p: abs(fam.join_point(p)),
                        bounds=(p_lo, p_hi), method="bounded",
                        options={"xatol": 1e-12 * max(1.0, p_hi)})
    return float(r.x)
