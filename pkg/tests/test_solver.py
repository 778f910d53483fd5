"""Length-matching solver: frozen cases, random pipeline, failure modes."""

import math

import numpy as np
import pytest

from oracles import (
    biarc_geometry,
    hausdorff_between_curves,
    random_convex_spiral,
)
from spiralarcs.biarc import BiarcFamily
from spiralarcs.bilens import Bilens
from spiralarcs.curves import PiecewiseConstCurve
from spiralarcs.errors import (
    ConvexityError,
    InvalidDataError,
    LengthRangeError,
)
from spiralarcs.geom import ChordData, G2ChordData, chord_frame, reversed_data
from spiralarcs.solver import ApproxResult, length_residual, solve_length_biarc


# Reference case: c=1, alpha=-0.3, beta=0.9, k1=0.05, k2=1.4.  The expected
# values below were produced by plain bisection on arc lengths taken from the
# independent tangency construction in oracles.biarc_geometry (see the
# bracket parameters in test_bilens for the same data pattern).
G2_CASE = dict(
    c=1.0, alpha=-0.3, beta=0.9, k1=0.05, k2=1.4,
    p1=1.203649225780296,
    p2=2.0867374767344145,
    S_p1=2.1465217311346123,
    S_p2=2.111894259001377,
    L=2.1292079950679947,
    p0=1.5686701444048863,
    q1=0.10713120230921522,
    q2=1.2469006348854887,
    join=0.2414389375962367 - 0.2928017819363724j,
)


def g2_data():
    k = G2_CASE
    return G2ChordData.from_values(k["c"], k["alpha"], k["beta"],
                                   k["k1"], k["k2"])


class TestFrozenG2:
    def test_reference_solution(self):
        k = G2_CASE
        res = solve_length_biarc(g2_data(), k["L"])
        assert isinstance(res, ApproxResult)
        assert not res.ill_conditioned
        assert res.p0 == pytest.approx(k["p0"], rel=1e-9)
        assert res.q1 == pytest.approx(k["q1"], abs=1e-9)
        assert res.q2 == pytest.approx(k["q2"], abs=1e-9)
        assert abs(res.biarc.join_point - k["join"]) < 1e-9
        assert abs(res.biarc.length - k["L"]) <= max(1e-12, 1e-10 * k["L"])

    def test_curvatures_strictly_inside(self):
        k = G2_CASE
        res = solve_length_biarc(g2_data(), k["L"])
        assert k["k1"] < res.q1 < res.q2 < k["k2"]

    def test_width_bound_reported(self):
        k = G2_CASE
        res = solve_length_biarc(g2_data(), k["L"])
        assert res.width_bound == Bilens(g2_data()).width
        assert res.width_bound > 0.0

    def test_residual_signs_across_bracket(self):
        k = G2_CASE
        d = g2_data()
        # S decreases in p here, so the residual flips sign across the root
        assert length_residual(d, k["L"], k["p1"]) > 0.0
        assert length_residual(d, k["L"], k["p2"]) < 0.0
        assert abs(length_residual(d, k["L"], k["p0"])) < 1e-10

    def test_length_out_of_range_reports_bounds(self):
        k = G2_CASE
        for L_bad in (k["S_p1"] * 1.05, k["S_p2"] * 0.95):
            with pytest.raises(LengthRangeError) as ei:
                solve_length_biarc(g2_data(), L_bad)
            err = ei.value
            assert err.requested == L_bad
            assert err.lower == pytest.approx(k["S_p2"], rel=1e-9)
            assert err.upper == pytest.approx(k["S_p1"], rel=1e-9)

    def test_reversal_maps_parameter_to_reciprocal(self):
        k = G2_CASE
        res = solve_length_biarc(g2_data(), k["L"])
        res_rev = solve_length_biarc(reversed_data(g2_data()), k["L"])
        assert res_rev.p0 * res.p0 == pytest.approx(1.0, rel=1e-8)
        assert res_rev.q1 == pytest.approx(-res.q2, abs=1e-9)
        assert res_rev.q2 == pytest.approx(-res.q1, abs=1e-9)


class TestFrozenG1:
    # same chord angles, tangent-only data; L measured on the p=1.5 member
    L = 2.132064274952593

    def test_recovers_known_member(self):
        res = solve_length_biarc(ChordData(1.0, -0.3, 0.9), self.L)
        assert res.p0 == pytest.approx(1.5, rel=1e-9)
        assert res.q1 == pytest.approx(0.09850673555377981, abs=1e-9)
        assert res.q2 == pytest.approx(1.2266072196194928, abs=1e-9)
        assert res.width_bound is None
        assert abs(res.biarc.length - self.L) <= max(1e-12, 1e-10 * self.L)

    def test_convexity_limit_value(self):
        # at the admissible-length maximum the first piece goes straight:
        # length = sec(0.3) + (beta - alpha)/(sin 0.9 + sin 0.3)
        fam = BiarcFamily(ChordData(1.0, -0.3, 0.9))
        limit = 1.0 / math.cos(0.3) + 1.2 / (math.sin(0.9) + math.sin(0.3))
        assert fam.length(fam.convexity_threshold()) == pytest.approx(
            limit, rel=1e-12)

    def test_length_above_convexity_limit(self):
        with pytest.raises(LengthRangeError) as ei:
            solve_length_biarc(ChordData(1.0, -0.3, 0.9), 2.2)
        limit = 1.0 / math.cos(0.3) + 1.2 / (math.sin(0.9) + math.sin(0.3))
        assert ei.value.upper == pytest.approx(limit, rel=1e-9)

    def test_length_below_outer_limit(self):
        # lengths down to 2*c*alpha/sin(alpha) are attained only in the limit
        outer = 2.0 * (-0.3) / math.sin(-0.3)
        for L_bad in (outer, outer * 0.9):
            with pytest.raises(LengthRangeError) as ei:
                solve_length_biarc(ChordData(1.0, -0.3, 0.9), L_bad)
            assert ei.value.lower == pytest.approx(outer, rel=1e-9)

    def test_straight_data(self):
        res = solve_length_biarc(ChordData(1.0, 0.0, 0.0), 2.0)
        assert res.biarc.length == pytest.approx(2.0, abs=1e-12)
        with pytest.raises(LengthRangeError):
            solve_length_biarc(ChordData(1.0, 0.0, 0.0), 2.5)


class TestDegenerateInputs:
    def test_biarc_input_is_a_fixed_point(self):
        sp = PiecewiseConstCurve(((0.4, 1.1), (0.9, 0.7)))
        d, _ = chord_frame(sp)
        res = solve_length_biarc(d, sp.length)
        assert not res.ill_conditioned
        assert res.q1 == pytest.approx(0.4, abs=1e-9)
        assert res.q2 == pytest.approx(0.9, abs=1e-9)
        assert abs(res.biarc.length - sp.length) <= 1e-10 * sp.length

    def test_biarc_input_wrong_length(self):
        sp = PiecewiseConstCurve(((0.4, 1.1), (0.9, 0.7)))
        d, _ = chord_frame(sp)
        with pytest.raises(LengthRangeError) as ei:
            solve_length_biarc(d, sp.length * 1.01)
        err = ei.value
        assert err.lower == err.upper
        assert err.lower == pytest.approx(sp.length, rel=1e-9)

    def test_single_arc_input(self):
        # arc data: alpha = -beta, equal curvatures
        k, sweep = 0.9, 1.2
        c = math.sin(sweep / 2) / k
        d = G2ChordData.from_values(c, -sweep / 2, sweep / 2, k, k)
        res = solve_length_biarc(d, sweep / k)
        assert res.q1 == pytest.approx(k, abs=1e-12)
        assert res.q2 == pytest.approx(k, abs=1e-12)
        assert res.width_bound == 0.0
        with pytest.raises(LengthRangeError) as ei:
            solve_length_biarc(d, sweep / k * 1.001)
        assert ei.value.lower == ei.value.upper

    def test_flat_length_family_sets_flag(self):
        # nearly-biarc data: every admissible member matches the length
        # within tolerance, so the solver picks one and says so
        c, al, be = 1.0, -0.4, 0.7
        om = (al + be) / 2
        a = -math.sin(al) - math.sin(om) / 1.3
        b = math.sin(be) + 1.3 * math.sin(om)
        dk = 3e-10
        d = G2ChordData.from_values(c, al, be, a / c - dk, b / c + dk)
        bl = Bilens(d)
        fam = bl.family
        L = 0.5 * (fam.length(bl.p1) + fam.length(bl.p2))
        res = solve_length_biarc(d, L)
        assert res.ill_conditioned
        assert bl.p1 <= res.p0 <= bl.p2
        assert abs(res.biarc.length - L) <= max(1e-12 * c, 1e-10 * L)

    def test_rejects_nonpositive_or_infinite_length(self):
        d = g2_data()
        for L_bad in (0.0, -1.0, math.inf, math.nan):
            with pytest.raises(InvalidDataError):
                solve_length_biarc(d, L_bad)

    def test_rejects_data_off_the_admissible_side(self):
        # tangency invariant positive: not a short spiral configuration
        d = G2ChordData.from_values(1.0, -0.2, 0.1, 2.0, 3.0)
        with pytest.raises(InvalidDataError):
            solve_length_biarc(d, 1.0)

    def test_rejects_inflection(self):
        d = G2ChordData.from_values(1.0, -0.3, 0.9, -0.5, 0.5)
        with pytest.raises(ConvexityError):
            solve_length_biarc(d, 2.1)

    def test_rejects_angles_outside_convex_range(self):
        # positive turning needs alpha <= 0 <= beta
        d = G2ChordData.from_values(1.0, 0.3, 0.9, 0.2, 1.4)
        with pytest.raises(ConvexityError):
            solve_length_biarc(d, 2.1)
        with pytest.raises(ConvexityError):
            solve_length_biarc(ChordData(1.0, 0.3, 0.9), 2.1)

    def test_rejects_turning_against_curvature_sign(self):
        d = G2ChordData.from_values(1.0, 0.5, -0.5, 0.2, 1.0)
        with pytest.raises(ConvexityError):
            solve_length_biarc(d, 2.1)


class TestRandomPipeline:
    """Trace random convex spirals end to end through the solver."""

    def _solved(self, seed, n):
        rng = np.random.default_rng(seed)
        out = []
        for _ in range(n):
            sp = random_convex_spiral(rng)
            d, motion = chord_frame(sp)
            res = solve_length_biarc(d, sp.length)
            out.append((sp, d, motion, res))
        return out

    def test_endpoint_and_length_contracts(self):
        for sp, d, motion, res in self._solved(101, 40):
            cv = res.curve
            end = cv.end_pose()
            assert math.hypot(cv.start.x + d.c, cv.start.y) <= 1e-9 * d.c
            assert math.hypot(end.x - d.c, end.y) <= 1e-9 * d.c
            assert abs(math.remainder(cv.start.tau - d.alpha,
                                      2 * math.pi)) <= 1e-9
            assert abs(math.remainder(end.tau - d.beta, 2 * math.pi)) <= 1e-9
            assert abs(res.biarc.length - sp.length) <= \
                max(1e-12 * d.c, 1e-10 * sp.length)

    def test_turning_matches_input(self):
        for sp, d, motion, res in self._solved(102, 40):
            turning = sum(k * s for k, s in sp.segments)
            th1, th2 = res.biarc.turnings
            assert abs((th1 + th2) - turning) <= 1e-9

    def test_curvature_interlacing(self):
        for sp, d, motion, res in self._solved(103, 60):
            qlo, qhi = sorted((res.q1, res.q2))
            klo, khi = sorted((d.k1, d.k2))
            pad = 1e-12 * max(1.0, abs(klo), abs(khi))
            assert klo - pad <= qlo <= qhi <= khi + pad
            if len(sp.segments) > 2 and khi - klo > 1e-6:
                assert klo < qlo and qhi < khi

    def test_hausdorff_within_width_bound(self):
        for sp, d, motion, res in self._solved(104, 12):
            sp_cf = sp.transformed(motion)
            h = hausdorff_between_curves(sp_cf, res.curve, n=200)
            w = res.width_bound
            assert h <= w + 1e-9 * d.c

    def test_solution_inside_enclosure(self):
        for sp, d, motion, res in self._solved(105, 8):
            bl = Bilens(d)
            if bl.p2 - bl.p1 <= 1e-9:
                continue
            cv = res.curve
            for t in np.linspace(0.0, cv.length, 9):
                pose = cv.pose_at(t)
                assert bl.contains_point(pose.x, pose.y, tol=1e-6 * d.c)

    def test_solution_agrees_with_plain_bisection(self):
        # independent root find on lengths from the tangency construction
        for sp, d, motion, res in self._solved(106, 10):
            if len(sp.segments) == 2:
                continue
            if d.k1 == 0.0 or d.k2 == 0.0:
                # the reference construction cannot trace a straight piece
                continue
            bl = Bilens(d)
            om = d.omega

            def S(p):
                a = -math.sin(d.alpha) - math.sin(om) / p
                b = math.sin(d.beta) + p * math.sin(om)
                t, tau, th1, th2, s1, s2 = biarc_geometry(
                    d.c, d.alpha, d.beta, a, b)
                return s1 + s2

            lo, hi = bl.p1, bl.p2
            if hi - lo <= 4e-16 * hi:
                continue
            flo = S(lo) - sp.length
            fhi = S(hi) - sp.length
            if flo * fhi > 0.0:
                continue
            for _ in range(200):
                mid = 0.5 * (lo + hi)
                fm = S(mid) - sp.length
                if (fm > 0.0) == (flo > 0.0):
                    lo, flo = mid, fm
                else:
                    hi, fhi = mid, fm
                if hi - lo <= 1e-14 * hi:
                    break
            p_ref = 0.5 * (lo + hi)
            assert res.p0 == pytest.approx(p_ref, rel=1e-8)
