"""Two-arc family: curvatures, join points, turnings, lengths."""

import math

import numpy as np
import pytest

from spiralarcs.biarc import Biarc, BiarcFamily
from spiralarcs.curves import PiecewiseConstCurve
from spiralarcs.errors import InvalidDataError
from spiralarcs.geom import (
    circle_through_3_points,
    normalize_angle,
    q_invariant,
    G2ChordData,
)

from oracles import biarc_geometry, measured_length

PI = math.pi

# values frozen from the circle-geometry oracle (tests/oracles.py,
# biarc_geometry) for three member curves
FROZEN = [
    # c, alpha, beta, p, a, b, join, tau_join, theta1, theta2, s1, s2
    (1.0, -0.3, 0.8, 1.0,
     0.04811624740681661, 0.9647600501540458,
     (0.0, -0.2821486154199846), -0.25,
     0.05, 1.05, 1.039150031324275, 1.0883535235858326),
    (2.0, 0.25, 1.35, 0.6,
     -1.442997444087061, 1.4061370123663728,
     (-0.537131428500788, -0.5264095086274563), -0.9408410324377207,
     -1.1908410324377205, 2.290841032437721,
     1.6505102449313458, 3.2583468215269993),
    (0.5, -1.2, -0.4, 2.5,
     1.2189815223270353, -2.1828085695574573,
     (0.22141986280735948, -0.08211900564633404), 0.9733163044046882,
     2.1733163044046884, -1.373316304404688,
     0.8914475997371266, 0.3145755252104206),
]


class TestFrozenMembers:
    @pytest.mark.parametrize("case", FROZEN, ids=["mixed", "sshape", "negomega"])
    def test_member_values(self, case):
        c, al, be, p, a, b, join, tauj, th1, th2, s1, s2 = case
        fam = BiarcFamily.from_angles(c, al, be)
        assert fam.a(p) == pytest.approx(a, rel=1e-13)
        assert fam.b(p) == pytest.approx(b, rel=1e-13)
        j = fam.join_point(p)
        assert (j.real, j.imag) == pytest.approx(join, abs=1e-13)
        assert fam.join_tangent(p) == pytest.approx(tauj, abs=1e-13)
        t1, t2 = fam.turnings(p)
        assert t1 == pytest.approx(th1, abs=1e-12)
        assert t2 == pytest.approx(th2, abs=1e-12)
        m = fam.biarc(p)
        got1, got2 = m.segment_lengths
        assert got1 == pytest.approx(s1, rel=1e-12)
        assert got2 == pytest.approx(s2, rel=1e-12)
        assert m.length == pytest.approx(s1 + s2, rel=1e-12)

    @pytest.mark.parametrize("case", FROZEN, ids=["mixed", "sshape", "negomega"])
    def test_turning_sum(self, case):
        c, al, be, p = case[:4]
        t1, t2 = BiarcFamily.from_angles(c, al, be).turnings(p)
        assert t1 + t2 == pytest.approx(be - al, abs=1e-12)


class TestFamilyProperties:
    def _random_family(self, rng):
        # end tangents with a nondegenerate lens (omega away from 0, pi)
        while True:
            al = float(rng.uniform(-0.95 * PI, 0.95 * PI))
            be = float(rng.uniform(-0.95 * PI, 0.95 * PI))
            om = 0.5 * (al + be)
            if 0.05 < abs(om) < 0.95 * PI and abs(al - be) > 0.05:
                return BiarcFamily.from_angles(math.exp(rng.uniform(-1, 1)), al, be)

    def test_members_interpolate_endpoints(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            fam = self._random_family(rng)
            for p in (0.05, 0.3, 1.0, 4.0, 40.0):
                crv = fam.biarc(p).curve()
                end = crv.end_pose()
                assert end.x == pytest.approx(fam.c, abs=1e-9 * fam.c)
                assert end.y == pytest.approx(0.0, abs=1e-9 * fam.c)
                assert normalize_angle(end.tau - fam.beta) == pytest.approx(0.0, abs=1e-9)
                assert crv.start.x == -fam.c and crv.start.tau == fam.alpha

    def test_curvature_pairs_are_tangent_circles(self):
        # every member's two arcs share a tangency: the invariant vanishes
        rng = np.random.default_rng(12)
        for _ in range(50):
            fam = self._random_family(rng)
            for p in (0.1, 0.7, 1.0, 3.0, 25.0):
                d = G2ChordData.from_values(
                    fam.c, fam.alpha, fam.beta,
                    fam.a(p) / fam.c, fam.b(p) / fam.c)
                assert q_invariant(d) == pytest.approx(0.0, abs=1e-11)

    def test_against_circle_geometry(self):
        rng = np.random.default_rng(13)
        for _ in range(40):
            fam = self._random_family(rng)
            for p in (0.2, 1.0, 5.0):
                a, b = fam.a(p), fam.b(p)
                if min(abs(a), abs(b)) < 1e-3:
                    continue
                t, tauj, th1, th2, s1, s2 = biarc_geometry(
                    fam.c, fam.alpha, fam.beta, a, b)
                m = fam.biarc(p)
                assert abs(m.join_point - t) < 1e-9 * fam.c
                assert normalize_angle(m.join_tangent - tauj) == pytest.approx(0.0, abs=1e-9)
                assert m.turnings[0] == pytest.approx(th1, abs=1e-9)
                assert m.turnings[1] == pytest.approx(th2, abs=1e-9)
                assert m.segment_lengths == pytest.approx((s1, s2), rel=1e-9)

    def test_length_against_quadrature(self):
        rng = np.random.default_rng(14)
        for _ in range(15):
            fam = self._random_family(rng)
            for p in (0.3, 1.0, 3.0):
                m = fam.biarc(p)
                assert measured_length(m.curve()) == pytest.approx(
                    m.length, rel=1e-10)

    def test_join_points_lie_on_one_circle(self):
        # the join locus is a fixed circular arc through both endpoints
        fam = BiarcFamily.from_angles(1.0, -0.3, 0.8)
        pts = [fam.join_point(p) for p in (0.1, 0.5, 1.0, 2.0, 10.0)]
        A, B = complex(-1, 0), complex(1, 0)
        ref_center, ref_r = circle_through_3_points(A, pts[0], B)
        for j in pts[1:]:
            assert abs(abs(j - ref_center) - ref_r) < 1e-12
        # tangent at A of that circle splits the end tangents evenly
        gamma = fam.chord.gamma
        tangent_at_A = 1j * (A - ref_center)
        assert normalize_angle(math.atan2(tangent_at_A.imag, tangent_at_A.real)
                               - gamma) % PI == pytest.approx(0.0, abs=1e-12) \
            or normalize_angle(math.atan2(tangent_at_A.imag, tangent_at_A.real)
                               - gamma) % PI == pytest.approx(PI, abs=1e-12)

    def test_parameter_validation(self):
        fam = BiarcFamily.from_angles(1.0, -0.3, 0.8)
        for bad in (0.0, -1.0, math.inf, math.nan):
            with pytest.raises(InvalidDataError):
                fam.biarc(bad)


class TestLengthBehaviour:
    def test_limits(self):
        fam = BiarcFamily.from_angles(1.0, -0.3, 0.8)
        assert fam.length_at_zero == pytest.approx(2 * 0.8 / math.sin(0.8), rel=1e-14)
        assert fam.length_at_infinity == pytest.approx(2 * 0.3 / math.sin(0.3), rel=1e-14)
        assert fam.length(1e-9) == pytest.approx(fam.length_at_zero, rel=1e-7)
        assert fam.length(1e9) == pytest.approx(fam.length_at_infinity, rel=1e-7)

    def test_straight_chord_limit(self):
        # alpha = beta = 0 would be a straight segment; nearby data must
        # give lengths just above the chord
        fam = BiarcFamily.from_angles(1.0, -1e-4, 3e-4)
        L = fam.length(1.0)
        assert 2.0 < L < 2.0 + 1e-7

    def test_monotone_direction(self):
        rng = np.random.default_rng(15)
        for _ in range(30):
            al = float(rng.uniform(-2.5, 2.5))
            be = float(rng.uniform(-2.5, 2.5))
            if abs(al + be) < 0.05 or abs(abs(al) - abs(be)) < 1e-3:
                continue
            fam = BiarcFamily.from_angles(1.0, al, be)
            ps = np.geomspace(1e-3, 1e3, 200)
            vals = np.array([fam.length(p) for p in ps])
            diffs = np.diff(vals)
            if fam.length_monotonicity() < 0:
                assert np.all(diffs < 1e-15)
            else:
                assert np.all(diffs > -1e-15)

    def test_constant_when_angles_equal(self):
        fam = BiarcFamily.from_angles(1.0, 0.7, 0.7)
        assert fam.length_monotonicity() == 0
        vals = [fam.length(p) for p in (0.01, 0.1, 1.0, 10.0, 100.0)]
        assert max(vals) - min(vals) < 1e-12 * vals[0]
        assert vals[0] == pytest.approx(2 * 0.7 / math.sin(0.7), rel=1e-12)


class TestConvexityThreshold:
    def test_first_arc_straightens(self):
        fam = BiarcFamily.from_angles(1.0, -0.3, 0.8)  # |alpha| < |beta|
        pbar = fam.convexity_threshold()
        assert pbar is not None
        assert fam.a(pbar) == pytest.approx(0.0, abs=1e-15)
        crv = fam.biarc(pbar).curve()
        assert crv.segments[0][0] == 0.0  # exactly straight first piece
        end = crv.end_pose()
        assert end.x == pytest.approx(1.0, abs=1e-9)
        assert end.y == pytest.approx(0.0, abs=1e-9)

    def test_second_arc_straightens(self):
        fam = BiarcFamily.from_angles(1.0, -0.8, 0.3)  # |alpha| > |beta|
        pbar = fam.convexity_threshold()
        assert pbar is not None
        assert fam.b(pbar) == pytest.approx(0.0, abs=1e-15)
        crv = fam.biarc(pbar).curve()
        assert crv.segments[1][0] == 0.0

    def test_straight_joint_chord_length(self):
        # |A J| at the threshold, against plain triangle geometry
        fam = BiarcFamily.from_angles(1.0, -0.3, 0.8)
        pbar = fam.convexity_threshold()
        j = fam.join_point(pbar)
        g, om = fam.chord.gamma, fam.chord.omega
        assert abs(j - complex(-1, 0)) == pytest.approx(
            -2.0 * math.sin(om) / math.sin(g) * 1.0, rel=1e-12) or \
            abs(j - complex(-1, 0)) == pytest.approx(
            abs(2.0 * math.sin(om) / math.sin(g)), rel=1e-12)

    def test_none_for_symmetric(self):
        fam = BiarcFamily.from_angles(1.0, 0.7, 0.7)
        assert fam.convexity_threshold() is None


class TestShortness:
    def test_members_avoid_chord_line_extensions(self):
        # short members only touch the chord's line within the chord itself
        rng = np.random.default_rng(16)
        for _ in range(25):
            al = float(rng.uniform(-0.9 * PI, 0.9 * PI))
            be = float(rng.uniform(-0.9 * PI, 0.9 * PI))
            if abs(al + be) < 0.1:
                continue
            fam = BiarcFamily.from_angles(1.0, al, be)
            for p in (0.2, 1.0, 5.0):
                pts = fam.biarc(p).curve().sample(max_angle=0.005)
                on_line = pts[np.abs(pts[:, 1]) < 1e-6]
                if len(on_line):
                    assert np.all(on_line[:, 0] <= 1.0 + 1e-6)
                    assert np.all(on_line[:, 0] >= -1.0 - 1e-6)
