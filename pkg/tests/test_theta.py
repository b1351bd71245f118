import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cfapprox.cf import RealSpec, TVPoint, natural_extension_step, orbit, rcf_expand_rational
from cfapprox.exactnum import QuadSurd
from cfapprox.theta import (
    DeltaPoint,
    ThetaPair,
    f_map,
    jp_backward,
    jp_forward,
    mu_density,
    psi,
    psi_inverse,
    theta_direct,
    theta_from_tv,
)

GOLDEN = QuadSurd(-1, 1, 5, 2)
INV_SQRT5 = QuadSurd(0, 1, 5, 5)
X100 = Fraction(201, 20201)


class TestThetaDirect:
    @pytest.mark.parametrize("n,expected", [
        (1, Fraction(10100, 20201)),
        (2, Fraction(10100, 20201)),
        (3, Fraction(201, 20201)),
        (4, Fraction(0)),
    ])
    def test_x100_values(self, n, expected):
        assert theta_direct(X100, n) == expected

    def test_theta0_is_x(self):
        assert theta_direct(X100, 0) == X100

    def test_beyond_expansion(self):
        with pytest.raises(ValueError):
            theta_direct(Fraction(2, 5), 3)

    def test_surd_value(self):
        # Theta_1(g) = |g - 1| = 1 - g = (3 - sqrt(5))/2
        assert theta_direct(GOLDEN, 1) == QuadSurd(3, -1, 5, 2)


class TestThetaFromTV:
    def test_x100_pair(self):
        pair = theta_from_tv(TVPoint(Fraction(100, 101), Fraction(100, 101)))
        assert pair.prev == pair.curr == Fraction(10100, 20201)

    def test_t_zero(self):
        pair = theta_from_tv(TVPoint(Fraction(0), Fraction(3, 4)))
        assert pair == ThetaPair(Fraction(3, 4), Fraction(0))

    def test_golden_fixed_point(self):
        pair = theta_from_tv(TVPoint(GOLDEN, GOLDEN))
        assert pair.prev == INV_SQRT5 and pair.curr == INV_SQRT5

    @pytest.mark.parametrize("x", [
        Fraction(201, 20201), Fraction(2, 5), Fraction(355, 452), Fraction(7, 13),
    ])
    def test_agrees_with_direct_on_orbit(self, x):
        res = orbit(x, len(rcf_expand_rational(x)))
        for op in res.points[1:]:
            pair = theta_from_tv(op.point)
            assert pair.prev == theta_direct(x, op.k - 1)
            assert pair.curr == theta_direct(x, op.k)

    def test_agrees_with_direct_on_surd_orbit(self):
        x = QuadSurd(-1, 1, 2, 1)
        for op in orbit(x, 6).points[1:]:
            pair = theta_from_tv(op.point)
            assert pair.prev == theta_direct(x, op.k - 1)
            assert pair.curr == theta_direct(x, op.k)

    def test_vahlen_geometric_form(self):
        # prev + curr < 1 whenever t in (0,1) and v in [0,1)
        for x in (Fraction(355, 452), Fraction(201, 20201), Fraction(8, 13)):
            for op in orbit(x, len(rcf_expand_rational(x))).points[1:]:
                pair = theta_from_tv(op.point)
                if op.point.t != 0 and op.point.v != 1:
                    assert pair.prev + pair.curr < 1
                else:
                    assert pair.prev + pair.curr <= 1


class TestPsi:
    @pytest.mark.parametrize("t,v,alpha,beta", [
        (Fraction(1), Fraction(1), Fraction(1, 2), Fraction(1, 2)),
        (Fraction(1, 2), Fraction(0), Fraction(0), Fraction(1, 2)),
        (Fraction(1, 3), Fraction(1), Fraction(3, 4), Fraction(1, 4)),
    ])
    def test_reference_points(self, t, v, alpha, beta):
        assert psi(t, v) == DeltaPoint(alpha, beta)

    def test_range_check(self):
        with pytest.raises(ValueError):
            psi(Fraction(3, 2), Fraction(0))

    @given(st.fractions(min_value=0, max_value=1, max_denominator=50),
           st.fractions(min_value=0, max_value=1, max_denominator=50))
    def test_lands_in_triangle(self, t, v):
        p = psi(t, v)
        assert p.alpha >= 0 and p.beta >= 0
        assert p.alpha + p.beta <= 1
        assert (p.alpha + p.beta == 1) == (t == 1 or v == 1)


class TestPsiInverse:
    @pytest.mark.parametrize("alpha,beta,t,v", [
        (Fraction(1, 2), Fraction(1, 2), Fraction(1), Fraction(1)),
        (Fraction(0), Fraction(1, 2), Fraction(1, 2), Fraction(0)),
        (Fraction(2, 5), Fraction(2, 5), Fraction(1, 2), Fraction(1, 2)),
    ])
    def test_reference_points(self, alpha, beta, t, v):
        assert psi_inverse(DeltaPoint(alpha, beta)) == (t, v)

    def test_outside_image(self):
        with pytest.raises(ValueError):
            psi_inverse(DeltaPoint(Fraction(2), Fraction(2)))

    def test_surd_branch_roundtrip(self):
        p = DeltaPoint(Fraction(1, 3), Fraction(1, 4))
        t, v = psi_inverse(p)
        assert isinstance(t, QuadSurd) and isinstance(v, QuadSurd)
        assert psi(t, v) == p

    def test_seeded_random_roundtrip(self):
        rng = random.Random(20201)
        for _ in range(300):
            an = rng.randint(1, 998)
            bn = rng.randint(1, 999 - an)
            p = DeltaPoint(Fraction(an, 1000), Fraction(bn, 1000))
            t, v = psi_inverse(p)
            assert psi(t, v) == p

    @given(st.fractions(min_value=0, max_value=1, max_denominator=40).filter(lambda q: q < 1),
           st.fractions(min_value=0, max_value=1, max_denominator=40))
    def test_left_inverse_on_square(self, t, v):
        p = psi(t, v)
        tt, vv = psi_inverse(p)
        assert (tt, vv) == (t, v)


class TestJP:
    def test_golden_fixed(self):
        assert jp_forward(INV_SQRT5, INV_SQRT5, 1) == INV_SQRT5
        assert jp_backward(INV_SQRT5, INV_SQRT5, 1) == INV_SQRT5

    def test_x100_step(self):
        th = Fraction(10100, 20201)
        assert jp_forward(th, th, 1) == Fraction(201, 20201)
        assert jp_backward(th, Fraction(201, 20201), 1) == th

    def test_collapsed_forms(self):
        assert jp_forward(Fraction(3, 7), Fraction(0), 4) == Fraction(3, 7) + 4
        assert jp_backward(Fraction(0), Fraction(2, 9), 5) == Fraction(2, 9) + 5

    def test_negative_radicand(self):
        with pytest.raises(ValueError, match="realizable"):
            jp_forward(Fraction(3, 5), Fraction(3, 5), 1)

    @pytest.mark.parametrize("den", range(2, 60))
    def test_consistency_over_small_rationals(self, den):
        for num in range(1, den):
            x = Fraction(num, den)
            if x.denominator != den:
                continue
            data = rcf_expand_rational(x)
            thetas = [theta_direct(x, n) for n in range(len(data) + 1)]
            for n in range(1, len(data)):
                a = data.digit(n + 1)
                assert jp_forward(thetas[n - 1], thetas[n], a) == thetas[n + 1]
                assert jp_backward(thetas[n], thetas[n + 1], a) == thetas[n - 1]


class TestFMap:
    def test_golden_fixed_point(self):
        p = DeltaPoint(INV_SQRT5, INV_SQRT5)
        out = f_map(p)
        assert out.alpha == INV_SQRT5 and out.beta == INV_SQRT5

    def test_x100_orbit_step(self):
        th12 = Fraction(10100, 20201)
        out = f_map(DeltaPoint(th12, th12))
        assert out == DeltaPoint(th12, Fraction(201, 20201))

    def test_alpha_zero_edge(self):
        out = f_map(DeltaPoint(Fraction(0), Fraction(1, 2)))
        assert out.alpha == Fraction(1, 2)

    def test_conjugacy_on_rational_points(self):
        rng = random.Random(7)
        for _ in range(200):
            t = Fraction(rng.randint(1, 99), 100)
            v = Fraction(rng.randint(0, 100), 100)
            left = f_map(psi(t, v))
            stepped = natural_extension_step(TVPoint(t, v))
            right = psi(stepped.t, stepped.v)
            assert left == right

    def test_conjugacy_on_surd_points(self):
        pts = [(GOLDEN, GOLDEN), (QuadSurd(-1, 1, 2, 1), Fraction(1, 3)),
               (QuadSurd(-2, 1, 7, 1), Fraction(1))]
        for t, v in pts:
            left = f_map(psi(t, v))
            stepped = natural_extension_step(TVPoint(t, v))
            right = psi(stepped.t, stepped.v)
            assert left == right


class TestMuDensity:
    def test_origin(self):
        assert mu_density(DeltaPoint(Fraction(0), Fraction(0))) == pytest.approx(1.4426950408889634)

    def test_edge_alpha_zero(self):
        assert mu_density(DeltaPoint(Fraction(1, 2), Fraction(0))) == pytest.approx(1.4426950408889634)

    def test_interior_value(self):
        got = mu_density(DeltaPoint(Fraction(2, 5), Fraction(2, 5)))
        assert got == pytest.approx(5 / (3 * 0.6931471805599453), rel=1e-12)

    def test_singularity(self):
        with pytest.raises(ValueError, match="singularity"):
            mu_density(DeltaPoint(Fraction(1, 2), Fraction(1, 2)))

    def test_minimum_toward_boundary(self):
        base = mu_density(DeltaPoint(Fraction(1, 1000), Fraction(1, 1000)))
        for i in range(1, 10):
            a = Fraction(i, 25)
            b = Fraction(1, 3) - a / 3
            if a * b > 0:
                assert mu_density(DeltaPoint(a, b)) >= base
