import cmath
import math
import random

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from kgscatter.numerics import (GammaPoleError, NonFiniteStateError, Rk4Config, branch_sqrt,
                                gamma, log_gamma, rk4_integrate, rk4_step)


def _random_points(n, seed, box=5.0):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        z = complex(rng.uniform(-box, box), rng.uniform(-box, box))
        # stay clear of the poles of Gamma(z) and Gamma(1 - z)
        if min(abs(z - k) for k in range(-6, 7)) > 1e-3:
            out.append(z)
    return out


class TestLogGamma:
    def test_one(self):
        assert log_gamma(1.0) == pytest.approx(0.0, abs=1e-15)

    def test_half(self):
        assert log_gamma(0.5) == pytest.approx(math.log(math.sqrt(math.pi)), abs=1e-14)
        assert abs(gamma(0.5) - math.sqrt(math.pi)) <= 1e-12

    def test_one_plus_i(self):
        # mpmath.loggamma(1+1j) at 40 digits
        expected = complex(-0.6509231993018563388852168315, -0.3016403204675331978875316578)
        assert abs(log_gamma(1 + 1j) - expected) <= 1e-14

    @pytest.mark.parametrize("z", [0, -1, -7, -3 + 1e-14j, -2.0 + 5e-13])
    def test_poles_rejected(self, z):
        with pytest.raises(GammaPoleError):
            log_gamma(z)

    def test_near_pole_is_finite(self):
        assert np.isfinite(log_gamma(-2 + 1e-6))

    def test_matches_mpmath_principal_branch(self):
        for z in _random_points(300, seed=3, box=8.0):
            ref = complex(mpmath.loggamma(z))
            assert abs(log_gamma(z) - ref) <= 1e-12 * max(1.0, abs(ref))

    def test_gamma_relative_accuracy_up_to_50(self):
        rng = random.Random(11)
        for _ in range(300):
            r, th = rng.uniform(0.1, 50.0), rng.uniform(-math.pi, math.pi)
            z = cmath.rect(r, th)
            if min(abs(z - k) for k in range(-51, 1)) < 1e-3:
                continue
            ref = mpmath.gamma(z)
            got = cmath.exp(log_gamma(z))
            assert abs(got - complex(ref)) <= 1e-12 * abs(complex(ref))

    def test_large_imaginary_parts_do_not_overflow(self):
        # Gamma itself underflows here; its log must not
        z = 0.3 + 400j
        ref = complex(mpmath.loggamma(z))
        assert abs(log_gamma(z) - ref) <= 1e-12 * abs(ref)
        z = -2.7 - 300j
        ref = complex(mpmath.loggamma(z))
        assert abs(log_gamma(z) - ref) <= 1e-12 * abs(ref)

    def test_reflection_identity(self):
        for z in _random_points(200, seed=1):
            lhs = gamma(z) * gamma(1 - z)
            rhs = math.pi / cmath.sin(math.pi * z)
            assert abs(lhs - rhs) / abs(rhs) <= 1e-10

    def test_recurrence(self):
        for z in _random_points(200, seed=2):
            g1 = gamma(z + 1)
            assert abs(g1 - z * gamma(z)) / abs(g1) <= 1e-11


class TestBranchSqrt:
    @pytest.mark.parametrize("w, expected", [
        (4, 2), (-1, 1j), (-99, 9.9498743710662 * 1j), (0, 0), (-4 - 0.0j, 2j),
    ])
    def test_examples(self, w, expected):
        assert branch_sqrt(w) == pytest.approx(expected, abs=1e-12)

    @given(st.complex_numbers(max_magnitude=1e6, allow_nan=False, allow_infinity=False))
    def test_principal_and_squares_back(self, w):
        r = branch_sqrt(w)
        assert r.real >= 0
        if r.real == 0:
            assert r.imag >= 0
        assert abs(r * r - w) <= 1e-14 * max(abs(w), 1e-300) + 1e-300

    @given(st.floats(min_value=-1e8, max_value=-1e-8))
    def test_negative_reals(self, x):
        r = branch_sqrt(x)
        assert r.real == 0 and r.imag > 0
        assert abs(r * r - x) <= 1e-14 * abs(x)


class TestRk4:
    def test_config_validation(self):
        with pytest.raises(ValueError):
            Rk4Config(0, 0.1)
        with pytest.raises(ValueError):
            Rk4Config(10, 0.0)
        cfg = Rk4Config.spanning(2.0, -1.0, 300)
        assert cfg.signed_step < 0
        assert cfg.span == pytest.approx(-3.0)

    def test_constant_solution(self):
        cfg = Rk4Config(17, -0.3)
        assert rk4_integrate(lambda x, y: 0.0 * y, 3 + 4j, 0.0, cfg) == 3 + 4j

    def test_exponential(self):
        y = rk4_integrate(lambda x, y: y, 1.0, 0.0, Rk4Config.spanning(0.0, 1.0, 1000))
        assert abs(y - math.e) <= 1e-10

    def test_backward_exponential(self):
        y = rk4_integrate(lambda x, y: y, 1.0, 1.0, Rk4Config.spanning(1.0, 0.0, 1000))
        assert abs(y - math.exp(-1)) <= 1e-10

    def test_plane_wave_fixed_point(self):
        k2 = 7.25
        rhs = lambda x, y: -k2 - y * y  # noqa: E731
        y0 = 1j * math.sqrt(k2)
        y = y0
        for j in range(200):
            y = rk4_step(rhs, 0.01 * j, y, 0.01)
            assert abs(y - y0) <= 1e-13

    def test_fourth_order(self):
        def err(n):
            return abs(rk4_integrate(lambda x, y: y, 1.0, 0.0, Rk4Config.spanning(0, 1, n)) - math.e)
        for n in (10, 20, 40):
            ratio = err(n) / err(2 * n)
            assert 14.0 <= ratio <= 18.0

    def test_vectorised_state(self):
        lam = np.array([1.0, -2.0, 0.5j])
        y = rk4_integrate(lambda x, y: lam * y, np.ones(3, complex), 0.0,
                          Rk4Config.spanning(0, 1, 400))
        assert np.allclose(y, np.exp(lam), rtol=1e-10)

    def test_non_finite_reports_position(self):
        # y' = y^2 blows up at x = 1
        with pytest.raises(NonFiniteStateError) as info:
            rk4_integrate(lambda x, y: y * y, 1.0, 0.0, Rk4Config.spanning(0.0, 2.0, 2000))
        assert 0.9 < info.value.position <= 2.0
