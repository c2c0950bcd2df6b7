import math

import numpy as np
import pytest

from diracgeom.clifford import AXES, GAMMA, SIGNATURE
from diracgeom.planewave import BispinorWave, FourMomentum, dirac_matrix, dirac_residual, plane_wave
from diracgeom.sampling import make_rng, random_points, random_wave
from diracgeom.sliding import (
    ReflectionMap,
    SlidingOperator,
    TranslationOperator,
    apply_translation,
    reflect_solution,
    sliding_operator_form,
    sliding_residual,
    translation_for,
    verify_reflection,
    verify_sliding_form,
    verify_translation_relation,
)

TWO_PI = 2 * math.pi
PT = (0.37, -1.2, 2.5, 0.8)


def full_wave(m=2.0):
    # spatial direction (3, 2, 1), all components nonzero
    return plane_wave((3.0, 2.0, 1.0), m)


class TestTranslationOperator:
    def test_full_period_time_axis(self):
        w = plane_wave((0, 0, 0), 1.7)
        op = TranslationOperator("t", TWO_PI / w.momentum.p_t)
        assert np.allclose(apply_translation(op, w, PT), w(PT), atol=1e-15)

    def test_half_period_halves(self):
        w = plane_wave((0, 0, 0), 1.7)
        op = TranslationOperator("t", math.pi / w.momentum.p_t)
        assert np.allclose(apply_translation(op, w, PT), w(PT) / 2, atol=1e-15)

    def test_zero_momentum_axis_gives_zero(self):
        w = plane_wave((0, 1, 0), 1.0)
        for length in (0.3, 1.0, 7.5):
            assert np.array_equal(apply_translation(TranslationOperator("x", length), w, PT), np.zeros(4))

    def test_spatial_axis_identity_at_one_wavelength(self):
        w = full_wave()
        for axis in AXES:
            op = translation_for(w, axis)
            assert np.allclose(apply_translation(op, w, PT), w(PT), atol=1e-14)

    def test_rejects_degenerate_lengths(self):
        for bad in (0.0, math.inf, math.nan):
            with pytest.raises(ValueError):
                TranslationOperator("x", bad)

    def test_translation_for_zero_component(self):
        with pytest.raises(ValueError):
            translation_for(plane_wave((1, 0, 0), 1), "y")


class TestTranslationRelation:
    def test_all_deviations_small(self, rng):
        rep = verify_translation_relation(full_wave(), 25, rng)
        assert rep.passed
        assert set(rep.checks) == set(AXES)
        assert rep.max_residual < 1e-10

    def test_zero_component_rejected(self, rng):
        with pytest.raises(ValueError):
            verify_translation_relation(plane_wave((1, 0, 2), 1), 5, rng)

    def test_half_step_is_order_one(self, rng):
        rep = verify_translation_relation(full_wave(), 10, rng, fraction=0.5)
        # psi(x + l/2) = -psi(x): deviation 2 relative to |psi|
        for c in rep.checks.values():
            assert c.max_residual == pytest.approx(2.0, abs=1e-9)
        assert not rep.passed

    def test_report_serialises(self, rng):
        d = verify_translation_relation(full_wave(), 3, rng).to_dict()
        assert set(d["t"]) == {"max_residual", "samples", "pass"}
        assert d["x"]["samples"] == 3


class TestReflection:
    def test_map_is_involution(self, rng):
        for axis in AXES:
            r = ReflectionMap(axis)
            for pt in random_points(rng, 5):
                assert np.array_equal(r(r(pt)), pt)

    def test_map_negates_other_axes(self):
        assert np.array_equal(ReflectionMap("t")((1, 2, 3, 4)), [1, -2, -3, -4])
        assert np.array_equal(ReflectionMap("x")((1, 2, 3, 4)), [-1, 2, -3, -4])

    def test_rest_frame_time_reflection(self):
        m = 1.4
        w = plane_wave((0, 0, 0), m)
        phi = reflect_solution(ReflectionMap("t"), w)
        for t in (0.0, 0.3, 2.0):
            expected = GAMMA["t"] @ w.amplitude * np.exp(-1j * m * t)
            assert np.allclose(phi((t, 0.4, -0.1, 0.9)), expected, atol=1e-15)
        assert dirac_residual(phi, PT) < 1e-13

    def test_double_reflection_exact(self, rng):
        w = random_wave(rng)
        for axis, sign in zip(AXES, SIGNATURE):
            r = ReflectionMap(axis)
            twice = reflect_solution(r, reflect_solution(r, w))
            for pt in random_points(rng, 5):
                assert np.array_equal(twice(pt), sign * w(pt))

    def test_x_reflection_momentum_pattern(self):
        # field(x) = g^x psi(R x) = g^x u exp(-i(-p_t t - p_x x))
        p = FourMomentum(5, 3, 0, 0, 4)
        w = plane_wave((3, 0, 0), 4)
        phi = reflect_solution(ReflectionMap("x"), w)
        t, x = 0.21, -0.7
        phase = np.exp(-1j * (-p.p_t * t - p.p_x * x))
        assert np.allclose(phi((t, x, 0.5, 0.1)), GAMMA["x"] @ w.amplitude * phase, atol=1e-14)
        reflected = FourMomentum(-5, 3, 0, 0, 4)
        assert np.linalg.norm(dirac_matrix(reflected) @ (GAMMA["x"] @ w.amplitude)) < 1e-13

    def test_gradient_matches_finite_differences(self, rng):
        w = random_wave(rng)
        phi = reflect_solution(ReflectionMap("y"), w)
        pt = np.array(PT)
        h = 1e-6
        for mu in range(4):
            e = np.zeros(4)
            e[mu] = h
            fd = (phi(pt + e) - phi(pt - e)) / (2 * h)
            assert np.allclose(phi.gradient(pt)[mu], fd, atol=1e-6)

    def test_solution_map_property(self):
        rng = make_rng(99)
        for _ in range(20):
            rep = verify_reflection(random_wave(rng), 20, rng)
            assert rep.passed, rep.to_dict()


class TestSlidingForm:
    def test_valid_massive_waves(self):
        rng = make_rng(3)
        for _ in range(100):
            w = random_wave(rng, masses=(0.5, 1.0, 10.0))
            rep = verify_sliding_form(w, 5, rng)
            assert rep.checks["sliding_form"].max_residual < 1e-10

    def test_zero_momentum_components_allowed(self, rng):
        w = plane_wave((0, 2.0, 0), 1.0)
        assert verify_sliding_form(w, 5, rng).passed

    def test_rejects_massless(self, rng):
        with pytest.raises(ValueError):
            verify_sliding_form(plane_wave((1, 0, 0), 0), 3, rng)

    def test_linear_in_amplitude(self):
        p = FourMomentum(5, 3, 0, 0, 4)
        w = BispinorWave(p, [1, 0.5j, -0.2, 0.3])
        c = 2.5 - 1.5j
        assert sliding_residual(w.scaled(c), PT) == pytest.approx(abs(c) * sliding_residual(w, PT), rel=1e-13)

    def test_factor_two_pi_relative_to_dirac(self, rng):
        for _ in range(20):
            w = random_wave(rng, masses=(1.0,))
            bad = BispinorWave(w.momentum, rng.normal(size=4) + 1j * rng.normal(size=4))
            for pt in random_points(rng, 3):
                assert TWO_PI * sliding_residual(bad, pt) == pytest.approx(dirac_residual(bad, pt), rel=1e-12)

    def test_spectral_gap_for_non_solution(self, rng):
        for m in (0.5, 1.0, 10.0):
            for _ in range(10):
                w = random_wave(rng, masses=(m,))
                u = rng.normal(size=4) + 1j * rng.normal(size=4)
                bad = BispinorWave(w.momentum, u / np.linalg.norm(u))
                direct = np.linalg.norm(dirac_matrix(w.momentum) @ bad.amplitude) / TWO_PI
                got = sliding_residual(bad, PT)
                assert got == pytest.approx(direct, rel=1e-12)
                # nonzero singular values of (p_slash - m) are p_t + |p| + m >= 2m
                sv = np.linalg.svd(dirac_matrix(w.momentum), compute_uv=False)
                assert sv[1] >= 2 * m - 1e-9

    def test_generic_non_solution_residual_bound(self):
        rng = make_rng(5)
        m = 1.0
        w = plane_wave((0.5, -0.2, 0.3), m)
        for _ in range(20):
            u = rng.normal(size=4) + 1j * rng.normal(size=4)
            bad = BispinorWave(w.momentum, u / np.linalg.norm(u))
            assert sliding_residual(bad, PT) >= 0.1 * m * 0.1

    def test_uncancelled_operators_agree_when_finite(self):
        w = full_wave()
        inv_l = w.momentum.components / TWO_PI
        total = -(w.mass / TWO_PI) * w(PT)
        for mu, axis in enumerate(AXES):
            op = SlidingOperator(translation_for(w, axis))
            total = total + SIGNATURE[mu] * inv_l[mu] * op(w, PT)
        assert np.allclose(total, sliding_operator_form(w, PT), atol=1e-14)
        assert np.linalg.norm(total) < 1e-12
