import numpy as np
import pytest

from hardylab.analytic import (
    flattening_multiplier,
    harmonic_conjugate,
    outer_exp,
    riesz_projection,
)
from hardylab.circle import (
    CircleFunction,
    LaurentPoly,
    analyze,
    is_analytic,
    negative_tail,
    synthesize,
)


def theta(grid):
    return 2 * np.pi * np.arange(grid.size) / grid.size


def random_real(rng, grid, degree=6):
    coeffs = {0: rng.standard_normal() + 0j}
    for j in range(1, degree + 1):
        c = rng.standard_normal() + 1j * rng.standard_normal()
        coeffs[j] = c
        coeffs[-j] = np.conj(c)
    return LaurentPoly(coeffs).sample(grid)


class TestHarmonicConjugate:
    def test_cos_to_sin(self, grid64):
        cos = synthesize({1: 0.5, -1: 0.5}, grid64)
        conj = harmonic_conjugate(cos)
        assert np.allclose(conj.samples.real, np.sin(theta(grid64)), atol=1e-13)

    def test_sin_to_minus_cos(self, grid64):
        sin = synthesize({1: -0.5j, -1: 0.5j}, grid64)
        conj = harmonic_conjugate(sin)
        assert np.allclose(conj.samples.real, -np.cos(theta(grid64)), atol=1e-13)

    def test_constant_to_zero(self, grid64):
        c = synthesize({0: 3.25}, grid64)
        assert np.max(np.abs(harmonic_conjugate(c).samples)) < 1e-14

    def test_rejects_complex_input(self, grid64):
        f = synthesize({1: 1.0}, grid64)
        with pytest.raises(ValueError):
            harmonic_conjugate(f)

    def test_involution_up_to_mean(self, grid64, rng):
        g = random_real(rng, grid64)
        twice = harmonic_conjugate(harmonic_conjugate(g))
        mean = np.mean(g.samples.real)
        assert np.allclose(twice.samples.real, -(g.samples.real - mean), atol=1e-10)

    def test_completion_is_analytic(self, grid64, rng):
        g = random_real(rng, grid64)
        conj = harmonic_conjugate(g)
        completion = CircleFunction(grid64, g.samples + 1j * conj.samples)
        assert negative_tail(completion) < 1e-12


class TestOuterExp:
    def test_zero_source(self, grid64):
        w = outer_exp(synthesize({}, grid64))
        assert np.allclose(w.outer.samples, 1.0)
        assert w.analytic_defect < 1e-14

    def test_constant_source(self, grid64):
        w = outer_exp(synthesize({0: 2.0}, grid64))
        assert np.allclose(w.outer.samples, np.exp(-2.0), atol=1e-13)
        assert w.analytic_defect < 1e-13

    def test_cos_source_modulus(self, grid1024):
        cos = synthesize({1: 0.5, -1: 0.5}, grid1024)
        w = outer_exp(cos)
        expect = np.exp(-np.abs(np.cos(theta(grid1024))))
        assert np.allclose(np.abs(w.outer.samples), expect, atol=1e-12)
        # |cos| has corner singularities; the measured defect at N = 1024
        # sits just under 1e-5, and scaling the source down shrinks it
        assert w.analytic_defect < 1e-5
        small = outer_exp(synthesize({1: 0.05, -1: 0.05}, grid1024))
        assert small.analytic_defect < 1e-6

    def test_smooth_source_passes_is_analytic(self, grid1024):
        # bounded-away-from-zero source keeps the spectrum decaying fast
        g = synthesize({0: 1.0, 1: 0.2, -1: 0.2}, grid1024)
        w = outer_exp(g)
        assert is_analytic(w.outer, 1e-6)

    def test_witness_invariants(self, grid64, rng):
        g = random_real(rng, grid64, degree=4)
        w = outer_exp(g)
        mods = np.abs(w.outer.samples)
        assert np.all(mods > 0)
        assert np.max(np.abs(mods * np.exp(np.abs(g.samples)) - 1.0)) < 1e-9
        assert np.all(mods <= 1.0 + 1e-12)

    def test_json_payload(self, grid64):
        w = outer_exp(synthesize({0: 1.0}, grid64))
        payload = w.to_json()
        assert set(payload) >= {"analytic_defect", "sup_outer", "min_outer"}


class TestFlattening:
    def test_constant_n1(self, grid64):
        for c in (0.25, 1.0, 9.0):
            f = synthesize({0: c}, grid64)
            O, wits = flattening_multiplier(f, 1)
            assert len(wits) == 1
            assert np.allclose(O.samples, np.exp(-np.sqrt(c)), atol=1e-12)
            flat = np.abs(O.samples) ** 2 * np.abs(f.samples)
            assert np.max(flat) <= 1.0  # x^2 e^{-2x} peaks below 1

    def test_constant_n2(self, grid64):
        f = synthesize({0: 4.0}, grid64)
        O, wits = flattening_multiplier(f, 2)
        # the odd component of the constant is zero, so k_2 = 1
        assert np.allclose(wits[1].outer.samples, 1.0, atol=1e-13)
        assert np.allclose(O.samples, np.exp(-2.0), atol=1e-12)
        assert np.max(np.abs(O.samples) * 2.0) <= 2.0

    def test_one_plus_cos_squared(self, grid1024):
        base = synthesize({0: 1.0, 1: 0.5, -1: 0.5}, grid1024)
        f = base * base
        O, wits = flattening_multiplier(f, 2)
        flat = np.abs(O.samples) * np.sqrt(np.abs(f.samples))
        assert np.max(flat) <= 2.0 + 2e-6

    def test_bounds_hold_for_random_fixtures(self, grid1024, rng):
        for _ in range(3):
            coeffs = {
                j: rng.standard_normal() + 1j * rng.standard_normal()
                for j in range(0, 5)
            }
            q = LaurentPoly(coeffs)
            f = (q * q.conj()).sample(grid1024)
            f = CircleFunction(grid1024, np.abs(f.samples))
            for n in (1, 2, 3):
                O, wits = flattening_multiplier(f, n)
                assert len(wits) == n
                flat = np.abs(O.samples) * np.sqrt(np.abs(f.samples))
                assert np.max(flat) <= n + 1e-6 * n

    def test_rejects_zero(self, grid64):
        with pytest.raises(ValueError):
            flattening_multiplier(synthesize({}, grid64), 2)

    def test_analyticity_transfer(self, grid1024):
        # multiplying by the analytic flattener preserves the defect scale
        f = synthesize({0: 1.0, 1: 0.5}, grid1024)
        O, _ = flattening_multiplier(f, 1)
        squared = CircleFunction(grid1024, O.samples**2 * f.samples)
        assert is_analytic(squared, 1e-5)
        g = synthesize({-1: 1.0, 0: 2.0}, grid1024)
        Og, _ = flattening_multiplier(g, 1)
        bad = CircleFunction(grid1024, Og.samples**2 * g.samples)
        assert not is_analytic(bad, 1e-5)


class TestRieszProjection:
    def test_split_cos(self, grid64):
        f = synthesize({1: 1.0, -1: 1.0}, grid64)
        ana, anti = riesz_projection(f)
        assert abs(analyze(ana, (1, 1))[1] - 1.0) < 1e-13
        assert negative_tail(ana) < 1e-14
        assert abs(analyze(anti, (-1, -1))[-1] - 1.0) < 1e-13
        assert np.max(np.abs(anti.spectrum[grid64.half :])) < 1e-14

    def test_constant_goes_analytic(self, grid64):
        ana, anti = riesz_projection(synthesize({0: 1.0}, grid64))
        assert np.allclose(ana.samples, 1.0)
        assert np.max(np.abs(anti.samples)) < 1e-14

    def test_reconstruction(self, grid64, rng):
        coeffs = {
            j: rng.standard_normal() + 1j * rng.standard_normal()
            for j in range(-10, 11)
        }
        f = LaurentPoly(coeffs).sample(grid64)
        ana, anti = riesz_projection(f)
        assert np.max(np.abs(ana.samples + anti.samples - f.samples)) < 1e-12
