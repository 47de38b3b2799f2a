import numpy as np
import pytest

from hardylab.circle import (
    CircleFunction,
    CircleGrid,
    LaurentPoly,
    analyze,
    cesaro_mean,
    function_literal,
    inner_product,
    is_analytic,
    laurent_conj,
    laurent_inner,
    laurent_mul,
    negative_tail,
    parse_function_literal,
    rotate,
    synthesize,
)


def random_poly(rng, lo, hi, analytic=False):
    coeffs = {}
    start = 0 if analytic else lo
    for j in range(start, hi + 1):
        coeffs[j] = rng.standard_normal() + 1j * rng.standard_normal()
    return LaurentPoly(coeffs)


class TestGrid:
    def test_rejects_non_power_of_two(self):
        for bad in (0, 7, 12, 100):
            with pytest.raises(ValueError):
                CircleGrid(bad)

    def test_rejects_too_small(self):
        with pytest.raises(ValueError):
            CircleGrid(4)

    def test_quadrature_of_one(self, grid64):
        one = CircleFunction(grid64, np.ones(64))
        assert inner_product(one, one) == pytest.approx(1.0, abs=1e-14)


class TestAnalyzeSynthesize:
    def test_monomial(self):
        grid = CircleGrid(16)
        f = synthesize({2: 1.0}, grid)
        coeffs = analyze(f, (-3, 3))
        for j, c in coeffs.items():
            expect = 1.0 if j == 2 else 0.0
            assert abs(c - expect) < 1e-13

    def test_constant(self, grid64):
        f = synthesize({0: 1.0}, grid64)
        coeffs = analyze(f, (-5, 5))
        assert abs(coeffs[0] - 1.0) < 1e-14
        assert max(abs(c) for j, c in coeffs.items() if j != 0) < 1e-14

    def test_linearity(self, grid64):
        s = 1 / np.sqrt(2)
        f = synthesize({0: s, 1: s}, grid64)
        coeffs = analyze(f, (0, 1))
        assert coeffs[0] == pytest.approx(s, abs=1e-14)
        assert coeffs[1] == pytest.approx(s, abs=1e-14)

    def test_synthesize_values(self, grid64):
        f = synthesize({1: 1.0}, grid64)
        assert np.allclose(f.samples, grid64.nodes)
        one = synthesize({0: 1.0}, grid64)
        assert np.allclose(one.samples, 1.0)

    def test_round_trip(self, grid64):
        coeffs = {-2: 3j, 5: 1.0}
        f = synthesize(coeffs, grid64)
        back = analyze(f, (-8, 8))
        assert abs(back[-2] - 3j) < 1e-12
        assert abs(back[5] - 1.0) < 1e-12
        others = [abs(c) for j, c in back.items() if j not in coeffs]
        assert max(others) < 1e-12

    def test_round_trip_random(self, grid64, rng):
        for _ in range(20):
            p = random_poly(rng, -15, 15)
            f = p.sample(grid64)
            back = analyze(f, (-16, 15))
            for j, c in p.coeffs.items():
                assert abs(back[j] - c) < 1e-12

    def test_window_range_error(self, grid64):
        f = synthesize({0: 1.0}, grid64)
        with pytest.raises(ValueError):
            analyze(f, (-40, 40))
        with pytest.raises(ValueError):
            analyze(f, (0, 32))

    def test_synthesize_out_of_window(self, grid64):
        with pytest.raises(ValueError):
            synthesize({32: 1.0}, grid64)
        with pytest.raises(ValueError):
            synthesize({-33: 1.0}, grid64)


class TestCesaro:
    def test_constant_fixed(self, grid64):
        f = synthesize({0: 1.0}, grid64)
        for n in (0, 1, 5):
            g = cesaro_mean(f, n)
            assert np.allclose(g.samples, 1.0, atol=1e-13)

    def test_weight_on_z(self, grid64):
        # averaging S_0 = 0 and S_1 = z gives z/2
        f = synthesize({1: 1.0}, grid64)
        g = cesaro_mean(f, 1)
        assert abs(analyze(g, (1, 1))[1] - 0.5) < 1e-13
        g3 = cesaro_mean(f, 3)
        assert abs(analyze(g3, (1, 1))[1] - 0.75) < 1e-13

    def test_matches_partial_sum_average(self, grid64, rng):
        # oracle: build sigma_n directly by averaging the partial sums
        p = random_poly(rng, -6, 6)
        f = p.sample(grid64)
        n = 9
        acc = LaurentPoly.zero()
        for k in range(n + 1):
            partial = LaurentPoly({j: c for j, c in p.coeffs.items() if abs(j) <= k})
            acc = acc + partial
        oracle = acc * (1.0 / (n + 1))
        got = analyze(cesaro_mean(f, n), (-8, 8))
        for j in range(-8, 9):
            assert abs(got[j] - oracle.coeff(j)) < 1e-12

    def test_error_is_exactly_triangular(self, grid64, rng):
        p = random_poly(rng, -5, 5)
        f = p.sample(grid64)
        n = 12
        err = analyze(cesaro_mean(f, n) - f, (-6, 6))
        for j, c in p.coeffs.items():
            assert abs(err[j] - (-abs(j) / (n + 1)) * c) < 1e-12

    def test_order_too_large(self, grid64):
        f = synthesize({0: 1.0}, grid64)
        with pytest.raises(ValueError):
            cesaro_mean(f, 32)


class TestRotate:
    def test_negation(self, grid64):
        f = synthesize({1: 1.0}, grid64)
        g = rotate(f, -1.0)
        assert np.allclose(g.samples, -f.samples, atol=1e-13)

    def test_constant_invariant(self, grid64):
        f = synthesize({0: 1.0}, grid64)
        g = rotate(f, np.exp(0.7j))
        assert np.allclose(g.samples, 1.0, atol=1e-12)

    def test_multiplier_rule_quarter_turn(self, grid64):
        # z^2 rotated by i picks up conj(i)^2 = -1
        f = synthesize({2: 1.0}, grid64)
        g = rotate(f, 1j)
        assert abs(analyze(g, (2, 2))[2] - (-1.0)) < 1e-12

    def test_spectral_multiplier_exact_on_grid_rotations(self, grid64, rng):
        p = random_poly(rng, -10, 10)
        f = p.sample(grid64)
        w = grid64.nodes[5]
        g = rotate(f, w)
        ga = analyze(g, (-10, 10))
        fa = analyze(f, (-10, 10))
        for j in range(-10, 11):
            assert abs(ga[j] - np.conj(w) ** j * fa[j]) < 1e-12

    def test_non_grid_rotation_spectral_path(self, grid64):
        w = np.exp(1j * 0.1234)
        f = synthesize({3: 2.0}, grid64)
        g = rotate(f, w)
        assert abs(analyze(g, (3, 3))[3] - 2.0 * np.conj(w) ** 3) < 1e-12

    def test_rejects_non_unimodular(self, grid64):
        f = synthesize({0: 1.0}, grid64)
        with pytest.raises(ValueError):
            rotate(f, 1.5)


class TestInnerProduct:
    def test_monomials(self, grid64):
        z1 = synthesize({1: 1.0}, grid64)
        z2 = synthesize({2: 1.0}, grid64)
        assert inner_product(z1, z1) == pytest.approx(1.0, abs=1e-14)
        assert abs(inner_product(z1, z2)) < 1e-14

    def test_plus_minus(self, grid64):
        s = 1 / np.sqrt(2)
        f = synthesize({0: s, 1: s}, grid64)
        g = synthesize({0: s, 1: -s}, grid64)
        assert abs(inner_product(f, g)) < 1e-14

    def test_grid_mismatch(self):
        f = synthesize({0: 1.0}, CircleGrid(32))
        g = synthesize({0: 1.0}, CircleGrid(64))
        with pytest.raises(ValueError):
            inner_product(f, g)

    def test_agrees_with_exact_pairing(self, grid64, rng):
        for _ in range(10):
            a = random_poly(rng, -7, 7)
            b = random_poly(rng, -7, 7)
            exact = laurent_inner(a, b)
            quad = inner_product(a.sample(grid64), b.sample(grid64))
            assert abs(exact - quad) < 1e-12


class TestLaurent:
    def test_product(self):
        p = LaurentPoly({0: 1, 1: 1})
        q = LaurentPoly({0: 1, 1: -1})
        assert laurent_mul(p, q) == LaurentPoly({0: 1, 2: -1})

    def test_conj_reflects(self):
        assert laurent_conj(LaurentPoly({1: 1})) == LaurentPoly({-1: 1})
        p = LaurentPoly({2: 1 + 2j})
        assert p.conj() == LaurentPoly({-2: 1 - 2j})

    def test_inner(self):
        p = LaurentPoly({0: 1, 1: 1})
        assert laurent_inner(p, p) == pytest.approx(2.0)

    def test_zero_pruning(self):
        p = LaurentPoly({0: 1.0, 3: 0.0})
        assert 3 not in p.coeffs
        q = p + LaurentPoly({0: -1.0})
        assert q.is_zero

    def test_shift(self):
        p = LaurentPoly({-1: 2.0, 0: 1.0})
        assert p.shifted(3) == LaurentPoly({2: 2.0, 3: 1.0})

    def test_vector_round_trip(self, rng):
        p = random_poly(rng, -4, 9)
        v = p.to_vector((-4, 9))
        assert LaurentPoly.from_vector(v, (-4, 9)) == p

    def test_vector_window_too_small(self):
        with pytest.raises(ValueError):
            LaurentPoly({5: 1.0}).to_vector((0, 3))


class TestAnalyticity:
    def test_polynomial_is_analytic(self, grid64):
        f = synthesize({0: 1.0, 3: 1.0}, grid64)
        assert is_analytic(f, 1e-10)

    def test_negative_monomial_is_not(self, grid64):
        f = synthesize({-1: 1.0}, grid64)
        assert not is_analytic(f, 1e-6)

    def test_laurent_path(self):
        assert is_analytic(LaurentPoly({0: 1, 5: 2}), 1e-12)
        assert not is_analytic(LaurentPoly({-3: 1e-3, 0: 1}), 1e-6)
        assert negative_tail(LaurentPoly({-3: 0.25})) == 0.25

    def test_tolerance_must_be_positive(self, grid64):
        f = synthesize({0: 1.0}, grid64)
        with pytest.raises(ValueError):
            is_analytic(f, 0.0)


class TestFunctionLiteral:
    def test_coeff_literal(self):
        f, poly = parse_function_literal({"grid": 64, "coeffs": [[0, 1.0, 0.0], [2, 0.0, 0.5]]})
        assert poly == LaurentPoly({0: 1.0, 2: 0.5j})
        assert f.grid.size == 64

    def test_default_grid(self):
        f, _ = parse_function_literal({"coeffs": [[0, 1.0, 0.0]]})
        assert f.grid.size == 1024

    def test_sample_literal_round_trip(self, grid64, rng):
        p = random_poly(rng, -3, 3)
        f = p.sample(grid64)
        lit = function_literal(f)
        g, poly = parse_function_literal(lit)
        assert poly is None
        assert np.allclose(g.samples, f.samples)

    def test_rejects_bad_literals(self):
        with pytest.raises(ValueError):
            parse_function_literal({"grid": 64})
        with pytest.raises(ValueError):
            parse_function_literal({"coeffs": [], "samples": []})
        with pytest.raises(ValueError):
            parse_function_literal({"grid": 64, "samples": [[1.0, 0.0]]})
