"""Exact-arithmetic tests for the polynomial core.

Expected polynomials below were derived by hand: Chebyshev values by
applying the recurrence, small folding polynomials by expanding the 1x1 and
2x2 determinants, and the real variants by substituting the conjugate pair
into those expansions.
"""

from __future__ import annotations

import json
import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nodalforge.polynomials import (
    MAX_CONSTRUCTION_DEGREE,
    Polynomial,
    chebyshev,
    chmutov_surface,
    det_bareiss,
    det_expansion,
    folding_complex,
    folding_matrix,
    folding_real,
)


def poly2(terms):
    return Polynomial(2, terms)


X = Polynomial.variable(0, 2)
Y = Polynomial.variable(1, 2)


class TestArithmetic:
    def test_difference_of_squares(self):
        x1 = Polynomial(1, {(1,): 1, (0,): 1})
        xm1 = Polynomial(1, {(1,): 1, (0,): -1})
        assert x1 * xm1 == Polynomial(1, {(2,): 1, (0,): -1})

    def test_add_zero_is_identity(self):
        p = poly2({(2, 1): Fraction(3, 7), (0, 0): -2})
        assert p + Polynomial.zero(2) == p

    def test_scalar_scaling(self):
        assert (2 * Y) * Polynomial.constant(3, 2) == poly2({(0, 1): 6})

    def test_variable_count_mismatch(self):
        with pytest.raises(ValueError, match="mismatch"):
            X + Polynomial.variable(0, 3)

    def test_zero_coefficients_pruned(self):
        p = poly2({(1, 0): 1}) - poly2({(1, 0): 1})
        assert p.is_zero()
        assert dict(p.terms) == {}

    def test_immutability(self):
        with pytest.raises(AttributeError):
            X.nvars = 3
        with pytest.raises(TypeError):
            X.terms[(0, 0)] = Fraction(1)

    def test_hashable_and_equal(self):
        assert hash(X * Y) == hash(Y * X)
        assert X * Y == Y * X


small_polys = st.builds(
    Polynomial,
    st.just(2),
    st.dictionaries(
        st.tuples(st.integers(0, 3), st.integers(0, 3)),
        st.fractions(min_value=-5, max_value=5),
        max_size=4,
    ),
)


@given(small_polys, small_polys, small_polys)
@settings(max_examples=60, deadline=None)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)


class TestChebyshev:
    def test_degree_zero_is_one(self):
        assert chebyshev(0) == Polynomial.constant(1, 1)

    def test_degree_one_is_z(self):
        assert chebyshev(1) == Polynomial.variable(0, 1)

    def test_degree_three(self):
        # recurrence by hand: T_2 = 2z^2 - 1, T_3 = 2z(2z^2 - 1) - z
        assert chebyshev(3) == Polynomial(1, {(3,): 4, (1,): -3})

    def test_degree_matches_index(self):
        for d in range(13):
            assert chebyshev(d).degree() == d

    def test_trig_identity(self):
        # T_d(cos t) = cos(d t) across 1000 uniform angles for every d <= 30;
        # the 1e-12 bound needs the compensated evaluator (coefficient sums
        # reach ~2.4^d, so plain Horner drifts far beyond it)
        rng = random.Random(2024)
        thetas = [rng.uniform(0.0, 2 * math.pi) for _ in range(1000)]
        for d in range(31):
            t = chebyshev(d)
            worst = max(
                abs(t.evaluate([math.cos(th)]) - math.cos(d * th)) for th in thetas
            )
            assert worst < 1e-12, (d, worst)

    def test_rejects_negative_and_oversize(self):
        with pytest.raises(ValueError):
            chebyshev(-1)
        with pytest.raises(ValueError):
            chebyshev(MAX_CONSTRUCTION_DEGREE + 1)


class TestFoldingMatrix:
    def test_size_one(self):
        assert folding_matrix(1, "x").entries == ((X,),)

    def test_size_two(self):
        assert folding_matrix(2, "x").entries == ((X, 1 * Polynomial.constant(1, 2)), (2 * Y, X))

    def test_size_three(self):
        one = Polynomial.constant(1, 2)
        zero = Polynomial.zero(2)
        three = Polynomial.constant(3, 2)
        expected = (
            (X, one, zero),
            (2 * Y, X, one),
            (three, Y, X),
        )
        assert folding_matrix(3, "x").entries == expected

    def test_y_flavor_swaps_variables(self):
        m = folding_matrix(3, "y").entries
        assert m[0][0] == Y
        assert m[1][0] == 2 * X
        assert m[2][1] == X

    def test_hessenberg_structure(self):
        for d in (1, 2, 5, 9):
            assert folding_matrix(d, "x").is_hessenberg()

    def test_rejects_size_zero(self):
        with pytest.raises(ValueError):
            folding_matrix(0, "x")


class TestDeterminants:
    def test_cross_check_both_flavors(self):
        # two independent exact algorithms must agree entry for entry
        for d in range(1, 9):
            for flavor in ("x", "y"):
                m = folding_matrix(d, flavor)
                assert det_expansion(m) == det_bareiss(m)


class TestFoldingComplex:
    def test_degree_one(self):
        assert folding_complex(1) == X + Y + 2

    def test_degree_two(self):
        # 1x1 / 2x2 determinants by hand: (x^2 - 2y) + (y^2 - 2x) + 2
        expected = poly2({(2, 0): 1, (0, 1): -2, (0, 2): 1, (1, 0): -2, (0, 0): 2})
        assert folding_complex(2) == expected

    def test_swap_symmetry(self):
        p = folding_complex(5)
        for (a, b), c in p.terms.items():
            assert p.coefficient((b, a)) == c

    def test_total_degree(self):
        for d in range(1, 13):
            assert folding_complex(d).degree() == d


class TestFoldingReal:
    def test_degree_one(self):
        # substitute into 2 + x + y by hand
        assert folding_real(1) == 2 + 2 * X

    def test_degree_two(self):
        expected = poly2({(0, 0): 2, (2, 0): 2, (0, 2): -2, (1, 0): -4})
        assert folding_real(2) == expected

    def test_coefficients_are_integers(self):
        for d in range(1, 16):
            for c in folding_real(d).terms.values():
                assert c.denominator == 1

    def test_total_degree(self):
        for d in range(1, 16):
            assert folding_real(d).degree() == d

    def test_even_in_y(self):
        # conjugation swaps the two substituted arguments, so y -> -y is a symmetry
        for d in range(1, 16):
            for (_, ey) in folding_real(d).terms:
                assert ey % 2 == 0

    @pytest.mark.slow
    def test_real_and_even_up_to_thirty(self):
        for d in range(16, 31):
            p = folding_real(d)  # raises on any imaginary residue
            assert all(ey % 2 == 0 for _, ey in p.terms)


class TestChmutovSurface:
    def test_degree_one(self):
        expected = Polynomial(
            3,
            {
                (0, 0, 0): Fraction(5, 2),
                (1, 0, 0): 2,
                (0, 0, 1): Fraction(1, 2),
            },
        )
        assert chmutov_surface(1) == expected

    def test_degree_two(self):
        # (T_2 + 1)/2 = (2z^2 - 1 + 1)/2 = z^2
        expected = Polynomial(
            3,
            {(0, 0, 0): 2, (2, 0, 0): 2, (0, 2, 0): -2, (1, 0, 0): -4, (0, 0, 2): 1},
        )
        assert chmutov_surface(2) == expected

    def test_total_degree(self):
        for d in range(1, 13):
            assert chmutov_surface(d).degree() == d


class TestEvaluation:
    def test_chebyshev_at_one(self):
        assert chebyshev(3).evaluate([1.0]) == 1.0

    def test_folding_real_roots(self):
        assert folding_real(1).evaluate([-1.0, 7.0]) == 0.0
        assert folding_real(2).evaluate([1.0, 0.0]) == 0.0

    def test_exact_evaluation(self):
        p = folding_real(2)
        assert p.evaluate_exact([Fraction(1), Fraction(0)]) == 0
        assert p.evaluate_exact([Fraction(1, 2), Fraction(1, 3)]) == Fraction(
            2 + 2 * Fraction(1, 4) - 2 * Fraction(1, 9) - 4 * Fraction(1, 2)
        )

    def test_compensated_sum_beats_cancellation(self):
        # large coefficients, tiny value: the folding family's native regime
        p = folding_real(12)
        x, y = 2.9, 0.3
        exact = float(p.evaluate_exact([Fraction(29, 10), Fraction(3, 10)]))
        assert abs(p.evaluate([x, y]) - exact) < 1e-9 * p.evaluation_scale([x, y]) * 1e-6

    def test_wrong_point_length(self):
        with pytest.raises(ValueError):
            chebyshev(2).evaluate([1.0, 2.0])


class TestSerialization:
    def test_json_round_trip(self):
        p = chmutov_surface(3)
        data = json.loads(json.dumps(p.to_json_dict()))
        assert Polynomial.from_json_dict(data) == p

    def test_json_terms_sorted(self):
        exps = [t["exp"] for t in folding_real(4).to_json_dict()["terms"]]
        assert exps == sorted(exps)

    def test_text_form(self):
        assert folding_real(2).to_text() == "2 - 4*x + 2*x^2 - 2*y^2"
        assert chebyshev(3).to_text() == "-3*z + 4*z^3"
        assert Polynomial.zero(2).to_text() == "0"
