from fractions import Fraction
from math import factorial

import pytest
from mpmath import mp

from dobinski import (
    HamiltonianSpec,
    PolynomialQ,
    SeriesSpec,
    TermCapError,
    bell_number,
    bell_polynomial,
    bell_type_eval,
    cross_check,
    eval_bell_type,
    eval_bell_type_poly,
    tail_bound_factorial_poly,
)

IDENTITY = PolynomialQ([0, 1])
SHIFTED = PolynomialQ([-1, 1])
SQUARE = PolynomialQ([0, 0, 1])

X_GRID = [Fraction(1, 2), Fraction(1), Fraction(3)]


def as_mpf(q):
    q = Fraction(q)
    return mp.mpf(q.numerator) / q.denominator


def test_bell_number_example():
    result = eval_bell_type(SeriesSpec(IDENTITY, 1), 3, 1e-12)
    with mp.workprec(256):
        assert abs(result.value - 5) <= result.trunc_bound
        assert abs(result.value - 5) < mp.mpf(1e-12) * 5


def test_restricted_example():
    result = eval_bell_type(SeriesSpec(SHIFTED, 1), 4, 1e-12)
    with mp.workprec(256):
        assert abs(result.value - 4) <= result.trunc_bound + mp.mpf(2) ** -200


def test_square_first_moment_example():
    result = eval_bell_type(SeriesSpec(SQUARE, 1), 1, 1e-12)
    with mp.workprec(256):
        assert abs(result.value - 2) <= result.trunc_bound
    assert bell_type_eval(HamiltonianSpec(SQUARE), 1, 1) == 2


def test_true_error_within_bound_on_grid():
    with mp.workprec(256):
        for x in X_GRID:
            spec = SeriesSpec(IDENTITY, x)
            for n in range(21):
                result = eval_bell_type(spec, n, 1e-12)
                exact = as_mpf(bell_polynomial(n)(x))
                err = abs(result.value - exact)
                assert err <= result.trunc_bound
                assert err <= mp.mpf(1e-12) * exact


def test_series_matches_exact_route_small_grid():
    polys = [IDENTITY, SQUARE, PolynomialQ([1, 1, 0, 1]), PolynomialQ([Fraction(-1, 2), 2])]
    with mp.workprec(256):
        for poly in polys:
            h = HamiltonianSpec(poly)
            for x in X_GRID:
                for n in range(7):
                    result = eval_bell_type_poly(h, n, x, 1e-12)
                    exact = as_mpf(bell_type_eval(h, n, x))
                    assert abs(result.value - exact) <= result.trunc_bound + mp.mpf(2) ** -200


def test_weights_normalize_at_order_zero():
    with mp.workprec(256):
        for x in X_GRID:
            for poly in (IDENTITY, SQUARE, SHIFTED):
                result = eval_bell_type(SeriesSpec(poly, x), 0, 1e-12)
                assert abs(result.value - 1) <= result.trunc_bound + mp.mpf(2) ** -200


def test_monotone_refinement():
    spec = SeriesSpec(IDENTITY, 1)
    tols = [1e-3, 1e-6, 1e-9, 1e-12, 1e-15 + 1e-16]
    prev_terms = 0
    prev_err = None
    with mp.workprec(256):
        exact = mp.mpf(bell_number(10))
        for tol in tols:
            result = eval_bell_type(spec, 10, tol)
            assert result.terms_used >= prev_terms
            err = abs(result.value - exact)
            if prev_err is not None:
                assert err <= prev_err
            prev_terms, prev_err = result.terms_used, err


def test_explicit_scale():
    # explicit s = e gives the same values as AUTO at x = 1
    with mp.workprec(256):
        auto = eval_bell_type(SeriesSpec(IDENTITY, 1), 5, 1e-13)
        explicit = eval_bell_type(SeriesSpec(IDENTITY, 1, explicit_scale=mp.e), 5, 1e-13)
        assert abs(auto.value - explicit.value) < mp.mpf(2) ** -200


def test_constant_polynomial_routes_agree():
    h = HamiltonianSpec(PolynomialQ([3]))
    report = cross_check(h, 5, Fraction(7), 1e-12)
    assert report.passed
    assert report.exact == 243
    with mp.workprec(256):
        assert abs(report.series.value - 243) <= report.allowance


def test_cross_check_examples():
    assert cross_check(HamiltonianSpec(PolynomialQ([0, 1, 1])), 2, 1, 1e-12).passed
    report = cross_check(HamiltonianSpec(IDENTITY), 8, 1, 1e-12)
    assert report.passed
    assert report.exact == 4140


def test_zero_polynomial_series():
    spec = SeriesSpec(PolynomialQ([0, 0]), 1)
    result = eval_bell_type(spec, 2, 1e-12)
    with mp.workprec(256):
        assert result.value == 0
        assert result.trunc_bound == 0
    # order zero still sums the normalized weights
    result0 = eval_bell_type(spec, 0, 1e-12)
    with mp.workprec(256):
        assert abs(result0.value - 1) <= result0.trunc_bound + mp.mpf(2) ** -200


def test_eval_result_metadata():
    result = eval_bell_type(SeriesSpec(IDENTITY, 1), 3, 1e-10, bits=128)
    assert result.terms_used >= 1
    assert result.precision_bits == 128


def test_validation_errors():
    with pytest.raises(ValueError):
        SeriesSpec(IDENTITY, 0)
    with pytest.raises(ValueError):
        SeriesSpec(IDENTITY, Fraction(-1, 2))
    with pytest.raises(ValueError):
        SeriesSpec(IDENTITY, 1, explicit_scale=-2)
    spec = SeriesSpec(IDENTITY, 1)
    for bad_tol in (0, -1e-3, 1, 1.5):
        with pytest.raises(ValueError):
            eval_bell_type(spec, 2, bad_tol)
    with pytest.raises(ValueError):
        eval_bell_type(spec, -1, 1e-12)


def test_term_cap_reported():
    with pytest.raises(TermCapError):
        eval_bell_type(SeriesSpec(IDENTITY, 3), 6, 1e-12, term_cap=5)


def test_tail_bound_dominates_partial_tails():
    cases = [
        (Fraction(1), 0, Fraction(1), 1),
        (Fraction(1), 5, Fraction(3), 4),
        (Fraction(7, 2), 12, Fraction(1, 2), 2),
        (Fraction(2), 3, Fraction(3), 20),
    ]
    for amp, d, x, k_from in cases:
        bound = tail_bound_factorial_poly(amp, d, x, k_from)
        partial = Fraction(0)
        for k in range(k_from, k_from + 200):
            partial += amp * Fraction(k) ** d * x**k / factorial(k)
        assert partial <= bound
    assert tail_bound_factorial_poly(0, 3, Fraction(2), 0) == 0
    # the k = 0 envelope term counts only when d = 0
    one = Fraction(1)
    assert tail_bound_factorial_poly(1, 0, one, 0) == 1 + tail_bound_factorial_poly(1, 0, one, 1)
    assert tail_bound_factorial_poly(1, 2, one, 0) == tail_bound_factorial_poly(1, 2, one, 1)
