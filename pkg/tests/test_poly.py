from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dobinski import (
    HamiltonianSpec,
    PolynomialQ,
    format_poly_spec,
    monotone_tail_index,
    parse_poly_spec,
)


def test_trailing_zeros_trimmed():
    p = PolynomialQ([1, 2, 0, 0])
    assert p.degree == 1
    assert p.coeffs == (Fraction(1), Fraction(2))
    assert PolynomialQ([0, 0]).is_zero()
    assert PolynomialQ([]).degree == -1


def test_evaluation_is_exact():
    p = PolynomialQ([Fraction(1, 3), -2, 1])
    assert p(3) == Fraction(1, 3) - 6 + 9
    assert p(Fraction(1, 2)) == Fraction(1, 3) - 1 + Fraction(1, 4)


def test_arithmetic():
    a = PolynomialQ([1, 1])
    b = PolynomialQ([0, 0, 2])
    assert (a + b).coeffs == (Fraction(1), Fraction(1), Fraction(2))
    assert (a - a).is_zero()
    assert (a * b).coeffs == (Fraction(0), Fraction(0), Fraction(2), Fraction(2))
    assert (a**3).coeffs == (Fraction(1), Fraction(3), Fraction(3), Fraction(1))
    assert (b**0).coeffs == (Fraction(1),)
    with pytest.raises(ValueError):
        a ** (-1)


def test_shifted():
    p = PolynomialQ([0, 0, 1])  # k^2
    assert p.shifted(1).coeffs == (Fraction(1), Fraction(2), Fraction(1))
    q = PolynomialQ([2, -1, 3])
    for k in range(-3, 6):
        assert q.shifted(2)(k) == q(k + 2)


def test_abs_coeff_sum_bounds_values():
    p = PolynomialQ([Fraction(-1, 2), 3, -2])
    bound = p.abs_coeff_sum()
    for k in range(1, 50):
        assert abs(p(k)) <= bound * Fraction(k) ** p.degree


def test_parse_poly_spec():
    assert parse_poly_spec("1:1") == PolynomialQ([0, 1])
    assert parse_poly_spec("2:1,1:1") == PolynomialQ([0, 1, 1])
    assert parse_poly_spec("0:-3/7") == PolynomialQ([Fraction(-3, 7)])
    assert parse_poly_spec("3:2, 0:1") == PolynomialQ([1, 0, 0, 2])


@pytest.mark.parametrize(
    "bad",
    ["", "1", "x:1", "1:1,1:2", "-1:1", "0:0", "1:1/0", "1:one"],
)
def test_parse_poly_spec_rejects(bad):
    with pytest.raises(ValueError):
        parse_poly_spec(bad)


coeff_strategy = st.fractions(
    min_value=-9, max_value=9, max_denominator=9
)


@settings(max_examples=80, deadline=None)
@given(st.lists(coeff_strategy, min_size=1, max_size=5))
def test_poly_spec_round_trip(coeffs):
    p = PolynomialQ(coeffs)
    if p.is_zero():
        with pytest.raises(ValueError):
            format_poly_spec(p)
        return
    assert parse_poly_spec(format_poly_spec(p)) == p


def test_hamiltonian_spec_indices():
    h = HamiltonianSpec(PolynomialQ([0, 0, Fraction(1, 2), 3]))
    assert h.n0 == 2
    assert h.n_deg == 3
    assert h(2) == 2 + 24


def test_monotone_tail_index_certifies_monotonicity():
    cases = [
        PolynomialQ([0, 1]),
        PolynomialQ([5, -40, 1]),
        PolynomialQ([0, 30, -11, 1]),
        PolynomialQ([0, 0, -1]),  # decreasing direction
    ]
    for p in cases:
        idx = monotone_tail_index(p)
        increasing = p.leading() > 0
        for k in range(idx, idx + 60):
            if increasing:
                assert p(k + 1) > p(k)
            else:
                assert p(k + 1) < p(k)


def test_monotone_tail_index_requires_degree():
    with pytest.raises(ValueError):
        monotone_tail_index(PolynomialQ([3]))
