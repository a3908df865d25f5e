import threading
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dobinski import (
    HamiltonianSpec,
    NormalForm,
    PolynomialQ,
    bell_number,
    bell_polynomial,
    bell_type_eval,
    falling_factorial,
    monomial_to_falling,
    restricted_bell,
    stirling2,
    stirling_type,
    triangle_row,
)
from oracles import expand_falling_combination, partition_count, stirling_count

# the widely tabulated values; 15 sits between 5 and 52
BELL_LIST = [1, 1, 2, 5, 15, 52, 203, 877]
RESTRICTED_LIST = [1, 0, 1, 1, 4, 11, 41, 162]

IDENTITY = PolynomialQ([0, 1])
SQUARE = PolynomialQ([0, 0, 1])


def test_stirling_examples():
    assert stirling2(4, 4) == 1
    assert stirling2(4, 2) == 7 == stirling_count(4, 2)
    assert stirling2(5, 6) == 0
    assert stirling2(0, 0) == 1
    assert stirling2(3, 0) == 0
    assert stirling2(6, -1) == 0


def test_stirling_matches_enumeration():
    for n in range(8):
        for k in range(n + 2):
            assert stirling2(n, k) == stirling_count(n, k)


def test_triangle_boundary_values():
    for n in range(1, 30):
        row = triangle_row(n)
        assert row[0] == 0
        assert row[1] == 1
        assert row[n] == 1


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=1, max_value=60), st.data())
def test_triangle_recurrence(n, data):
    k = data.draw(st.integers(min_value=1, max_value=n))
    assert stirling2(n, k) == k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def test_row_sums_are_bell_numbers():
    for n in range(1, 26):
        assert sum(triangle_row(n)) == bell_number(n)


def test_bell_reference_list():
    assert [bell_number(n) for n in range(8)] == BELL_LIST


def test_bell_matches_brute_force():
    for n in range(10):
        assert bell_number(n) == partition_count(n)


def test_restricted_reference_list():
    assert [restricted_bell(n) for n in range(8)] == RESTRICTED_LIST


def test_restricted_matches_brute_force():
    for n in range(10):
        assert restricted_bell(n) == partition_count(n, forbid_singletons=True)


def test_bell_polynomial_small_cases():
    assert bell_polynomial(1) == PolynomialQ([0, 1])
    assert bell_polynomial(2) == PolynomialQ([0, 1, 1])
    assert bell_polynomial(3)(1) == 5
    assert bell_polynomial(0) == PolynomialQ([1])


def test_monomial_to_falling_expands_back():
    assert monomial_to_falling(0) == (1,)
    assert monomial_to_falling(1) == (0, 1)
    assert monomial_to_falling(2) == (0, 1, 1)
    for j in range(9):
        expanded = expand_falling_combination(monomial_to_falling(j))
        expected = [Fraction(0)] * j + [Fraction(1)] if j else [Fraction(1)]
        assert expanded == expected


def test_falling_factorial():
    assert falling_factorial(5, 3) == 60
    assert falling_factorial(3, 5) == 0
    assert falling_factorial(4, 0) == 1


def test_stirling_type_identity_polynomial_rows():
    h = HamiltonianSpec(IDENTITY)
    for n in range(13):
        nf = stirling_type(h, n)
        expected = {k: Fraction(v) for k, v in enumerate(triangle_row(n)) if v}
        assert nf.coeffs == expected


def test_stirling_type_square_gives_even_rows():
    h = HamiltonianSpec(SQUARE)
    for n in range(7):
        nf = stirling_type(h, n)
        expected = {k: Fraction(v) for k, v in enumerate(triangle_row(2 * n)) if v}
        assert nf.coeffs == expected


def test_stirling_type_examples():
    assert dict(stirling_type(HamiltonianSpec(IDENTITY), 3).items()) == {
        1: Fraction(1),
        2: Fraction(3),
        3: Fraction(1),
    }
    assert dict(stirling_type(HamiltonianSpec(SQUARE), 1).items()) == {
        1: Fraction(1),
        2: Fraction(1),
    }
    const = HamiltonianSpec(PolynomialQ([Fraction(2, 3)]))
    assert dict(stirling_type(const, 2).items()) == {0: Fraction(4, 9)}


def test_stirling_type_rejects_zero_polynomial():
    with pytest.raises(ValueError):
        HamiltonianSpec(PolynomialQ([]))
    with pytest.raises(ValueError):
        stirling_type(PolynomialQ([0, 0]), 2)


def test_normal_form_constant_coefficient():
    h = HamiltonianSpec(PolynomialQ([Fraction(3, 2), -2, 1]))
    for n in range(5):
        assert stirling_type(h, n).coeff(0) == h.poly(0) ** n


def test_normal_form_zero_power_is_identity():
    h = HamiltonianSpec(PolynomialQ([0, 5, 1]))
    nf = stirling_type(h, 0)
    assert nf.coeffs == {0: Fraction(1)}


def test_falling_identity_holds_at_integers():
    # [H(m)]^n == sum_k S_alpha(n,k) m!/(m-k)! on a grid of number states
    cases = [
        PolynomialQ([0, 1]),
        PolynomialQ([0, 0, 1]),
        PolynomialQ([Fraction(1, 2), Fraction(-2, 3), 0, 1]),
        PolynomialQ([-1, 1]),
    ]
    for poly in cases:
        h = HamiltonianSpec(poly)
        for n in range(5):
            nf = stirling_type(h, n)
            for m in range(41):
                rhs = sum(c * falling_factorial(m, k) for k, c in nf.coeffs.items())
                assert rhs == poly(m) ** n


def test_power_multiplicativity_at_integers():
    h = HamiltonianSpec(PolynomialQ([1, Fraction(1, 2), 1]))

    def recombine(nf, m):
        return sum(c * falling_factorial(m, k) for k, c in nf.coeffs.items())

    for a, b in [(1, 1), (1, 2), (2, 2), (0, 3)]:
        whole = stirling_type(h, a + b)
        left, right = stirling_type(h, a), stirling_type(h, b)
        for m in range(41):
            assert recombine(whole, m) == recombine(left, m) * recombine(right, m)


def test_bell_type_eval_examples():
    assert bell_type_eval(HamiltonianSpec(IDENTITY), 3, 1) == 5
    assert bell_type_eval(HamiltonianSpec(SQUARE), 1, 1) == 2
    assert bell_type_eval(HamiltonianSpec(PolynomialQ([7, 0, 3])), 0, Fraction(5, 2)) == 1


def test_bell_type_eval_restricted_polynomial_route():
    shifted = HamiltonianSpec(PolynomialQ([-1, 1]))
    for n in range(9):
        assert bell_type_eval(shifted, n, 1) == restricted_bell(n)


def test_triangle_concurrent_growth():
    # readers across threads must agree with a serially computed reference
    reference = triangle_row(150)
    results = []

    def worker(start):
        for n in range(start, 151, 7):
            results.append((n, triangle_row(n)))

    threads = [threading.Thread(target=worker, args=(s,)) for s in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    for n, row in results:
        assert row == triangle_row(n)
    assert triangle_row(150) == reference


def test_normal_form_eval_and_accessors():
    nf = NormalForm(2, {1: Fraction(3), 2: Fraction(0), 4: Fraction(1, 2)}, 4)
    assert nf.coeff(2) == 0
    assert nf.coeff(1) == 3
    assert list(nf.items()) == [(1, Fraction(3)), (4, Fraction(1, 2))]
    assert nf.eval_at(2) == 6 + Fraction(1, 2) * 16
