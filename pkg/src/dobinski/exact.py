"""Exact combinatorial core: Stirling and Bell numbers, and the falling-factorial
expansion of powers of number-operator polynomials.

All arithmetic is arbitrary-precision integer or rational; nothing here rounds.
The Stirling triangle is grown lazily under a lock and rows are immutable
tuples, so concurrent readers never observe a partially built row.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import Dict, Iterator, Tuple

from .poly import HamiltonianSpec, PolynomialQ

_rows = [(1,)]
_rows_lock = threading.Lock()


def triangle_row(n: int) -> Tuple[int, ...]:
    """Row n of the second-kind Stirling triangle, entries S(n,0)..S(n,n)."""
    if n < 0:
        raise ValueError("row index must be nonnegative")
    if n >= len(_rows):
        with _rows_lock:
            while len(_rows) <= n:
                prev = _rows[-1]
                m = len(_rows)
                row = [0] * (m + 1)
                for k in range(1, m):
                    row[k] = k * prev[k] + prev[k - 1]
                row[m] = 1
                _rows.append(tuple(row))
    return _rows[n]


def stirling2(n: int, k: int) -> int:
    """S(n,k): partitions of an n-set into k nonempty blocks; 0 out of range."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if k < 0 or k > n:
        return 0
    return triangle_row(n)[k]


def bell_number(n: int) -> int:
    """B(n): the number of set partitions of an n-set."""
    return sum(triangle_row(n))


def bell_polynomial(n: int) -> PolynomialQ:
    """B(n,x) = sum_k S(n,k) x^k, with B(0,x) = 1."""
    return PolynomialQ(triangle_row(n))


def restricted_bell(n: int) -> int:
    """Partitions of an n-set with no singleton blocks.

    Computed by inclusion-exclusion over the set of forced singletons:
    sum_j (-1)^j C(n,j) B(n-j).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    return sum((-1) ** j * math.comb(n, j) * bell_number(n - j) for j in range(n + 1))


def monomial_to_falling(j: int) -> Tuple[int, ...]:
    """Coefficients (S(j,0),...,S(j,j)) of m^j over falling factorials."""
    return triangle_row(j)


def falling_factorial(m: int, k: int) -> int:
    """m(m-1)...(m-k+1); zero when k > m."""
    return math.perm(m, k)


class NormalForm:
    """The map k -> S_alpha(n,k) with [H(m)]^n = sum_k S_alpha(n,k) m!/(m-k)!.

    Only nonzero coefficients are stored; `coeff` returns 0 elsewhere.
    `k_max` is the guaranteed cap n * deg(H).
    """

    __slots__ = ("power", "coeffs", "k_max")

    def __init__(self, power: int, coeffs: Dict[int, Fraction], k_max: int):
        self.power = power
        self.coeffs = {k: v for k, v in coeffs.items() if v}
        self.k_max = k_max

    def coeff(self, k: int) -> Fraction:
        return self.coeffs.get(k, Fraction(0))

    def items(self) -> Iterator[Tuple[int, Fraction]]:
        return iter(sorted(self.coeffs.items()))

    def eval_at(self, x) -> Fraction:
        x = Fraction(x)
        return sum((c * x**k for k, c in self.coeffs.items()), Fraction(0))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, NormalForm)
            and self.power == other.power
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.power, tuple(sorted(self.coeffs.items()))))

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {v}" for k, v in self.items())
        return f"NormalForm(power={self.power}, {{{body}}})"


def stirling_type(h, n: int) -> NormalForm:
    """Falling-factorial coefficients of [H(m)]^n.

    Raises [H] to the n-th power by exact repeated squaring, then converts each
    monomial m^j through the Stirling triangle row j. For H(m) = m this
    reproduces triangle row n.
    """
    if not isinstance(h, HamiltonianSpec):
        h = HamiltonianSpec(h)
    if n < 0:
        raise ValueError("power must be nonnegative")
    q = h.poly**n
    out: Dict[int, Fraction] = {}
    for j, cj in enumerate(q.coeffs):
        if not cj:
            continue
        row = triangle_row(j)
        for k in range(j + 1):
            if row[k]:
                out[k] = out.get(k, Fraction(0)) + cj * row[k]
    return NormalForm(n, out, n * h.n_deg)


def bell_type_eval(h, n: int, x) -> Fraction:
    """The Bell-type polynomial sum_k S_alpha(n,k) x^k, evaluated exactly."""
    return stirling_type(h, n).eval_at(x)
