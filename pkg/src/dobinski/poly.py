"""Exact rational polynomials in one variable.

Coefficients are dense, trailing-zero trimmed, and always `Fraction`:
``coeffs[i]`` multiplies ``k**i``. The zero polynomial has an empty
coefficient tuple and degree -1.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Union

Coeff = Union[int, str, Fraction]


class PolynomialQ:
    """Immutable polynomial over exact rationals."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Coeff] = ()):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coefficient(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def abs_coeff_sum(self) -> Fraction:
        """Sum of |c_i|; bounds |P(k)| <= abs_coeff_sum * k**degree for k >= 1."""
        return sum((abs(c) for c in self.coeffs), Fraction(0))

    def __call__(self, k) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * k + c
        return acc

    def __add__(self, other: "PolynomialQ") -> "PolynomialQ":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return PolynomialQ(out)

    def __neg__(self) -> "PolynomialQ":
        return PolynomialQ([-c for c in self.coeffs])

    def __sub__(self, other: "PolynomialQ") -> "PolynomialQ":
        return self + (-other)

    def __mul__(self, other: "PolynomialQ") -> "PolynomialQ":
        if self.is_zero() or other.is_zero():
            return PolynomialQ()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] += a * b
        return PolynomialQ(out)

    def __pow__(self, n: int) -> "PolynomialQ":
        if n < 0:
            raise ValueError("polynomial powers must be nonnegative")
        result = PolynomialQ([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shifted(self, a=1) -> "PolynomialQ":
        """The polynomial k -> P(k + a)."""
        out = [Fraction(0)] * len(self.coeffs)
        a = Fraction(a)
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            # c*(k+a)^i expanded by the binomial theorem
            for j in range(i + 1):
                out[j] += c * math.comb(i, j) * a ** (i - j)
        return PolynomialQ(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, PolynomialQ) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if self.is_zero():
            return "PolynomialQ(0)"
        terms = [f"{c}*k^{i}" for i, c in enumerate(self.coeffs) if c]
        return "PolynomialQ(" + " + ".join(terms) + ")"


class HamiltonianSpec:
    """A nonzero polynomial of the boson number operator, H(m) = sum alpha_k m^k.

    `n0` and `n_deg` are the smallest and largest indices with nonvanishing
    coefficient.
    """

    __slots__ = ("poly", "n0", "n_deg")

    def __init__(self, poly):
        if not isinstance(poly, PolynomialQ):
            poly = PolynomialQ(poly)
        if poly.is_zero():
            raise ValueError("hamiltonian polynomial must not be identically zero")
        self.poly = poly
        self.n0 = next(i for i, c in enumerate(poly.coeffs) if c)
        self.n_deg = poly.degree

    def __call__(self, m) -> Fraction:
        return self.poly(m)

    def __eq__(self, other) -> bool:
        return isinstance(other, HamiltonianSpec) and self.poly == other.poly

    def __hash__(self) -> int:
        return hash(("HamiltonianSpec", self.poly))

    def __repr__(self) -> str:
        return f"HamiltonianSpec({self.poly!r})"


def monotone_tail_index(p: PolynomialQ) -> int:
    """Smallest exhibited N with P strictly monotone on integers k >= N.

    Monotone increasing when the leading coefficient is positive, decreasing
    when negative. Uses a Cauchy-style root bound on the forward difference
    P(k+1) - P(k): beyond 1 + max(1, ceil(sum|q_i| / |q_e|)) the difference
    cannot vanish, so one extra step guarantees a constant strict sign.
    """
    if p.degree < 1:
        raise ValueError("monotonicity index needs degree >= 1")
    q = p.shifted(1) - p
    e = q.degree
    if e == 0:
        return 0
    others = sum((abs(q.coefficient(i)) for i in range(e)), Fraction(0))
    k_stop = 1 + max(1, math.ceil(others / abs(q.leading())))
    return k_stop + 1


def parse_poly_spec(text: str) -> PolynomialQ:
    """Parse the `degree:coefficient` comma list, e.g. `2:1,1:1` for k^2 + k.

    Coefficients may be integers or `p/q` rationals. Degrees must be distinct
    and nonnegative, and at least one coefficient must be nonzero.
    """
    entries = [item.strip() for item in text.split(",") if item.strip()]
    if not entries:
        raise ValueError("empty polynomial spec")
    seen = {}
    for item in entries:
        deg_text, sep, coeff_text = item.partition(":")
        if not sep:
            raise ValueError(f"malformed polynomial term {item!r}, expected degree:coefficient")
        try:
            deg = int(deg_text)
            coeff = Fraction(coeff_text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed polynomial term {item!r}: {exc}") from None
        if deg < 0:
            raise ValueError(f"negative degree in polynomial term {item!r}")
        if deg in seen:
            raise ValueError(f"duplicate degree {deg} in polynomial spec")
        seen[deg] = coeff
    coeffs = [Fraction(0)] * (max(seen) + 1)
    for deg, coeff in seen.items():
        coeffs[deg] = coeff
    p = PolynomialQ(coeffs)
    if p.is_zero():
        raise ValueError("polynomial spec must have at least one nonzero coefficient")
    return p


def format_poly_spec(p: PolynomialQ) -> str:
    """Inverse of `parse_poly_spec`; highest degree first, zero terms skipped."""
    if p.is_zero():
        raise ValueError("the zero polynomial has no spec form")
    parts = [f"{i}:{c}" for i in range(p.degree, -1, -1) if (c := p.coefficient(i))]
    return ",".join(parts)
