"""Error-bounded evaluation of Dobinski-type sums.

A sum  sum_{k>=0} P(k)^n x^k / (s k!)  is accumulated as an exact rational and
scaled exactly once at the working precision: by e^{-x} in the self-normalizing
(AUTO) mode, where the weights e^{-x} x^k/k! sum to 1, or by 1/s for an
explicit scale s.

Truncation is controlled by geometric domination of the factorial tail. With
d = n*deg(P) and A = (sum of |coefficients|)^n we have |P(k)|^n <= A k^d for
k >= 1, and the envelope u_k = A k^d x^k / k! contracts at ratio
r(k) = (1+1/k)^d x/(k+1), which is decreasing. Once r(k0) <= 1/2 the whole
tail from k0 is at most 2 u_{k0}. The reported bound is rigorous for the
truncation error; the single scale multiplication adds only rounding at the
working precision, padded by `round_slack`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp

from .errors import TermCapError
from .exact import bell_type_eval
from .poly import HamiltonianSpec, PolynomialQ
from .precision import as_mpf, resolve_bits, round_slack, to_mpf, to_mpf_ceil

TERM_CAP = 100_000


class SeriesSpec:
    """The pair (P, D) of a Dobinski sum with D(k) = s k! x^{-k}.

    `x` is the positive rational comb intensity. When `explicit_scale` is None
    the scale is AUTO, s = e^x, which normalizes the weights 1/D(k) to total
    mass one.
    """

    __slots__ = ("poly", "x", "explicit_scale")

    def __init__(self, poly, x, explicit_scale=None):
        self.poly = poly if isinstance(poly, PolynomialQ) else PolynomialQ(poly)
        self.x = Fraction(x)
        if self.x <= 0:
            raise ValueError("comb intensity x must be positive")
        if explicit_scale is not None:
            with mp.workprec(64):
                if not as_mpf(explicit_scale) > 0:
                    raise ValueError("explicit scale must be positive")
        self.explicit_scale = explicit_scale

    @property
    def auto(self) -> bool:
        return self.explicit_scale is None

    def scale_factor(self):
        """The factor 1/s applied to the raw sum, at the current precision."""
        if self.explicit_scale is None:
            return mp.exp(to_mpf(-self.x))
        return 1 / as_mpf(self.explicit_scale)

    def __eq__(self, other):
        return (
            isinstance(other, SeriesSpec)
            and self.poly == other.poly
            and self.x == other.x
            and self.explicit_scale == other.explicit_scale
        )

    def __repr__(self):
        scale = "AUTO" if self.auto else f"EXPLICIT({self.explicit_scale})"
        return f"SeriesSpec({self.poly!r}, x={self.x}, {scale})"


@dataclass
class EvalResult:
    """A high-precision value with a rigorous truncation-error bound."""

    value: object
    trunc_bound: object
    terms_used: int
    precision_bits: int


@dataclass
class CrossCheckReport:
    """Outcome of comparing the series route against the exact route."""

    exact: Fraction
    series: EvalResult
    difference: object
    allowance: object
    passed: bool


def _check_rel_tol(rel_tol) -> Fraction:
    tol = Fraction(rel_tol)
    if not 0 < tol < 1:
        raise ValueError(f"rel_tol must lie in (0, 1), got {rel_tol}")
    return tol


def tail_bound_factorial_poly(amplitude: Fraction, d: int, x: Fraction, k_from: int) -> Fraction:
    """Rigorous upper bound on sum_{k >= k_from} amplitude * k^d * x^k / k!.

    Sums envelope terms until the contraction ratio drops to 1/2, then closes
    with the geometric factor 2. Exact rational arithmetic throughout.
    """
    amplitude, x = Fraction(amplitude), Fraction(x)
    if amplitude < 0 or x <= 0:
        raise ValueError("amplitude must be >= 0 and x > 0")
    if amplitude == 0:
        return Fraction(0)
    bound = Fraction(0)
    if k_from <= 0:
        # the k = 0 term is amplitude * 0^d
        if d == 0:
            bound += amplitude
        k_from = 1
    k = k_from
    term = amplitude * Fraction(k) ** d * x**k / math.factorial(k)
    while True:
        if Fraction(k + 1, k) ** d * x * 2 <= k + 1:
            return bound + 2 * term
        bound += term
        k += 1
        term = term * Fraction(k, k - 1) ** d * x / k


def eval_bell_type(spec: SeriesSpec, n: int, rel_tol, bits=None, term_cap=TERM_CAP) -> EvalResult:
    """Evaluate sum_k P(k)^n x^k/(s k!) with an adaptive, rigorous truncation.

    The partial sum is exact; truncation stops once the tail bound falls below
    rel_tol times the accumulated absolute sum (identical to the plain partial
    sum for nonnegative terms, and still a sound scale when P changes sign).
    """
    if n < 0:
        raise ValueError("series order n must be nonnegative")
    tol = _check_rel_tol(rel_tol)
    bits = resolve_bits(bits)
    p, x = spec.poly, spec.x
    d = max(p.degree, 0) * n
    amp = p.abs_coeff_sum() ** n

    total = Fraction(0)
    total_abs = Fraction(0)
    xk = Fraction(1)  # x^k / k!
    k = 0
    while True:
        t = p(k) ** n * xk
        total += t
        total_abs += -t if t < 0 else t
        xk_next = xk * x / (k + 1)
        if amp == 0:
            tail = Fraction(0)
            break
        j = k + 1
        if Fraction(j + 1, j) ** d * x * 2 <= j + 1:
            tail = 2 * amp * Fraction(j) ** d * xk_next
            if tail <= tol * total_abs:
                break
        k += 1
        if k >= term_cap:
            raise TermCapError(
                f"tail bound not met within {term_cap} terms (rel_tol={rel_tol})", term_cap
            )
        xk = xk_next

    with mp.workprec(bits):
        scale = spec.scale_factor()
        value = to_mpf(total) * scale
        bound = to_mpf_ceil(tail) * scale * round_slack()
    return EvalResult(value, bound, k + 1, bits)


def eval_bell_type_poly(h, n: int, x, rel_tol, bits=None, term_cap=TERM_CAP) -> EvalResult:
    """AUTO-scaled series for the Bell-type polynomial of a number-operator poly."""
    if not isinstance(h, HamiltonianSpec):
        h = HamiltonianSpec(h)
    return eval_bell_type(SeriesSpec(h.poly, x), n, rel_tol, bits=bits, term_cap=term_cap)


def cross_check(h, n: int, x, rel_tol=1e-12, bits=None) -> CrossCheckReport:
    """Compare the series route against the exact normal-ordering route.

    Passes when |series - exact| <= trunc_bound plus a rounding allowance of a
    few ulps at the working precision.
    """
    if not isinstance(h, HamiltonianSpec):
        h = HamiltonianSpec(h)
    exact = bell_type_eval(h, n, x)
    result = eval_bell_type_poly(h, n, x, rel_tol, bits=bits)
    with mp.workprec(result.precision_bits):
        difference = abs(result.value - to_mpf(exact))
        allowance = result.trunc_bound + (1 + abs(result.value)) * mp.mpf(2) ** (
            8 - result.precision_bits
        )
        passed = bool(difference <= allowance)
    return CrossCheckReport(exact, result, difference, allowance, passed)
