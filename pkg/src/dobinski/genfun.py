"""Exponential and ordinary generating functions in interchanged-summation form.

The EGF is sum_k e^{lambda P(k)} / D(k); the OGF is
sum_k 1 / (D(k) (1 - P(k) lambda)). Both inherit the factorial weights of a
SeriesSpec. EGF terms are transcendental, so they are summed in floating point
at the working precision; OGF terms stay exact rationals until the final scale.

Divergence policy: for deg(P) >= 2 and lambda > 0 the EGF terms
e^{lambda k^d}/k! eventually grow, so the evaluation is refused up front.
Otherwise the sum is monitored and aborted if terms grow for 50 consecutive
indices (the provably divergent negative-leading case lands here).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp

from .errors import DivergenceError, PoleError, TermCapError
from .poly import monotone_tail_index
from .precision import resolve_bits, round_slack, to_mpf, to_mpf_ceil
from .series import TERM_CAP, EvalResult, SeriesSpec, _check_rel_tol

_GROWTH_ABORT = 50
POLE_TOL = 1e-9


class GenFunKind(enum.Enum):
    EGF = "egf"
    OGF = "ogf"


@dataclass(frozen=True)
class GenFunSpec:
    spec: SeriesSpec
    kind: GenFunKind

    def evaluate(self, lam, rel_tol, bits=None):
        if self.kind is GenFunKind.EGF:
            return egf_eval(self.spec, lam, rel_tol, bits=bits)
        return ogf_eval(self.spec, lam, rel_tol, bits=bits)


def _exp_ratio_envelope(p, lam: Fraction):
    """(valid_from, factor) with e^{lam(P(j+1)-P(j))} <= factor for j >= valid_from.

    factor is exact (Fraction exponent evaluated later) for deg <= 1; for
    deg >= 2 it is 1, valid once P is provably increasing (requires lam <= 0
    and positive leading coefficient). Returns None when no sound envelope
    exists and only growth monitoring can stop the sum.
    """
    deg = p.degree
    if lam == 0 or deg <= 0:
        return 0, Fraction(0)  # e^0
    if deg == 1:
        return 0, lam * p.coefficient(1)
    if lam < 0 and p.leading() > 0:
        return monotone_tail_index(p), Fraction(0)
    return None


def egf_eval(spec: SeriesSpec, lam, rel_tol, bits=None, term_cap=TERM_CAP) -> EvalResult:
    """Evaluate sum_k e^{lam P(k)} x^k / (s k!) with a rigorous tail bound."""
    tol = _check_rel_tol(rel_tol)
    bits = resolve_bits(bits)
    lam = Fraction(lam)
    p, x = spec.poly, spec.x
    if p.degree >= 2 and lam > 0:
        raise DivergenceError(
            f"e^(lam*P(k))/k! grows without bound for deg(P)={p.degree} >= 2 and lam={lam} > 0"
        )
    envelope = _exp_ratio_envelope(p, lam)

    with mp.workprec(bits):
        tol_mp = to_mpf(tol)
        total = mp.mpf(0)
        xk = Fraction(1)  # x^k / k!
        k = 0
        grow = 0
        prev = None
        while True:
            term = mp.exp(to_mpf(lam * p(k))) * to_mpf(xk)
            total += term
            xk_next = xk * x / (k + 1)
            if envelope is not None:
                valid_from, log_factor = envelope
                j = k + 1
                if j >= valid_from:
                    ratio = mp.exp(to_mpf(log_factor)) * to_mpf(x) / (j + 1)
                    if ratio <= mp.mpf(1) / 2:
                        tail = 2 * mp.exp(to_mpf(lam * p(j))) * to_mpf_ceil(xk_next)
                        if tail <= tol_mp * total:
                            break
            else:
                # no convergence certificate: abort on sustained term growth
                if prev is not None and term > prev:
                    grow += 1
                    if grow >= _GROWTH_ABORT:
                        raise DivergenceError(
                            f"terms grew for {_GROWTH_ABORT} consecutive indices (last k={k})"
                        )
                else:
                    grow = 0
                prev = term
            k += 1
            if k >= term_cap:
                raise TermCapError(f"EGF tail bound not met within {term_cap} terms", term_cap)
            xk = xk_next
        scale = spec.scale_factor()
        value = total * scale
        bound = tail * scale * round_slack()
    return EvalResult(value, bound, k + 1, bits)


def ogf_eval(
    spec: SeriesSpec, lam, rel_tol, bits=None, pole_tol=POLE_TOL, term_cap=TERM_CAP
) -> EvalResult:
    """Evaluate sum_k x^k / (s k! (1 - P(k) lam)), refusing near-pole terms.

    Terms are exact rationals (lam is taken as an exact rational), so pole
    detection |1 - P(k) lam| < pole_tol is decided exactly. The tail bound
    uses factorial decay once |P(k) lam| >= 2 provably holds beyond the
    truncation point (monotonicity of P past its Cauchy-style index).
    """
    tol = _check_rel_tol(rel_tol)
    bits = resolve_bits(bits)
    lam = Fraction(lam)
    p, x = spec.poly, spec.x

    if p.degree >= 1 and lam != 0:
        start = monotone_tail_index(p)
        towards_plus = (p.leading() > 0) == (lam > 0)

        # lam*P is monotone past `start`, so "settled" is an up-set there and
        # guarantees |1 - P(k) lam| >= 1 for every later k.
        def settled(k):
            v = lam * p(k)
            return v >= 2 if towards_plus else v <= 0

        hi = start
        step = 1
        while not settled(hi):
            hi += step
            step *= 2
            if hi > 10**9:
                raise TermCapError("no pole-free tail certificate within 1e9 indices", term_cap)
        lo = start
        while lo < hi:
            mid = (lo + hi) // 2
            if settled(mid):
                hi = mid
            else:
                lo = mid + 1
        k0 = hi
        factor_bound = Fraction(1)
    else:
        denom0 = 1 - (p(0) if not p.is_zero() else Fraction(0)) * lam
        if abs(denom0) < pole_tol:
            raise PoleError(f"1 - P(k)*lam = {denom0} at k=0 is within pole_tol", 0)
        k0 = 0
        factor_bound = abs(Fraction(1) / denom0)

    total = Fraction(0)
    total_abs = Fraction(0)
    xk = Fraction(1)
    k = 0
    while True:
        denom = 1 - p(k) * lam
        if abs(denom) < pole_tol:
            raise PoleError(f"1 - P(k)*lam = {denom} at k={k} is within pole_tol", k)
        t = xk / denom
        total += t
        total_abs += -t if t < 0 else t
        xk_next = xk * x / (k + 1)
        if k + 1 >= k0 and 2 * x <= k + 2:
            tail = 2 * factor_bound * xk_next
            if tail <= tol * total_abs:
                break
        k += 1
        if k >= term_cap:
            raise TermCapError(f"OGF tail bound not met within {term_cap} terms", term_cap)
        xk = xk_next

    with mp.workprec(bits):
        scale = spec.scale_factor()
        value = to_mpf(total) * scale
        bound = to_mpf_ceil(tail) * scale * round_slack()
    return EvalResult(value, bound, k + 1, bits)


def egf_closed_form_bell(lam, x, restricted=False, bits=None):
    """e^{x(e^lam - 1)}, or e^{x(e^lam - 1 - lam)} for the singleton-free variant."""
    bits = resolve_bits(bits)
    with mp.workprec(bits):
        lam_mp = to_mpf(Fraction(lam))
        x_mp = to_mpf(Fraction(x))
        inner = mp.expm1(lam_mp)
        if restricted:
            inner -= lam_mp
        return mp.exp(x_mp * inner)


def egf_partial_from_numbers(values, lam, m_max: int, bits=None):
    """Truncated EGF sum_{n<=m_max} values[n] lam^n / n! from exact sequence values."""
    if len(values) < m_max + 1:
        raise ValueError(f"need {m_max + 1} sequence values, got {len(values)}")
    bits = resolve_bits(bits)
    lam = Fraction(lam)
    acc = Fraction(0)
    lam_pow = Fraction(1)
    fact = 1
    for n in range(m_max + 1):
        if n:
            lam_pow *= lam
            fact *= n
        acc += Fraction(values[n]) * lam_pow / fact
    with mp.workprec(bits):
        return to_mpf(acc)
