"""Truncated Fock-space checks of the normal-ordering machinery.

Every operator in scope is a function of the number operator, so matrix
elements collapse to weighted sums over the number basis: the diagonal element
of (a+)^k a^k on |m> is the falling factorial m!/(m-k)!, and a coherent state
|z> carries Poissonian weights e^{-|z|^2} |z|^{2m} / m!. The identity check is
exact rational arithmetic; the coherent-state expectations are high-precision
sums with rigorous tail bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from mpmath import mp

from .errors import DivergenceError
from .exact import NormalForm, falling_factorial, stirling_type
from .poly import HamiltonianSpec, monotone_tail_index
from .precision import resolve_bits, round_slack, to_mpf, to_mpf_ceil
from .series import tail_bound_factorial_poly, EvalResult


@dataclass(frozen=True)
class FockTruncation:
    """Finite number basis |0>..|dim-1|."""

    dim: int

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("truncation dimension must be >= 1")

    @classmethod
    def for_mass(cls, z_sq, growth_degree: int = 0, tail_tol=1e-16) -> "FockTruncation":
        """Smallest dimension whose m^growth_degree-weighted tail mass is below tail_tol."""
        z = Fraction(z_sq)
        if z <= 0:
            raise ValueError("|z|^2 must be positive")
        tol = Fraction(tail_tol)
        m = 1
        while tail_bound_factorial_poly(1, growth_degree, z, m) > tol * _exp_lower(z):
            m += 1
        return cls(m)


def _exp_lower(z: Fraction) -> Fraction:
    """A rational lower bound on e^z (2^floor(z)), keeping the search exact
    and conservative: the scaled tail e^{-z} * bound is then certainly below
    tail_tol whenever bound <= tail_tol * 2^floor(z)."""
    return Fraction(2) ** (z.numerator // z.denominator)


@dataclass(frozen=True)
class CoherentVector:
    """Poisson number-distribution of |z>: weights below dim plus a tail bound."""

    z_sq: Fraction
    components: Tuple[object, ...]
    mass_defect: object
    precision_bits: int


def coherent_vector(z_sq, trunc: FockTruncation, bits=None) -> CoherentVector:
    z = Fraction(z_sq)
    if z <= 0:
        raise ValueError("|z|^2 must be positive")
    bits = resolve_bits(bits)
    tail = tail_bound_factorial_poly(1, 0, z, trunc.dim)
    with mp.workprec(bits):
        scale = mp.exp(to_mpf(-z))
        weights = []
        zm = Fraction(1)
        for m in range(trunc.dim):
            if m:
                zm = zm * z / m
            weights.append(to_mpf(zm) * scale)
        defect = to_mpf_ceil(tail) * scale * round_slack()
    return CoherentVector(z, tuple(weights), defect, bits)


@dataclass
class NormalFormReport:
    """Exact identity check of a falling-factorial expansion on number states."""

    passed: bool
    power: int
    m_checked: int
    failures: List[Tuple[int, Fraction, Fraction]]  # (m, lhs, rhs)


def verify_normal_form(h, n: int, m_max: int, normal_form: Optional[NormalForm] = None) -> NormalFormReport:
    """Check [H(m)]^n == sum_k S_alpha(n,k) m!/(m-k)! for every 0 <= m <= m_max.

    The check is exact; a tampered `normal_form` may be injected to confirm failures are
    reported. Defaults to the freshly computed expansion.
    """
    if not isinstance(h, HamiltonianSpec):
        h = HamiltonianSpec(h)
    nf = normal_form if normal_form is not None else stirling_type(h, n)
    failures = []
    for m in range(m_max + 1):
        lhs = h.poly(m) ** n
        rhs = sum((c * falling_factorial(m, k) for k, c in nf.coeffs.items()), Fraction(0))
        if lhs != rhs:
            failures.append((m, lhs, rhs))
    return NormalFormReport(not failures, n, m_max, failures)


def expect_number_power(n: int, z_sq, trunc: FockTruncation, bits=None) -> EvalResult:
    """<z| (a+ a)^n |z> on the truncated basis: sum_m |<m|z>|^2 m^n.

    Exact rational accumulation of sum_{m<dim} z^{2m} m^n / m!, one scale by
    e^{-|z|^2}, and the m^n-weighted Poisson tail as the bound.
    """
    if n < 0:
        raise ValueError("power must be nonnegative")
    z = Fraction(z_sq)
    if z <= 0:
        raise ValueError("|z|^2 must be positive")
    bits = resolve_bits(bits)
    total = Fraction(0)
    zm = Fraction(1)
    for m in range(trunc.dim):
        if m:
            zm = zm * z / m
        total += zm * Fraction(m) ** n
    tail = tail_bound_factorial_poly(1, n, z, trunc.dim)
    with mp.workprec(bits):
        scale = mp.exp(to_mpf(-z))
        value = to_mpf(total) * scale
        bound = to_mpf_ceil(tail) * scale * round_slack()
    return EvalResult(value, bound, trunc.dim, bits)


def coherent_expect_exp(h, lam, z_sq, trunc: FockTruncation, bits=None) -> EvalResult:
    """<z| e^{lam H(a+ a)} |z> = sum_m |<m|z>|^2 e^{lam H(m)} on the truncation.

    Shares the generating-function divergence policy: refused for deg(H) >= 2
    with lam > 0, and for the provably divergent lam < 0 with negative leading
    coefficient (the exponent then grows like |lam||c_D| m^D against log m!).
    """
    if not isinstance(h, HamiltonianSpec):
        h = HamiltonianSpec(h)
    lam = Fraction(lam)
    z = Fraction(z_sq)
    if z <= 0:
        raise ValueError("|z|^2 must be positive")
    p = h.poly
    if p.degree >= 2:
        if lam > 0:
            raise DivergenceError(
                f"e^(lam*H(m))/m! grows without bound for deg(H)={p.degree} >= 2 and lam={lam} > 0"
            )
        if lam < 0 and p.leading() < 0:
            raise DivergenceError(
                "e^(lam*H(m))/m! grows without bound: lam < 0 with negative leading coefficient"
            )
    bits = resolve_bits(bits)
    with mp.workprec(bits):
        total = mp.mpf(0)
        zm = Fraction(1)
        for m in range(trunc.dim):
            if m:
                zm = zm * z / m
            total += mp.exp(to_mpf(lam * p(m))) * to_mpf(zm)
        tail = _exp_weighted_tail(p, lam, z, trunc.dim, zm * z / trunc.dim)
        scale = mp.exp(to_mpf(-z))
        value = total * scale
        bound = tail * scale * round_slack()
    return EvalResult(value, bound, trunc.dim, bits)


def _exp_weighted_tail(p, lam: Fraction, z: Fraction, m_from: int, zm_from: Fraction):
    """Upper bound on sum_{m>=m_from} e^{lam P(m)} z^m/m! at current precision.

    `zm_from` must equal z^{m_from}/m_from!. Works outward with the envelope
    ratio e^{lam dP} z/(m+1): constant e^{lam c1} for deg <= 1, and <= 1 once
    P is provably increasing for lam <= 0, deg >= 2, positive leading.
    """
    deg = p.degree
    if lam == 0 or deg <= 0:
        valid_from, log_factor = 0, Fraction(0)
    elif deg == 1:
        valid_from, log_factor = 0, lam * p.coefficient(1)
    elif lam < 0 and p.leading() > 0:
        valid_from, log_factor = monotone_tail_index(p), Fraction(0)
    else:
        raise DivergenceError("no convergent tail certificate for this exponent shape")
    factor = mp.exp(to_mpf(log_factor))
    acc = mp.mpf(0)
    m = m_from
    zm = zm_from
    while True:
        term = mp.exp(to_mpf(lam * p(m))) * to_mpf_ceil(zm)
        if m >= valid_from and factor * to_mpf(z) / (m + 1) <= mp.mpf(1) / 2:
            return (acc + 2 * term) * round_slack()
        acc += term
        m += 1
        zm = zm * z / m
        if m - m_from > 100_000:
            raise DivergenceError("exponential tail bound failed to contract")
