"""Dirac-comb weight functions and the associated moment problem.

A comb is the discrete measure sum_k delta(y - P(k)) / D(k) truncated at an
index whose omitted mass is rigorously bounded. Atom locations P(k) are exact
rationals at integer k, so coinciding locations are merged exactly before any
conversion to floating point. Classification of the moment problem
(Hausdorff / Stieltjes / Hamburger) is by the range of {P(k) : k >= 0},
decided in exact arithmetic.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from mpmath import mp

from .errors import TermCapError
from .poly import PolynomialQ, monotone_tail_index
from .precision import decimal_digits, resolve_bits, round_slack, to_mpf, to_mpf_ceil
from .series import TERM_CAP, EvalResult, SeriesSpec, tail_bound_factorial_poly


class MomentClass(enum.Enum):
    HAMBURGER = "hamburger"
    STIELTJES = "stieltjes"
    HAUSDORFF = "hausdorff"


@dataclass(frozen=True)
class DiracComb:
    """Truncated comb: merged atoms, a tail-mass bound, and spec provenance."""

    atoms: Tuple[Tuple[object, object], ...]  # (location, weight) as mpf, ascending
    mass_defect: object
    spec: SeriesSpec
    k_max: int
    precision_bits: int
    exact_atoms: Tuple[Tuple[Fraction, Fraction], ...]  # unscaled weights x^k/k!


def build_comb(spec: SeriesSpec, mass_tol=1e-12, bits=None, term_cap=TERM_CAP) -> DiracComb:
    """Truncate the comb at the smallest K whose tail-mass bound is <= mass_tol."""
    if not mass_tol > 0:
        raise ValueError(f"mass_tol must be positive, got {mass_tol}")
    bits = resolve_bits(bits)
    x = spec.x
    with mp.workprec(bits):
        scale = spec.scale_factor()
        tol = mp.mpmathify(mass_tol)
        slack = round_slack()

        merged = {}
        xk = Fraction(1)  # x^k / k!
        k = 0
        while True:
            loc = spec.poly(k)
            merged[loc] = merged.get(loc, Fraction(0)) + xk
            xk_next = xk * x / (k + 1)
            if 2 * x <= k + 2:  # envelope ratio x/(k+2) <= 1/2
                defect = to_mpf_ceil(2 * xk_next) * scale * slack
                if defect <= tol:
                    break
            k += 1
            if k >= term_cap:
                raise TermCapError(
                    f"mass tolerance {mass_tol} not met within {term_cap} atoms", term_cap
                )
            xk = xk_next

        exact_atoms = tuple(sorted(merged.items()))
        atoms = tuple((to_mpf(loc), to_mpf(w) * scale) for loc, w in exact_atoms)
    return DiracComb(atoms, defect, spec, k, bits, exact_atoms)


def moment(comb: DiracComb, n: int, bits=None) -> EvalResult:
    """n-th moment sum_atoms weight * location^n, with a growth-aware tail bound.

    The exact unscaled atoms are reused, so merging cannot change moments; the
    bound re-runs the factorial-tail machinery with the |P(k)|^n envelope
    rather than amplifying the stored mass defect.
    """
    if n < 0:
        raise ValueError("moment order must be nonnegative")
    bits = resolve_bits(bits if bits is not None else comb.precision_bits)
    spec = comb.spec
    raw = sum((w * loc**n for loc, w in comb.exact_atoms), Fraction(0))
    amp = spec.poly.abs_coeff_sum() ** n
    d = max(spec.poly.degree, 0) * n
    tail = tail_bound_factorial_poly(amp, d, spec.x, comb.k_max + 1)
    with mp.workprec(bits):
        scale = spec.scale_factor()
        value = to_mpf(raw) * scale
        bound = to_mpf_ceil(tail) * scale * round_slack()
    return EvalResult(value, bound, comb.k_max + 1, bits)


@dataclass
class DistributionReport:
    """Positivity / normalization check of a comb."""

    passed: bool
    weights_positive: bool
    total_mass: object
    mass_defect: object
    deviation: object
    tolerance: float


def check_distribution(comb: DiracComb, tol=1e-12) -> DistributionReport:
    """Verify all weights positive and |total mass + mass_defect - 1| <= tol."""
    with mp.workprec(comb.precision_bits):
        positive = all(w > 0 for _, w in comb.atoms)
        total = mp.fsum(w for _, w in comb.atoms)
        deviation = abs(total + comb.mass_defect - 1)
        passed = positive and deviation <= mp.mpmathify(tol)
    return DistributionReport(bool(passed), bool(positive), total, comb.mass_defect, deviation, tol)


def classify(p) -> MomentClass:
    """Classify the moment problem by the range of {P(k) : k = 0, 1, ...}.

    Bounded range (constant P, the zero polynomial included) -> Hausdorff;
    otherwise nonnegative on all integer k >= 0 -> Stieltjes; else Hamburger.
    The integer minimum is found by scanning up to the index where P is
    provably increasing.
    """
    if not isinstance(p, PolynomialQ):
        p = PolynomialQ(p)
    if p.degree <= 0:
        return MomentClass.HAUSDORFF
    if p.leading() < 0:
        return MomentClass.HAMBURGER
    k_hi = monotone_tail_index(p)
    minimum = min(p(k) for k in range(k_hi + 1))
    return MomentClass.STIELTJES if minimum >= 0 else MomentClass.HAMBURGER


def atoms_in_range(comb: DiracComb, y_min, y_max) -> List[Tuple[object, object]]:
    """Atoms with y_min <= location <= y_max, ascending; rejects empty ranges."""
    y_min, y_max = Fraction(y_min), Fraction(y_max)
    if y_min >= y_max:
        raise ValueError(f"invalid range [{y_min}, {y_max}]")
    lo, hi = to_mpf(y_min), to_mpf(y_max)
    return [(loc, w) for loc, w in comb.atoms if lo <= loc <= hi]


def export_comb_csv(comb: DiracComb, y_min=None, y_max=None) -> str:
    """CSV `location,weight` rows for atoms in range, decimals at comb precision."""
    if y_min is None and y_max is None:
        rows = list(comb.atoms)
    else:
        rows = atoms_in_range(
            comb,
            y_min if y_min is not None else -_comb_span(comb),
            y_max if y_max is not None else _comb_span(comb),
        )
    digits = decimal_digits(comb.precision_bits)
    lines = ["location,weight"]
    with mp.workprec(comb.precision_bits):
        for loc, w in rows:
            lines.append(f"{mp.nstr(loc, digits)},{mp.nstr(w, digits)}")
    return "\n".join(lines) + "\n"


def _comb_span(comb: DiracComb) -> Fraction:
    """A rational bound beyond every atom location, for one-sided ranges."""
    spec = comb.spec
    span = spec.poly.abs_coeff_sum() * Fraction(max(comb.k_max, 1)) ** max(spec.poly.degree, 0)
    return span + 1
