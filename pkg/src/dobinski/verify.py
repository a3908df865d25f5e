"""One-shot verification suite covering every module end to end.

Each check pairs a library route with an independent reference: brute-force
partition enumeration, exact polynomial identities, closed forms, or direct
high-precision summation. `run_suite` returns per-check results including
wall time against each check's budget; the CLI renders them as a table.
"""

from __future__ import annotations

import contextlib
import io
import random
import time
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp

from .errors import PoleError
from .exact import (
    bell_number,
    bell_polynomial,
    bell_type_eval,
    restricted_bell,
    stirling_type,
    triangle_row,
)
from .fock import FockTruncation, coherent_expect_exp, expect_number_power, verify_normal_form
from .genfun import egf_closed_form_bell, egf_eval, egf_partial_from_numbers, ogf_eval
from .moments import MomentClass, build_comb, check_distribution, classify, moment
from .poly import HamiltonianSpec, PolynomialQ
from .precision import resolve_bits, to_mpf
from .series import SeriesSpec, cross_check, eval_bell_type

BELL_REFERENCE = [1, 1, 2, 5, 15, 52, 203, 877]
RESTRICTED_REFERENCE = [1, 0, 1, 1, 4, 11, 41, 162]

_IDENTITY = PolynomialQ([0, 1])  # P(k) = k
_SHIFTED = PolynomialQ([-1, 1])  # P(k) = k - 1


@dataclass
class CheckResult:
    slug: str
    title: str
    passed: bool
    detail: str
    seconds: float
    budget: float


def _partition_count(n: int, forbid_singletons: bool = False) -> int:
    """Brute-force set-partition count by enumerating block assignments."""
    if n == 0:
        return 1
    sizes = []

    def rec(i):
        if forbid_singletons and sizes.count(1) > n - i:
            return 0
        if i == n:
            return 0 if (forbid_singletons and 1 in sizes) else 1
        if i == n - 1 and not forbid_singletons:
            return len(sizes) + 1
        total = 0
        for b in range(len(sizes)):
            sizes[b] += 1
            total += rec(i + 1)
            sizes[b] -= 1
        sizes.append(1)
        total += rec(i + 1)
        sizes.pop()
        return total

    return rec(0)


def _rel_close(a, b, tol):
    scale = max(1, abs(a), abs(b))
    return abs(a - b) <= tol * scale


def _crit_bell_sequence(grid, bits):
    values = [bell_number(n) for n in range(8)]
    if values != BELL_REFERENCE:
        return False, f"bell sequence mismatch: {values}"
    n_max = 10 if grid == "full" else 8
    for n in range(n_max + 1):
        brute = _partition_count(n)
        if brute != bell_number(n):
            return False, f"brute-force disagreement at n={n}: {brute} vs {bell_number(n)}"
    return True, f"n=0..7 list ok; brute force ok to n={n_max}"


def _crit_dobinski_agreement(grid, bits):
    n_max = 20 if grid == "full" else 12
    xs = [Fraction(1, 2), Fraction(1), Fraction(3)] if grid == "full" else [Fraction(1), Fraction(3)]
    worst = mp.mpf(0)
    with mp.workprec(bits):
        for x in xs:
            spec = SeriesSpec(_IDENTITY, x)
            for n in range(n_max + 1):
                result = eval_bell_type(spec, n, 1e-12, bits=bits)
                exact = to_mpf(bell_polynomial(n)(x))
                err = abs(result.value - exact)
                if err > result.trunc_bound:
                    return False, f"true error above bound at n={n}, x={x}"
                rel = err / exact
                worst = max(worst, rel)
                if rel > mp.mpf(1e-12):
                    return False, f"relative error {mp.nstr(rel, 3)} at n={n}, x={x}"
    return True, f"n<=..{n_max}, x grid ok; worst relative error {mp.nstr(worst, 3)}"


def _crit_restricted_bell(grid, bits):
    exact_list = [restricted_bell(n) for n in range(8)]
    if exact_list != RESTRICTED_REFERENCE:
        return False, f"exact restricted list mismatch: {exact_list}"
    spec = SeriesSpec(_SHIFTED, 1)
    with mp.workprec(bits):
        allowance = mp.mpf(2) ** (8 - bits)
        for n in range(8):
            result = eval_bell_type(spec, n, 1e-12, bits=bits)
            if abs(result.value - RESTRICTED_REFERENCE[n]) > result.trunc_bound + allowance:
                return False, f"series route off at n={n}: {mp.nstr(result.value, 20)}"
    return True, "exact and series routes both give 1,0,1,1,4,11,41,162"


def _random_hamiltonian(rng) -> HamiltonianSpec:
    deg = rng.randint(1, 3)
    coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(deg)]
    lead = Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 9))
    return HamiltonianSpec(PolynomialQ(coeffs + [lead]))


def _crit_stirling_cross_route(grid, bits):
    n_specs = 50 if grid == "full" else 12
    rng = random.Random(20250810)
    xs = [Fraction(1, 2), Fraction(1), Fraction(3)]
    for i in range(n_specs):
        h = _random_hamiltonian(rng)
        for n in range(5):
            report = verify_normal_form(h, n, 40)
            if not report.passed:
                m, lhs, rhs = report.failures[0]
                return False, f"normal form failed for {h!r}, n={n} at m={m}: {lhs} != {rhs}"
            for x in xs:
                check = cross_check(h, n, x, rel_tol=1e-12, bits=bits)
                if not check.passed:
                    return False, (
                        f"cross check failed for {h!r}, n={n}, x={x}: "
                        f"diff {mp.nstr(check.difference, 3)} > {mp.nstr(check.allowance, 3)}"
                    )
    square = HamiltonianSpec(PolynomialQ([0, 0, 1]))
    for n in range(7):
        nf = stirling_type(square, n)
        row = triangle_row(2 * n)
        expected = {k: Fraction(v) for k, v in enumerate(row) if v}
        if nf.coeffs != expected:
            return False, f"stirling_type(m^2, {n}) != triangle row {2 * n}"
    return True, f"{n_specs} random hamiltonians, n<=4, m<=40 exact; series cross-checks ok"


def _crit_moment_problem(grid, bits):
    n_max = 15 if grid == "full" else 10
    comb = build_comb(SeriesSpec(_IDENTITY, 1), 1e-12, bits=bits)
    dist = check_distribution(comb, 1e-12)
    if not dist.passed:
        return False, f"bell comb mass off by {mp.nstr(dist.deviation, 3)}"
    with mp.workprec(bits):
        allowance = mp.mpf(2) ** (8 - bits)
        for n in range(n_max + 1):
            result = moment(comb, n, bits=bits)
            if abs(result.value - bell_number(n)) > result.trunc_bound + allowance:
                return False, f"moment {n} misses B({n}) beyond its bound"
    cases = [
        (_IDENTITY, MomentClass.STIELTJES),
        (_SHIFTED, MomentClass.HAMBURGER),
        (PolynomialQ([5]), MomentClass.HAUSDORFF),
    ]
    for p, expected in cases:
        got = classify(p)
        if got is not expected:
            return False, f"classify({p!r}) = {got}, expected {expected}"
    return True, f"mass normalized; moments reproduce B(n) to n={n_max}; classes ok"


def _crit_generating_functions(grid, bits):
    lams = [Fraction(-1), Fraction(0), Fraction(1, 2), Fraction(1)]
    xs = [Fraction(1, 2), Fraction(1), Fraction(3)] if grid == "full" else [Fraction(1), Fraction(3)]
    with mp.workprec(bits):
        for x in xs:
            # the singleton-free closed form e^{x(e^l-1-l)} belongs to the
            # x-shifted locations P(k) = k-x (Poisson central moments)
            for restricted, poly in ((False, _IDENTITY), (True, PolynomialQ([-x, 1]))):
                spec = SeriesSpec(poly, x)
                for lam in lams:
                    got = egf_eval(spec, lam, 1e-13, bits=bits).value
                    want = egf_closed_form_bell(lam, x, restricted=restricted, bits=bits)
                    if not _rel_close(got, want, mp.mpf(1e-10)):
                        return False, f"egf mismatch at lam={lam}, x={x}, restricted={restricted}"
        bell_values = [bell_number(n) for n in range(26)]
        restricted_values = [restricted_bell(n) for n in range(26)]
        lam = Fraction(1, 10)
        partial = egf_partial_from_numbers(bell_values, lam, 25, bits=bits)
        if not _rel_close(partial, egf_closed_form_bell(lam, 1, bits=bits), mp.mpf(1e-10)):
            return False, "25-term EGF partial sum misses closed form"
        partial_r = egf_partial_from_numbers(restricted_values, lam, 25, bits=bits)
        if not _rel_close(partial_r, egf_closed_form_bell(lam, 1, restricted=True, bits=bits), mp.mpf(1e-10)):
            return False, "25-term restricted EGF partial sum misses closed form"
        h = Fraction(1, 10**6)
        for x in xs:
            for poly in (_IDENTITY, _SHIFTED):
                spec = SeriesSpec(poly, x)
                plus = egf_eval(spec, h, 1e-14, bits=bits).value
                minus = egf_eval(spec, -h, 1e-14, bits=bits).value
                fd = (plus - minus) / (2 * to_mpf(h))
                exact = to_mpf(bell_type_eval(HamiltonianSpec(poly), 1, x))
                if abs(fd - exact) > mp.mpf(1e-5) * max(1, abs(exact)):
                    return False, f"finite-difference slope off at x={x}, P={poly!r}"
    return True, "egf matches closed forms, partial sums, and slope checks"


def _crit_ogf(grid, bits):
    terms = 10_000 if grid == "full" else 2_000
    spec = SeriesSpec(_IDENTITY, 1)
    result = ogf_eval(spec, Fraction(-1, 2), 1e-13, bits=bits)
    with mp.workprec(max(bits, 320)):
        fact = mp.mpf(1)
        direct = mp.mpf(0)
        for k in range(terms):
            if k:
                fact *= k
            direct += 1 / (fact * (1 + mp.mpf(k) / 2))
        direct *= mp.exp(-1)
        if abs(result.value - direct) > mp.mpf(1e-12):
            return False, f"ogf(-1/2) off by {mp.nstr(abs(result.value - direct), 3)}"
    for lam, expected_k in ((Fraction(1), 1), (Fraction(1, 2), 2), (Fraction(1, 3), 3)):
        try:
            ogf_eval(spec, lam, 1e-12, bits=bits)
        except PoleError as exc:
            if exc.k != expected_k:
                return False, f"pole at lam={lam} reported k={exc.k}, expected {expected_k}"
        else:
            return False, f"pole at lam={lam} not detected"
    return True, f"direct {terms}-term oracle agrees; poles fire at k=1,2,3"


def _crit_coherent_state(grid, bits):
    z_grid = [Fraction(1, 2), Fraction(1), Fraction(4)] if grid == "full" else [Fraction(1), Fraction(4)]
    n_max = 8 if grid == "full" else 6
    trunc = FockTruncation(120 if grid == "full" else 80)
    with mp.workprec(bits):
        for z in z_grid:
            for n in range(n_max + 1):
                got = expect_number_power(n, z, trunc, bits=bits).value
                want = to_mpf(bell_polynomial(n)(z))
                if not _rel_close(got, want, mp.mpf(1e-10)):
                    return False, f"<(a+a)^{n}> off at |z|^2={z}"
        cases = [
            (HamiltonianSpec(_IDENTITY), [Fraction(-1), Fraction(-1, 2), Fraction(0), Fraction(1, 2), Fraction(1)]),
            (HamiltonianSpec(PolynomialQ([0, 0, 1])), [Fraction(-1), Fraction(-1, 2), Fraction(0)]),
            (HamiltonianSpec(PolynomialQ([0, 1, 1])), [Fraction(-1), Fraction(-1, 2), Fraction(0)]),
        ]
        for h, lams in cases:
            for z in z_grid:
                spec = SeriesSpec(h.poly, z)
                for lam in lams:
                    coh = coherent_expect_exp(h, lam, z, trunc, bits=bits).value
                    gf = egf_eval(spec, lam, 1e-12, bits=bits).value
                    if not _rel_close(coh, gf, mp.mpf(1e-10)):
                        return False, f"coherent vs egf mismatch for {h!r}, lam={lam}, |z|^2={z}"
    return True, f"number-power and exp expectations agree on the grid (dim={trunc.dim})"


def _crit_fig1_export(grid, bits):
    from .cli import main as cli_main

    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli_main(["comb", "--poly", "1:1", "--x", "1", "--ymin", "0", "--ymax", "5"])
    if code != 0:
        return False, f"comb export exited {code}"
    lines = [line for line in buf.getvalue().splitlines() if line.strip()]
    if lines[0] != "location,weight":
        return False, f"unexpected header {lines[0]!r}"
    rows = [line.split(",") for line in lines[1:]]
    if len(rows) != 6:
        return False, f"expected 6 atoms, got {len(rows)}"
    with mp.workprec(resolve_bits(None)):
        scale = mp.exp(-1)
        fact = mp.mpf(1)
        prev_w = None
        for k, (loc_text, w_text) in enumerate(rows):
            loc, w = mp.mpf(loc_text), mp.mpf(w_text)
            if abs(loc - k) > mp.mpf(1e-60):
                return False, f"atom {k} at unexpected location {loc_text}"
            if k:
                fact *= k
            if not _rel_close(w, scale / fact, mp.mpf(1e-60)):
                return False, f"atom {k} weight off: {w_text}"
            if prev_w is not None and not _rel_close(w * k, prev_w, mp.mpf(1e-60)):
                return False, f"weights do not decrease by 1/{k}"
            prev_w = w
    return True, "six atoms at y=0..5 with weights e^-1/k!"


CRITERIA = (
    ("bell-sequence", "Bell numbers match the reference list and brute-force counts", 1.0, _crit_bell_sequence),
    ("dobinski-agreement", "Series route matches exact Bell polynomials within bounds", 5.0, _crit_dobinski_agreement),
    ("restricted-bell", "Singleton-free counts agree across exact and series routes", 1.0, _crit_restricted_bell),
    ("stirling-type-cross-route", "Normal-form identity and series cross-checks on a random grid", 30.0, _crit_stirling_cross_route),
    ("moment-problem", "Comb mass, moments, and Hamburger/Stieltjes/Hausdorff classes", 5.0, _crit_moment_problem),
    ("generating-functions", "EGF against closed forms, partial sums, and slopes", 5.0, _crit_generating_functions),
    ("ogf", "OGF against direct summation; pole rejection", 5.0, _crit_ogf),
    ("coherent-state", "Truncated Fock expectations against exact and EGF routes", 10.0, _crit_coherent_state),
    ("fig1-export", "CLI comb export reproduces the Bell-weight atoms", 1.0, _crit_fig1_export),
)


def run_criterion(index: int, grid: str = "full", bits=None) -> CheckResult:
    slug, title, budget, fn = CRITERIA[index]
    bits = resolve_bits(bits)
    start = time.perf_counter()
    try:
        ok, detail = fn(grid, bits)
    except Exception as exc:  # a crash is a failure, not an abort of the suite
        ok, detail = False, f"raised {type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    if ok and elapsed >= budget:
        ok, detail = False, f"exceeded {budget:.0f}s budget ({elapsed:.2f}s): {detail}"
    return CheckResult(slug, title, ok, detail, elapsed, budget)


def run_suite(grid: str = "small", bits=None):
    return [run_criterion(i, grid=grid, bits=bits) for i in range(len(CRITERIA))]


def format_table(results) -> str:
    width = max(len(r.slug) for r in results)
    lines = []
    for i, r in enumerate(results, 1):
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{i}. {r.slug:<{width}}  {status}  {r.seconds:6.2f}s  {r.detail}")
    overall = "PASS" if all(r.passed for r in results) else "FAIL"
    lines.append(f"overall: {overall}")
    return "\n".join(lines)
