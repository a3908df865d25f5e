"""Independent reference implementations used only to check the library.

These deliberately avoid the library's own code paths: partitions are
enumerated one block assignment at a time, and polynomial identities are
checked by expanding coefficient lists directly.
"""

from fractions import Fraction


def set_partitions(n):
    """Yield every partition of {0..n-1} as a list of blocks (lists)."""
    if n == 0:
        yield []
        return
    for part in set_partitions(n - 1):
        for i in range(len(part)):
            yield part[:i] + [part[i] + [n - 1]] + part[i + 1 :]
        yield part + [[n - 1]]


def partition_count(n, forbid_singletons=False):
    total = 0
    for part in set_partitions(n):
        if forbid_singletons and any(len(block) == 1 for block in part):
            continue
        total += 1
    return total


def stirling_count(n, k):
    """Number of partitions of an n-set into exactly k blocks, by enumeration."""
    return sum(1 for part in set_partitions(n) if len(part) == k)


def poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += Fraction(ai) * bj
    return out


def falling_coeff_list(k):
    """Coefficient list of m(m-1)...(m-k+1) as a polynomial in m."""
    poly = [Fraction(1)]
    for i in range(k):
        poly = poly_mul(poly, [Fraction(-i), Fraction(1)])
    return poly


def expand_falling_combination(vector):
    """Expand sum_k vector[k] * m(m-1)...(m-k+1) into monomial coefficients."""
    out = [Fraction(0)]
    for k, c in enumerate(vector):
        if not c:
            continue
        term = falling_coeff_list(k)
        if len(term) > len(out):
            out.extend([Fraction(0)] * (len(term) - len(out)))
        for i, t in enumerate(term):
            out[i] += Fraction(c) * t
    while out and out[-1] == 0:
        out.pop()
    return out
