"""Shared independent oracles for the test suite.

These deliberately avoid the library's own code paths: coefficients come
from alternating difference sums over plain ``math.comb``, evaluation from
direct falling-factorial products.
"""
import math
from itertools import product


def diff_coeffs(values):
    """Binomial-basis coefficients of the polynomial matching f(0..m),
    via alternating difference sums (independent of the library)."""
    return [
        sum((-1) ** (d - i) * math.comb(d, i) * values[i] for i in range(d + 1))
        for d in range(len(values))
    ]


def binom_any(n, k):
    """Generalized binomial via the plain product formula."""
    num = 1
    for i in range(k):
        num *= n - i
    return num // math.factorial(k)


def eval_binomial_coeffs(coeffs, x):
    """Evaluate sum_d coeffs[d] * C(x, d) without the library."""
    return sum(c * binom_any(x, d) for d, c in enumerate(coeffs))


def wrap_diff(table, modulus):
    """One forward difference of a cyclic value table, entries mod modulus."""
    n = len(table)
    out = [table[(i + 1) % n] - table[i] for i in range(n)]
    if modulus:
        out = [v % modulus for v in out]
    return out


def all_tables(length, height):
    """Every value table of the given length with entries below height."""
    return product(range(height), repeat=length)
