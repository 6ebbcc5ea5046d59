"""Co-monofracts, Lagrange polyfracts, and prime-power interpolation.

The co-monofract (d | x)_{q,r} is the alternating sum of C(d, xh) over the
representatives xh of x mod q inside {0..d}, reduced mod r.  Expanding the
indicator of a point of Z_{p^a} in these quantities gives its polyfractal
representation, and summing shifted indicators interpolates arbitrary maps
between p-groups.
"""
from __future__ import annotations

from itertools import product
from typing import Sequence

from .calculus import FiniteFn
from .errors import BadCodomain, LengthMismatch, MixedPrimes, NotPrime
from .exactnum import Residue, binom, is_prime, prime_factors
from .multi import MultiPolyfract
from .uni import UniPolyfract

__all__ = [
    "cofract",
    "degree_bound",
    "extend_information_coeffs",
    "interpolate_prime_power",
    "lagrange_polyfract",
]


def cofract(d: int, q: int, r: int, x: int) -> Residue:
    """The co-monofract (d | x)_{q,r}.

    Sums (-1)^xh * C(d, xh) over all xh congruent to x mod q with
    0 <= xh <= d (at most floor(d/q) + 1 terms) and reduces mod r; the
    sign uses the actual integer representative xh.
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    if d < 0:
        raise ValueError("d must be >= 0")
    total = sum((-1) ** xh * binom(d, xh) for xh in range(x % q, d + 1, q))
    return Residue(total, r)


def lagrange_polyfract(p: int, alpha: int, beta: int, x0: int) -> UniPolyfract:
    """Polyfractal expansion of the indicator of x0 on Z_{p^alpha}, mod p^beta.

    Coefficients are (delta | delta - x0)_{p^alpha, p^beta} up to the exact
    degree d = p^alpha - 1 + (beta-1)(p-1)p^(alpha-1); the induced map is
    the p^alpha-periodic point indicator.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if alpha < 1 or beta < 1:
        raise ValueError("alpha and beta must be >= 1")
    q = p**alpha
    r = p**beta
    d = q - 1 + (beta - 1) * (p - 1) * p ** (alpha - 1)
    coeffs = tuple(cofract(delta, q, r, delta - x0).value for delta in range(d + 1))
    return UniPolyfract(r, coeffs)


def degree_bound(p: int, beta: int, alphas: Sequence[int]) -> int:
    """Best possible total degree of polyfracts on a product of p-cycles
    Z_{p^a1} x ... x Z_{p^an} into Z_{p^beta}:

        sum_j p^aj - n + (beta - 1)(p - 1) p^(a_max - 1).
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if beta < 1:
        raise ValueError("beta must be >= 1")
    alphas = tuple(alphas)
    if not alphas:
        return 0
    if any(a < 1 for a in alphas):
        raise ValueError("alphas must be >= 1")
    n = len(alphas)
    return sum(p**a for a in alphas) - n + (beta - 1) * (p - 1) * p ** (max(alphas) - 1)


def _variable_bound(p: int, beta: int, q: int) -> int:
    """Per-variable interpolation support bound; 0 for a trivial factor."""
    if q == 1:
        return 0
    alpha = prime_factors(q)[p]
    return q - 1 + (beta - 1) * (p - 1) * p ** (alpha - 1)


def interpolate_prime_power(f: FiniteFn) -> MultiPolyfract:
    """Interpolating polyfract of a map between same-prime power groups.

    The coefficient at delta is the full cofract-weighted value sum
    sum_x prod_j (delta_j | delta_j - x_j)_{q_j, p^beta} f(x); support stays
    inside the per-variable bounds and evaluation reproduces f everywhere.
    """
    if len(f.codomain_moduli) != 1:
        raise BadCodomain("a single cyclic codomain factor is required")
    r = f.codomain_moduli[0]
    domain_primes = set()
    for q in f.domain_moduli:
        fac = prime_factors(q)
        if len(fac) > 1:
            raise MixedPrimes(f"domain modulus {q} is not a prime power")
        domain_primes.update(fac)
    if len(domain_primes) > 1:
        raise MixedPrimes(f"domain involves primes {sorted(domain_primes)}")
    if r == 1:
        # trivial codomain: everything interpolates to zero
        return MultiPolyfract.zero((1,), f.nvars)
    rfac = prime_factors(r) if r else {}
    if len(rfac) != 1:
        raise BadCodomain(f"codomain modulus {r} is not a prime power")
    p, beta = next(iter(rfac.items()))
    if domain_primes and domain_primes != {p}:
        raise BadCodomain(
            f"codomain prime {p} differs from domain prime {domain_primes.pop()}"
        )

    bounds = [_variable_bound(p, beta, q) for q in f.domain_moduli]
    tables = []
    for q, d in zip(f.domain_moduli, bounds):
        tables.append([
            [cofract(delta, q, r, delta - x).value for x in range(q)]
            for delta in range(d + 1)
        ])
    points = [f.point(i) for i in range(f.size)]
    terms = []
    for delta in product(*(range(d + 1) for d in bounds)):
        acc = 0
        for x, row in zip(points, f.values):
            w = row[0]
            for j, xj in enumerate(x):
                if not w:
                    break
                w *= tables[j][delta[j]][xj]
            acc += w
        terms.append((delta, (acc,)))
    return MultiPolyfract((r,), f.nvars, tuple(terms))


def extend_information_coeffs(info: Sequence[int], p: int, alpha: int,
                              beta: int) -> UniPolyfract:
    """Extend q = p^alpha information coefficients to a q-periodic polyfract.

    The given coefficients determine the values at 0..q-1; interpolating
    those values appends the uniquely determined periodicity coefficients
    (at most (beta-1)(p-1)p^(alpha-1) of them).
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if alpha < 1 or beta < 1:
        raise ValueError("alpha and beta must be >= 1")
    q = p**alpha
    r = p**beta
    info = [v % r for v in info]
    if len(info) != q:
        raise LengthMismatch(f"expected {q} information coefficients, got {len(info)}")
    values = [
        sum(c * binom(x, delta) for delta, c in enumerate(info)) for x in range(q)
    ]
    table = FiniteFn.univariate(q, r, values)
    return interpolate_prime_power(table).component_uni(0)
