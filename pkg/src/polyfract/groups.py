"""Finite abelian groups as products of cycles, and their prime splittings.

Provides the Sylow-style primary decomposition of a product of cyclic
groups, explicit Chinese Remainder isomorphisms with stored Bezout
multipliers, the variable splitting isomorphism for polyfracts over
product codomains, and wavelength reduction of periodic polyfracts.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod
from typing import Sequence

from .calculus import hrycaj_periodicity
from .errors import ArityMismatch, CoprimalityViolation, ModulusMismatch, NotPeriodic
from .exactnum import Residue, prime_factors, prime_part
from .multi import MultiPolyfract, merge_variables
from .uni import UniPolyfract

__all__ = [
    "CRTMap",
    "CyclicFactor",
    "GroupSpec",
    "PrimaryDecomposition",
    "crt_map",
    "merge_variables",
    "primary_decompose",
    "split_variable",
    "wavelength_reduce",
]


@dataclass(frozen=True)
class GroupSpec:
    """A finite commutative group given as an ordered product of cycles."""

    moduli: tuple[int, ...]

    def __post_init__(self):
        moduli = tuple(int(q) for q in self.moduli)
        if any(q < 1 for q in moduli):
            raise ValueError("moduli must be >= 1")
        object.__setattr__(self, "moduli", moduli)

    @property
    def order(self) -> int:
        return prod(self.moduli)


@dataclass(frozen=True)
class CyclicFactor:
    """A prime-power cyclic factor split off one original modulus."""

    modulus: int
    source: int
    cofactor: int


@dataclass(frozen=True)
class PrimaryDecomposition:
    """Per-prime grouping of the prime-power factors of a GroupSpec.

    ``components[i]`` lists, for prime ``primes[i]``, one factor per
    original modulus; factors of modulus 1 are materialized so that every
    prime sees the same factor layout.
    """

    primes: tuple[int, ...]
    components: tuple[tuple[CyclicFactor, ...], ...]

    def component_order(self, i: int) -> int:
        return prod(f.modulus for f in self.components[i])


def primary_decompose(group: GroupSpec,
                      primes: Sequence[int] | None = None) -> PrimaryDecomposition:
    """Split every modulus into prime-power factors, grouped by prime.

    ``primes`` may extend the default list (the prime divisors of the
    group order) so that several groups share one factor layout; the
    extra factors are trivial.
    """
    if primes is None:
        found: set[int] = set()
        for q in group.moduli:
            found.update(prime_factors(q))
        primes = sorted(found)
    else:
        primes = sorted(set(primes))
        needed = set()
        for q in group.moduli:
            needed.update(prime_factors(q))
        if not needed <= set(primes):
            raise ValueError(f"prime list must cover {sorted(needed)}")
    components = []
    for p in primes:
        factors = []
        for j, q in enumerate(group.moduli):
            part = prime_part(q, p)
            factors.append(CyclicFactor(part, j, q // part))
        components.append(tuple(factors))
    return PrimaryDecomposition(tuple(primes), tuple(components))


@dataclass(frozen=True)
class CRTMap:
    """Chinese Remainder isomorphism Z_r -> Z_{r_1} x ... x Z_{r_t}.

    Factors are pairwise coprime prime powers with product r; the stored
    multipliers satisfy sum_i s_i * (r / r_i) == 1 exactly, which makes
    the inverse a plain integer combination.
    """

    modulus: int
    factors: tuple[int, ...]
    multipliers: tuple[int, ...]

    def forward(self, x: Residue) -> tuple[Residue, ...]:
        if x.modulus != self.modulus:
            raise ModulusMismatch(f"expected a residue mod {self.modulus}")
        return tuple(Residue(x.value, f) for f in self.factors)

    def inverse(self, parts: Sequence[Residue]) -> Residue:
        if tuple(p.modulus for p in parts) != self.factors:
            raise ModulusMismatch(f"expected residues mod {self.factors}")
        return Residue(self.combine([p.value for p in parts]), self.modulus)

    def split(self, x: int) -> tuple[int, ...]:
        return tuple(x % f for f in self.factors)

    def combine(self, parts: Sequence[int]) -> int:
        r = self.modulus
        total = 0
        for x, s, f in zip(parts, self.multipliers, self.factors):
            total += x * s * (r // f)
        return total % r


def crt_map(r: int, primes: Sequence[int] | None = None) -> CRTMap:
    """CRT splitting of Z_r into prime-power cycles, r >= 2.

    ``primes`` may list extra primes, materialized as trivial factors
    Z_1, so that several splittings share one prime layout.
    """
    if r < 2:
        raise ValueError("r must be >= 2")
    decomp = primary_decompose(GroupSpec((r,)), primes)
    factors = tuple(comp[0].modulus for comp in decomp.components)
    cofactors = [r // f for f in factors]
    multipliers = [
        pow(m % f, -1, f) if f > 1 else 0 for m, f in zip(cofactors, factors)
    ]
    excess = (sum(s * m for s, m in zip(multipliers, cofactors)) - 1) // r
    for i, f in enumerate(factors):
        if f > 1:
            multipliers[i] -= excess * f
            break
    assert sum(s * m for s, m in zip(multipliers, cofactors)) == 1
    return CRTMap(r, factors, tuple(multipliers))


def split_variable(p: MultiPolyfract, q1: int, q2: int) -> MultiPolyfract:
    """Split one variable of a pair-valued polyfract into two.

    For a q1*q2-periodic P = (P_1, P_2) over Z_{r_1} x Z_{r_2} with q1
    coprime to r_2 and q2 coprime to r_1, returns (P_1(X_1), P_2(X_2));
    substituting the same variable back into both merges to P again, and
    as maps the result is P composed with the inverse domain splitting.
    """
    if p.nvars != 1 or p.width != 2:
        raise ArityMismatch("a one-variable polyfract with two slots is required")
    r1, r2 = p.codomain
    if gcd(q1, r2) != 1 or gcd(q2, r1) != 1:
        raise CoprimalityViolation(
            f"need gcd({q1}, {r2}) == 1 and gcd({q2}, {r1}) == 1"
        )
    period = q1 * q2
    for i in range(2):
        if not hrycaj_periodicity(p.component_uni(i), period):
            raise NotPeriodic(f"component {i} is not {period}-periodic")
    terms: dict[tuple[int, int], list[int]] = {}
    for (delta,), (c1, c2) in p.terms:
        if c1:
            terms.setdefault((delta, 0), [0, 0])[0] = c1
        if c2:
            terms.setdefault((0, delta), [0, 0])[1] = c2
    return MultiPolyfract(
        (r1, r2), 2, tuple((e, tuple(c)) for e, c in terms.items())
    )


def wavelength_reduce(p: UniPolyfract, period: int) -> int:
    """Strip the coprime-to-r part of a verified period.

    Returns the divisor q of ``period`` with every prime factor coprime
    to the codomain modulus removed; the polyfract is verified to be
    q-periodic (it always is), and q == 1 means it is constant.
    """
    if p.modulus < 2:
        raise ValueError("codomain modulus must be >= 2")
    if period < 1:
        raise ValueError("period must be >= 1")
    if not hrycaj_periodicity(p, period):
        raise NotPeriodic(f"polyfract is not {period}-periodic")
    q = 1
    for prime, e in prime_factors(period).items():
        if p.modulus % prime == 0:
            q *= prime**e
    if not hrycaj_periodicity(p, q):
        raise NotPeriodic(f"reduced period {q} failed verification")
    return q
