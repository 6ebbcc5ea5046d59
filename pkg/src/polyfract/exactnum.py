"""Unbounded integer helpers and residue rings with explicit moduli.

Moduli follow the conventions ``Z_0 = Z`` (plain integers) and
``Z_1 = {0}`` (the trivial group); everything else is the usual ring of
least nonnegative representatives mod r.  All arithmetic is exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .errors import ModulusMismatch, NotADivisor, NotPrime, ZeroInput

__all__ = [
    "Residue",
    "binom",
    "mod_project",
    "padic_valuation",
    "is_prime",
    "prime_factors",
    "prime_part",
    "canonical",
    "balanced_lift",
    "xgcd",
]


def binom(n: int, k: int) -> int:
    """Generalized binomial coefficient C(n, k) for any integer n, k >= 0.

    Computed as the falling factorial n(n-1)...(n-k+1) over k!; the
    division is always exact, so the result is an exact integer even for
    negative n (e.g. ``binom(-1, 3) == -1``).
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    num = 1
    for i in range(k):
        num *= n - i
    return num // factorial(k)


def canonical(value: int, modulus: int) -> int:
    """Least nonnegative representative for modulus >= 1, identity for 0."""
    if modulus < 0:
        raise ValueError("modulus must be >= 0")
    return value if modulus == 0 else value % modulus


def balanced_lift(value: int, modulus: int) -> int:
    """Representative of smallest absolute value (ties resolved upward).

    For modulus 0 the value itself.  Used when emitting rational
    polynomial forms, where small lifts keep coefficients readable.
    """
    if modulus == 0:
        return value
    half = (modulus - 1) // 2
    return (value + half) % modulus - half


@dataclass(frozen=True)
class Residue:
    """An element of Z_r, stored as its canonical representative.

    ``modulus == 0`` means Z itself and ``modulus == 1`` the trivial
    group.  Instances normalize on construction, so equality is
    structural.
    """

    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 0:
            raise ValueError("modulus must be >= 0")
        object.__setattr__(self, "value", canonical(self.value, self.modulus))

    def _check(self, other: "Residue") -> None:
        if self.modulus != other.modulus:
            raise ModulusMismatch(
                f"moduli differ: {self.modulus} vs {other.modulus}"
            )

    def __add__(self, other: "Residue") -> "Residue":
        self._check(other)
        return Residue(self.value + other.value, self.modulus)

    def __sub__(self, other: "Residue") -> "Residue":
        self._check(other)
        return Residue(self.value - other.value, self.modulus)

    def __neg__(self) -> "Residue":
        return Residue(-self.value, self.modulus)

    def __mul__(self, other: "Residue") -> "Residue":
        self._check(other)
        return Residue(self.value * other.value, self.modulus)

    def scale(self, k: int) -> "Residue":
        return Residue(k * self.value, self.modulus)

    def is_zero(self) -> bool:
        return self.value == 0

    def lift(self) -> int:
        """Canonical integer representative."""
        return self.value

    def __repr__(self) -> str:
        return f"{self.value} mod {self.modulus}"


def mod_project(x: Residue, r: int) -> Residue:
    """Project x from Z_{r'} onto Z_r, defined when r divides r'.

    Every r divides r' = 0, so projections out of Z are always allowed.
    """
    rp = x.modulus
    if rp == 0 or (r >= 1 and rp % r == 0):
        return Residue(x.value, r)
    raise NotADivisor(f"{r} does not divide {rp}")


def is_prime(p: int) -> bool:
    """Trial-division primality test; inputs here are desk-scale."""
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def padic_valuation(n: int, p: int) -> int:
    """Largest e with p^e dividing n; requires n != 0 and p prime."""
    if n == 0:
        raise ZeroInput("valuation of 0 is undefined")
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def prime_factors(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 as an ordered {prime: exponent} map."""
    if n < 1:
        raise ValueError("n must be >= 1")
    factors: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def prime_part(n: int, p: int) -> int:
    """The p-power part p^{v_p(n)} of n >= 1 (so 1 when p does not divide n)."""
    part = 1
    while n % p == 0:
        part *= p
        n //= p
    return part


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: returns (g, u, v) with u*a + v*b == g == gcd(a, b)."""
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r < 0:
        old_r, old_u, old_v = -old_r, -old_u, -old_v
    return old_r, old_u, old_v
