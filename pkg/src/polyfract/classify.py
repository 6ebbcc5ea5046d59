"""Decide and construct polynomial representations of maps between groups.

A map between finite commutative groups is induced by a rational
polynomial exactly when, after splitting domain and codomain into their
primary components, each prime's output block depends only on the same
prime's input block.  The pipeline here transports a value table through
the splitting isomorphisms, checks that block structure, interpolates the
block maps, and reassembles witnesses, counterexamples, counts, and an
independent brute-force oracle.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import prod
from typing import Sequence

from .calculus import FiniteFn, periodic_degree_bound
from .errors import InfiniteGroup, NotCyclic, NotPolyfractal, TooLarge
from .exactnum import Residue, prime_factors, prime_part
from .groups import GroupSpec, crt_map, merge_variables
from .lagrange import interpolate_prime_power
from .multi import MultiPolyfract
from .uni import RationalPoly, UniPolyfract

__all__ = [
    "ClassificationResult",
    "Counterexample",
    "SplitGroup",
    "Witness",
    "brute_force_polyfractal",
    "count_polyfractal",
    "counterexample_is_valid",
    "is_polyfractal",
    "represent",
    "represent_univariate",
]

DEFAULT_MAX_SEARCH = 1_000_000


@dataclass(frozen=True)
class SplitGroup:
    """Block-major prime-power splitting of a product of cycles.

    ``parts[i][j]`` is the p_i-part of the j-th modulus; flattened
    coordinates are ordered block-major, i.e. position i*n + j holds the
    p_i-part of coordinate j.
    """

    spec: GroupSpec
    primes: tuple[int, ...]
    parts: tuple[tuple[int, ...], ...]
    crts: tuple

    @property
    def width(self) -> int:
        return len(self.spec.moduli)

    @property
    def flat_moduli(self) -> tuple[int, ...]:
        return tuple(m for row in self.parts for m in row)

    def split(self, x: Sequence[int]) -> tuple[int, ...]:
        return tuple(
            x[j] % self.parts[i][j]
            for i in range(len(self.primes))
            for j in range(self.width)
        )

    def unsplit(self, coords: Sequence[int]) -> tuple[int, ...]:
        n = self.width
        out = []
        for j, crt in enumerate(self.crts):
            if crt is None:
                out.append(0)
            else:
                col = [coords[i * n + j] for i in range(len(self.primes))]
                out.append(crt.combine(col))
        return tuple(out)


@lru_cache(maxsize=None)
def _split_group(spec: GroupSpec, primes: tuple[int, ...]) -> SplitGroup:
    parts = tuple(
        tuple(prime_part(q, p) for q in spec.moduli) for p in primes
    )
    crts = tuple(
        crt_map(q, primes) if q >= 2 else None for q in spec.moduli
    )
    return SplitGroup(spec, primes, parts, crts)


def _shared_primes(domain: GroupSpec, codomain: GroupSpec) -> tuple[int, ...]:
    found: set[int] = set(prime_factors(domain.order))
    found.update(prime_factors(codomain.order))
    return tuple(sorted(found))


def _splits(f: FiniteFn) -> tuple[SplitGroup, SplitGroup]:
    if any(r == 0 for r in f.codomain_moduli):
        raise InfiniteGroup("classification requires finite codomains")
    domain = GroupSpec(f.domain_moduli)
    codomain = GroupSpec(f.codomain_moduli)
    primes = _shared_primes(domain, codomain)
    return _split_group(domain, primes), _split_group(codomain, primes)


@dataclass(frozen=True)
class Counterexample:
    """Two domain points that agree on one prime block of the domain yet
    map to different values in that prime's codomain block."""

    prime: int
    first: tuple[int, ...]
    second: tuple[int, ...]


@dataclass(frozen=True)
class Witness:
    """A representing polyfract plus the splittings used to build it.

    The polyfract lives over the split domain (one variable per prime and
    original factor, block-major) and split codomain; ``evaluate``
    transports a point of the original domain through the splitting,
    evaluates, and recombines through the inverse codomain splitting.
    """

    polyfract: MultiPolyfract
    domain: SplitGroup
    codomain: SplitGroup

    def evaluate(self, x: Sequence[int]) -> tuple[Residue, ...]:
        coords = self.domain.split(x)
        vals = self.polyfract.evaluate(coords)
        t = self.codomain.width
        out = []
        for k, r in enumerate(self.codomain.spec.moduli):
            crt = self.codomain.crts[k]
            if crt is None:
                out.append(Residue(0, r))
            else:
                col = [vals[i * t + k].value for i in range(len(self.codomain.primes))]
                out.append(Residue(crt.combine(col), r))
        return tuple(out)


@dataclass(frozen=True)
class ClassificationResult:
    polyfractal: bool
    counterexample: Counterexample | None = None
    witness: Witness | None = None


def is_polyfractal(f: FiniteFn) -> ClassificationResult:
    """Block-dependency test for representability by a rational polynomial.

    Scans primes in order and domain points lexicographically, grouping
    points by their block coordinates; the first block output that varies
    within a group yields the reported counterexample.
    """
    dom, cod = _splits(f)
    n = dom.width
    t = cod.width
    for i, p in enumerate(dom.primes):
        seen: dict[tuple[int, ...], tuple[tuple[int, ...], tuple[int, ...]]] = {}
        for x in f.points():
            key = tuple(x[j] % dom.parts[i][j] for j in range(n))
            out = tuple(f.value(x)[k] % cod.parts[i][k] for k in range(t))
            if key in seen:
                first, expected = seen[key]
                if expected != out:
                    return ClassificationResult(
                        False, counterexample=Counterexample(p, first, x)
                    )
            else:
                seen[key] = (x, out)
    return ClassificationResult(True)


def counterexample_is_valid(f: FiniteFn, ce: Counterexample) -> bool:
    """Check a counterexample against the table it came from."""
    dom, cod = _splits(f)
    if ce.prime not in dom.primes:
        return False
    i = dom.primes.index(ce.prime)
    same_block = all(
        a % dom.parts[i][j] == b % dom.parts[i][j]
        for j, (a, b) in enumerate(zip(ce.first, ce.second))
    )
    ya, yb = f.value(ce.first), f.value(ce.second)
    differ = any(
        a % cod.parts[i][k] != b % cod.parts[i][k]
        for k, (a, b) in enumerate(zip(ya, yb))
    )
    return same_block and differ


def represent(f: FiniteFn) -> Witness:
    """Construct the representing polyfract of a polyfractal table.

    Interpolates each prime's block map into the matching codomain slots;
    variables outside a coefficient's block never occur in its monofracts.
    Raises NotPolyfractal (carrying a counterexample) otherwise.
    """
    result = is_polyfractal(f)
    if not result.polyfractal:
        ce = result.counterexample
        raise NotPolyfractal(
            f"block {ce.prime}: points {ce.first} and {ce.second} split the block"
        )
    dom, cod = _splits(f)
    n = dom.width
    t = cod.width
    nvars = len(dom.primes) * n
    codomain = cod.flat_moduli
    terms: dict[tuple[int, ...], list[int]] = {}
    for i in range(len(dom.primes)):
        block_domain = dom.parts[i]
        positions = [i * n + j for j in range(n)]
        for k in range(t):
            m = cod.parts[i][k]
            if m == 1:
                continue
            slot = i * t + k

            def block_value(a: tuple[int, ...]) -> tuple[int]:
                coords = [0] * nvars
                for pos, aj in zip(positions, a):
                    coords[pos] = aj
                x = dom.unsplit(coords)
                return (f.value(x)[k] % m,)

            table = FiniteFn.from_callable(block_domain, (m,), block_value)
            block_poly = interpolate_prime_power(table)
            for exp, (c,) in block_poly.terms:
                full_exp = [0] * nvars
                for pos, e in zip(positions, exp):
                    full_exp[pos] = e
                row = terms.setdefault(tuple(full_exp), [0] * len(codomain))
                row[slot] = c
    poly = MultiPolyfract(
        codomain, nvars, tuple((e, tuple(c)) for e, c in terms.items())
    )
    return Witness(poly, dom, cod)


def represent_univariate(f: FiniteFn) -> tuple[UniPolyfract, RationalPoly]:
    """Single-variable representation of a cyclic-to-cyclic polyfractal map.

    Merges all block variables back into one X and recombines the
    codomain slots through the inverse splitting; the rational polynomial
    is the balanced-lift monomial expansion of the result (one
    representative of the coefficient coset; any lift induces the same
    map).
    """
    if f.nvars != 1 or len(f.codomain_moduli) != 1:
        raise NotCyclic("a cyclic domain and codomain are required")
    witness = represent(f)
    merged = merge_variables(witness.polyfract)
    cod = witness.codomain
    r = cod.spec.moduli[0]
    crt = cod.crts[0]
    coeffs = []
    term_map = merged.term_map()
    max_deg = max((exp[0] for exp, _ in merged.terms), default=-1)
    for d in range(max_deg + 1):
        col = term_map.get((d,), (0,) * len(cod.primes))
        coeffs.append(crt.combine(list(col)) if crt is not None else 0)
    poly = UniPolyfract(r, tuple(coeffs))
    return poly, poly.to_rational(lift="balanced")


def count_polyfractal(domain: GroupSpec | Sequence[int],
                      codomain: GroupSpec | Sequence[int]) -> int:
    """Number of polyfractal maps: the product over primes of
    |B_p| ** |A_p| for the primary components A_p, B_p."""
    for spec in (domain, codomain):
        moduli = spec.moduli if isinstance(spec, GroupSpec) else tuple(spec)
        if any(m == 0 for m in moduli):
            raise InfiniteGroup("counting requires finite groups")
    a = domain if isinstance(domain, GroupSpec) else GroupSpec(tuple(domain))
    b = codomain if isinstance(codomain, GroupSpec) else GroupSpec(tuple(codomain))
    total = 1
    for p in _shared_primes(a, b):
        a_p = prod(prime_part(q, p) for q in a.moduli)
        b_p = prod(prime_part(r, p) for r in b.moduli)
        total *= b_p**a_p
    return total


@lru_cache(maxsize=None)
def _representable_tables(q: int, r: int, bound: int) -> frozenset[tuple[int, ...]]:
    """All value tables of q-periodic polyfracts over Z_r, by enumeration.

    Every q-periodic polyfract has degree at most the blockwise bound, so
    enumerating coefficient vectors up to that degree and keeping the
    periodic ones is exhaustive.
    """
    found = set()
    for coeffs in product(range(r), repeat=bound + 1):
        p = UniPolyfract(r, coeffs)
        vals = p.values(0, q + bound + 1)
        if any(vals[x + q] != vals[x] for x in range(bound + 1)):
            continue
        found.add(tuple(vals[:q]))
    return frozenset(found)


def brute_force_polyfractal(f: FiniteFn,
                            max_search: int = DEFAULT_MAX_SEARCH,
                            degree_bound: int | None = None) -> bool:
    """Oracle: search all bounded-degree periodic polyfracts for one that
    induces f.

    Independent of the block-dependency logic; the search space is
    r ** (bound + 1) coefficient vectors and is guarded by max_search.
    ``degree_bound`` overrides the blockwise bound (testing only; a too
    small value loses completeness).
    """
    if f.nvars != 1 or len(f.codomain_moduli) != 1:
        raise NotCyclic("the oracle handles cyclic domain and codomain only")
    q = f.domain_moduli[0]
    r = f.codomain_moduli[0]
    if r == 0:
        raise InfiniteGroup("the oracle requires a finite codomain")
    if r == 1:
        return True
    bound = periodic_degree_bound(q, r) if degree_bound is None else degree_bound
    space = r ** (bound + 1)
    if space > max_search:
        raise TooLarge(f"search space {space} exceeds limit {max_search}")
    table = tuple(row[0] for row in f.values)
    return table in _representable_tables(q, r, bound)
