"""Self-verification sweeps behind the ``certify`` command.

Each check exercises one guaranteed property over exhaustive or sampled
parameter sweeps and reports a pass/fail line; together they certify the
arithmetic core against its own independent routes (tables vs
coefficients, interpolation vs difference expansion, block test vs
brute-force search).
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Callable

from .calculus import (
    FiniteFn,
    divisibility_check,
    hrycaj_periodicity,
    taylor_expand,
)
from .classify import (
    DEFAULT_MAX_SEARCH,
    brute_force_polyfractal,
    count_polyfractal,
    counterexample_is_valid,
    is_polyfractal,
)
from .exactnum import is_prime, mod_project, Residue
from .groups import merge_variables, split_variable
from .lagrange import (
    cofract,
    degree_bound,
    extend_information_coeffs,
    interpolate_prime_power,
    lagrange_polyfract,
)
from .multi import MultiPolyfract, grid_vanish_equiv
from .uni import UniPolyfract, coeffs_from_values

__all__ = ["CertifyOptions", "CheckResult", "run_all"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class CertifyOptions:
    max_prime: int = 3
    max_alpha: int = 2
    max_beta: int = 2
    samples: int = 2000
    exhaustive_limit: int = 20000
    count_limit: int = 5
    seed: int = 0
    max_search: int = DEFAULT_MAX_SEARCH
    degree_bound_override: int | None = None


def _primes_up_to(n: int) -> list[int]:
    return [p for p in range(2, n + 1) if is_prime(p)]


def _pab_sweep(opts: CertifyOptions):
    for p in _primes_up_to(opts.max_prime):
        for alpha in range(1, opts.max_alpha + 1):
            for beta in range(1, opts.max_beta + 1):
                yield p, alpha, beta


def _tables(q: int, height: int, opts: CertifyOptions, rng: random.Random):
    """All (or sampled) value tables of length q with entries < height."""
    if height**q <= opts.exhaustive_limit:
        yield from product(range(height), repeat=q)
    else:
        for _ in range(opts.samples):
            yield tuple(rng.randrange(height) for _ in range(q))


def check_divisibility(opts: CertifyOptions) -> CheckResult:
    """Iterated differences of integer tables on p-power cycles are
    divisible by the predicted prime powers, in both exponent regimes."""
    rng = random.Random(opts.seed)
    tested = 0
    for p, alpha, beta in _pab_sweep(opts):
        q = p**alpha
        for mode in ("sharp", "coarse"):
            for table in _tables(q, p**beta, opts, rng):
                f = FiniteFn.univariate(q, 0, table)
                if not divisibility_check(f, beta, mode):
                    return CheckResult(
                        "divisibility", False,
                        f"{mode} failed for p={p} alpha={alpha} beta={beta} {table}",
                    )
                tested += 1
    # single-step variant needs a vanishing value sum
    for p, alpha, _ in _pab_sweep(opts):
        q = p**alpha
        for _ in range(min(opts.samples, 200)):
            head = [rng.randrange(-9, 10) for _ in range(q - 1)]
            table = head + [-sum(head)]
            f = FiniteFn.univariate(q, 0, table)
            if not divisibility_check(f, 1, "single"):
                return CheckResult(
                    "divisibility", False,
                    f"single failed for p={p} alpha={alpha} {table}",
                )
            tested += 1
    return CheckResult("divisibility", True, f"{tested} tables checked")


def check_cofract_tail(opts: CertifyOptions) -> CheckResult:
    """Co-monofract values vanish mod p^beta beyond the threshold degree."""
    tested = 0
    for p, alpha, beta in _pab_sweep(opts):
        q = p**alpha
        threshold = (beta * (p - 1) + 1) * p ** (alpha - 1)
        for delta in range(threshold, 2 * threshold + 1):
            for x in range(q):
                value = cofract(delta, q, 0, x).value
                if value % p**beta != 0:
                    return CheckResult(
                        "cofract-tail", False,
                        f"p^{beta} does not divide ({delta}|{x})_{q}",
                    )
                tested += 1
    return CheckResult("cofract-tail", True, f"{tested} values checked")


def check_lagrange(opts: CertifyOptions) -> CheckResult:
    """Lagrange polyfracts are periodic point indicators of exact degree,
    with the predicted leading-coefficient divisibility and projection
    compatibility between coefficient moduli."""
    tested = 0
    for p, alpha, beta in _pab_sweep(opts):
        q = p**alpha
        d = q - 1 + (beta - 1) * (p - 1) * p ** (alpha - 1)
        for x0 in range(q):
            lag = lagrange_polyfract(p, alpha, beta, x0)
            vals = lag.values(0, 2 * q)
            want = [1 if x % q == x0 else 0 for x in range(2 * q)]
            if vals != want:
                return CheckResult(
                    "lagrange", False,
                    f"indicator failed for p={p} alpha={alpha} beta={beta} x0={x0}",
                )
            if lag.degree != d:
                return CheckResult(
                    "lagrange", False,
                    f"degree {lag.degree} != {d} for p={p} alpha={alpha} beta={beta}",
                )
            leading = cofract(d, q, 0, d - x0).value
            if leading % p ** (beta - 1) != 0:
                return CheckResult(
                    "lagrange", False,
                    f"p^{beta - 1} does not divide leading cofract {leading}",
                )
            tested += 1
        # reducing the coefficient modulus rediscovers the smaller expansion
        for beta_small in range(1, beta):
            small = lagrange_polyfract(p, alpha, beta_small, 0)
            big = lagrange_polyfract(p, alpha, beta, 0)
            projected = UniPolyfract(
                p**beta_small,
                tuple(
                    mod_project(Residue(c, p**beta), p**beta_small).value
                    for c in big.coeffs
                ),
            )
            if projected != small:
                return CheckResult(
                    "lagrange", False,
                    f"projection p^{beta}->p^{beta_small} mismatch (p={p}, alpha={alpha})",
                )
            tested += 1
    return CheckResult("lagrange", True, f"{tested} cases checked")


def check_hrycaj(opts: CertifyOptions) -> CheckResult:
    """Coefficient periodicity criterion agrees with table periodicity."""
    rng = random.Random(opts.seed + 1)
    agreements = 0
    for _ in range(opts.samples):
        r = rng.randrange(2, 17)
        deg = rng.randrange(0, 13)
        q = rng.randrange(1, 9)
        p = UniPolyfract(r, tuple(rng.randrange(r) for _ in range(deg + 1)))
        span = (p.degree or 0) + q + 1
        vals = p.values(0, span + q)
        direct = all(vals[x + q] == vals[x] for x in range(span))
        if hrycaj_periodicity(p, q) != direct:
            return CheckResult(
                "hrycaj", False, f"disagreement for r={r} q={q} coeffs={p.coeffs}"
            )
        agreements += 1
    return CheckResult("hrycaj", True, f"{agreements} random polyfracts checked")


def check_grid_vanishing(opts: CertifyOptions) -> CheckResult:
    """Coefficient support and value table vanish on the same grids."""
    rng = random.Random(opts.seed + 2)
    tested = 0
    for _ in range(min(opts.samples, 400)):
        nvars = rng.randrange(1, 4)
        r = rng.randrange(2, 9)
        terms = {}
        for _ in range(rng.randrange(0, 5)):
            exp = tuple(rng.randrange(0, 4) for _ in range(nvars))
            terms[exp] = (rng.randrange(r),)
        p = MultiPolyfract((r,), nvars, tuple(terms.items()))
        bounds = tuple(rng.randrange(0, 5) for _ in range(nvars))
        a, b = grid_vanish_equiv(p, bounds)
        if a != b:
            return CheckResult(
                "grid-vanishing", False, f"split verdict for {p} on {bounds}"
            )
        tested += 1
    return CheckResult("grid-vanishing", True, f"{tested} random grids checked")


def check_degree_bound(opts: CertifyOptions) -> CheckResult:
    """Interpolated maps respect the total degree bound and attain it."""
    rng = random.Random(opts.seed + 3)
    tested = 0
    for p, alpha, beta in _pab_sweep(opts):
        q = p**alpha
        bound = degree_bound(p, beta, [alpha])
        best = -1
        exhaustive = (p**beta) ** q <= opts.exhaustive_limit
        for table in _tables(q, p**beta, opts, rng):
            f = FiniteFn.univariate(q, p**beta, table)
            total, _ = interpolate_prime_power(f).degrees()
            total = -1 if total is None else total
            if total > bound:
                return CheckResult(
                    "degree-bound", False,
                    f"degree {total} exceeds bound {bound} for {table}",
                )
            best = max(best, total)
            tested += 1
        if exhaustive and best != bound:
            return CheckResult(
                "degree-bound", False,
                f"bound {bound} not attained for p={p} alpha={alpha} beta={beta}",
            )
    return CheckResult("degree-bound", True, f"{tested} interpolations checked")


def check_counting(opts: CertifyOptions) -> CheckResult:
    """Block test, brute-force oracle, and the closed-form count agree."""
    limit = opts.count_limit
    checked = 0
    for q in range(1, limit + 1):
        for r in range(1, limit + 1):
            if r**q > opts.exhaustive_limit:
                continue
            hits = 0
            for table in product(range(r), repeat=q):
                f = FiniteFn.univariate(q, r, table)
                verdict = is_polyfractal(f)
                oracle = brute_force_polyfractal(
                    f, opts.max_search, opts.degree_bound_override
                )
                if verdict.polyfractal != oracle:
                    return CheckResult(
                        "counting", False,
                        f"verdict {verdict.polyfractal} vs oracle {oracle} "
                        f"for {table} (q={q}, r={r})",
                    )
                if not verdict.polyfractal and not counterexample_is_valid(
                    f, verdict.counterexample
                ):
                    return CheckResult(
                        "counting", False,
                        f"invalid counterexample for {table} (q={q}, r={r})",
                    )
                hits += verdict.polyfractal
                checked += 1
            expected = count_polyfractal([q], [r])
            if hits != expected:
                return CheckResult(
                    "counting", False,
                    f"counted {hits} != closed form {expected} for q={q} r={r}",
                )
    return CheckResult("counting", True, f"{checked} maps checked")


def check_taylor_interpolation(opts: CertifyOptions) -> CheckResult:
    """The difference expansion and the cofract interpolation coincide,
    and information coefficients extend consistently."""
    rng = random.Random(opts.seed + 4)
    tested = 0
    for p, alpha, beta in _pab_sweep(opts):
        q = p**alpha
        r = p**beta
        bound = degree_bound(p, beta, [alpha])
        for table in _tables(q, r, opts, rng):
            f = FiniteFn.univariate(q, r, table)
            via_taylor = taylor_expand(f, bound)
            via_interp = interpolate_prime_power(f).component_uni(0)
            if via_taylor != via_interp:
                return CheckResult(
                    "taylor-interpolation", False,
                    f"mismatch for {table} (p={p} alpha={alpha} beta={beta})",
                )
            tested += 1
        for _ in range(min(opts.samples, 100)):
            info = [rng.randrange(r) for _ in range(q)]
            extended = extend_information_coeffs(info, p, alpha, beta)
            if [extended.coefficient(i) for i in range(q)] != info:
                return CheckResult(
                    "taylor-interpolation", False,
                    f"extension does not preserve info {info}",
                )
            values = [Residue(v, r) for v in extended.values(0, q)]
            back = [c.value for c in coeffs_from_values(values)]
            if back != info:
                return CheckResult(
                    "taylor-interpolation", False,
                    f"difference transform does not invert for {info}",
                )
            tested += 1
    return CheckResult("taylor-interpolation", True, f"{tested} cases checked")


def _random_periodic(q: int, r: int, rng: random.Random) -> UniPolyfract:
    table = [rng.randrange(r) for _ in range(q)]
    return interpolate_prime_power(
        FiniteFn.univariate(q, r, table)
    ).component_uni(0)


def check_split_merge(opts: CertifyOptions) -> CheckResult:
    """Variable splitting round-trips and commutes with evaluation."""
    rng = random.Random(opts.seed + 5)
    rounds = min(opts.samples, 300)
    pairs = [(2, 3), (2, 5), (3, 2), (4, 3), (8, 3), (9, 2), (4, 9), (5, 4)]
    for _ in range(rounds):
        q1, q2 = pairs[rng.randrange(len(pairs))]
        r1, r2 = q1, q2  # same prime support keeps the components periodic
        p1 = _random_periodic(q1, r1, rng)
        p2 = _random_periodic(q2, r2, rng)
        pair = MultiPolyfract.from_components([p1, p2])
        split = split_variable(pair, q1, q2)
        if merge_variables(split) != pair:
            return CheckResult(
                "split-merge", False, f"round trip failed for {pair}"
            )
        for x in range(q1 * q2):
            lhs = split.evaluate((x % q1, x % q2))
            rhs = pair.evaluate((x,))
            if lhs != rhs:
                return CheckResult(
                    "split-merge", False,
                    f"evaluation mismatch at {x} for {pair}",
                )
    return CheckResult("split-merge", True, f"{rounds} round trips checked")


def check_ring_laws(opts: CertifyOptions) -> CheckResult:
    """Ring axioms and pointwise correctness of the five-step product."""
    rng = random.Random(opts.seed + 6)
    rounds = min(opts.samples, 300)
    for _ in range(rounds):
        r = rng.randrange(2, 13)
        polys = [
            UniPolyfract(
                r, tuple(rng.randrange(r) for _ in range(rng.randrange(1, 6)))
            )
            for _ in range(3)
        ]
        p, q, s = polys
        if (p + q) + s != p + (q + s) or p + q != q + p:
            return CheckResult("ring-laws", False, f"addition broke for {polys}")
        if p * q != q * p or (p * q) * s != p * (q * s):
            return CheckResult("ring-laws", False, f"multiplication broke for {polys}")
        if p * (q + s) != p * q + p * s:
            return CheckResult("ring-laws", False, f"distributivity broke for {polys}")
        window = max(t.degree or 0 for t in polys) * 2 + 3
        prod_poly = p * q
        for x in range(window):
            if prod_poly.evaluate(x) != p.evaluate(x) * q.evaluate(x):
                return CheckResult(
                    "ring-laws", False, f"pointwise product broke at {x} for {polys}"
                )
    return CheckResult("ring-laws", True, f"{rounds} random triples checked")


_CHECKS: tuple[Callable[[CertifyOptions], CheckResult], ...] = (
    check_divisibility,
    check_cofract_tail,
    check_lagrange,
    check_hrycaj,
    check_grid_vanishing,
    check_degree_bound,
    check_counting,
    check_taylor_interpolation,
    check_split_merge,
    check_ring_laws,
)


def run_all(opts: CertifyOptions | None = None) -> list[CheckResult]:
    opts = opts or CertifyOptions()
    return [check(opts) for check in _CHECKS]
