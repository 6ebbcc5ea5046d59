"""Command line surface: problem/polynomial files and one command per
user-facing capability.

Problem files describe a map between products of cyclic groups:

    {"domain": [3], "codomain": [9], "values": [1, 0, 0]}

``values`` is a flat list in mixed-radix order over the domain (first
coordinate most significant); each entry encodes a codomain tuple the same
way.  Polynomial files carry terms either in the ``binomial`` basis
(integer coefficient strings, canonical representatives) or the
``monomial`` basis (rational coefficient strings in lowest terms):

    {"basis": "binomial", "vars": 1, "codomain": [9],
     "terms": [[[0], ["1"]], [[1], ["8"]], ...]}

Emission is deterministic: terms sorted lexicographically by exponent,
fixed key order, newline-terminated UTF-8.

Exit codes: 0 success, 2 parse/validation error, 3 precondition failure,
4 resource guard tripped (1 is reserved for failed certify checks).
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from math import prod
from typing import Sequence

from .calculus import FiniteFn, map_degree, taylor_expand
from .certify import CertifyOptions, run_all
from .classify import is_polyfractal, represent, represent_univariate
from .classify import count_polyfractal
from .errors import (
    InfiniteGroup,
    ParseError,
    PolyfractError,
    TooLarge,
    ValidationError,
)
from .exactnum import Residue, mod_project
from .lagrange import cofract, interpolate_prime_power, lagrange_polyfract
from .multi import MultiPolyfract, RationalPolyMulti

__all__ = [
    "emit_polynomial",
    "emit_problem",
    "main",
    "parse_polynomial",
    "parse_problem",
]


# ---------------------------------------------------------------------------
# problem files


def _decode_mixed_radix(value: int, moduli: Sequence[int]) -> tuple[int, ...]:
    coords = []
    for m in reversed(moduli):
        coords.append(value % m)
        value //= m
    return tuple(reversed(coords))


def _encode_mixed_radix(coords: Sequence[int], moduli: Sequence[int]) -> int:
    value = 0
    for x, m in zip(coords, moduli):
        value = value * m + (x % m)
    return value


def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _require_keys(data: dict, keys: set[str], what: str) -> None:
    if not isinstance(data, dict):
        raise ValidationError(f"{what} must be a JSON object")
    if set(data) != keys:
        raise ValidationError(
            f"{what} must have exactly the fields {sorted(keys)}, got {sorted(data)}"
        )


def _int_list(values, what: str, minimum: int) -> list[int]:
    if not isinstance(values, list) or not all(
        isinstance(v, int) and not isinstance(v, bool) for v in values
    ):
        raise ValidationError(f"{what} must be a list of integers")
    if any(v < minimum for v in values):
        raise ValidationError(f"{what} entries must be >= {minimum}")
    return list(values)


def parse_problem(text: str) -> FiniteFn:
    """Parse and validate a problem file into a value table."""
    data = _load_json(text)
    _require_keys(data, {"domain", "codomain", "values"}, "problem file")
    domain = _int_list(data["domain"], "domain", 1)
    codomain = _int_list(data["codomain"], "codomain", 1)
    values = _int_list(data["values"], "values", 0)
    size = prod(domain)
    if len(values) != size:
        raise ValidationError(f"expected {size} values, got {len(values)}")
    span = prod(codomain)
    bad = [v for v in values if v >= span]
    if bad:
        raise ValidationError(
            f"value {bad[0]} is not a mixed-radix encoding for codomain {codomain}"
        )
    rows = tuple(_decode_mixed_radix(v, codomain) for v in values)
    return FiniteFn(tuple(domain), tuple(codomain), rows)


def emit_problem(f: FiniteFn) -> str:
    """Serialize a value table back into the problem file format."""
    values = [
        _encode_mixed_radix(row, f.codomain_moduli) for row in f.values
    ]
    doc = {
        "domain": list(f.domain_moduli),
        "codomain": list(f.codomain_moduli),
        "values": values,
    }
    return json.dumps(doc) + "\n"


# ---------------------------------------------------------------------------
# polynomial files


def parse_polynomial(text: str) -> tuple[str, MultiPolyfract | None,
                                         RationalPolyMulti | None, tuple[int, ...]]:
    """Parse a polynomial file.

    Returns (basis, polyfract, rational, codomain); exactly one of the two
    payloads is set, matching the basis.
    """
    data = _load_json(text)
    _require_keys(data, {"basis", "vars", "codomain", "terms"}, "polynomial file")
    basis = data["basis"]
    if basis not in ("binomial", "monomial"):
        raise ValidationError(f"unknown basis {basis!r}")
    nvars = data["vars"]
    if not isinstance(nvars, int) or isinstance(nvars, bool) or nvars < 0:
        raise ValidationError("vars must be a natural number")
    codomain = tuple(_int_list(data["codomain"], "codomain", 0))
    raw_terms = data["terms"]
    if not isinstance(raw_terms, list):
        raise ValidationError("terms must be a list")
    seen: set[tuple[int, ...]] = set()
    terms = []
    for entry in raw_terms:
        if not (isinstance(entry, list) and len(entry) == 2):
            raise ValidationError(f"malformed term {entry!r}")
        exp = tuple(_int_list(entry[0], "exponent", 0))
        if len(exp) != nvars:
            raise ValidationError(f"exponent {list(exp)} has arity != {nvars}")
        if exp in seen:
            raise ValidationError(f"duplicate exponent {list(exp)}")
        seen.add(exp)
        raw_coeffs = entry[1]
        if not (isinstance(raw_coeffs, list) and len(raw_coeffs) == len(codomain)
                and all(isinstance(c, str) for c in raw_coeffs)):
            raise ValidationError(f"coefficients of {list(exp)} must be "
                                  f"{len(codomain)} strings")
        try:
            if basis == "binomial":
                coeffs = tuple(int(c) for c in raw_coeffs)
            else:
                coeffs = tuple(Fraction(c) for c in raw_coeffs)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"bad coefficient in term {entry!r}: {exc}") from exc
        if not any(coeffs):
            raise ValidationError(f"all-zero coefficients at {list(exp)}")
        terms.append((exp, coeffs))
    if basis == "binomial":
        return basis, MultiPolyfract(codomain, nvars, tuple(terms)), None, codomain
    return basis, None, RationalPolyMulti(nvars, len(codomain), tuple(terms)), codomain


def emit_polynomial(poly: MultiPolyfract | RationalPolyMulti,
                    basis: str = "binomial",
                    codomain: Sequence[int] | None = None) -> str:
    """Serialize a polynomial deterministically in the requested basis.

    Accepts either a polyfract (emitted in either basis; monomial emission
    expands the balanced coefficient lifts, so small negative coefficients
    come out as small negative rationals) or an already-rational payload,
    which needs an explicit target codomain and is always monomial.
    """
    if isinstance(poly, RationalPolyMulti):
        if codomain is None:
            raise ValidationError("rational payloads need an explicit codomain")
        doc = {
            "basis": "monomial",
            "vars": poly.nvars,
            "codomain": list(codomain),
            "terms": [
                [list(exp), [str(c) for c in coeffs]]
                for exp, coeffs in poly.terms
            ],
        }
        return json.dumps(doc) + "\n"
    if basis == "binomial":
        terms = [
            [list(exp), [str(c) for c in coeffs]] for exp, coeffs in poly.terms
        ]
        doc = {
            "basis": "binomial",
            "vars": poly.nvars,
            "codomain": list(poly.codomain),
            "terms": terms,
        }
    elif basis == "monomial":
        rational = poly.to_rational(lift="balanced")
        terms = [
            [list(exp), [str(c) for c in coeffs]]
            for exp, coeffs in rational.terms
        ]
        doc = {
            "basis": "monomial",
            "vars": poly.nvars,
            "codomain": list(poly.codomain),
            "terms": terms,
        }
    else:
        raise ValidationError(f"unknown basis {basis!r}")
    return json.dumps(doc) + "\n"


def _polyfract_from_file(text: str) -> MultiPolyfract:
    basis, binomial, rational, codomain = parse_polynomial(text)
    if binomial is not None:
        return binomial
    return MultiPolyfract.from_rational(rational, codomain)


# ---------------------------------------------------------------------------
# commands


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _parse_point(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise ValidationError(f"bad point {text!r}: {exc}") from exc


def _cmd_classify(args) -> int:
    table = parse_problem(_read(args.problem))
    result = is_polyfractal(table)
    if result.polyfractal:
        print("polyfractal: yes")
        witness = represent(table)
        total, _ = witness.polyfract.degrees()
        print(f"variables: {witness.polyfract.nvars}")
        print(f"split codomain: {list(witness.polyfract.codomain)}")
        print(f"terms: {len(witness.polyfract.terms)}")
        print(f"total degree: {total if total is not None else 'none'}")
    else:
        ce = result.counterexample
        print("polyfractal: no")
        print(f"counterexample prime: {ce.prime}")
        print(f"counterexample x: {list(ce.first)}")
        print(f"counterexample y: {list(ce.second)}")
    return 0


def _cmd_represent(args) -> int:
    table = parse_problem(_read(args.problem))
    if args.merge:
        uni, _ = represent_univariate(table)
        poly = MultiPolyfract.from_uni(uni)
    else:
        poly = represent(table).polyfract
    sys.stdout.write(emit_polynomial(poly, args.basis))
    return 0


def _cmd_interp(args) -> int:
    table = parse_problem(_read(args.problem))
    poly = interpolate_prime_power(table)
    sys.stdout.write(emit_polynomial(poly, args.basis))
    return 0


def _cmd_eval(args) -> int:
    poly = _polyfract_from_file(_read(args.polynomial))
    if args.modulus is not None:
        if poly.width != 1:
            raise ValidationError("--modulus applies to single-component files")
        projected = {
            exp: (mod_project(Residue(c, poly.codomain[0]), args.modulus).value,)
            for exp, (c,) in poly.terms
        }
        poly = MultiPolyfract((args.modulus,), poly.nvars, tuple(projected.items()))
    point = _parse_point(args.at)
    values = poly.evaluate(point)
    print(json.dumps([r.value for r in values]))
    return 0


def _cmd_lagrange(args) -> int:
    poly = lagrange_polyfract(args.p, args.alpha, args.beta, args.x0)
    sys.stdout.write(emit_polynomial(MultiPolyfract.from_uni(poly), args.basis))
    return 0


def _cmd_cofract(args) -> int:
    print(cofract(args.d, args.q, args.r, args.x).value)
    return 0


def _cmd_taylor(args) -> int:
    table = parse_problem(_read(args.problem))
    if args.degree is not None:
        degree = args.degree
    else:
        found = map_degree(table)
        degree = 0 if found is None else found
    poly = taylor_expand(table, degree)
    sys.stdout.write(emit_polynomial(MultiPolyfract.from_uni(poly), args.basis))
    return 0


def _parse_moduli(text: str, what: str) -> tuple[int, ...]:
    moduli = _parse_point(text)
    if any(m == 0 for m in moduli):
        raise InfiniteGroup(f"{what} moduli must be finite (>= 1)")
    if any(m < 0 for m in moduli):
        raise ValidationError(f"{what} moduli must be >= 1")
    return moduli


def _cmd_count(args) -> int:
    print(count_polyfractal(_parse_moduli(args.domain, "domain"),
                            _parse_moduli(args.codomain, "codomain")))
    return 0


def _cmd_certify(args) -> int:
    opts = CertifyOptions(
        max_prime=args.max_prime,
        max_alpha=args.max_alpha,
        max_beta=args.max_beta,
        samples=args.samples,
        count_limit=args.count_limit,
        seed=args.seed,
        max_search=args.max_search,
        degree_bound_override=args.degree_bound_override,
    )
    results = run_all(opts)
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        print(f"{status} {result.name}: {result.detail}")
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyfract",
        description="Decide and construct polynomial representations of maps "
                    "between finite commutative groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_basis(p):
        p.add_argument("--basis", choices=("binomial", "monomial"),
                       default="binomial", help="output basis")

    p = sub.add_parser("classify", help="decide polyfractality of a map")
    p.add_argument("problem", help="problem file path ('-' for stdin)")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("represent", help="construct a representing polynomial")
    p.add_argument("problem")
    p.add_argument("--merge", action="store_true",
                   help="merge into one variable (cyclic domain and codomain)")
    add_basis(p)
    p.set_defaults(func=_cmd_represent)

    p = sub.add_parser("interp", help="prime-power interpolation of a table")
    p.add_argument("problem")
    add_basis(p)
    p.set_defaults(func=_cmd_interp)

    p = sub.add_parser("eval", help="evaluate a polynomial file at a point")
    p.add_argument("polynomial")
    p.add_argument("--at", required=True, help="comma-separated coordinates")
    p.add_argument("--modulus", type=int,
                   help="project a single-component result to this modulus")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("lagrange", help="point-indicator polyfract on Z_{p^alpha}")
    p.add_argument("p", type=int)
    p.add_argument("alpha", type=int)
    p.add_argument("beta", type=int)
    p.add_argument("x0", type=int)
    add_basis(p)
    p.set_defaults(func=_cmd_lagrange)

    p = sub.add_parser("cofract", help="one co-monofract value (d|x)_{q,r}")
    p.add_argument("d", type=int)
    p.add_argument("q", type=int)
    p.add_argument("r", type=int)
    p.add_argument("x", type=int)
    p.set_defaults(func=_cmd_cofract)

    p = sub.add_parser("taylor", help="difference expansion of a cyclic table")
    p.add_argument("problem")
    p.add_argument("--degree", type=int,
                   help="expansion degree (default: the map degree)")
    add_basis(p)
    p.set_defaults(func=_cmd_taylor)

    p = sub.add_parser("count", help="number of polyfractal maps A -> B")
    p.add_argument("--domain", required=True, help="comma-separated moduli")
    p.add_argument("--codomain", required=True, help="comma-separated moduli")
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("certify", help="run the theorem verification sweeps")
    p.add_argument("--max-prime", type=int, default=3)
    p.add_argument("--max-alpha", type=int, default=2)
    p.add_argument("--max-beta", type=int, default=2)
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--count-limit", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-search", type=int, default=1_000_000)
    p.add_argument("--degree-bound-override", type=int, default=None,
                   help="override the oracle degree bound (testing only)")
    p.set_defaults(func=_cmd_certify)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except PolyfractError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
