"""Command-line front end.

Subcommands: poly (irreducible | order | primitive | list), spread,
analyze, orbit, distance, selfcheck.  Exit codes: 0 success, 2 usage or
parse failure, 3 violated mathematical precondition, 4 verification
mismatch (including selfcheck failures).

Analysis results are emitted as a self-describing "key = value" document
(schema versioned, fixed key order, "-" for empty); parse_report inverts
render exactly.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, fields

from . import __version__
from .errors import DomainError, ParseError
from .fieldmap import ExtensionContext
from .gfq import FieldSpec
from .matspace import Subspace, format_matrix, parse_matrix
from .orbitcode import (AnalysisReport, analyze, build_spread_start,
                        check_sidon_condition, find_sidon_subspace,
                        format_code, generate_orbit, min_distance_brute,
                        min_distance_orbit, parse_code)
from .polyring import (Poly, companion_matrix, format_poly, is_irreducible,
                       is_primitive, list_irreducibles, order_of_polynomial,
                       parse_poly, poly_powmod)


# -- report document ------------------------------------------------------

@dataclass(frozen=True)
class ReportDocument:
    """Typed, round-trippable serialization of an AnalysisReport."""

    schema: int
    tool: str
    mode: str
    q: int
    base_modulus: str | None
    poly: str
    n: int
    k: int
    start: tuple[str, ...]
    group_order: int
    membership: tuple[int, ...]
    orbit_exponents: tuple[tuple[int, ...], ...]
    per_orbit_differences: tuple[tuple[tuple[int, int], ...], ...]
    merged_differences: tuple[tuple[int, int], ...]
    stabilizer_shifts: tuple[int, ...]
    predicted_cardinality: int
    intersection_dim: int
    predicted_distance: int | None
    all_orbits_distinct: bool
    spread: bool
    oracle_run: bool
    verified_cardinality: int | None
    verified_distance: int | None
    verified_agrees: bool | None

    @classmethod
    def from_analysis(cls, report: AnalysisReport, poly: Poly, start: Subspace,
                      base_modulus: Poly | None = None) -> "ReportDocument":
        return cls(
            schema=1,
            tool=f"orbitcodes {__version__}",
            mode=report.mode,
            q=report.q,
            base_modulus=format_poly(base_modulus) if base_modulus else None,
            poly=format_poly(poly),
            n=report.n,
            k=report.k,
            start=tuple(format_matrix(start.mat).split("\n")),
            group_order=report.group_order,
            membership=report.membership,
            orbit_exponents=report.orbit_exponents,
            per_orbit_differences=tuple(tuple(dm.items())
                                        for dm in report.per_orbit_differences),
            merged_differences=tuple(report.differences.items()),
            stabilizer_shifts=report.stabilizer_shifts,
            predicted_cardinality=report.predicted_cardinality,
            intersection_dim=report.intersection_dim,
            predicted_distance=report.predicted_distance,
            all_orbits_distinct=report.all_orbits_distinct,
            spread=report.spread,
            oracle_run=report.verified,
            verified_cardinality=report.verified_cardinality,
            verified_distance=report.verified_distance,
            verified_agrees=report.verification_ok,
        )


def _fmt(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, tuple):
        if not value:
            return "-"
        if isinstance(value[0], tuple):  # (residue, multiplicity) pairs
            return ",".join(f"{a}:{m}" for a, m in value)
        return ",".join(str(v) for v in value)
    return str(value)


def render_report(doc: ReportDocument) -> str:
    lines = []
    for f in fields(ReportDocument):
        value = getattr(doc, f.name)
        if f.name in ("orbit_exponents", "per_orbit_differences"):
            for i, sub in enumerate(value):
                lines.append(f"{f.name}.{i} = {_fmt(sub)}")
        elif f.name == "start":
            lines.append(f"start = {';'.join(value)}")
        else:
            lines.append(f"{f.name} = {_fmt(value)}")
    return "\n".join(lines) + "\n"


def _parse_opt_int(s):
    return None if s == "-" else int(s)


def _parse_bool(s):
    if s == "true":
        return True
    if s == "false":
        return False
    if s == "-":
        return None
    raise ParseError(f"expected a boolean, got {s!r}")


def _parse_int_tuple(s):
    return () if s == "-" else tuple(int(v) for v in s.split(","))


def _parse_pairs(s):
    if s == "-":
        return ()
    out = []
    for item in s.split(","):
        a, m = item.split(":")
        out.append((int(a), int(m)))
    return tuple(out)


def parse_report(text: str) -> ReportDocument:
    """Inverse of render_report."""
    raw: dict[str, str] = {}
    indexed: dict[str, list[tuple[int, str]]] = {"orbit_exponents": [],
                                                 "per_orbit_differences": []}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        if " = " not in line:
            raise ParseError(f"report line {lineno} is not 'key = value'")
        key, value = line.split(" = ", 1)
        base, _, idx = key.partition(".")
        if base in indexed and idx:
            indexed[base].append((int(idx), value))
        else:
            raw[key] = value
    try:
        return ReportDocument(
            schema=int(raw["schema"]),
            tool=raw["tool"],
            mode=raw["mode"],
            q=int(raw["q"]),
            base_modulus=None if raw["base_modulus"] == "-" else raw["base_modulus"],
            poly=raw["poly"],
            n=int(raw["n"]),
            k=int(raw["k"]),
            start=tuple(raw["start"].split(";")),
            group_order=int(raw["group_order"]),
            membership=_parse_int_tuple(raw["membership"]),
            orbit_exponents=tuple(_parse_int_tuple(v) for _, v
                                  in sorted(indexed["orbit_exponents"])),
            per_orbit_differences=tuple(_parse_pairs(v) for _, v
                                        in sorted(indexed["per_orbit_differences"])),
            merged_differences=_parse_pairs(raw["merged_differences"]),
            stabilizer_shifts=_parse_int_tuple(raw["stabilizer_shifts"]),
            predicted_cardinality=int(raw["predicted_cardinality"]),
            intersection_dim=int(raw["intersection_dim"]),
            predicted_distance=_parse_opt_int(raw["predicted_distance"]),
            all_orbits_distinct=_parse_bool(raw["all_orbits_distinct"]),
            spread=_parse_bool(raw["spread"]),
            oracle_run=_parse_bool(raw["oracle_run"]),
            verified_cardinality=_parse_opt_int(raw["verified_cardinality"]),
            verified_distance=_parse_opt_int(raw["verified_distance"]),
            verified_agrees=_parse_bool(raw["verified_agrees"]),
        )
    except KeyError as exc:
        raise ParseError(f"report is missing key {exc.args[0]!r}") from None


# -- shared option handling ------------------------------------------------

def _base_field(q: int, base_modulus: str | None) -> FieldSpec:
    """Resolve -q / --base-modulus into a base field."""
    if q < 2:
        raise DomainError(f"field order {q} is too small")
    p = q
    d = 2
    while d * d <= q:
        if q % d == 0:
            p = d
            break
        d += 1
    r = 0
    qq = q
    while qq % p == 0 and qq > 1:
        qq //= p
        r += 1
    if qq != 1:
        raise DomainError(f"field order {q} is not a prime power")
    prime = FieldSpec(p)
    if r == 1:
        if base_modulus:
            raise ParseError("--base-modulus only applies to prime-power q")
        return prime
    if not base_modulus:
        raise ParseError(
            f"q = {q} = {p}^{r} requires --base-modulus (a degree-{r} "
            f"irreducible over GF({p}))")
    modulus = parse_poly(prime, base_modulus)
    if modulus.degree != r:
        raise DomainError(f"base modulus must have degree {r} for q = {q}")
    return prime.extend(modulus)


def _read_start(field: FieldSpec, args) -> Subspace:
    if args.start_rows:
        text = args.start_rows.replace(";", "\n")
    else:
        with open(args.start, encoding="ascii") as handle:
            text = handle.read()
    mat = parse_matrix(field, text)
    u = Subspace(mat)
    if u.dim != mat.nrows:
        raise DomainError("starting rows are linearly dependent")
    return u


def _field_args(sub, modulus_help="polynomial over the base field"):
    sub.add_argument("-q", type=int, required=True,
                     help="base field order (prime or prime power)")
    sub.add_argument("--base-modulus", metavar="POLY",
                     help="degree-r irreducible over Z_p defining F_q = F_{p^r}")
    sub.add_argument("-p", "--poly", required=True, metavar="POLY", help=modulus_help)


# -- commands ---------------------------------------------------------------

def _cmd_poly(args) -> int:
    field = _base_field(args.q, args.base_modulus)
    if args.action == "list":
        for f in list_irreducibles(field, args.n):
            print(format_poly(f))
        return 0
    f = parse_poly(field, args.polynomial)
    if args.action == "irreducible":
        print("true" if is_irreducible(f) else "false")
    elif args.action == "order":
        print(order_of_polynomial(f))
    else:  # primitive
        print("true" if is_primitive(f) else "false")
    return 0


def _print_verification(report) -> int:
    print(f"verified_cardinality = {report.verified_cardinality}")
    print(f"verified_distance = {_fmt(report.verified_distance)}")
    print(f"verified_agrees = {_fmt(report.verification_ok)}")
    return 0 if report.verification_ok else 4


def _cmd_spread(args) -> int:
    field = _base_field(args.q, args.base_modulus)
    poly = parse_poly(field, args.poly)
    if args.n is not None and poly.degree != args.n:
        raise ParseError(f"polynomial degree {poly.degree} does not match -n {args.n}")
    start = build_spread_start(args.k, poly.degree, poly)
    ctx = ExtensionContext.from_modulus(poly)
    report = analyze(start, ctx, verify=args.verify)
    print(f"start = {';'.join(format_matrix(start.mat).split(chr(10)))}")
    print(f"predicted_cardinality = {report.predicted_cardinality}")
    print(f"predicted_distance = {_fmt(report.predicted_distance)}")
    print(f"spread = {_fmt(report.spread)}")
    status = 0
    if args.verify:
        status = _print_verification(report)
    if args.out:
        code = generate_orbit(start, companion_matrix(poly))
        with open(args.out, "w", encoding="ascii") as handle:
            handle.write(format_code(code))
        print(f"export = {args.out}")
    return status


def _cmd_analyze(args) -> int:
    field = _base_field(args.q, args.base_modulus)
    poly = parse_poly(field, args.poly)
    start = _read_start(field, args)
    if start.ambient != poly.degree:
        raise DomainError(f"start has {start.ambient} columns but the polynomial "
                          f"has degree {poly.degree}")
    ctx = ExtensionContext.from_modulus(poly)
    report = analyze(start, ctx, verify=args.verify)
    base_mod = field.modulus if field.level > 0 else None
    doc = ReportDocument.from_analysis(report, poly, start, base_mod)
    text = render_report(doc)
    sys.stdout.write(text)
    if args.out:
        with open(args.out, "w", encoding="ascii") as handle:
            handle.write(text)
    if args.verify and not report.verification_ok:
        return 4
    return 0


def _cmd_orbit(args) -> int:
    field = _base_field(args.q, args.base_modulus)
    poly = parse_poly(field, args.poly)
    start = _read_start(field, args)
    code = generate_orbit(start, companion_matrix(poly))
    with open(args.out, "w", encoding="ascii") as handle:
        handle.write(format_code(code))
    print(f"cardinality = {len(code)}")
    print(f"generator_order = {code.generator_order}")
    print(f"export = {args.out}")
    return 0


def _cmd_distance(args) -> int:
    with open(args.file, encoding="ascii") as handle:
        text = handle.read()
    field = None
    if args.base_modulus:
        head = text.split(None, 1)
        try:
            q = int(head[0])
        except (IndexError, ValueError):
            raise ParseError("code file has no numeric header") from None
        field = _base_field(q, args.base_modulus)
    _, words = parse_code(text, field)
    print(min_distance_brute(words))
    return 0


# -- selfcheck --------------------------------------------------------------

class _CheckFail(Exception):
    pass


def _expect(label, actual, expected):
    if actual != expected:
        raise _CheckFail(f"{label}: expected {expected}, got {actual}")
    return f"{label} = {expected}"


def _selfcheck_battery():
    f2 = FieldSpec(2)
    f3 = FieldSpec(3)
    p64 = parse_poly(f2, "x^6+x+1")
    p5 = parse_poly(f2, "x^4+x^3+x^2+x+1")
    p15a = parse_poly(f2, "x^4+x+1")
    p15b = parse_poly(f2, "x^4+x^3+1")

    def polynomial_orders():
        a = _expect("ord(x^4+x+1)", order_of_polynomial(p15a), 15)
        b = _expect("ord(x^4+x^3+1)", order_of_polynomial(p15b), 15)
        c = _expect("ord(x^4+x^3+x^2+x+1)", order_of_polynomial(p5), 5)
        d = _expect("ord(x^6+x+1)", order_of_polynomial(p64), 63)
        return "; ".join((a, b, c, d))

    def primitivity():
        _expect("primitive(x^6+x+1)", is_primitive(p64), True)
        _expect("primitive(x^4+x^3+1)", is_primitive(p15b), True)
        _expect("primitive(x^4+x^3+x^2+x+1)", is_primitive(p5), False)
        return "primitivity of degree-4 and degree-6 moduli"

    def irreducible_lists():
        _expect("degree-2 list", [format_poly(f) for f in list_irreducibles(f2, 2)],
                ["x^2+x+1"])
        _expect("degree-4 list", sorted(format_poly(f) for f in list_irreducibles(f2, 4)),
                ["x^4+x+1", "x^4+x^3+1", "x^4+x^3+x^2+x+1"])
        return "irreducible polynomial enumeration over GF(2)"

    def companion_and_conjugacy():
        from .matspace import groups_conjugate, is_irreducible_matrix, matrix_order
        c = companion_matrix(parse_poly(f2, "x^2+x+1"))
        _expect("companion rows", format_matrix(c), "01\n11")
        _expect("companion irreducible", is_irreducible_matrix(c), True)
        _expect("ord(companion(x^4+x^3+x^2+x+1))", matrix_order(companion_matrix(p5)), 5)
        _expect("ord(companion(x^6+x+1))", matrix_order(companion_matrix(p64)), 63)
        _expect("conjugate(p1,p2)", groups_conjugate(p15a, p15b), True)
        _expect("conjugate(p1,p3)", groups_conjugate(p15a, p5), False)
        return "companion matrices, orders, conjugacy"

    def powmod_example():
        _expect("x^9 mod x^6+x+1", format_poly(poly_powmod(Poly.x(f2), 9, p64)),
                "x^4+x^3")
        return "extension arithmetic x^9 = x^4+x^3"

    def rref_example():
        m = parse_matrix(f2, "100000\n000110\n111100")
        r, rank = m.rref()
        _expect("rref", format_matrix(r), "100000\n011010\n000110")
        _expect("rank", rank, 3)
        m2 = parse_matrix(f2, "100000\n111000")
        _expect("canonical", format_matrix(Subspace(m2).mat), "100000\n011000")
        return "reduced row echelon canonical forms"

    def isomorphism_dictionary():
        ctx = ExtensionContext.from_modulus(p64)
        a = ctx.alpha
        _expect("field cardinality", ctx.field.order, 64)
        _expect("alpha^63 = 1", a ** 63 == ctx.field.one(), True)
        _expect("phi((000110))", ctx.phi([0, 0, 0, 1, 1, 0]), a ** 9)
        _expect("phi((100000))", ctx.phi([1, 0, 0, 0, 0, 0]), ctx.field.one())
        _expect("dlog(a^4+a^3)", ctx.dlog(a ** 4 + a ** 3), 9)
        _expect("dlog(a^2+a+1)", ctx.dlog(a ** 2 + a + ctx.field.one()), 26)
        return "phi and discrete logarithms in GF(64)"

    def diagram_commutes():
        for base, mod in ((f2, p64), (f3, parse_poly(f3, "x^3+2*x+1"))):
            ctx = ExtensionContext.from_modulus(mod)
            P = companion_matrix(mod)
            from .matspace import row_times_mat, vector_from_index
            n = mod.degree
            for i in range(base.order ** n):
                v = vector_from_index(base, n, i)
                if ctx.phi(row_times_mat(v, P)) != ctx.phi(v) * ctx.alpha:
                    raise _CheckFail(f"diagram fails at vector index {i} over {base!r}")
        return "phi(v P) = phi(v) alpha over GF(2^6) and GF(3^3)"

    def spread_k3():
        u = build_spread_start(3, 6, p64)
        _expect("start", format_matrix(u.mat), "100000\n011010\n000110")
        code = generate_orbit(u, companion_matrix(p64))
        _expect("cardinality", len(code), 9)
        _expect("distance", min_distance_brute(code), 6)
        _expect("orbit distance", min_distance_orbit(code), 6)
        return "3-dimensional spread in GF(2)^6"

    def spread_k2():
        u = build_spread_start(2, 6, p64)
        ctx = ExtensionContext.from_modulus(p64)
        report = analyze(u, ctx, verify=True)
        _expect("cardinality", report.predicted_cardinality, 21)
        _expect("distance", report.predicted_distance, 4)
        _expect("smallest stabilizer shift", report.stabilizer_shifts[0], 21)
        _expect("oracle agreement", report.verification_ok, True)
        return "2-dimensional spread in GF(2)^6"

    def nonprimitive_example():
        ctx = ExtensionContext.from_modulus(p5)
        part = ctx.orbit_partition()
        _expect("orbit count", part.orbit_count, 3)
        _expect("orbit size", part.size, 5)
        u = Subspace(parse_matrix(f2, "1000\n0011"))
        report = analyze(u, ctx, verify=True)
        _expect("membership", tuple(sorted(report.membership)), (1, 1, 1))
        _expect("cardinality", report.predicted_cardinality, 5)
        _expect("distance", report.predicted_distance, 4)
        _expect("spread flag", report.spread, True)
        _expect("oracle agreement", report.verification_ok, True)
        return "non-primitive GF(16) orbit code"

    def distinct_difference_search():
        ctx = ExtensionContext.from_modulus(p64)
        u = find_sidon_subspace(ctx, 3)
        profile = ctx.exponent_profile(u)
        _expect("condition", check_sidon_condition(profile, 63), True)
        code = generate_orbit(u, companion_matrix(p64))
        _expect("cardinality", len(code), 63)
        _expect("distance", min_distance_brute(code), 4)
        return "all-distinct-differences subspace in G(3,6)"

    def conjugation_invariance():
        import random
        from .matspace import random_invertible
        from .orbitcode import conjugate_code
        rng = random.Random(7)
        u = build_spread_start(3, 6, p64)
        g = companion_matrix(p64)
        s = random_invertible(f2, 6, rng)
        v, h = conjugate_code(u, g, s)
        code = generate_orbit(v, h)
        _expect("cardinality", len(code), 9)
        _expect("distance", min_distance_brute(code), 6)
        return "conjugated spread keeps its parameters"

    return [
        ("polynomial-orders", polynomial_orders),
        ("primitivity", primitivity),
        ("irreducible-lists", irreducible_lists),
        ("companion-and-conjugacy", companion_and_conjugacy),
        ("powmod-example", powmod_example),
        ("rref-example", rref_example),
        ("isomorphism-dictionary", isomorphism_dictionary),
        ("diagram-commutes", diagram_commutes),
        ("spread-k3", spread_k3),
        ("spread-k2", spread_k2),
        ("nonprimitive-example", nonprimitive_example),
        ("distinct-difference-search", distinct_difference_search),
        ("conjugation-invariance", conjugation_invariance),
    ]


def _cmd_selfcheck(_args) -> int:
    failures = 0
    battery = _selfcheck_battery()
    for name, check in battery:
        try:
            detail = check()
        except _CheckFail as exc:
            failures += 1
            print(f"FAIL {name}: {exc}")
        else:
            print(f"ok   {name}: {detail}")
    print(f"selfcheck: {len(battery) - failures} passed, {failures} failed")
    return 4 if failures else 0


# -- parser -----------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbitcodes",
        description="Construct and analyze irreducible cyclic orbit codes.")
    parser.add_argument("--version", action="version",
                        version=f"orbitcodes {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    poly = sub.add_parser("poly", help="polynomial predicates and enumeration")
    poly_sub = poly.add_subparsers(dest="action", required=True)
    for action, txt in (("irreducible", "test irreducibility"),
                        ("order", "least e with f | x^e - 1"),
                        ("primitive", "test primitivity")):
        ps = poly_sub.add_parser(action, help=txt)
        ps.add_argument("-q", type=int, required=True)
        ps.add_argument("--base-modulus", metavar="POLY")
        ps.add_argument("polynomial")
    pl = poly_sub.add_parser("list", help="all monic irreducibles of a degree")
    pl.add_argument("-q", type=int, required=True)
    pl.add_argument("--base-modulus", metavar="POLY")
    pl.add_argument("-n", type=int, required=True, help="degree")

    spread = sub.add_parser("spread", help="build a spread code")
    _field_args(spread, "primitive polynomial of degree n")
    spread.add_argument("-n", type=int, help="ambient dimension (default: degree of -p)")
    spread.add_argument("-k", type=int, required=True, help="codeword dimension, k | n")
    spread.add_argument("--verify", action="store_true",
                        help="cross-check the prediction by brute force")
    spread.add_argument("--out", metavar="FILE", help="write the code export file")

    an = sub.add_parser("analyze", help="predict cardinality and distance of an orbit")
    _field_args(an, "irreducible polynomial defining the group")
    group = an.add_mutually_exclusive_group(required=True)
    group.add_argument("--start", metavar="FILE", help="starting rows, matrix text format")
    group.add_argument("--start-rows", metavar="ROWS",
                       help="starting rows inline, ';'-separated")
    an.add_argument("--verify", action="store_true")
    an.add_argument("--out", metavar="FILE", help="also write the report to a file")

    orbit = sub.add_parser("orbit", help="generate an orbit and export it")
    _field_args(orbit, "irreducible polynomial defining the group")
    group = orbit.add_mutually_exclusive_group(required=True)
    group.add_argument("--start", metavar="FILE")
    group.add_argument("--start-rows", metavar="ROWS")
    orbit.add_argument("--out", metavar="FILE", required=True)

    dist = sub.add_parser("distance", help="minimum distance of an exported code")
    dist.add_argument("file")
    dist.add_argument("--base-modulus", metavar="POLY",
                      help="required when the file's q is a prime power")

    sub.add_parser("selfcheck", help="run the built-in example battery")
    return parser


_HANDLERS = {
    "poly": _cmd_poly,
    "spread": _cmd_spread,
    "analyze": _cmd_analyze,
    "orbit": _cmd_orbit,
    "distance": _cmd_distance,
    "selfcheck": _cmd_selfcheck,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code or 0
    try:
        return _HANDLERS[args.command](args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
