"""Command-line front end.

Every verb writes one JSON document to standard output and nothing else;
diagnostics go to standard error. Exit codes:

    0  success, all checks pass
    1  usage error
    2  verification failure
    3  input schema error
    4  budget exceeded, or the certificate prefix is too short to answer
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import schema
from .completions import restrict_series_to_curve, stabilized_point_value
from .errors import (
    AlgebraError,
    BadLiftError,
    BudgetExceededError,
    CertificateFailedError,
    CertificateSchemaError,
    InsufficientCertificateError,
    InsufficientPrecisionError,
    InvalidSeriesError,
    PolynomialParseError,
    PrefixTooShortError,
)
from .fields import Field, field_from_tag
from .forge import certify_not_polynomial, forge_counterexample, verify_certificate
from .groebner import ideal_membership
from .lines import dichotomy_check, restrict_to_line
from .poly import Poly2
from .primes import MAXIMAL, EnumerationBudget, PrimeIdeal, enumerate_primes
from .projlim import check_compatibility, residues_from_series, series_from_residues
from .tower import build_tower, convergence_schedule, verify_filtration_gap

OK, USAGE, FAILED, SCHEMA, BUDGET = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(doc) -> None:
    sys.stdout.write(schema.dumps(doc))


def _field(tag: str) -> Field:
    try:
        return field_from_tag(tag)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise CertificateSchemaError(f"{path}: not JSON ({exc.msg})") from None


def _user_poly(field: Field, text: str) -> Poly2:
    try:
        return Poly2.parse(field, text)
    except PolynomialParseError as exc:
        raise UsageError(str(exc)) from None


def _primes(args, count: int) -> list[PrimeIdeal]:
    field = _field(args.field)
    if getattr(args, "primes", None):
        user = schema.primes_from_json(field, _load(args.primes))
        return enumerate_primes(field, EnumerationBudget(count, args.max_degree), user_primes=user)
    return enumerate_primes(
        field, EnumerationBudget(count, args.max_degree), rational_family=args.rational_family
    )


def _certificate(path: str):
    return schema.certificate_from_json(_load(path))


# verbs


def cmd_primes(args) -> int:
    _emit([p.to_json() for p in _primes(args, args.count)])
    return OK


def cmd_tower(args) -> int:
    tower = build_tower(_primes(args, args.n), args.n)
    doc = tower.to_json()
    doc["schedule"] = [{"n": n, "m": m, "e": e} for (n, m), e in sorted(convergence_schedule(args.n).items())]
    _emit(doc)
    return OK


def cmd_forge(args) -> int:
    field = _field(args.field)
    primes = None
    if args.primes:
        primes = schema.primes_from_json(field, _load(args.primes))
    cert = forge_counterexample(field, args.n, primes=primes, rational_family=args.rational_family)
    text = schema.dumps(cert.to_json())
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        _emit({"output": args.output, "passed": cert.checks.passed, "terms": [f.to_text() for f in cert.terms]})
    else:
        sys.stdout.write(text)
    return OK if cert.checks.passed else FAILED


def cmd_verify(args) -> int:
    cert = _certificate(args.certificate)
    report = verify_certificate(cert)
    doc = {
        "passed": report.passed,
        "failures": [i.to_json() for i in report.failures()],
        "checks": report.to_json(),
    }
    code = OK if report.passed else FAILED
    if args.not_poly is not None and report.passed:
        proof = certify_not_polynomial(cert, args.not_poly)
        doc["not_polynomial"] = proof.to_json()
        if not proof.holds:
            code = FAILED
    _emit(doc)
    return code


def cmd_residues(args) -> int:
    cert = _certificate(args.cert)
    _emit(residues_from_series(cert.as_series()).to_json())
    return OK


def cmd_series_from_residues(args) -> int:
    system = schema.residues_from_json(_load(args.residues))
    compat = check_compatibility(system)
    if not compat:
        _emit({"compatible": False, "first_failure": compat.first_failure})
        return FAILED
    lifts = None
    if args.lifts:
        lifts = schema.lifts_from_json(system.tower.field, _load(args.lifts))
    _emit(schema.series_to_json(series_from_residues(system, lifts)))
    return OK


def cmd_roundtrip(args) -> int:
    cert = _certificate(args.cert)
    series = cert.as_series()
    system = residues_from_series(series)
    rebuilt = series_from_residues(system, series.partial_sums())
    again = residues_from_series(rebuilt)
    tower = system.tower
    telescoping = [
        {"n": n, "pass": ideal_membership(rebuilt.term(n), tower.ideal(n - 1)).member}
        for n in range(2, tower.depth + 1)
    ]
    same_residues = again.residues == system.residues
    same_terms = tuple(rebuilt.padded_terms()) == tuple(series.padded_terms())
    holds = same_residues and all(t["pass"] for t in telescoping)
    _emit(
        {
            "holds": holds,
            "residues": [r.to_text() for r in system.residues],
            "rebuilt_residues": [r.to_text() for r in again.residues],
            "terms_recovered": same_terms,
            "telescoping": telescoping,
        }
    )
    return OK if holds else FAILED


def cmd_restrict(args) -> int:
    cert = _certificate(args.cert)
    curve = _user_poly(cert.field, args.curve)
    _emit(restrict_series_to_curve(cert.as_series(), curve, args.precision).to_json())
    return OK


def cmd_value(args) -> int:
    cert = _certificate(args.cert)
    field = cert.field
    if args.maximal:
        f, g = (_user_poly(field, t) for t in args.maximal)
        target = PrimeIdeal(MAXIMAL, (f.monic(), g.monic()))
    else:
        try:
            target = schema.parse_point(field, args.point)
        except CertificateSchemaError as exc:
            raise UsageError(str(exc)) from None
    _emit(stabilized_point_value(cert.as_series(), target, args.precision).to_json())
    return OK


def cmd_lines(args) -> int:
    series = schema.truncation_from_json(_load(args.input))
    samples = schema.lambdas_from_json(series.field, _load(args.lambdas))
    result = dichotomy_check(series, samples)
    doc = result.to_json()
    doc["restrictions"] = [
        {
            "lambda": series.field.render(lam),
            "coefficients": [series.field.render(c) for c in restrict_to_line(series, lam).coefficients],
        }
        for lam, _ in samples
    ]
    _emit(doc)
    return OK


def cmd_gap_check(args) -> int:
    field = _field(args.field)
    if not field.is_finite():
        raise UsageError("gap-check enumerates F_l and needs a finite field")
    report = verify_filtration_gap(args.l, field, budget=args.budget)
    _emit(report.to_json())
    if report.counterexample is not None:
        return FAILED
    return OK if report.verified else BUDGET


def _enumeration_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--field", required=True, help="f2, f3, ... or q")
    p.add_argument("--max-degree", type=int, default=8, help="cap on degrees of prime data")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--primes", metavar="FILE", help="user-supplied prime list (JSON)")
    group.add_argument("--rational-family", action="store_true", help="built-in primes over q")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="surfadele", description="Exact certificates for a non-polynomial adele on the plane.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("primes", help="enumerate nonzero primes of k[u,v]")
    _enumeration_flags(p)
    p.add_argument("--count", type=int, required=True)
    p.set_defaults(run=cmd_primes)

    p = sub.add_parser("tower", help="build the ideal tower")
    _enumeration_flags(p)
    p.add_argument("-n", type=int, required=True)
    p.set_defaults(run=cmd_tower)

    p = sub.add_parser("forge", help="forge a counterexample certificate")
    _enumeration_flags(p)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-o", "--output", metavar="FILE")
    p.set_defaults(run=cmd_forge)

    p = sub.add_parser("verify", help="verify a certificate")
    p.add_argument("certificate")
    p.add_argument("--not-poly", type=int, metavar="D", help="also certify no polynomial of degree <= D")
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("residues", help="residue system of a certificate")
    p.add_argument("--cert", required=True)
    p.set_defaults(run=cmd_residues)

    p = sub.add_parser("series-from-residues", help="telescoping series from a residue system")
    p.add_argument("--residues", required=True)
    p.add_argument("--lifts")
    p.set_defaults(run=cmd_series_from_residues)

    p = sub.add_parser("roundtrip", help="series -> residues -> series identity")
    p.add_argument("--cert", required=True)
    p.set_defaults(run=cmd_roundtrip)

    p = sub.add_parser("restrict", help="restrict the series to a tower curve")
    p.add_argument("--cert", required=True)
    p.add_argument("--curve", required=True)
    p.add_argument("--precision", type=int, default=1)
    p.set_defaults(run=cmd_restrict)

    p = sub.add_parser("value", help="stabilized value at a point modulo m^N")
    p.add_argument("--cert", required=True)
    where = p.add_mutually_exclusive_group(required=True)
    where.add_argument("--point", help='rational point, e.g. "(0,1)"')
    where.add_argument("--maximal", nargs=2, metavar=("F", "G"), help="maximal ideal (f(u), g(u,v))")
    p.add_argument("--precision", type=int, required=True)
    p.set_defaults(run=cmd_value)

    p = sub.add_parser("lines", help="line restrictions and the diagonal dichotomy")
    p.add_argument("--input", required=True, help="truncated series (JSON)")
    p.add_argument("--lambdas", required=True, help="list of {lambda, bound} (JSON)")
    p.set_defaults(run=cmd_lines)

    p = sub.add_parser("gap-check", help="verify F_l and (u^(l+1)) meet only in 0")
    p.add_argument("--field", required=True)
    p.add_argument("-l", type=int, required=True)
    p.add_argument("--budget", type=int, default=2**17)
    p.set_defaults(run=cmd_gap_check)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.run(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE
    except CertificateSchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return SCHEMA
    except (BudgetExceededError, PrefixTooShortError, InsufficientCertificateError, InsufficientPrecisionError) as exc:
        print(f"budget: {exc}", file=sys.stderr)
        return BUDGET
    except (CertificateFailedError, InvalidSeriesError, BadLiftError) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return FAILED
    except (AlgebraError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
