"""JSON documents: certificates, residue systems, series and line-test inputs.

Every polynomial inside a document must be written in canonical text form,
so that parsing a document and emitting it again reproduces it byte for byte.
"""

from __future__ import annotations

import dataclasses
import json
import re
from typing import Any

import jsonschema

from .errors import CertificateSchemaError, PolynomialParseError
from .fields import Field, field_from_tag
from .forge import FAMILIES, CheckItem, CounterexampleCertificate, VerificationReport
from .groebner import Ideal
from .poly import Poly2
from .primes import HEIGHT1, MAXIMAL, PrimeIdeal
from .projlim import ResidueSystem, SeriesAdele
from .tower import Filtration, IdealTower

_POLY = {"type": "string", "minLength": 1}
_POLYS = {"type": "array", "items": _POLY, "minItems": 1}
_NAT = {"type": "integer", "minimum": 0}
_POS = {"type": "integer", "minimum": 1}

TOWER_SCHEMA = {
    "type": "object",
    "required": ["primes", "ideals", "witnesses"],
    "additionalProperties": False,
    "properties": {
        "primes": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["index", "shape", "generators"],
                "additionalProperties": False,
                "properties": {
                    "index": _POS,
                    "shape": {"enum": [HEIGHT1, MAXIMAL]},
                    "generators": {"type": "array", "items": _POLY, "minItems": 1, "maxItems": 2},
                },
            },
        },
        "ideals": {"type": "array", "items": _POLYS, "minItems": 1},
        "witnesses": _POLYS,
    },
}

SCHEDULE_SCHEMA = {
    "type": "array",
    "items": {
        "type": "object",
        "required": ["n", "m", "e"],
        "additionalProperties": False,
        "properties": {"n": _POS, "m": _POS, "e": _POS},
    },
}

CERTIFICATE_SCHEMA = {
    "type": "object",
    "required": ["field", "ordering", "tower", "filtration", "l_of_n", "terms", "schedule", "checks"],
    "additionalProperties": False,
    "properties": {
        "field": {"type": "string", "pattern": r"^(q|f\d+)$"},
        "ordering": {"type": "string"},
        "tower": TOWER_SCHEMA,
        "filtration": {
            "type": "object",
            "required": ["rule", "point", "parameter", "gaps"],
            "additionalProperties": False,
            "properties": {
                "rule": {"type": "string"},
                "point": {"type": "string"},
                "parameter": {"type": "string"},
                "gaps": {"type": "array", "items": _NAT},
            },
        },
        "l_of_n": {"type": "array", "items": _NAT},
        "terms": {"type": "array", "items": _POLY, "minItems": 1},
        "schedule": SCHEDULE_SCHEMA,
        "checks": {
            "oneOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "required": ["passed", "items"],
                    "additionalProperties": False,
                    "properties": {
                        "passed": {"type": "boolean"},
                        "items": {
                            "type": "array",
                            "items": {
                                "type": "object",
                                "required": ["check", "n", "pass"],
                                "additionalProperties": False,
                                "properties": {
                                    "check": {"enum": list(FAMILIES)},
                                    "n": _NAT,
                                    "m": _POS,
                                    "pass": {"type": "boolean"},
                                },
                            },
                        },
                    },
                },
            ]
        },
    },
}

RESIDUES_SCHEMA = {
    "type": "object",
    "required": ["field", "tower", "residues"],
    "additionalProperties": False,
    "properties": {
        "field": {"type": "string", "pattern": r"^(q|f\d+)$"},
        "tower": TOWER_SCHEMA,
        "residues": {"type": "array", "items": _POLY, "minItems": 1},
    },
}

SERIES_SCHEMA = {
    "type": "object",
    "required": ["field", "tower", "terms", "schedule"],
    "additionalProperties": False,
    "properties": {
        "field": {"type": "string", "pattern": r"^(q|f\d+)$"},
        "tower": TOWER_SCHEMA,
        "terms": {"type": "array", "items": _POLY},
        "schedule": SCHEDULE_SCHEMA,
    },
}

TRUNCATION_SCHEMA = {
    "type": "object",
    "required": ["field", "precision", "terms"],
    "additionalProperties": False,
    "properties": {
        "field": {"type": "string", "pattern": r"^(q|f\d+)$"},
        "center": {"type": "string"},
        "precision": _NAT,
        "terms": _POLY,
    },
}

LAMBDAS_SCHEMA = {
    "type": "array",
    "items": {
        "type": "object",
        "required": ["lambda", "bound"],
        "additionalProperties": False,
        "properties": {"lambda": {"type": ["string", "integer"]}, "bound": _NAT},
    },
}


PRIMES_SCHEMA = {
    "type": "array",
    "minItems": 1,
    "items": {
        "type": "object",
        "required": ["generators"],
        "properties": {
            "index": _POS,
            "shape": {"enum": [HEIGHT1, MAXIMAL]},
            "generators": {"type": "array", "items": _POLY, "minItems": 1, "maxItems": 2},
        },
    },
}


def dumps(doc: Any) -> str:
    """The one serialization used for every emitted document."""
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _check(doc, schema, what: str):
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path)
        raise CertificateSchemaError(f"{what}: {exc.message} at /{path}") from None


def _field(tag: str) -> Field:
    try:
        return field_from_tag(tag)
    except ValueError as exc:
        raise CertificateSchemaError(str(exc)) from None


def _poly(field: Field, text: str) -> Poly2:
    try:
        return Poly2.parse(field, text, canonical=True)
    except PolynomialParseError as exc:
        raise CertificateSchemaError(f"polynomial: {exc}") from None


def parse_point(field: Field, text: str) -> tuple:
    m = re.fullmatch(r"\s*\(\s*([^,()]+?)\s*,\s*([^,()]+?)\s*\)\s*", text)
    if not m:
        raise CertificateSchemaError(f"not a point: {text!r}")
    try:
        return (field.parse(m.group(1)), field.parse(m.group(2)))
    except PolynomialParseError as exc:
        raise CertificateSchemaError(str(exc)) from None


def tower_from_json(field: Field, doc: dict) -> IdealTower:
    primes = []
    for entry in doc["primes"]:
        gens = tuple(_poly(field, g) for g in entry["generators"])
        expected = 1 if entry["shape"] == HEIGHT1 else 2
        if len(gens) != expected:
            raise CertificateSchemaError(f"{entry['shape']} prime needs {expected} generator(s)")
        if any(g.is_zero() for g in gens):
            raise CertificateSchemaError("prime generators must be nonzero")
        primes.append(PrimeIdeal(entry["shape"], gens, entry["index"]))
    ideals = []
    for gens in doc["ideals"]:
        polys = [_poly(field, g) for g in gens]
        if all(p.is_zero() for p in polys):
            raise CertificateSchemaError("tower ideal with only zero generators")
        ideals.append(Ideal(polys))
    witnesses = [_poly(field, g) for g in doc["witnesses"]]
    if not (len(primes) == len(ideals) == len(witnesses)):
        raise CertificateSchemaError("tower lists have different lengths")
    return IdealTower(tuple(primes), tuple(ideals), tuple(witnesses))


def _schedule(doc: list) -> dict:
    out = {}
    for entry in doc:
        key = (entry["n"], entry["m"])
        if key in out:
            raise CertificateSchemaError(f"duplicate schedule entry {key}")
        out[key] = entry["e"]
    return out


def certificate_from_json(doc: Any) -> CounterexampleCertificate:
    _check(doc, CERTIFICATE_SCHEMA, "certificate")
    field = _field(doc["field"])
    tower = tower_from_json(field, doc["tower"])
    filt = doc["filtration"]
    point = parse_point(field, filt["point"])
    filtration = Filtration(filt["rule"], point, filt["parameter"])
    terms = tuple(_poly(field, t) for t in doc["terms"])
    checks = None
    if doc["checks"] is not None:
        items = tuple(CheckItem(i["check"], i["n"], i["pass"], i.get("m")) for i in doc["checks"]["items"])
        claimed = doc["checks"]["passed"]
        checks = VerificationReport(items, None if claimed == all(i.passed for i in items) else claimed)
    cert = CounterexampleCertificate(
        field=field,
        ordering=doc["ordering"],
        tower=tower,
        filtration=filtration,
        l_of_n=tuple(doc["l_of_n"]),
        terms=terms,
        schedule=_schedule(doc["schedule"]),
        checks=checks,
    )
    if list(cert.gaps) != filt["gaps"]:
        cert = dataclasses.replace(cert, claimed_gaps=tuple(filt["gaps"]))
    return cert


def residues_from_json(doc: Any) -> ResidueSystem:
    _check(doc, RESIDUES_SCHEMA, "residue system")
    field = _field(doc["field"])
    tower = tower_from_json(field, doc["tower"])
    residues = tuple(_poly(field, r) for r in doc["residues"])
    if len(residues) > tower.depth:
        raise CertificateSchemaError("more residues than tower levels")
    return ResidueSystem(tower, residues)


def series_to_json(series: SeriesAdele) -> dict:
    return {
        "field": series.field.tag,
        "tower": series.tower.to_json(),
        "terms": [f.to_text() for f in series.terms],
        "schedule": [{"n": n, "m": m, "e": e} for (n, m), e in sorted(series.schedule.items())],
    }


def series_from_json(doc: Any) -> SeriesAdele:
    _check(doc, SERIES_SCHEMA, "series")
    field = _field(doc["field"])
    tower = tower_from_json(field, doc["tower"])
    terms = tuple(_poly(field, t) for t in doc["terms"])
    if len(terms) > tower.depth:
        raise CertificateSchemaError("more terms than tower levels")
    return SeriesAdele(tower, terms, _schedule(doc["schedule"]))


def primes_from_json(field: Field, doc: Any) -> list[PrimeIdeal]:
    """A user-supplied prime list, in the order given; shape follows the generator count."""
    _check(doc, PRIMES_SCHEMA, "prime list")
    out = []
    for k, entry in enumerate(doc, start=1):
        gens = tuple(_poly(field, g) for g in entry["generators"])
        shape = entry.get("shape", HEIGHT1 if len(gens) == 1 else MAXIMAL)
        if len(gens) != (1 if shape == HEIGHT1 else 2) or any(g.is_zero() for g in gens):
            raise CertificateSchemaError(f"prime {k}: generators do not fit shape {shape}")
        out.append(PrimeIdeal(shape, gens, k))
    return out


def lifts_from_json(field: Field, doc: Any) -> list[Poly2]:
    if isinstance(doc, dict):
        doc = doc.get("lifts")
    _check(doc, {"type": "array", "items": _POLY}, "lifts")
    return [_poly(field, h) for h in doc]


def truncation_from_json(doc: Any):
    from .completions import TruncatedPointSeries

    _check(doc, TRUNCATION_SCHEMA, "truncated series")
    field = _field(doc["field"])
    center = parse_point(field, doc.get("center", "(0,0)"))
    return TruncatedPointSeries(field, center, doc["precision"], _poly(field, doc["terms"]))


def lambdas_from_json(field: Field, doc: Any) -> list[tuple[object, int]]:
    _check(doc, LAMBDAS_SCHEMA, "lambdas")
    out = []
    for entry in doc:
        raw = entry["lambda"]
        try:
            lam = field.parse(str(raw))
        except PolynomialParseError as exc:
            raise CertificateSchemaError(str(exc)) from None
        out.append((lam, entry["bound"]))
    return out


def schema_validate(doc: Any, kind: str = "certificate") -> tuple[bool, str]:
    """Verdict on a document: (valid, reason)."""
    parser = {
        "certificate": certificate_from_json,
        "residues": residues_from_json,
        "series": series_from_json,
    }[kind]
    try:
        parser(doc)
    except CertificateSchemaError as exc:
        return False, str(exc)
    return True, "valid"
