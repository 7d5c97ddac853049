"""Truncated completions of k[u, v] at points and along curves.

Point completions are only modelled at rational points, as truncated Taylor
series in the local coordinates (u - alpha, v - beta). Completions along an
irreducible curve c are fractions modulo c^M whose denominator is prime to c.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import (
    BudgetExceededError,
    InsufficientCertificateError,
    InsufficientPrecisionError,
    NotRegularAtPointError,
    ValuationOfZeroError,
)
from .fields import Field, prime_field
from .groebner import Ideal, exact_divide, ideal_membership, ideal_power
from .poly import Poly2, all_polynomials, monomials_up_to
from .primes import HEIGHT1, MAXIMAL, PrimeIdeal

KRULL_BUDGET = 2**16


@dataclass(frozen=True)
class RationalFunction:
    numerator: Poly2
    denominator: Poly2

    def __post_init__(self):
        if self.denominator.is_zero():
            raise ZeroDivisionError("zero denominator")

    @classmethod
    def of(cls, f: Poly2) -> RationalFunction:
        return cls(f, Poly2.constant(f.field, 1))

    @property
    def field(self) -> Field:
        return self.numerator.field

    def __mul__(self, other: RationalFunction) -> RationalFunction:
        return RationalFunction(self.numerator * other.numerator, self.denominator * other.denominator)

    def __add__(self, other: RationalFunction) -> RationalFunction:
        return RationalFunction(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )


@dataclass(frozen=True)
class TruncatedPointSeries:
    """Taylor expansion at a rational point modulo m_x^precision, in local coordinates."""

    field: Field
    center: tuple
    precision: int
    terms: Poly2
    stable_from: int | None = None

    def __post_init__(self):
        if self.terms.degree >= self.precision:
            object.__setattr__(self, "terms", self.terms.truncate(self.precision))

    def _same_frame(self, other: TruncatedPointSeries):
        if self.center != other.center:
            raise ValueError("series centred at different points")

    def __add__(self, other: TruncatedPointSeries) -> TruncatedPointSeries:
        self._same_frame(other)
        n = min(self.precision, other.precision)
        return TruncatedPointSeries(self.field, self.center, n, (self.terms + other.terms).truncate(n))

    def __mul__(self, other: TruncatedPointSeries) -> TruncatedPointSeries:
        self._same_frame(other)
        n = min(self.precision, other.precision)
        return TruncatedPointSeries(
            self.field, self.center, n, _truncated_product(self.terms, other.terms, n)
        )

    def __eq__(self, other):
        if not isinstance(other, TruncatedPointSeries):
            return NotImplemented
        return (
            self.center == other.center
            and self.precision == other.precision
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.center, self.precision, self.terms))

    def is_zero(self) -> bool:
        return self.terms.is_zero()

    def coefficient(self, i: int, j: int):
        return self.terms.coefficient(i, j)

    def to_json(self) -> dict:
        return {
            "center": _point_text(self.field, self.center),
            "precision": self.precision,
            "value": self.terms.to_text(),
            "stable_from": self.stable_from,
        }


@dataclass(frozen=True)
class QuotientResidue:
    """Element of k[u, v]/m^precision for a non-rational maximal ideal m (normal form)."""

    ideal: PrimeIdeal
    precision: int
    value: Poly2
    stable_from: int | None = None

    def to_json(self) -> dict:
        return {
            "ideal": [g.to_text() for g in self.ideal.generators],
            "precision": self.precision,
            "value": self.value.to_text(),
            "stable_from": self.stable_from,
        }


@dataclass(frozen=True)
class CurveResidue:
    curve: Poly2
    precision: int
    numerator: Poly2
    denominator: Poly2
    stable_from: int | None = None

    def __post_init__(self):
        if ideal_membership(self.denominator, Ideal([self.curve])).member:
            raise ValueError("denominator must not vanish along the curve")

    def is_polynomial(self) -> bool:
        return self.denominator.is_constant()

    def equals(self, other: CurveResidue) -> bool:
        if self.curve != other.curve:
            return False
        m = min(self.precision, other.precision)
        diff = self.numerator * other.denominator - other.numerator * self.denominator
        return ideal_membership(diff, Ideal([self.curve**m])).member

    def to_json(self) -> dict:
        return {
            "curve": self.curve.to_text(),
            "precision": self.precision,
            "numerator": self.numerator.to_text(),
            "denominator": self.denominator.to_text(),
            "polynomial": self.is_polynomial(),
            "stable_from": self.stable_from,
        }


def _point_text(field: Field, point) -> str:
    return "(" + ",".join(field.render(x) for x in point) + ")"


def _truncated_product(a: Poly2, b: Poly2, n: int) -> Poly2:
    field = a.field
    norm = field.norm
    out: dict = {}
    for (i1, j1), c1 in a.items():
        d1 = i1 + j1
        if d1 >= n:
            continue
        for (i2, j2), c2 in b.items():
            if d1 + i2 + j2 >= n:
                continue
            m = (i1 + i2, j1 + j2)
            out[m] = out.get(m, 0) + c1 * c2
    return Poly2(field, {m: norm(c) for m, c in out.items()})


def _inverse_series(d: Poly2, n: int) -> Poly2:
    """1/d modulo m^n for d with nonzero constant term."""
    field = d.field
    d0 = d.coefficient(0, 0)
    inv0 = field.inv(d0)
    e = (d.scale(inv0) - 1).truncate(n)
    result = Poly2.constant(field, 1)
    power = Poly2.constant(field, 1)
    neg_e = -e
    for _ in range(1, n):
        power = _truncated_product(power, neg_e, n)
        if power.is_zero():
            break
        result = result + power
    return result.scale(inv0).truncate(n)


def _local_truncation(f: Poly2, alpha, beta, n: int) -> Poly2:
    """Terms of f(u + alpha, v + beta) of total degree < n."""
    if not alpha and not beta:
        return f.truncate(n)
    out: dict = {}
    for (i, j), c in f.items():
        for a in range(min(i, n - 1) + 1):
            ca = c * comb(i, a) * alpha ** (i - a)
            if not ca:
                continue
            for b in range(min(j, n - 1 - a) + 1):
                out[(a, b)] = out.get((a, b), 0) + ca * comb(j, b) * beta ** (j - b)
    return Poly2(f.field, out)


def expand_at_point(f: RationalFunction | Poly2, point, precision: int) -> TruncatedPointSeries:
    """Order-``precision`` Taylor expansion of f at a rational point."""
    if isinstance(f, Poly2):
        f = RationalFunction.of(f)
    field = f.field
    alpha, beta = (field.norm(x) for x in point)
    den = _local_truncation(f.denominator, alpha, beta, max(precision, 1))
    if not den.coefficient(0, 0):
        raise NotRegularAtPointError(f"denominator vanishes at {_point_text(field, (alpha, beta))}")
    num = _local_truncation(f.numerator, alpha, beta, precision)
    terms = _truncated_product(num, _inverse_series(den, precision), precision)
    return TruncatedPointSeries(field, (alpha, beta), precision, terms)


def curve_order(f: Poly2, c: Poly2) -> int:
    """Number of successive exact divisions of a nonzero f by c."""
    if f.is_zero():
        raise ValuationOfZeroError("order of the zero polynomial is infinite")
    if c.is_constant():
        raise ValueError("curve equation must be non-constant")
    count = 0
    while True:
        q = exact_divide(f, c)
        if q is None:
            return count
        f = q
        count += 1


def curve_valuation(f: RationalFunction | Poly2, c: Poly2) -> int:
    if isinstance(f, Poly2):
        f = RationalFunction.of(f)
    if f.numerator.is_zero():
        raise ValuationOfZeroError("valuation of zero is +infinity")
    return curve_order(f.numerator, c) - curve_order(f.denominator, c)


def _tower_index_of_curve(series, c: Poly2) -> int | None:
    c = c.monic()
    for n, p in enumerate(series.tower.primes, start=1):
        if p.shape == HEIGHT1 and p.generators[0] == c:
            return n
    return None


def restrict_series_to_curve(series, c: Poly2, precision: int = 1) -> CurveResidue:
    """The series modulo c^precision, for c a height-one prime of the tower.

    Terms after the prefix lie in a_N, hence in (c)^(2^(N - m)) where c
    generates p_m; the tail is negligible once that exponent reaches the
    requested precision.
    """
    if precision < 1:
        raise ValueError("precision must be >= 1")
    m = _tower_index_of_curve(series, c)
    if m is None:
        raise InsufficientCertificateError(f"curve {c.to_text()} is not a prime of the tower prefix")
    depth = series.tower.depth
    if 2 ** (depth - m) < precision:
        raise InsufficientCertificateError(
            f"tail only certified in (c)^{2 ** (depth - m)}, precision {precision} requested"
        )
    c = c.monic()
    target = Ideal([c**precision])
    terms = series.padded_terms()
    value = target.basis.normal_form(sum(terms, Poly2.zero(c.field)))
    stable = len(terms) + 1
    while stable > 1 and ideal_membership(terms[stable - 2], target).member:
        stable -= 1
    one = Poly2.constant(c.field, 1)
    return CurveResidue(c, precision, value, one, stable)


def _as_maximal(point_or_ideal, field: Field) -> tuple[PrimeIdeal, tuple | None]:
    if isinstance(point_or_ideal, PrimeIdeal):
        m = point_or_ideal
        f, g = m.generators
        if f.degree == 1 and g.degree == 1 and g.v_degree == 1 and g.u_degree <= 0:
            alpha = field.norm(-f.coefficient(0, 0))
            beta = field.norm(-g.coefficient(0, 0))
            return m, (alpha, beta)
        return m, None
    alpha, beta = (field.norm(x) for x in point_or_ideal)
    u, v = Poly2.u(field), Poly2.v(field)
    return PrimeIdeal(MAXIMAL, (u - alpha, v - beta)), (alpha, beta)


def stabilized_point_value(series, point, precision: int):
    """The series modulo m^precision together with its stabilization index.

    ``point`` is a rational point ``(alpha, beta)`` or a maximal PrimeIdeal.
    Convergence at m is certified by the first tower prime p_j inside m:
    terms after the prefix lie in a_N, hence in m^(2^(N - j)).
    Rational centres give a TruncatedPointSeries, others a QuotientResidue.
    """
    field = series.field
    m, center = _as_maximal(point, field)
    mideal = Ideal(m.generators)
    depth = series.tower.depth
    j = next(
        (
            n
            for n, p in enumerate(series.tower.primes, start=1)
            if all(ideal_membership(g, mideal).member for g in p.generators)
        ),
        None,
    )
    if j is None:
        raise InsufficientPrecisionError(f"no tower prime lies inside {m}")
    if 2 ** (depth - j) < precision:
        raise InsufficientPrecisionError(
            f"tail certified only modulo m^{2 ** (depth - j)}, precision {precision} requested"
        )
    terms = series.padded_terms()
    if center is not None:
        expansions = [expand_at_point(f, center, precision) for f in terms]
        total = sum((e.terms for e in expansions), Poly2.zero(field))
        stable = len(terms) + 1
        while stable > 1 and expansions[stable - 2].is_zero():
            stable -= 1
        return TruncatedPointSeries(field, center, precision, total, stable)
    if precision == 0:
        return QuotientResidue(m, 0, Poly2.zero(field), 1)
    power = ideal_power(mideal, precision)
    total = power.basis.normal_form(sum(terms, Poly2.zero(field)))
    stable = len(terms) + 1
    while stable > 1 and ideal_membership(terms[stable - 2], power).member:
        stable -= 1
    return QuotientResidue(m, precision, total, stable)


@dataclass(frozen=True)
class KrullReport:
    degree: int
    field: str
    checked: int
    passed: bool
    counterexample: Poly2 | None = None

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "field": self.field,
            "checked": self.checked,
            "passed": self.passed,
            "counterexample": None if self.counterexample is None else self.counterexample.to_text(),
        }


def krull_injectivity_check(degree: int, p: int, budget: int = KRULL_BUDGET) -> KrullReport:
    """Every nonzero f of total degree <= d has nonzero expansion at the origin mod m^(d+1).

    Enumerates p^dim(F_d) polynomials, so the budget bounds that count.
    """
    field = prime_field(p)
    size = p ** len(monomials_up_to(degree))
    if size > budget:
        raise BudgetExceededError(f"{size} polynomials exceed the budget {budget}")
    checked = 0
    for f in all_polynomials(field, degree):
        if f.is_zero():
            continue
        checked += 1
        if expand_at_point(f, (0, 0), degree + 1).is_zero():
            return KrullReport(degree, field.tag, checked, False, f)
    return KrullReport(degree, field.tag, checked, True)

