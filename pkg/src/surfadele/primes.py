"""Deterministic enumeration of the nonzero prime ideals of k[u, v].

Over F_p every nonzero prime is either principal, generated by an
irreducible polynomial, or maximal, generated by a pair ``(f(u), g(u, v))``
with ``f`` monic irreducible and ``g`` monic in ``v``, reduced modulo ``f``
and irreducible over ``F_p[u]/(f)``.

Primes are listed by data degree, then height-one before maximal, then by
the coefficient vector of the generators read from the lowest monomial up.
Over F_2 this starts ``(u), (v), (u + v), (u + 1), (v + 1), (u + v + 1)``.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import BudgetExceededError, ShapeUnsupportedError, UnsupportedEnumerationError
from .fields import QQ, Field
from .groebner import Ideal, normal_form
from .poly import Poly2, all_polynomials, coefficient_key

HEIGHT1 = "height1"
MAXIMAL = "maximal"

FINITE_ORDERING = "degree>shape>coefficients-ascending/grevlex(u>v)"
RATIONAL_FAMILY_ORDERING = "height>shape>coefficients-ascending/linear-q"
USER_ORDERING = "user-supplied"

QUOTIENT_BUDGET = 4096


@dataclass(frozen=True)
class PrimeIdeal:
    shape: str
    generators: tuple[Poly2, ...]
    index: int = 0

    @property
    def field(self) -> Field:
        return self.generators[0].field

    @property
    def data_degree(self) -> int:
        return max(g.degree for g in self.generators)

    @functools.cached_property
    def ideal(self) -> Ideal:
        return Ideal(self.generators)

    def with_index(self, index: int) -> PrimeIdeal:
        return PrimeIdeal(self.shape, self.generators, index)

    def same_ideal(self, other: PrimeIdeal) -> bool:
        return self.shape == other.shape and self.generators == other.generators

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "shape": self.shape,
            "generators": [g.to_text() for g in self.generators],
        }

    def __str__(self):
        return "(" + ", ".join(g.to_text() for g in self.generators) + ")"


@dataclass(frozen=True)
class EnumerationBudget:
    max_count: int
    max_data_degree: int = 8

    def __post_init__(self):
        if self.max_count < 1 or self.max_data_degree < 1:
            raise ValueError("enumeration budget entries must be >= 1")


def height1(c: Poly2, index: int = 0) -> PrimeIdeal:
    return PrimeIdeal(HEIGHT1, (c.monic(),), index)


def maximal(f: Poly2, g: Poly2, index: int = 0) -> PrimeIdeal:
    return PrimeIdeal(MAXIMAL, (f.monic(), g), index)


def rational_point(field: Field, alpha, beta, index: int = 0) -> PrimeIdeal:
    u, v = Poly2.u(field), Poly2.v(field)
    return PrimeIdeal(MAXIMAL, (u - alpha, v - beta), index)


# -- brute-force primality ---------------------------------------------------


@functools.lru_cache(maxsize=None)
def _normalized_of_degree(field: Field, degree: int) -> tuple[Poly2, ...]:
    return tuple(
        p
        for p in all_polynomials(field, degree)
        if p.degree == degree and p.leading_coefficient == 1
    )


def find_factor(c: Poly2, max_degree: int) -> Poly2 | None:
    """A proper factor of ``c`` of total degree <= max_degree, searched exhaustively over F_p."""
    for d in range(1, min(max_degree, c.degree // 2) + 1):
        for h in _normalized_of_degree(c.field, d):
            if normal_form(c, [h]).is_zero():
                return h
    return None


def quotient_is_field(ideal: Ideal, budget: int = QUOTIENT_BUDGET) -> bool:
    """Decide whether F_p[u, v]/ideal is a field by exhausting its elements.

    A finite ring is a field iff every nonzero element satisfies
    ``a^(q-1) = 1`` where ``q`` is the ring's size.
    """
    field = ideal.field
    gb = ideal.basis
    if gb.is_unit():
        return False
    monos = gb.standard_monomials()
    if monos is None:
        return False
    size = field.p ** len(monos)
    if size > budget:
        raise BudgetExceededError(f"quotient has {size} elements (budget {budget})")
    one = Poly2.constant(field, 1)

    def mulmod(a, b):
        return gb.normal_form(a * b)

    for coeffs in itertools.product(field.elements(), repeat=len(monos)):
        a = Poly2(field, dict(zip(monos, coeffs)))
        if a.is_zero():
            continue
        result, base, e = one, a, size - 1
        while e:
            if e & 1:
                result = mulmod(result, base)
            e >>= 1
            if e:
                base = mulmod(base, base)
        if result != one:
            return False
    return True


def _shape_of(ideal) -> tuple[str, tuple[Poly2, ...]]:
    if isinstance(ideal, PrimeIdeal):
        return ideal.shape, ideal.generators
    gens = tuple(g for g in ideal.generators if not g.is_zero())
    if len(gens) == 1:
        return HEIGHT1, gens
    if len(gens) == 2 and gens[0].is_univariate_in_u() and not gens[1].is_univariate_in_u():
        return MAXIMAL, gens
    raise ShapeUnsupportedError(f"{ideal!r} is neither principal nor of shape (f(u), g(u, v))")


def is_prime(ideal, degree_bound: int) -> bool:
    """Primality of a principal or (f(u), g(u, v)) ideal.

    Principal ideals: the generator must be non-constant and have no factor
    of total degree <= degree_bound (the bound must reach half the degree,
    otherwise the search would be incomplete). Over Q irreducibility is
    delegated to sympy. Maximal candidates over F_p: the quotient ring is
    exhausted and tested for being a field.
    """
    shape, gens = _shape_of(ideal)
    field = gens[0].field
    if shape == HEIGHT1:
        (c,) = gens
        if c.is_constant():
            return False
        if field.is_finite():
            if degree_bound < c.degree // 2:
                raise BudgetExceededError(
                    f"degree bound {degree_bound} below half of deg {c.degree}"
                )
            return find_factor(c, degree_bound) is None
        return _irreducible_over_q(c)
    f, g = gens
    if not field.is_finite():
        if f.degree == 1 and g.degree == 1 and g.coefficient(0, 1) != 0 and g.v_degree == 1:
            return True
        raise ShapeUnsupportedError("over Q only rational points are supported as maximal ideals")
    if f.is_constant() or (find_factor(f, f.degree) is not None):
        return False
    return quotient_is_field(Ideal(gens))


def _irreducible_over_q(c: Poly2) -> bool:
    if c.degree == 1:
        return True
    import sympy

    u, v = sympy.symbols("u v")
    expr = sum(sympy.Rational(x.numerator, x.denominator) * u**i * v**j for (i, j), x in c.items())
    _, factors = sympy.factor_list(expr, u, v)
    return len(factors) == 1 and factors[0][1] == 1


# -- enumeration over F_p -----------------------------------------------------


def _height1_of_degree(field: Field, d: int) -> Iterator[Poly2]:
    # all_polynomials yields in ascending coefficient-vector order already
    for c in _normalized_of_degree(field, d):
        if find_factor(c, d // 2) is None:
            yield c


def _monic_irreducible_u(field: Field, d: int) -> list[Poly2]:
    out = []
    for coeffs in itertools.product(field.elements(), repeat=d):
        f = Poly2(field, {(i, 0): c for i, c in enumerate(coeffs)}) + Poly2.monomial(field, d, 0)
        if find_factor(f, d // 2) is None:
            out.append(f)
    return out


def _maximal_of_degree(field: Field, d: int) -> list[tuple[Poly2, Poly2]]:
    found = []
    for df in range(1, d + 1):
        for f in _monic_irreducible_u(field, df):
            for dg in range(1, d + 1):
                slots = [(i, j) for j in range(dg) for i in range(df) if i + j <= d]
                for coeffs in itertools.product(field.elements(), repeat=len(slots)):
                    terms = {m: c for m, c in zip(slots, coeffs) if c}
                    terms[(0, dg)] = 1
                    g = Poly2(field, terms)
                    if max(df, g.degree) != d:
                        continue
                    if quotient_is_field(Ideal([f, g])):
                        found.append((f, g))
    found.sort(key=lambda fg: (coefficient_key(fg[0], d), coefficient_key(fg[1], d)))
    return found


def iter_primes(field: Field, max_data_degree: int | None = None) -> Iterator[PrimeIdeal]:
    """Lazy stream of the primes of F_p[u, v] in enumeration order, indices from 1."""
    if not field.is_finite():
        raise UnsupportedEnumerationError("complete enumeration is only available over F_p")
    index = 1
    for d in itertools.count(1):
        if max_data_degree is not None and d > max_data_degree:
            return
        for c in _height1_of_degree(field, d):
            yield PrimeIdeal(HEIGHT1, (c,), index)
            index += 1
        for f, g in _maximal_of_degree(field, d):
            yield PrimeIdeal(MAXIMAL, (f, g), index)
            index += 1


# -- rational subfamily over Q ------------------------------------------------


def _rationals_of_height(h: int) -> list[Fraction]:
    if h == 0:
        return [Fraction(0)]
    out = set()
    for a in range(-h, h + 1):
        for b in range(1, h + 1):
            if a and math.gcd(a, b) == 1 and max(abs(a), b) == h:
                out.add(Fraction(a, b))
    return sorted(out, key=lambda x: (abs(x), x < 0))


def _height(x: Fraction) -> int:
    return 0 if x == 0 else max(abs(x.numerator), x.denominator)


def iter_rational_family() -> Iterator[PrimeIdeal]:
    """Linear height-one primes and rational points of Q[u, v], by coefficient height."""
    u, v = Poly2.u(QQ), Poly2.v(QQ)
    index = 1
    for h in itertools.count(0):
        upto = [x for k in range(h + 1) for x in _rationals_of_height(k)]
        lines = []
        for b in upto:
            for c in upto:
                if max(_height(b), _height(c)) == h:
                    lines.append(u + v * b + c)
        for c in upto:
            if _height(c) == h:
                lines.append(v + c)
        lines.sort(key=lambda p: coefficient_key(p, 1))
        for c in lines:
            yield PrimeIdeal(HEIGHT1, (c,), index)
            index += 1
        points = [
            (a, b) for a in upto for b in upto if max(_height(a), _height(b)) == h
        ]
        pts = [rational_point(QQ, a, b) for a, b in points]
        pts.sort(key=lambda m: (coefficient_key(m.generators[0], 1), coefficient_key(m.generators[1], 1)))
        for m in pts:
            yield m.with_index(index)
            index += 1


def enumerate_primes(
    field: Field,
    budget: EnumerationBudget,
    user_primes: Sequence[PrimeIdeal] | None = None,
    rational_family: bool = False,
) -> list[PrimeIdeal]:
    """A finite prefix of the enumeration.

    Over Q a user-supplied list (kept in the given order) or the built-in
    rational subfamily must be requested explicitly.
    """
    if user_primes is not None:
        return [p.with_index(i + 1) for i, p in enumerate(user_primes[: budget.max_count])]
    if field.is_finite():
        stream: Iterable[PrimeIdeal] = iter_primes(field, budget.max_data_degree)
    elif rational_family:
        stream = (p for p in iter_rational_family() if p.data_degree <= budget.max_data_degree)
    else:
        raise UnsupportedEnumerationError(
            "primes of Q[u, v] need a user-supplied list or the rational family flag"
        )
    return list(itertools.islice(stream, budget.max_count))


def ordering_id(field: Field, user_primes: bool = False) -> str:
    if user_primes:
        return USER_ORDERING
    return FINITE_ORDERING if field.is_finite() else RATIONAL_FAMILY_ORDERING
