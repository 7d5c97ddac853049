"""Ideals of k[u, v] and Groebner-basis decision procedures.

The monomial order is fixed (graded reverse lexicographic, u > v) so that
every reduced basis, and therefore every normal form written into a
certificate, is reproducible.
"""

from __future__ import annotations

import functools
import heapq
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DegenerateIdealError, FieldMismatchError, OutOfRangeError
from .poly import ORDER_NAME, Monomial, Poly2, divides, order_key


@dataclass(frozen=True)
class MonomialOrder:
    kind: str = ORDER_NAME

    def key(self, m: Monomial):
        return order_key(m)


GREVLEX = MonomialOrder()


@dataclass(frozen=True)
class GroebnerBasis:
    elements: tuple[Poly2, ...]
    order: MonomialOrder = GREVLEX

    @property
    def field(self):
        return self.elements[0].field

    def leading_monomials(self) -> list[Monomial]:
        return [g.leading_monomial for g in self.elements]

    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_constant()

    def normal_form(self, f: Poly2) -> Poly2:
        return normal_form(f, self.elements)

    def standard_monomials(self, limit: int = 10**6) -> list[Monomial] | None:
        """Monomials outside the leading-term ideal, or None if there are infinitely many."""
        lms = self.leading_monomials()
        pure_u = [i for i, j in lms if j == 0]
        pure_v = [j for i, j in lms if i == 0]
        if not pure_u or not pure_v:
            return None
        out = [
            (i, j)
            for i in range(min(pure_u))
            for j in range(min(pure_v))
            if not any(divides(m, (i, j)) for m in lms)
        ]
        if len(out) > limit:
            return None
        return sorted(out, key=order_key)


def _reduce(f: Poly2, basis: Sequence[Poly2], quotients: list[dict] | None = None) -> Poly2:
    """Full reduction of ``f`` by ``basis``; optionally records quotient terms."""
    field = f.field
    norm = field.norm
    divisors = []
    for g in basis:
        lm = g.leading_monomial
        inv = field.inv(g.terms[lm])
        rest = [(m, c) for m, c in g.items() if m != lm]
        divisors.append((lm, inv, rest))

    work = dict(f.items())
    heap = [(-a - b, -a, a, b) for (a, b) in work]
    heapq.heapify(heap)
    remainder = {}
    while heap:
        _, _, a, b = heapq.heappop(heap)
        m = (a, b)
        c = work.pop(m, None)
        if c is None:
            continue
        for idx, (lm, inv, rest) in enumerate(divisors):
            if lm[0] <= a and lm[1] <= b:
                q = norm(c * inv)
                di, dj = a - lm[0], b - lm[1]
                if quotients is not None:
                    qd = quotients[idx]
                    s = norm(qd.get((di, dj), 0) + q)
                    if s:
                        qd[(di, dj)] = s
                    else:
                        qd.pop((di, dj), None)
                for (gi, gj), gc in rest:
                    t = (gi + di, gj + dj)
                    old = work.get(t)
                    if old is None:
                        val = norm(-q * gc)
                        if val:
                            work[t] = val
                            heapq.heappush(heap, (-t[0] - t[1], -t[0], t[0], t[1]))
                    else:
                        val = norm(old - q * gc)
                        if val:
                            work[t] = val
                        else:
                            del work[t]
                break
        else:
            remainder[m] = c
    return Poly2._raw(field, remainder)


def normal_form(f: Poly2, basis: Sequence[Poly2]) -> Poly2:
    if not basis:
        return f
    return _reduce(f, basis)


def divide(f: Poly2, divisors: Sequence[Poly2]) -> tuple[list[Poly2], Poly2]:
    """Multivariate division: returns (quotients, remainder) with f = sum q_i g_i + r."""
    qs: list[dict] = [{} for _ in divisors]
    r = _reduce(f, divisors, qs)
    return [Poly2._raw(f.field, q) for q in qs], r


def exact_divide(f: Poly2, g: Poly2) -> Poly2 | None:
    """f / g if g divides f exactly, else None."""
    (q,), r = divide(f, [g])
    return q if r.is_zero() else None


def _spoly(f: Poly2, g: Poly2) -> Poly2:
    (a, b), (c, d) = f.leading_monomial, g.leading_monomial
    l = (max(a, c), max(b, d))
    return f.mul_monomial(l[0] - a, l[1] - b) - g.mul_monomial(l[0] - c, l[1] - d)


def groebner_basis(gens: Iterable[Poly2], order: MonomialOrder = GREVLEX) -> GroebnerBasis:
    """Reduced Groebner basis by Buchberger's algorithm (normal selection strategy)."""
    if order != GREVLEX:
        raise ValueError(f"unsupported monomial order {order.kind}")
    polys = [g for g in gens if not g.is_zero()]
    if not polys:
        raise DegenerateIdealError("all generators are zero")
    field = polys[0].field
    if any(g.field != field for g in polys):
        raise FieldMismatchError("generators over different fields")

    G: list[Poly2] = []
    seen = set()
    for g in polys:
        g = g.monic()
        if g not in seen:
            seen.add(g)
            G.append(g)
    if any(g.is_constant() for g in G):
        return GroebnerBasis((Poly2.constant(field, 1),), order)

    def lcm_key(i, j):
        (a, b), (c, d) = G[i].leading_monomial, G[j].leading_monomial
        return (order_key((max(a, c), max(b, d))), i, j)

    pairs = [lcm_key(i, j) for j in range(len(G)) for i in range(j)]
    heapq.heapify(pairs)
    while pairs:
        _, i, j = heapq.heappop(pairs)
        (a, b), (c, d) = G[i].leading_monomial, G[j].leading_monomial
        if min(a, c) == 0 and min(b, d) == 0:
            # coprime leading monomials: S-polynomial reduces to zero
            continue
        h = normal_form(_spoly(G[i], G[j]), G)
        if h.is_zero():
            continue
        h = h.monic()
        if h.is_constant():
            return GroebnerBasis((Poly2.constant(field, 1),), order)
        G.append(h)
        k = len(G) - 1
        for i2 in range(k):
            heapq.heappush(pairs, lcm_key(i2, k))

    # minimalize, then interreduce
    G.sort(key=lambda g: order_key(g.leading_monomial))
    minimal: list[Poly2] = []
    for g in G:
        if not any(divides(h.leading_monomial, g.leading_monomial) for h in minimal):
            minimal.append(g)
    reduced = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1 :]
        reduced.append(normal_form(g, others).monic())
    reduced.sort(key=lambda g: order_key(g.leading_monomial), reverse=True)
    return GroebnerBasis(tuple(reduced), order)


class Ideal:
    """A finitely generated ideal of k[u, v] with a lazily cached reduced basis."""

    def __init__(self, generators: Iterable[Poly2]):
        gens = tuple(generators)
        if not gens or all(g.is_zero() for g in gens):
            raise DegenerateIdealError("ideal needs a nonzero generator")
        self.field = gens[0].field
        if any(g.field != self.field for g in gens):
            raise FieldMismatchError("generators over different fields")
        self.generators = gens

    @functools.cached_property
    def basis(self) -> GroebnerBasis:
        return groebner_basis(self.generators)

    def contains(self, f: Poly2) -> bool:
        return ideal_membership(f, self).member

    def __contains__(self, f: Poly2) -> bool:
        return self.contains(f)

    def is_principal_form(self) -> bool:
        return sum(1 for g in self.generators if not g.is_zero()) == 1

    def same_as(self, other: Ideal) -> bool:
        """Equality as ideals, decided by comparing reduced bases."""
        return self.basis.elements == other.basis.elements

    def issubset(self, other: Ideal) -> bool:
        return all(other.contains(g) for g in self.generators)

    def __repr__(self):
        return "Ideal(" + ", ".join(g.to_text() for g in self.generators) + ")"


@dataclass(frozen=True)
class Membership:
    member: bool
    normal_form: Poly2

    def __bool__(self):
        return self.member


def ideal_membership(f: Poly2, ideal: Ideal) -> Membership:
    if f.field != ideal.field:
        raise FieldMismatchError("polynomial and ideal over different fields")
    r = ideal.basis.normal_form(f)
    return Membership(r.is_zero(), r)


def _dedupe(polys: Iterable[Poly2]) -> list[Poly2]:
    out, seen = [], set()
    for p in polys:
        if p.is_zero() or p in seen:
            continue
        seen.add(p)
        out.append(p)
    return out


def ideal_product(a: Ideal, b: Ideal) -> Ideal:
    """Product ideal, generated by all pairwise products (exact duplicates dropped)."""
    if a.field != b.field:
        raise FieldMismatchError("ideals over different fields")
    return Ideal(_dedupe(g * h for g in a.generators for h in b.generators))


def ideal_power(ideal: Ideal, e: int) -> Ideal:
    if e < 1:
        raise OutOfRangeError(f"ideal exponent must be >= 1, got {e}")
    if ideal.is_principal_form():
        (g,) = [g for g in ideal.generators if not g.is_zero()]
        return Ideal([g**e])
    result = ideal
    for _ in range(e - 1):
        result = ideal_product(result, ideal)
    return result


def principal(f: Poly2) -> Ideal:
    return Ideal([f])
