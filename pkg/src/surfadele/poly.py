"""Sparse exact polynomials in k[u, v].

A :class:`Poly2` maps exponent pairs ``(i, j)`` (meaning ``u^i * v^j``) to
nonzero coefficients. Terms are ordered by graded reverse lexicographic order
with ``u > v``; in two variables this coincides with the key
``(i + j, i)``.

The canonical text form lists terms in descending order, e.g.
``u^11*v^2 + u^10*v^3`` over F_2 or ``u^2 - 1/2*v`` over Q.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import FieldMismatchError, PolynomialParseError
from .fields import Field

Monomial = tuple[int, int]

ORDER_NAME = "grevlex(u>v)"


def order_key(m: Monomial) -> tuple[int, int]:
    """Sort key of a monomial in grevlex with u > v."""
    return (m[0] + m[1], m[0])


def divides(a: Monomial, b: Monomial) -> bool:
    return a[0] <= b[0] and a[1] <= b[1]


def monomials_up_to(degree: int) -> list[Monomial]:
    """All monomials of total degree <= degree, ascending in the monomial order."""
    return sorted(((i, d - i) for d in range(degree + 1) for i in range(d + 1)), key=order_key)


class Poly2:
    __slots__ = ("field", "_terms", "_hash")

    def __init__(self, field: Field, terms: dict | None = None):
        self.field = field
        clean = {}
        if terms:
            for m, c in terms.items():
                c = field.norm(c)
                if c:
                    clean[(int(m[0]), int(m[1]))] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, field: Field, terms: dict) -> Poly2:
        # caller guarantees normalized, nonzero coefficients
        p = cls.__new__(cls)
        p.field = field
        p._terms = terms
        p._hash = None
        return p

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, field: Field) -> Poly2:
        return cls._raw(field, {})

    @classmethod
    def constant(cls, field: Field, c) -> Poly2:
        return cls(field, {(0, 0): c})

    @classmethod
    def monomial(cls, field: Field, i: int, j: int, c=1) -> Poly2:
        return cls(field, {(i, j): c})

    @classmethod
    def u(cls, field: Field) -> Poly2:
        return cls.monomial(field, 1, 0)

    @classmethod
    def v(cls, field: Field) -> Poly2:
        return cls.monomial(field, 0, 1)

    @classmethod
    def parse(cls, field: Field, text: str, canonical: bool = False) -> Poly2:
        """Parse ``text``; with ``canonical=True`` the text must already be canonical."""
        p = _Parser(field, text).parse()
        if canonical and p.to_text() != text:
            raise PolynomialParseError(f"not in canonical form: {text!r} (expected {p.to_text()!r})")
        return p

    # -- inspection -----------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, i: int, j: int):
        return self._terms.get((i, j), self.field.zero)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((i + j for i, j in self._terms), default=-1)

    @property
    def u_degree(self) -> int:
        return max((i for i, _ in self._terms), default=-1)

    @property
    def v_degree(self) -> int:
        return max((j for _, j in self._terms), default=-1)

    def is_constant(self) -> bool:
        return all(m == (0, 0) for m in self._terms)

    def is_univariate_in_u(self) -> bool:
        return all(j == 0 for _, j in self._terms)

    @property
    def leading_monomial(self) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self._terms, key=order_key)

    @property
    def leading_coefficient(self):
        return self._terms[self.leading_monomial]

    def sorted_terms(self) -> list[tuple[Monomial, object]]:
        return sorted(self._terms.items(), key=lambda t: order_key(t[0]), reverse=True)

    def monic(self) -> Poly2:
        if not self._terms:
            return self
        inv = self.field.inv(self.leading_coefficient)
        return self.scale(inv)

    # -- arithmetic -----------------------------------------------------
    def _check(self, other: Poly2):
        if other.field != self.field:
            raise FieldMismatchError(f"{self.field!r} vs {other.field!r}")

    def _coerce(self, other) -> Poly2:
        if isinstance(other, Poly2):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Poly2.constant(self.field, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        norm = self.field.norm
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = norm(out.get(m, 0) + c)
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly2._raw(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        norm = self.field.norm
        return Poly2._raw(self.field, {m: norm(-c) for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        norm = self.field.norm
        out: dict = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                m = (i1 + i2, j1 + j2)
                out[m] = out.get(m, 0) + c1 * c2
        clean = {}
        for m, c in out.items():
            c = norm(c)
            if c:
                clean[m] = c
        return Poly2._raw(self.field, clean)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = Poly2.constant(self.field, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c) -> Poly2:
        norm = self.field.norm
        c = norm(c)
        if not c:
            return Poly2.zero(self.field)
        return Poly2._raw(self.field, {m: norm(a * c) for m, a in self._terms.items()})

    def mul_monomial(self, i: int, j: int, c=1) -> Poly2:
        norm = self.field.norm
        c = norm(c)
        if not c:
            return Poly2.zero(self.field)
        return Poly2._raw(
            self.field, {(a + i, b + j): norm(x * c) for (a, b), x in self._terms.items()}
        )

    def truncate(self, precision: int) -> Poly2:
        """Drop every term of total degree >= precision."""
        return Poly2._raw(
            self.field, {m: c for m, c in self._terms.items() if m[0] + m[1] < precision}
        )

    def evaluate(self, a, b):
        norm = self.field.norm
        total = 0
        for (i, j), c in self._terms.items():
            total += c * a**i * b**j
        return norm(total)

    def shift(self, alpha, beta) -> Poly2:
        """Substitute u -> u + alpha, v -> v + beta."""
        field = self.field
        if not field.norm(alpha) and not field.norm(beta):
            return self
        su = Poly2(field, {(1, 0): 1, (0, 0): alpha})
        sv = Poly2(field, {(0, 1): 1, (0, 0): beta})
        upow = [Poly2.constant(field, 1)]
        vpow = [Poly2.constant(field, 1)]
        for _ in range(self.u_degree):
            upow.append(upow[-1] * su)
        for _ in range(self.v_degree):
            vpow.append(vpow[-1] * sv)
        out = Poly2.zero(field)
        for (i, j), c in self._terms.items():
            out = out + (upow[i] * vpow[j]).scale(c)
        return out

    # -- comparison and text -------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly2):
            return self.field == other.field and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Poly2.constant(self.field, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, frozenset(self._terms.items())))
        return self._hash

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for (i, j), c in self.sorted_terms():
            pieces.append(_render_term(self.field, i, j, c))
        out = pieces[0]
        for piece in pieces[1:]:
            out += " - " + piece[1:] if piece.startswith("-") else " + " + piece
        return out

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Poly2({self.field.tag}, {self.to_text()!r})"


def _render_term(field: Field, i: int, j: int, c) -> str:
    parts = []
    if i:
        parts.append("u" if i == 1 else f"u^{i}")
    if j:
        parts.append("v" if j == 1 else f"v^{j}")
    mono = "*".join(parts)
    coeff = field.render(c)
    if not mono:
        return coeff
    if coeff == "1":
        return mono
    if coeff == "-1":
        return "-" + mono
    return f"{coeff}*{mono}"


def text_sort_key(p: Poly2) -> tuple[int, str]:
    """Order by (total degree, canonical text)."""
    return (p.degree, p.to_text())


def coefficient_key(p: Poly2, degree: int) -> tuple:
    """Coefficient vector over monomials of degree <= ``degree``, lowest monomial first.

    Comparing these tuples lexicographically is the tie-break used by the
    prime enumeration.
    """
    return tuple(_sortable(p.coefficient(*m)) for m in monomials_up_to(degree))


def _sortable(c):
    if isinstance(c, Fraction):
        return (max(abs(c.numerator), c.denominator), c < 0, abs(c))
    return c


def all_polynomials(field: Field, degree: int) -> Iterator[Poly2]:
    """Every polynomial of total degree <= degree over a finite field, zero included."""
    import itertools

    monos = monomials_up_to(degree)
    for coeffs in itertools.product(field.elements(), repeat=len(monos)):
        yield Poly2._raw(field, {m: c for m, c in zip(monos, coeffs) if c})


def poly_sum(field: Field, polys: Iterable[Poly2]) -> Poly2:
    total = Poly2.zero(field)
    for p in polys:
        total = total + p
    return total


# -- parsing ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([uv])|(\^)|(\*)|(\+)|(-)|(\()|(\))|(/))")


class _Parser:
    def __init__(self, field: Field, text: str):
        self.field = field
        self.text = text
        self.tokens = self._tokenize(text)
        self.pos = 0

    def _tokenize(self, text):
        out = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise PolynomialParseError(f"unexpected character at {pos} in {text!r}")
            kinds = ("num", "var", "^", "*", "+", "-", "(", ")", "/")
            for kind, g in zip(kinds, m.groups()):
                if g is not None:
                    out.append((kind, g))
                    break
            pos = m.end()
        if not out:
            raise PolynomialParseError("empty polynomial text")
        return out

    def peek(self):
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def take(self, kind=None):
        if self.pos >= len(self.tokens):
            raise PolynomialParseError(f"unexpected end of {self.text!r}")
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise PolynomialParseError(f"expected {kind!r}, got {tok[1]!r} in {self.text!r}")
        self.pos += 1
        return tok

    def parse(self) -> Poly2:
        p = self.expr()
        if self.pos != len(self.tokens):
            raise PolynomialParseError(f"trailing input in {self.text!r}")
        return p

    def expr(self) -> Poly2:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        total = self.term().scale(sign)
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            total = total + t if op == "+" else total - t
        return total

    def term(self) -> Poly2:
        p = self.factor()
        while self.peek() == "*":
            self.take()
            p = p * self.factor()
        return p

    def factor(self) -> Poly2:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            base = base ** int(self.take("num")[1])
        return base

    def atom(self) -> Poly2:
        kind = self.peek()
        field = self.field
        if kind == "num":
            num = int(self.take()[1])
            den = 1
            if self.peek() == "/":
                self.take()
                den = int(self.take("num")[1])
                if den == 0:
                    raise PolynomialParseError("zero denominator")
            return Poly2.constant(field, field.from_ratio(num, den))
        if kind == "var":
            name = self.take()[1]
            return Poly2.u(field) if name == "u" else Poly2.v(field)
        if kind == "(":
            self.take()
            p = self.expr()
            self.take(")")
            return p
        raise PolynomialParseError(f"unexpected token in {self.text!r}")
