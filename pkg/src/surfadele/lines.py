"""Restricting a truncated Taylor series at the origin to the lines u = lambda*v.

Writing the series as sum a_ij u^i v^j, the coefficient of v^n after the
substitution u = lambda*v is p_n(lambda) with

    p_n(t) = sum_{i=0..n} a_{i, n-i} t^i.

If the restriction to a line is a polynomial of degree < d(lambda), then
p_n(lambda) = 0 for all n >= d(lambda); a nonzero p_n has at most n roots, so
enough lines force p_n = 0. Over a finite field there may not be enough
lines, which :func:`finite_field_evasion_series` exhibits.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .completions import TruncatedPointSeries
from .errors import OutOfPrecisionError
from .fields import Field, prime_field
from .poly import Poly2

FORCED = "forced-polynomial"
INCONCLUSIVE = "inconclusive"
CONTRADICTION = "contradiction"


@dataclass(frozen=True)
class DiagonalPolynomial:
    """p_n(t), stored densely: coefficients[i] is the coefficient of t^i."""

    field: Field
    n: int
    coefficients: tuple

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coefficients):
            acc = self.field.norm(acc * t + c)
        return acc

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def __add__(self, other: DiagonalPolynomial) -> DiagonalPolynomial:
        if other.n != self.n:
            raise ValueError("diagonals of different index")
        norm = self.field.norm
        return DiagonalPolynomial(
            self.field, self.n, tuple(norm(a + b) for a, b in zip(self.coefficients, other.coefficients))
        )

    def to_text(self) -> str:
        # reuse Poly2 rendering with t written as u
        p = Poly2(self.field, {(i, 0): c for i, c in enumerate(self.coefficients)})
        return p.to_text().replace("u", "t")


@dataclass(frozen=True)
class LineRestriction:
    lam: object
    precision: int
    coefficients: tuple

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def degree(self) -> int:
        return max((n for n, c in enumerate(self.coefficients) if c), default=-1)


def _require_origin(series: TruncatedPointSeries):
    if any(series.center):
        raise ValueError("line restriction needs a series centred at the origin")


def restrict_to_line(series: TruncatedPointSeries, lam) -> LineRestriction:
    """Substitute u = lam*v and collect powers of v below the precision."""
    _require_origin(series)
    field = series.field
    lam = field.norm(lam)
    coeffs = [0] * series.precision
    for (i, j), c in series.terms.items():
        coeffs[i + j] += c * lam**i
    return LineRestriction(lam, series.precision, tuple(field.norm(c) for c in coeffs))


def diagonal_polynomial(series: TruncatedPointSeries, n: int) -> DiagonalPolynomial:
    if not 0 <= n < series.precision:
        raise OutOfPrecisionError(f"diagonal {n} outside precision {series.precision}")
    field = series.field
    return DiagonalPolynomial(field, n, tuple(series.coefficient(i, n - i) for i in range(n + 1)))


@dataclass(frozen=True)
class DiagonalVerdict:
    n: int
    forcing: int
    forced: bool
    vanishes: bool
    status: str

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "forcing_lines": self.forcing,
            "forced": self.forced,
            "vanishes": self.vanishes,
            "status": self.status,
        }


@dataclass(frozen=True)
class DichotomyResult:
    verdict: str
    per_n: tuple[DiagonalVerdict, ...]
    violations: tuple = ()

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "per_n": [d.to_json() for d in self.per_n],
            "violations": [{"lambda": str(l), "n": n} for l, n in self.violations],
        }


def dichotomy_check(series: TruncatedPointSeries, samples: Sequence[tuple[object, int]]) -> DichotomyResult:
    """Decide what line data says about the truncation.

    ``samples`` pairs each lambda with a bound d(lambda): the restriction to
    u = lambda*v is assumed to have no v^n term for n >= d(lambda). The
    verdict is ``contradiction`` if the series breaks an assumption,
    ``forced-polynomial`` if every diagonal from the largest bound up to the
    precision is pinned to zero by more roots than its degree, and
    ``inconclusive`` otherwise.
    """
    _require_origin(series)
    field = series.field
    lams = [field.norm(l) for l, _ in samples]
    if len(set(lams)) != len(lams):
        raise ValueError("sample lambdas must be pairwise distinct")
    bounds = [int(d) for _, d in samples]
    diagonals = [diagonal_polynomial(series, n) for n in range(series.precision)]

    violations = [
        (lam, n)
        for lam, d in zip(lams, bounds)
        for n in range(max(d, 0), series.precision)
        if diagonals[n](lam)
    ]

    per_n = []
    for n, p in enumerate(diagonals):
        forcing = sum(1 for d in bounds if d <= n)
        forced = forcing > n
        vanishes = p.is_zero()
        if forcing == 0:
            status = "free"
        elif forced:
            status = "forced-zero" if vanishes else "violated"
        else:
            status = "underdetermined"
        per_n.append(DiagonalVerdict(n, forcing, forced, vanishes, status))

    if violations:
        verdict = CONTRADICTION
    else:
        start = max(bounds, default=series.precision)
        tail = per_n[start:]
        if tail and all(d.forced and d.vanishes for d in tail):
            verdict = FORCED
        else:
            verdict = INCONCLUSIVE
    return DichotomyResult(verdict, tuple(per_n), tuple(violations))


def series_from_diagonals(field: Field, diagonals: Sequence[Sequence], precision: int) -> TruncatedPointSeries:
    """Inverse of reading diagonals: diagonals[n][i] becomes the coefficient of u^i v^(n-i)."""
    terms = {}
    for n, coeffs in enumerate(diagonals[:precision]):
        for i, c in enumerate(coeffs):
            terms[(i, n - i)] = c
    return TruncatedPointSeries(field, (0, 0), precision, Poly2(field, terms))


def finite_field_evasion_series(p: int, precision: int) -> TruncatedPointSeries:
    """Diagonals p_n(t) = t^(n-p) (t^p - t) for n >= p, zero below.

    Every p_n vanishes on all of F_p, so each restriction to u = lambda*v
    with lambda in F_p is zero, while the truncation itself is not.
    """
    if precision < p + 1:
        raise ValueError(f"precision must be at least p + 1 = {p + 1}")
    field = prime_field(p)
    diagonals = []
    for n in range(precision):
        coeffs = [0] * (n + 1)
        if n >= p:
            coeffs[n] = 1
            coeffs[n - p + 1] = field.norm(coeffs[n - p + 1] - 1)
        diagonals.append(coeffs)
    return series_from_diagonals(field, diagonals, precision)
