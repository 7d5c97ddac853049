"""Forge and verify the series sum f_n that converges everywhere except at the
generic point of the affine plane yet is not a polynomial.

Construction, with t = u at the origin and F_l = {deg <= l}, a(l) = l + 1::

    f_1 = g_1
    l(2) = max(deg f_1, 1)
    l(n) = max(deg(f_1 + ... + f_{n-1}), l(n-1) + 1)     (n >= 3)
    f_n = u^a(l(n)) * g_n

where g_n is the witness chosen in the n-th tower ideal.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    CertificateFailedError,
    OutOfRangeError,
    PrefixTooShortError,
    UnsupportedEnumerationError,
)
from .fields import Field
from .groebner import Ideal, ideal_membership
from .poly import Poly2
from .primes import (
    FINITE_ORDERING,
    RATIONAL_FAMILY_ORDERING,
    USER_ORDERING,
    EnumerationBudget,
    PrimeIdeal,
    enumerate_primes,
    is_prime,
    ordering_id,
)
from .projlim import SeriesAdele
from .tower import (
    Filtration,
    IdealTower,
    a_of_l,
    build_tower,
    choose_witness,
    convergence_schedule,
    next_ideal,
    prime_power,
)

FAMILIES = (
    "enumeration",
    "tower",
    "witness",
    "filtration",
    "recursion",
    "terms",
    "tail_congruence",
    "nonvanishing",
    "convergence",
    "monotonicity",
    "report",
)


@dataclass(frozen=True)
class CheckItem:
    check: str
    n: int
    passed: bool
    m: int | None = None
    detail: str = ""

    def to_json(self) -> dict:
        out = {"check": self.check, "n": self.n}
        if self.m is not None:
            out["m"] = self.m
        out["pass"] = self.passed
        return out


@dataclass(frozen=True)
class VerificationReport:
    items: tuple[CheckItem, ...]
    claimed: bool | None = None

    @property
    def passed(self) -> bool:
        if self.claimed is not None:
            return self.claimed
        return all(i.passed for i in self.items)

    def failures(self) -> list[CheckItem]:
        return [i for i in self.items if not i.passed]

    def family(self, name: str) -> list[CheckItem]:
        return [i for i in self.items if i.check == name]

    def item(self, name: str, n: int, m: int | None = None) -> CheckItem:
        for i in self.items:
            if i.check == name and i.n == n and i.m == m:
                return i
        raise KeyError((name, n, m))

    def without(self, family: str) -> VerificationReport:
        return VerificationReport(tuple(i for i in self.items if i.check != family), self.claimed)

    def to_json(self) -> dict:
        return {"passed": self.passed, "items": [i.to_json() for i in self.items]}


@dataclass(frozen=True)
class CounterexampleCertificate:
    field: Field
    ordering: str
    tower: IdealTower
    filtration: Filtration
    l_of_n: tuple[int, ...]
    terms: tuple[Poly2, ...]
    schedule: dict
    checks: VerificationReport | None = None
    claimed_gaps: tuple[int, ...] | None = None

    @property
    def depth(self) -> int:
        return len(self.terms)

    def l(self, n: int) -> int:
        """l(n) for 2 <= n <= N."""
        return self.l_of_n[n - 2]

    @property
    def gaps(self) -> tuple[int, ...]:
        return tuple(a_of_l(l) for l in self.l_of_n)

    def partial_sum(self, n: int) -> Poly2:
        """f_1 + ... + f_n."""
        return sum(self.terms[:n], Poly2.zero(self.field))

    def next_level(self) -> int:
        """l(N + 1) as the recursion would choose it."""
        return max(self.partial_sum(self.depth).degree, self.l_of_n[-1] + 1 if self.l_of_n else 1)

    def as_series(self) -> SeriesAdele:
        return SeriesAdele(self.tower, self.terms, dict(self.schedule))

    def to_json(self) -> dict:
        filtration = self.filtration.to_json()
        filtration["gaps"] = list(self.gaps if self.claimed_gaps is None else self.claimed_gaps)
        return {
            "field": self.field.tag,
            "ordering": self.ordering,
            "tower": self.tower.to_json(),
            "filtration": filtration,
            "l_of_n": list(self.l_of_n),
            "terms": [f.to_text() for f in self.terms],
            "schedule": [{"n": n, "m": m, "e": e} for (n, m), e in sorted(self.schedule.items())],
            "checks": None if self.checks is None else self.checks.to_json(),
        }


def next_level(partial: Poly2, previous: int | None) -> int:
    """Minimal admissible l(n): contains the partial sum and exceeds l(n - 1)."""
    if previous is None:
        return max(partial.degree, 1)
    return max(partial.degree, previous + 1)


def forge_counterexample(
    field: Field,
    n: int,
    primes: Sequence[PrimeIdeal] | None = None,
    rational_family: bool = False,
) -> CounterexampleCertificate:
    """Run the recursion for N = n terms and self-verify the result."""
    if n < 2:
        raise OutOfRangeError(f"need at least two terms, got {n}")
    if primes is None:
        primes = enumerate_primes(field, EnumerationBudget(n), rational_family=rational_family)
        ordering = ordering_id(field)
    else:
        primes = [p.with_index(i + 1) for i, p in enumerate(primes)]
        ordering = USER_ORDERING
    if len(primes) < n:
        raise UnsupportedEnumerationError(f"only {len(primes)} primes available for {n} terms")
    tower = build_tower(primes, n)
    u = Poly2.u(field)
    terms = [tower.witnesses[0]]
    levels: list[int] = []
    partial = terms[0]
    for k in range(2, n + 1):
        level = next_level(partial, levels[-1] if levels else None)
        levels.append(level)
        f = (u ** a_of_l(level)) * tower.witnesses[k - 1]
        terms.append(f)
        partial = partial + f
    cert = CounterexampleCertificate(
        field=field,
        ordering=ordering,
        tower=tower,
        filtration=Filtration(),
        l_of_n=tuple(levels),
        terms=tuple(terms),
        schedule=convergence_schedule(n),
    )
    report = verify_certificate(cert)
    return dataclasses.replace(cert, checks=report)


def _u_power(field: Field, a: int) -> Ideal:
    return Ideal([Poly2.monomial(field, a, 0)])


def _expected_primes(cert: CounterexampleCertificate) -> list[PrimeIdeal] | None:
    n = len(cert.tower.primes)
    if cert.ordering == FINITE_ORDERING and cert.field.is_finite():
        return enumerate_primes(cert.field, EnumerationBudget(n))
    if cert.ordering == RATIONAL_FAMILY_ORDERING and not cert.field.is_finite():
        return enumerate_primes(cert.field, EnumerationBudget(n), rational_family=True)
    return None


def verify_certificate(cert: CounterexampleCertificate) -> VerificationReport:
    """Recompute every certificate claim from scratch.

    Besides the four families of the argument (tail congruence,
    nonvanishing, convergence, monotonicity) the structural claims are
    re-derived: the prime list, tower recursion, witness rule, level
    recursion, gap values and the terms themselves. When the certificate
    carries a stored report, it must coincide with the recomputed one.
    """
    items: list[CheckItem] = []
    add = items.append
    field = cert.field
    tower = cert.tower
    N = cert.depth
    u = Poly2.u(field)

    # enumeration
    expected = _expected_primes(cert)
    for k, p in enumerate(tower.primes, start=1):
        if cert.ordering == USER_ORDERING:
            ok = p.index == k and is_prime(p, max(p.data_degree, 1))
        elif expected is None:
            ok = False
        else:
            ok = k <= len(expected) and expected[k - 1].same_ideal(p) and p.index == k
        add(CheckItem("enumeration", k, ok))

    # tower recursion, compared up to mutual membership
    for k in range(1, tower.depth + 1):
        stored = tower.ideal(k)
        if k == 1:
            rebuilt = Ideal(tower.prime(1).generators)
        else:
            rebuilt = next_ideal(tower.ideal(k - 1), tower.prime(k))
        add(CheckItem("tower", k, stored.issubset(rebuilt) and rebuilt.issubset(stored)))

    for k in range(1, tower.depth + 1):
        g = tower.witnesses[k - 1]
        ok = (
            not g.is_zero()
            and g == choose_witness(tower.ideal(k))
            and ideal_membership(g, tower.ideal(k)).member
        )
        add(CheckItem("witness", k, ok))

    gaps_ok = cert.claimed_gaps is None or cert.claimed_gaps == cert.gaps
    add(CheckItem("filtration", 0, cert.filtration == Filtration() and gaps_ok))

    # level recursion and term formula
    consistent_shape = len(cert.l_of_n) == N - 1 and tower.depth == N
    for k in range(2, N + 1):
        ok = consistent_shape and cert.l(k) == next_level(
            cert.partial_sum(k - 1), cert.l(k - 1) if k > 2 else None
        )
        add(CheckItem("recursion", k, ok))
    for k in range(1, N + 1):
        f = cert.terms[k - 1]
        if not consistent_shape:
            add(CheckItem("terms", k, False, detail="inconsistent lengths"))
            continue
        if k == 1:
            ok = f == tower.witnesses[0]
        else:
            a = a_of_l(cert.l(k))
            ok = (
                f == u**a * tower.witnesses[k - 1]
                and ideal_membership(f, tower.ideal(k)).member
                and ideal_membership(f, _u_power(field, a)).member
            )
        add(CheckItem("terms", k, ok))

    if not consistent_shape:
        return VerificationReport(tuple(items))

    # (a) tail congruence and (b) nonvanishing, n = 1..N-1
    for k in range(1, N):
        modulus = _u_power(field, a_of_l(cert.l(k + 1)))
        tail = sum(cert.terms[k - 1 :], Poly2.zero(field))
        f = cert.terms[k - 1]
        add(CheckItem("tail_congruence", k, ideal_membership(tail - f, modulus).member))
        add(CheckItem("nonvanishing", k, not ideal_membership(f, modulus).member))

    # (c) convergence schedule
    expected_schedule = convergence_schedule(N)
    add(CheckItem("convergence", 0, dict(cert.schedule) == expected_schedule, detail="table"))
    for (k, m), e in sorted(cert.schedule.items()):
        if not (1 <= m <= k <= N):
            add(CheckItem("convergence", k, False, m))
            continue
        ok = ideal_membership(cert.terms[k - 1], prime_power(tower.prime(m), e)).member
        add(CheckItem("convergence", k, ok, m))

    # (d) monotonicity and filtration containment
    for k in range(2, N + 1):
        increasing = k == 2 or cert.l(k) > cert.l(k - 1)
        contained = cert.filtration.contains(cert.partial_sum(k - 1), cert.l(k))
        add(CheckItem("monotonicity", k, increasing and contained))
    for k in range(2, N):
        add(CheckItem("monotonicity", k, cert.filtration.contains(cert.terms[k - 1], cert.l(k + 1)), m=k + 1))

    report = VerificationReport(tuple(items))
    if cert.checks is not None:
        stored = cert.checks.without("report")
        report = VerificationReport(
            report.items + (CheckItem("report", 0, stored.to_json() == report.to_json()),)
        )
    return report


@dataclass(frozen=True)
class NonPolynomialEvidence:
    n: int
    level: int
    gap: int
    modulus_exponent: int
    tail_residue: Poly2
    term_residue: Poly2
    holds: bool


@dataclass(frozen=True)
class NonPolynomialityProof:
    """No polynomial of total degree <= degree_bound equals the series at the origin.

    Evidence for index n: the degree-bounded polynomial and the partial sum
    f_1 + ... + f_{n-1} both lie in F_l(n), so their difference would be the
    tail, which lies in (u^a(l(n))) and hence vanishes; yet the tail is
    congruent to f_n modulo u^a(l(n+1)) and f_n is nonzero there.
    """

    degree_bound: int
    evidence: tuple[NonPolynomialEvidence, ...]

    @property
    def holds(self) -> bool:
        return bool(self.evidence) and all(e.holds for e in self.evidence)

    def to_json(self) -> dict:
        return {
            "degree_bound": self.degree_bound,
            "holds": self.holds,
            "evidence": [
                {
                    "n": e.n,
                    "l": e.level,
                    "a": e.gap,
                    "modulus": f"u^{e.modulus_exponent}",
                    "tail_residue": e.tail_residue.to_text(),
                    "term_residue": e.term_residue.to_text(),
                    "holds": e.holds,
                }
                for e in self.evidence
            ],
        }


def certify_not_polynomial(cert: CounterexampleCertificate, degree_bound: int) -> NonPolynomialityProof:
    if degree_bound < 0:
        raise OutOfRangeError("degree bound must be >= 0")
    report = verify_certificate(cert)
    if not report.passed:
        raise CertificateFailedError("certificate does not verify")
    N = cert.depth
    if degree_bound >= cert.l(N):
        raise PrefixTooShortError(
            f"degree bound {degree_bound} needs l(N) > {degree_bound}; l({N}) = {cert.l(N)}"
        )
    first = min(k for k in range(2, N + 1) if cert.l(k) >= degree_bound)
    indices = range(first, N) if first < N else [N]
    field = cert.field
    evidence = []
    for k in indices:
        nxt = cert.l(k + 1) if k < N else cert.next_level()
        exponent = a_of_l(nxt)
        modulus = _u_power(field, exponent).basis
        tail = modulus.normal_form(sum(cert.terms[k - 1 :], Poly2.zero(field)))
        term = modulus.normal_form(cert.terms[k - 1])
        holds = (
            tail == term
            and not term.is_zero()
            and cert.filtration.contains(cert.partial_sum(k - 1), cert.l(k))
            and degree_bound <= cert.l(k)
            and ideal_membership(cert.terms[k - 1], _u_power(field, a_of_l(cert.l(k)))).member
        )
        evidence.append(NonPolynomialEvidence(k, cert.l(k), a_of_l(cert.l(k)), exponent, tail, term, holds))
    return NonPolynomialityProof(degree_bound, tuple(evidence))
