"""The ideal tower a_1 = p_1, a_n = a_{n-1}^2 * p_n and the degree filtration."""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass
from typing import Sequence

from .errors import OutOfRangeError
from .fields import Field
from .groebner import Ideal, ideal_membership, ideal_power, ideal_product
from .poly import Poly2, all_polynomials, monomials_up_to, text_sort_key
from .primes import PrimeIdeal

GAP_BUDGET = 2**17


@dataclass(frozen=True)
class Filtration:
    """F_l = polynomials of total degree <= l, read at the origin with parameter t = u."""

    rule: str = "total-degree"
    point: tuple[int, int] = (0, 0)
    parameter: str = "u"

    def contains(self, f: Poly2, level: int) -> bool:
        return f.degree <= level

    def level(self, f: Poly2) -> int:
        return max(f.degree, 0)

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "point": f"({self.point[0]},{self.point[1]})",
            "parameter": self.parameter,
        }


def a_of_l(l: int) -> int:
    """Least a with F_l meeting (u^a) only in 0."""
    if l < 0:
        raise OutOfRangeError(f"filtration level must be >= 0, got {l}")
    return l + 1


@dataclass(frozen=True)
class GapReport:
    level: int
    gap: int
    verified: bool
    method: str
    checked: int
    counterexample: Poly2 | None = None

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    def to_json(self) -> dict:
        return {
            "l": self.level,
            "a": self.gap,
            "verified": self.verified,
            "method": self.method,
            "checked": self.checked,
            "counterexample": None if self.counterexample is None else self.counterexample.to_text(),
        }


def verify_filtration_gap(
    l: int, field: Field, budget: int = GAP_BUDGET, samples: int = 2000, seed: int = 0
) -> GapReport:
    """Check that no nonzero member of F_l lies in (u^(l+1)).

    Exhaustive while p^dim(F_l) fits the budget; otherwise random members
    are sampled and the report is flagged unverified.
    """
    gap = a_of_l(l)
    ideal = Ideal([Poly2.monomial(field, gap, 0)])
    monos = monomials_up_to(l)
    size = field.p ** len(monos)
    if size <= budget:
        checked = 0
        for f in all_polynomials(field, l):
            if f.is_zero():
                continue
            checked += 1
            if ideal_membership(f, ideal).member:
                return GapReport(l, gap, True, "exhaustive", checked, f)
        return GapReport(l, gap, True, "exhaustive", checked)
    rng = random.Random(seed)
    checked = 0
    for _ in range(samples):
        f = Poly2(field, {m: rng.randrange(field.p) for m in monos})
        if f.is_zero():
            continue
        checked += 1
        if ideal_membership(f, ideal).member:
            return GapReport(l, gap, False, "sampled", checked, f)
    return GapReport(l, gap, False, "sampled", checked)


@functools.lru_cache(maxsize=4096)
def prime_power(prime: PrimeIdeal, e: int) -> Ideal:
    return ideal_power(Ideal(prime.generators), e)


def choose_witness(ideal: Ideal) -> Poly2:
    """The generator minimal in (total degree, canonical text)."""
    return min((g for g in ideal.generators if not g.is_zero()), key=text_sort_key)


@dataclass(frozen=True)
class IdealTower:
    primes: tuple[PrimeIdeal, ...]
    ideals: tuple[Ideal, ...]
    witnesses: tuple[Poly2, ...]

    @property
    def field(self) -> Field:
        return self.primes[0].field

    @property
    def depth(self) -> int:
        return len(self.ideals)

    def ideal(self, n: int) -> Ideal:
        """a_n, 1-based."""
        return self.ideals[n - 1]

    def prime(self, n: int) -> PrimeIdeal:
        return self.primes[n - 1]

    def prefix(self, n: int) -> IdealTower:
        return IdealTower(self.primes[:n], self.ideals[:n], self.witnesses[:n])

    def to_json(self) -> dict:
        return {
            "primes": [p.to_json() for p in self.primes],
            "ideals": [[g.to_text() for g in a.generators] for a in self.ideals],
            "witnesses": [g.to_text() for g in self.witnesses],
        }


def next_ideal(previous: Ideal, prime: PrimeIdeal) -> Ideal:
    return ideal_product(ideal_power(previous, 2), Ideal(prime.generators))


def build_tower(primes: Sequence[PrimeIdeal], n: int) -> IdealTower:
    if not primes:
        raise ValueError("empty prime prefix")
    if not 1 <= n <= len(primes):
        raise OutOfRangeError(f"tower depth {n} outside 1..{len(primes)}")
    primes = tuple(primes[:n])
    ideals = [Ideal(primes[0].generators)]
    for p in primes[1:]:
        ideals.append(next_ideal(ideals[-1], p))
    witnesses = tuple(choose_witness(a) for a in ideals)
    return IdealTower(primes, tuple(ideals), witnesses)


def convergence_schedule(depth: int, shift: int = 0) -> dict[tuple[int, int], int]:
    """e(n, m) = 2^(n - shift - m) for m <= n - shift.

    Terms of a forged series lie in a_n (shift 0); terms rebuilt from a
    residue system only lie in a_{n-1} (shift 1). Either way a_k sits inside
    p_m^(2^(k - m)).
    """
    return {
        (n, m): 2 ** (n - shift - m)
        for n in range(1, depth + 1)
        for m in range(1, n - shift + 1)
    }


def containment_checks(tower: IdealTower) -> list[tuple[int, int, int, bool]]:
    """(n, m, e, ok): every generator of a_n lies in p_m^e with e = 2^(n - m)."""
    out = []
    for (n, m), e in sorted(convergence_schedule(tower.depth).items()):
        target = prime_power(tower.prime(m), e)
        ok = all(ideal_membership(g, target).member for g in tower.ideal(n).generators)
        out.append((n, m, e, ok))
    return out
