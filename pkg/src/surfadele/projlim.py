"""Compatible residue systems modulo the tower ideals, and the series they come from.

An element of the intersection of the two adelic groups is represented by
its images r_n in k[u, v]/a_n. The tower is cofinal among nonzero ideals,
so equality of two such elements is decided only up to the tower depth.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import BadLiftError, InvalidSeriesError
from .groebner import ideal_membership
from .poly import Poly2
from .tower import IdealTower, convergence_schedule, prime_power


@dataclass(frozen=True)
class SeriesAdele:
    """A prefix f_1..f_N of a series converging away from the generic point.

    Every term after the prefix is assumed to lie in a_N; both the forged
    counterexample and series rebuilt from residues satisfy this.
    """

    tower: IdealTower
    terms: tuple[Poly2, ...]
    schedule: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.terms) > self.tower.depth:
            raise InvalidSeriesError("more terms than tower levels")
        if not self.schedule:
            object.__setattr__(self, "schedule", convergence_schedule(self.tower.depth, shift=1))

    @property
    def field(self):
        return self.tower.field

    def term(self, n: int) -> Poly2:
        return self.terms[n - 1] if n <= len(self.terms) else Poly2.zero(self.field)

    def padded_terms(self) -> list[Poly2]:
        return [self.term(n) for n in range(1, self.tower.depth + 1)]

    def partial_sums(self) -> list[Poly2]:
        out, total = [], Poly2.zero(self.field)
        for f in self.padded_terms():
            total = total + f
            out.append(total)
        return out

    def violations(self) -> list[str]:
        """Failures of f_n in a_{n-1} and of the schedule entries, empty when valid."""
        bad = []
        for n in range(2, self.tower.depth + 1):
            if not ideal_membership(self.term(n), self.tower.ideal(n - 1)).member:
                bad.append(f"f_{n} not in a_{n - 1}")
        for (n, m), e in sorted(self.schedule.items()):
            if n > self.tower.depth or m > n:
                bad.append(f"schedule entry ({n}, {m}) out of range")
                continue
            if not ideal_membership(self.term(n), prime_power(self.tower.prime(m), e)).member:
                bad.append(f"f_{n} not in p_{m}^{e}")
        return bad


@dataclass(frozen=True)
class ResidueSystem:
    tower: IdealTower
    residues: tuple[Poly2, ...]

    def __post_init__(self):
        if len(self.residues) > self.tower.depth:
            raise ValueError("more residues than tower levels")

    def to_json(self) -> dict:
        return {
            "field": self.tower.field.tag,
            "tower": self.tower.to_json(),
            "residues": [r.to_text() for r in self.residues],
        }


@dataclass(frozen=True)
class Compatibility:
    compatible: bool
    first_failure: int | None = None

    def __bool__(self):
        return self.compatible


def residues_from_series(series: SeriesAdele) -> ResidueSystem:
    """r_m = normal form of f_1 + ... + f_m against a_m."""
    bad = series.violations()
    if bad:
        raise InvalidSeriesError("; ".join(bad))
    tower = series.tower
    residues = tuple(
        tower.ideal(m).basis.normal_form(s) for m, s in enumerate(series.partial_sums(), start=1)
    )
    return ResidueSystem(tower, residues)


def check_compatibility(system: ResidueSystem) -> Compatibility:
    """r_{n+1} - r_n must lie in a_n; reports the first n where it does not."""
    r = system.residues
    for n in range(1, len(r)):
        if not ideal_membership(r[n] - r[n - 1], system.tower.ideal(n)).member:
            return Compatibility(False, n)
    return Compatibility(True)


def series_from_residues(
    system: ResidueSystem, lifts: Sequence[Poly2] | None = None
) -> SeriesAdele:
    """Telescoping series f_1 = h_1, f_n = h_n - h_{n-1} from lifts h_n of r_n.

    Without explicit lifts the residues themselves (normal forms) are used.
    """
    tower = system.tower
    hs = list(system.residues if lifts is None else lifts)
    if len(hs) != len(system.residues):
        raise BadLiftError("need exactly one lift per residue")
    for n, (h, r) in enumerate(zip(hs, system.residues), start=1):
        if not ideal_membership(h - r, tower.ideal(n)).member:
            raise BadLiftError(f"lift {n} does not reduce to its residue modulo a_{n}")
    terms = [hs[0]] + [hs[n] - hs[n - 1] for n in range(1, len(hs))]
    for n in range(2, len(terms) + 1):
        if not ideal_membership(terms[n - 1], tower.ideal(n - 1)).member:
            raise InvalidSeriesError(f"residues incompatible: f_{n} not in a_{n - 1}")
    series = SeriesAdele(tower.prefix(len(terms)), tuple(terms))
    return series
