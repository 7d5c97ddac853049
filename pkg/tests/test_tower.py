import pytest

from conftest import F2, F3, QQ, P
from oracles import all_dicts, as_dict, divisible_by_power
from surfadele.errors import OutOfRangeError
from surfadele.groebner import Ideal, ideal_membership
from surfadele.primes import EnumerationBudget, enumerate_primes, height1
from surfadele.tower import (
    Filtration,
    a_of_l,
    build_tower,
    choose_witness,
    containment_checks,
    convergence_schedule,
    verify_filtration_gap,
)


def f2_primes(n):
    return enumerate_primes(F2, EnumerationBudget(n))


def test_worked_tower():
    t = build_tower(f2_primes(3), 3)
    assert [[g.to_text() for g in a.generators] for a in t.ideals] == [
        ["u"], ["u^2*v"], ["u^5*v^2 + u^4*v^3"]
    ]
    assert [g.to_text() for g in t.witnesses] == ["u", "u^2*v", "u^5*v^2 + u^4*v^3"]
    # a_3 = (u^4 v^2 (u + v)) by hand expansion
    assert t.ideal(3).same_as(Ideal([P(F2, "u^4*v^2*(u + v)")]))


def test_base_case_and_q():
    t = build_tower(f2_primes(3), 1)
    assert t.depth == 1 and t.ideal(1).same_as(Ideal([P(F2, "u")]))
    q = build_tower([height1(P(QQ, "u"), 1), height1(P(QQ, "v"), 2)], 2)
    assert q.witnesses[1].to_text() == "u^2*v"


def test_build_errors():
    with pytest.raises(ValueError):
        build_tower([], 1)
    with pytest.raises(OutOfRangeError):
        build_tower(f2_primes(2), 3)


def test_choose_witness():
    assert choose_witness(Ideal([P(F2, "u")])) == P(F2, "u")
    assert choose_witness(Ideal([P(F2, "v^3"), P(F2, "u^2"), P(F2, "u*v")])) == P(F2, "u*v")


def test_tower_invariants():
    t = build_tower(enumerate_primes(F2, EnumerationBudget(10, max_data_degree=1)), 8)
    for n in range(1, t.depth + 1):
        g = t.witnesses[n - 1]
        assert not g.is_zero() and ideal_membership(g, t.ideal(n)).member
        if n > 1:
            assert t.ideal(n).issubset(t.ideal(n - 1))
    assert all(ok for *_, ok in containment_checks(t))


def test_containment_against_division_oracle():
    # all primes here are principal: membership in (c)^e is e-fold exact division
    t = build_tower(f2_primes(6), 6)
    for n in range(1, 7):
        for m in range(1, n + 1):
            c = as_dict(t.prime(m).generators[0])
            e = 2 ** (n - m)
            for g in t.ideal(n).generators:
                assert divisible_by_power(as_dict(g), c, e, 2)


def test_schedule():
    assert convergence_schedule(3) == {(1, 1): 1, (2, 1): 2, (2, 2): 1, (3, 1): 4, (3, 2): 2, (3, 3): 1}
    assert convergence_schedule(2, shift=1) == {(2, 1): 1}


def test_a_of_l():
    assert [a_of_l(l) for l in range(5)] == [1, 2, 3, 4, 5]
    with pytest.raises(OutOfRangeError):
        a_of_l(-1)


def test_gap_examples():
    r = verify_filtration_gap(0, F2)
    assert r.verified and r.gap == 1
    r = verify_filtration_gap(3, F2)
    assert r.verified and r.method == "exhaustive" and r.checked == 2**10 - 1
    r = verify_filtration_gap(7, F2)
    assert r.gap == 8 and not r.verified and r.method == "sampled" and r.counterexample is None


@pytest.mark.parametrize("field,l", [(F2, l) for l in range(5)] + [(F3, l) for l in range(4)])
def test_gap_verified(field, l):
    r = verify_filtration_gap(l, field)
    assert r.verified and r.counterexample is None


def test_gap_oracle_small():
    # no nonzero polynomial of degree <= 2 over F3 has all u-exponents >= 3
    for d in all_dicts(3, 2):
        if d:
            assert any(i < 3 for i, _ in d)


def test_filtration():
    f = Filtration()
    assert f.contains(P(F2, "u^2*v"), 3) and not f.contains(P(F2, "u^2*v"), 2)
    assert f.to_json() == {"rule": "total-degree", "point": "(0,0)", "parameter": "u"}
