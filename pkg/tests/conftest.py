import pytest
from hypothesis import strategies as st

from surfadele.fields import QQ, prime_field
from surfadele.forge import forge_counterexample
from surfadele.poly import Poly2

F2 = prime_field(2)
F3 = prime_field(3)


def P(field, text):
    return Poly2.parse(field, text)


def polys(field, max_degree=3, max_terms=6):
    """Hypothesis strategy for small polynomials over a prime field or Q."""
    if field.is_finite():
        coeff = st.integers(0, field.p - 1)
    else:
        coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    mono = st.tuples(st.integers(0, max_degree), st.integers(0, max_degree)).filter(
        lambda m: m[0] + m[1] <= max_degree
    )
    return st.dictionaries(mono, coeff, max_size=max_terms).map(lambda d: Poly2(field, d))


@pytest.fixture(scope="session")
def cert3():
    return forge_counterexample(F2, 3)


@pytest.fixture(scope="session")
def certs():
    """Every certificate the acceptance criteria exercise, forged once."""
    out = {("f2", n): forge_counterexample(F2, n) for n in range(2, 7)}
    out.update({("f3", n): forge_counterexample(F3, n) for n in range(2, 5)})
    return out


__all__ = ["F2", "F3", "QQ", "P", "polys"]


def pytest_terminal_summary(terminalreporter):
    import criteria_log

    if not criteria_log.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(criteria_log.RESULTS):
        name, ok, detail = criteria_log.RESULTS[number]
        terminalreporter.write_line(criteria_log.line(number, name, ok, detail))
