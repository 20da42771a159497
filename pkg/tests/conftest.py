from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from qdesing.kernel import QQ, Poly, Ring, make_field

settings.register_profile("qdesing", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("qdesing")

R2 = Ring(QQ, ["x", "y"])
R3 = Ring(QQ, ["x", "y", "z"])
QT = make_field({"params": ["t"]})
QS = make_field({"params": ["s"], "prime": ["s^2 - 2"]})

small = st.integers(-3, 3)
rationals = st.builds(Fraction, st.integers(-5, 5), st.integers(1, 4))


def exponents(n, max_deg):
    # total degree at most max_deg: place up to max_deg units among the n slots
    def build(slots):
        a = [0] * n
        for i in slots:
            a[i] += 1
        return a
    return st.lists(st.integers(0, n - 1), max_size=max_deg).map(build)


def polys(ring=R2, max_deg=3, max_terms=4, coeffs=small):
    n = ring.nvars
    return st.dictionaries(exponents(n, max_deg).map(tuple), coeffs, max_size=max_terms).map(
        lambda d: Poly(ring, d))


def nonzero_polys(ring=R2, max_deg=3, max_terms=4):
    return polys(ring, max_deg, max_terms).filter(lambda p: not p.is_zero())


@pytest.fixture
def r2():
    return R2


@pytest.fixture
def r3():
    return R3


# ----- acceptance summary ----------------------------------------------------

_CRITERIA: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by a test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when not in ("setup", "call"):
        return
    number, title = mark.args
    ok = _CRITERIA.get(number, (title, True))[1]
    if rep.failed or (rep.when == "call" and rep.skipped):
        ok = False
    _CRITERIA[number] = (title, ok)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, ok = _CRITERIA[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {number:2d}: {title}")
