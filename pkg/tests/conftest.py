"""Shared hypothesis strategies and fixtures."""

import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ncgres.residue import assemble_phi
from ncgres.scalars import Covariables, GaussianRational, Poly, RatFunc

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

fractions = st.builds(Fraction, st.integers(-12, 12), st.integers(1, 6))
gaussian = st.builds(GaussianRational, fractions, fractions)
nonzero_gaussian = gaussian.filter(bool)


@st.composite
def polys(draw, nvars=3, max_terms=4, max_deg=3):
    """Random sparse polynomial in ``nvars`` generators."""
    terms = draw(
        st.dictionaries(
            st.tuples(*[st.integers(0, max_deg) for _ in range(nvars)]),
            gaussian,
            max_size=max_terms,
        )
    )
    return Poly(nvars, terms)


@st.composite
def xin_polys(draw, n=2, max_deg=4):
    """Polynomial in ``xi_n`` alone, for the layout of dimension ``n``."""
    lay = Covariables(n)
    coeffs = draw(st.lists(gaussian, min_size=1, max_size=max_deg + 1))
    out = Poly(lay.nvars)
    for k, c in enumerate(coeffs):
        out = out + Poly.var(lay.xn, lay.nvars, k) * c
    return out


@st.composite
def ratfuncs(draw, n=2, max_pole=4, integrable=False):
    """Random admissible rational function of ``xi_n`` only."""
    a = draw(st.integers(0, max_pole))
    b = draw(st.integers(0, max_pole))
    if integrable and a + b < 2:
        a, b = a + 1, b + 1
    top = a + b - 2 if integrable else a + b + 1
    num = draw(xin_polys(n, max(top, 0)))
    if integrable and num.degree(Covariables(n).xn) > top:
        num = Poly.const(1, num.nvars)
    return RatFunc(num, a, b)


@st.composite
def tangential_ratfuncs(draw, n=4, max_pole=3):
    """Rational functions whose numerator also involves ``xi'`` and ``H``."""
    lay = Covariables(n)
    num = draw(polys(lay.nvars, max_terms=5, max_deg=2))
    return RatFunc(num, draw(st.integers(0, max_pole)), draw(st.integers(0, max_pole)))


@pytest.fixture(scope="session")
def dirac4():
    return assemble_phi("dirac", 4)


@pytest.fixture(scope="session")
def signature4():
    return assemble_phi("signature", 4)


@pytest.fixture(scope="session")
def dirac3():
    return assemble_phi("dirac", 3)


def pytest_terminal_summary(terminalreporter):
    """Repeat the acceptance lines so they survive output capture."""
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[number])
