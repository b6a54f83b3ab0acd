from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from spherevec.avmod import TMElement
from spherevec.glmod import GLElement, GLWeight
from spherevec.ring import LocalizedFun, SphereFun
from spherevec.vectorfields import from_deltas

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

coeffs = st.integers(-3, 3)


@st.composite
def monomial_terms(draw, max_degree=4, z_pole=0, max_terms=3):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        a = draw(st.integers(0, max_degree))
        b = draw(st.integers(0, max_degree - a))
        c = draw(st.integers(-z_pole, max_degree - a - b))
        terms[(a, b, c)] = terms.get((a, b, c), 0) + draw(coeffs)
    return terms


@st.composite
def sphere_funs(draw, max_degree=4):
    return SphereFun.normalize(draw(monomial_terms(max_degree)))


@st.composite
def z_localized(draw, max_degree=4, z_pole=2):
    return LocalizedFun.from_laurent(draw(monomial_terms(max_degree, z_pole)))


@st.composite
def fields(draw, max_degree=2):
    return from_deltas(*(draw(sphere_funs(max_degree)) for _ in range(3)))


alphas = st.integers(-8, 8).map(lambda k: Fraction(k, 2))


@st.composite
def weights(draw, max_m=3):
    return GLWeight(draw(st.integers(0, max_m)), draw(alphas))


@st.composite
def elements(draw, weight=None, max_m=3, max_degree=3):
    w = weight if weight is not None else draw(weights(max_m))
    return TMElement(w, [draw(z_localized(max_degree)) for _ in range(w.dim)])


@st.composite
def gl_elements(draw, weight=None, max_m=4):
    w = weight if weight is not None else draw(weights(max_m))
    return GLElement(w, [draw(st.fractions(-3, 3, max_denominator=4)) for _ in range(w.dim)])


# rational points on the unit sphere, none on a coordinate plane
SPHERE_POINTS = [
    (Fraction(2, 3), Fraction(1, 3), Fraction(2, 3)),
    (Fraction(2, 7), Fraction(3, 7), Fraction(6, 7)),
    (Fraction(-1, 3), Fraction(2, 3), Fraction(-2, 3)),
    (Fraction(4, 9), Fraction(-4, 9), Fraction(7, 9)),
    (Fraction(6, 11), Fraction(6, 11), Fraction(-7, 11)),
]


ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def record():
    def _record(n: int, ok: bool, detail: str = ""):
        ACCEPTANCE[n] = (ok, detail)
        print(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
        return ok

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
