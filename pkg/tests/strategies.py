"""Hypothesis strategies for small polynomials and tower elements."""

from hypothesis import strategies as st

from towerlift.polycore import Element, Polynomial


def exponents(nvars: int, max_deg: int):
    return st.lists(st.integers(0, max_deg), min_size=nvars, max_size=nvars).filter(
        lambda e: sum(e) <= max_deg
    )


@st.composite
def polynomials(draw, ring, max_deg: int = 3, max_terms: int = 4, coeff: int = 5):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        e = tuple(draw(exponents(ring.nvars, max_deg)))
        terms[e] = draw(st.integers(-coeff, coeff))
    return ring.from_terms(terms)


@st.composite
def elements(draw, tower, max_deg: int = 2, max_terms: int = 3, max_den: int = 2):
    num: Polynomial = draw(polynomials(tower.ring, max_deg, max_terms))
    a = draw(st.integers(0, max_den)) if tower.n else 0
    b = draw(st.integers(0, max_den))
    return Element(tower, num, a, b)
