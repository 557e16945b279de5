"""Hypothesis strategies for exact field elements, matrices and group elements."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from tetracert.field import CycNum
from tetracert.groups import GElement, TripleElement, mat2
from tetracert.linalg import ExactMatrix, det

small_fraction = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))

cycnums = st.lists(small_fraction, min_size=8, max_size=8).map(CycNum)
nonzero_cycnums = cycnums.filter(lambda x: not x.is_zero())
sparse_cycnums = st.one_of(
    st.integers(-3, 3).map(CycNum.from_rational),
    st.tuples(st.integers(0, 23), st.integers(-2, 2)).map(lambda t: CycNum.zeta(t[0]) * t[1]),
)


@st.composite
def matrices(draw, max_rows: int = 5, max_cols: int = 5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    # a product of thinner factors makes rank deficiency common
    inner = draw(st.integers(1, max(r, c)))
    a = ExactMatrix(r, inner, draw(st.lists(sparse_cycnums, min_size=r * inner, max_size=r * inner)))
    b = ExactMatrix(inner, c, draw(st.lists(sparse_cycnums, min_size=inner * c, max_size=inner * c)))
    return a @ b


@st.composite
def invertible_2x2(draw, gaussian: bool = False):
    entry = st.integers(-3, 3).map(CycNum.from_rational)
    if gaussian:
        entry = st.one_of(entry, st.sampled_from([CycNum.zeta(6), -CycNum.zeta(6)]))
    m = mat2(*draw(st.lists(entry, min_size=4, max_size=4)))
    if det(m).is_zero():
        m = m + ExactMatrix.identity(2).scale(5)
    if det(m).is_zero():
        m = ExactMatrix.identity(2)
    return m


@st.composite
def triples(draw, gaussian: bool = False):
    return TripleElement(draw(invertible_2x2(gaussian)), draw(invertible_2x2(gaussian)), draw(invertible_2x2(gaussian)))


@st.composite
def g_elements(draw, gaussian: bool = False):
    u = mat2(*draw(st.lists(st.integers(-3, 3), min_size=4, max_size=4)))
    return GElement(draw(triples(gaussian)), u)
