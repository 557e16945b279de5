from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import g_elements, invertible_2x2, triples
from tetracert.field import I, ONE, ZERO, cyc
from tetracert.groups import A_MAT, ID2, TAU_MAT, GElement, TripleElement, mat2, stabilizer_group_H
from tetracert.linalg import ExactMatrix, Subspace, kron
from tetracert.reps import (
    C2,
    CHARACTER_TABLE,
    SYM2,
    SYM3,
    LieElement,
    NotACharacterError,
    PreconditionError,
    Slot,
    build_rep_R,
    character,
    decompose_S4,
    derivation_matrix,
    invariant_subspace,
    lie_g_basis,
    lifted_class_representatives,
    match_graded_pieces,
    monomials,
    q1_rep,
    q2_rep,
    q3_rep,
    restrict_rep,
    splitting_subspaces,
    sym_rep,
    tensor_rep,
    torus_direction,
)

PROPS = settings(max_examples=50, deadline=None)
R = build_rep_R()
LIE = lie_g_basis()


def test_sym2_of_A():
    assert SYM2.act(A_MAT) == ExactMatrix.diag([-ONE, ONE, -ONE])


def test_sym0_and_parity():
    assert sym_rep(0).dim == 1
    assert sym_rep(0).act(A_MAT).is_identity()
    assert SYM3.act(-ID2) == ExactMatrix.identity(4).scale(-1)
    with pytest.raises(ValueError):
        sym_rep(-1)


def test_sym1_is_standard():
    m = mat2(1, 2, 3, 4)
    assert C2.act(m) == m


def test_q3_dimension_and_central_elements():
    assert q3_rep().dim == 12
    assert q2_rep().act(TripleElement.scalars(I, I, I)).is_identity()
    assert q3_rep().inf_act(torus_direction()).is_zero()


def test_rep_R_dims_and_matching():
    assert R.dim == 32
    assert R.graded_dims() == {1: 12, 2: 12, 3: 8}
    m = match_graded_pieces(R)
    assert m[1].startswith("Q3") and m[2].startswith("Q2") and m[3].startswith("Q1")
    assert "e1⊗x0³" in R.basis_labels


def test_unipotent_raises_degree():
    u = GElement.from_unipotent(mat2(1, 2, -1, 3))
    d = R.act(u) - ExactMatrix.identity(32)
    assert not d.is_zero()
    for i in range(32):
        for j in range(32):
            if R.grading[i] <= R.grading[j]:
                assert d[i, j].is_zero()


def test_character_requires_trivial_minus_one():
    with pytest.raises(PreconditionError):
        character(C2_slot0(), lifted_class_representatives())


def C2_slot0():
    return tensor_rep([Slot(C2, 0)])


def test_trivial_character():
    triv = tensor_rep([])
    assert character(triv, lifted_class_representatives()) == (ONE,) * 5


def test_span_m_traces():
    c2c2 = tensor_rep([Slot(C2, 0), Slot(C2, 2)])
    sym = Subspace(4, [(1, 0, 0, 1), (1, 0, 0, -1), (0, 1, 1, 0)])
    assert sym.restrict(c2c2.act(TripleElement.diagonal(A_MAT))).trace() == -ONE
    assert sym.restrict(c2c2.act(TripleElement.diagonal(TAU_MAT))).trace() == ONE


def test_decompositions():
    cls = lifted_class_representatives()
    assert decompose_S4(character(q2_rep(), cls)) == (1, 0, 1, 1, 2)
    assert decompose_S4(character(q1_rep(), cls)) == (0, 0, 1, 1, 1)
    inv = invariant_subspace(q3_rep(), stabilizer_group_H().elements)
    assert inv.dim == 3
    assert decompose_S4(character(restrict_rep(q3_rep(), inv), cls)) == (1, 0, 1, 0, 0)


def test_not_a_character():
    with pytest.raises(NotACharacterError):
        decompose_S4((1, 0, 0, 0, 0))


def test_invariant_subspace_identity_is_everything():
    assert invariant_subspace(q2_rep(), [TripleElement.identity()]) == Subspace.full(12)


def test_splitting_dimensions():
    a, b = splitting_subspaces()
    assert (a.dim, b.dim, a.intersection(b).dim) == (4, 8, 0)


def test_exponential_of_nilpotents():
    # exp of a nilpotent X is I + X; exp of inf_act(X) is a finite sum
    for x, g in [
        (LieElement(x2=mat2(0, 1, 0, 0)), GElement.from_reductive(TripleElement(ID2, mat2(1, 1, 0, 1), ID2))),
        (LieElement(x3=mat2(0, 0, 1, 0)), GElement.from_reductive(TripleElement(ID2, ID2, mat2(1, 0, 1, 1)))),
        (LieElement(u=mat2(1, -2, 0, 3)), GElement.from_unipotent(mat2(1, -2, 0, 3))),
    ]:
        n = R.inf_act(x)
        total, term, k = ExactMatrix.identity(32), ExactMatrix.identity(32), 1
        while True:
            term = (term @ n).scale(Fraction(1, k))
            if term.is_zero():
                break
            total, k = total + term, k + 1
        assert total == R.act(g)


@PROPS
@given(g_elements(gaussian=True), g_elements())
def test_act_is_homomorphism_on_R(g, h):
    assert R.act(g * h) == R.act(g) @ R.act(h)


@PROPS
@given(triples(gaussian=True), triples())
def test_act_is_homomorphism_on_tensor_reps(g, h):
    for rep in (q2_rep(), tensor_rep([Slot(C2, 0), Slot(C2, 1, dual=True)])):
        assert rep.act(g * h) == rep.act(g) @ rep.act(h)
    assert q3_rep().act(TripleElement.identity()).is_identity()


@PROPS
@given(st.sampled_from(range(15)), st.sampled_from(range(15)), st.integers(-3, 3))
def test_inf_act_respects_brackets(i, j, c):
    x = LIE[i] + LIE[(i + 3) % 15].scale(c)
    y = LIE[j]
    lhs = R.inf_act(x.bracket(y))
    rhs = R.inf_act(x) @ R.inf_act(y) - R.inf_act(y) @ R.inf_act(x)
    assert lhs == rhs


@PROPS
@given(invertible_2x2(), st.lists(st.integers(-4, 4), min_size=6, max_size=6))
def test_inf_act_is_a_derivation_on_tensors(xm, coords):
    x = LieElement(x1=xm, x3=mat2(1, 2, 0, -1))
    v = tuple(cyc(c) for c in coords[:2])
    w = tuple(cyc(c) for c in coords[2:])
    t = tensor_rep([Slot(C2, 0), Slot(SYM3, 2)])
    vw = kron(ExactMatrix.from_columns([v]), ExactMatrix.from_columns([w])).column(0)
    lhs = t.inf_act(x).apply(vw)
    a = kron(ExactMatrix.from_columns([C2.inf_act(x.x1).apply(v)]), ExactMatrix.from_columns([w])).column(0)
    b = kron(ExactMatrix.from_columns([v]), ExactMatrix.from_columns([SYM3.inf_act(x.x3).apply(w)])).column(0)
    assert lhs == tuple(p + q for p, q in zip(a, b))


@PROPS
@given(invertible_2x2(), st.lists(st.integers(-4, 4), min_size=5, max_size=5))
def test_derivation_leibniz_rule_on_forms(xm, coords):
    # D(l * q) = D(l) q + l D(q) for a linear form l and a quadric q in two variables
    m1, m2, m3 = monomials(2, 1), monomials(2, 2), monomials(2, 3)
    l, q = coords[:2], coords[2:]

    def mul(f, fm, g, gm):
        out = [ZERO] * len(m3)
        for a, x in zip(fm, f):
            for b, y in zip(gm, g):
                out[m3.index(tuple(i + j for i, j in zip(a, b)))] += cyc(x) * cyc(y)
        return out

    lhs = derivation_matrix(xm, m3).apply(mul(l, m1, q, m2))
    dl = derivation_matrix(xm, m1).apply([cyc(c) for c in l])
    dq = derivation_matrix(xm, m2).apply([cyc(c) for c in q])
    rhs = [a + b for a, b in zip(mul(dl, m1, q, m2), mul(l, m1, dq, m2))]
    assert list(lhs) == rhs


@PROPS
@given(st.lists(st.integers(0, 3), min_size=5, max_size=5))
def test_character_orthogonality(mults):
    table = CHARACTER_TABLE
    assert table.is_orthonormal()
    char = [sum(m * row[k] for m, row in zip(mults, table.values)) for k in range(5)]
    assert decompose_S4(char) == tuple(mults)
    assert sum(m * d for m, d in zip(mults, table.dims())) == char[0]
