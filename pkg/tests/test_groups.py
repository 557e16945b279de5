from fractions import Fraction

import pytest

from tetracert.field import I
from tetracert.groups import (
    A_MAT,
    B_MAT,
    ID2,
    SIGMA_MAT,
    TAU_MAT,
    BoundExceededError,
    GElement,
    NotAMemberError,
    TripleElement,
    binary_octahedral_group,
    class_index,
    closure,
    dedup_mod_center,
    default_s4_quotient,
    heisenberg_group,
    hesse_group,
    mat2,
    normalizer_finite_part,
    quotient_to_S4,
    stabilizer_group_H,
    torus_equivalent,
)


def test_group_orders():
    assert heisenberg_group().order == 8
    assert binary_octahedral_group().order == 48
    assert hesse_group().order == 18


def test_groups_are_closed():
    for g in (heisenberg_group(), binary_octahedral_group(), hesse_group(), stabilizer_group_H()):
        assert g.check_closed()


def test_heisenberg_is_nonabelian():
    h = heisenberg_group()
    assert any(x @ y != y @ x for x in h.elements for y in h.elements)


def test_stabilizer_group_contents():
    H = stabilizer_group_H()
    assert H.order == 16
    assert TripleElement.diagonal(A_MAT) in H
    assert TripleElement.diagonal(B_MAT) in H
    assert TripleElement(A_MAT, -A_MAT, A_MAT) in H
    assert len(dedup_mod_center(H.elements)) == 4


def test_quotient_images():
    q = default_s4_quotient()
    assert q(ID2) == (0, 1, 2, 3)
    assert q(-ID2) == (0, 1, 2, 3)
    assert class_index(q(TAU_MAT)) == 4
    assert class_index(q(SIGMA_MAT)) == 3
    assert (SIGMA_MAT**3).is_identity()
    assert q.image_group_order([TAU_MAT, SIGMA_MAT]) == 24


def test_quotient_rejects_non_members():
    with pytest.raises(NotAMemberError):
        quotient_to_S4(mat2(2, 0, 0, 1))


def test_class_representatives_cover_all_classes():
    q = default_s4_quotient()
    reps = q.class_representatives()
    assert [class_index(q(x)) for x in reps] == [0, 1, 2, 3, 4]


def test_torus_equivalent_examples():
    x = TripleElement.identity()
    assert torus_equivalent(x, x)
    assert torus_equivalent(x, TripleElement.scalars(2, 3, Fraction(1, 3)))
    assert not torus_equivalent(x, TripleElement.scalars(1, 2, 3))


def test_closure_bound():
    with pytest.raises(BoundExceededError):
        closure([mat2(1, 1, 0, 1)], bound=20)


def test_normalizer_finite_part():
    n = normalizer_finite_part()
    assert n.order == 384
    assert len(dedup_mod_center(n.elements)) == 96


def test_g_element_group_law():
    r = TripleElement(mat2(1, 2, 3, 5), mat2(2, 1, 1, 1), mat2(1, 1, 0, 1))
    g = GElement(r, mat2(1, 0, 2, -1))
    h = GElement(TripleElement.diagonal(A_MAT), mat2(0, 3, 1, 1))
    assert (g * h).form_matrix() == g.form_matrix() @ h.form_matrix()
    assert (g * g.inverse()).key() == GElement.identity().key()
    assert GElement.from_matrices(r.a1, g.form_matrix()).key() == g.key()


def test_ineffectivity_generator_is_scalar_i():
    g = TripleElement.scalars(I, I, I)
    assert (g**4).is_identity() and not (g**2).is_identity()
