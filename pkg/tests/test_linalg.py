from fractions import Fraction

import pytest
from hypothesis import given, settings

from strategies import matrices
from tetracert.field import ONE, ZERO, ZETA3, cyc
from tetracert.groups import HESSE_CYCLE, SIGMA_MAT
from tetracert.linalg import (
    ExactMatrix,
    ShapeError,
    SingularMatrixError,
    Subspace,
    det,
    eigenspace,
    inverse,
    kernel,
    kron,
    rank,
    solve,
)

PROPS = settings(max_examples=60, deadline=None)


def test_kernel_examples():
    assert kernel(ExactMatrix.zeros(2, 2)).dim == 2
    assert kernel(ExactMatrix.identity(3)).dim == 0
    k = kernel(HESSE_CYCLE - ExactMatrix.identity(3))
    assert k == Subspace(3, [(1, 1, 1)])


def test_det_sigma_is_one():
    assert det(SIGMA_MAT) == ONE


def test_rank_identity():
    for n in range(1, 6):
        assert rank(ExactMatrix.identity(n)) == n


def test_eigenspace_of_diagonal():
    d = ExactMatrix.diag([ONE, ZETA3, ZETA3 * ZETA3])
    assert eigenspace(d, 1) == Subspace(3, [(1, 0, 0)])


def test_inverse_singular_raises():
    with pytest.raises(SingularMatrixError):
        inverse(ExactMatrix.from_rows([[1, 2], [2, 4]]))
    with pytest.raises(SingularMatrixError):
        inverse(ExactMatrix.from_rows([[1, 2, 3], [4, 5, 6], [7, 8, 9]]))


def test_shape_errors():
    with pytest.raises(ShapeError):
        ExactMatrix.identity(2) @ ExactMatrix.identity(3)
    with pytest.raises(ShapeError):
        Subspace(3, [(1, 2)])


def test_kron_shape_and_mixed_product():
    a = ExactMatrix.from_rows([[1, 2], [3, 4]])
    b = ExactMatrix.from_rows([[0, 1], [1, 0]])
    assert kron(a, b).shape == (4, 4)
    assert kron(a, b) @ kron(b, a) == kron(a @ b, b @ a)


def test_solve_particular_and_homogeneous():
    m = ExactMatrix.from_rows([[1, 1, 0], [0, 1, 1]])
    x, hom = solve(m, (cyc(2), cyc(3)))
    assert m.apply(x) == (cyc(2), cyc(3))
    assert hom.dim == 1
    y, _ = solve(ExactMatrix.from_rows([[1, 1], [1, 1]]), (cyc(1), cyc(2)))
    assert y is None


def test_subspace_operations():
    s = Subspace(3, [(1, 0, 0), (0, 1, 0)])
    t = Subspace(3, [(0, 1, 0), (0, 0, 1)])
    assert s.intersection(t) == Subspace(3, [(0, 1, 0)])
    assert s.sum(t) == Subspace.full(3)
    assert Subspace(3, [(2, 4, 0), (1, 0, 0)]) == s
    assert (cyc(5), cyc(Fraction(1, 3)), ZERO) in s
    assert s.coordinates((cyc(1), cyc(1), cyc(1))) is None


@PROPS
@given(matrices())
def test_rank_nullity(m):
    k = kernel(m)
    assert rank(m) + k.dim == m.cols
    zero = tuple([ZERO] * m.rows)
    assert all(m.apply(v) == zero for v in k.basis)


@PROPS
@given(matrices(max_rows=4, max_cols=4))
def test_inverse_both_sides(m):
    if m.rows != m.cols:
        m = m @ m.T
    n = m.rows
    shifted = m + ExactMatrix.identity(n).scale(7)
    if det(shifted).is_zero():
        return
    inv = inverse(shifted)
    assert inv @ shifted == ExactMatrix.identity(n)
    assert shifted @ inv == ExactMatrix.identity(n)


@PROPS
@given(matrices(max_rows=4, max_cols=4))
def test_det_matches_rank(m):
    if m.rows != m.cols:
        m = m.T @ m
    assert det(m).is_zero() == (rank(m) < m.rows)


@PROPS
@given(matrices(max_rows=3, max_cols=3))
def test_eigenspace_inside_generalized_eigenspace(m):
    if m.rows != m.cols:
        m = m @ m.T
    n = m.rows
    mu = m[0, 0]
    e = eigenspace(m, mu)
    shifted = m - ExactMatrix.identity(n).scale(mu)
    assert kernel(shifted @ shifted).contains_subspace(e)
