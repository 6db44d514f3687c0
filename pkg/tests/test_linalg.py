from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from leibniz_lab.linalg import (
    DimensionError,
    Matrix,
    SingularMatrixError,
    Subspace,
    as_rational,
    complement_basis,
    intersect,
    null_space,
    null_space_sparse,
    rank,
    rank_sparse,
    rref,
    rref_sparse,
    subspace_sum,
)

small = st.integers(-3, 3).map(Fraction) | st.fractions(min_value=-2, max_value=2, max_denominator=3)


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return Matrix(r, c, draw(st.lists(small, min_size=r * c, max_size=r * c)))


def test_rational_rejects_floats():
    assert as_rational("3/6") == Fraction(1, 2)
    with pytest.raises(TypeError):
        as_rational(0.5)


def test_rref_examples():
    red, rk = rref(Matrix.from_rows([[2, 4], [1, 2]]))
    assert red == Matrix.from_rows([[1, 2], [0, 0]]) and rk == 1
    assert rref(Matrix.identity(3)) == (Matrix.identity(3), 3)


def test_null_space_examples():
    assert null_space(Matrix.zeros(2, 3)).dim == 3
    assert null_space(Matrix.identity(4)).is_zero
    ns = null_space(Matrix.from_rows([[1, 1, 0]]))
    assert ns.dim == 2 and ns.contains([1, -1, 0])


def test_subspace_examples():
    e = [[1 if i == j else 0 for j in range(3)] for i in range(3)]
    assert subspace_sum(Subspace.span([e[0]], 3), Subspace.span([e[1]], 3)).dim == 2
    meet = intersect(Subspace.span(e[:2], 3), Subspace.span(e[1:], 3))
    assert meet == Subspace.span([e[1]], 3)
    with pytest.raises(DimensionError):
        Subspace.full(2) + Subspace.full(3)


@given(matrices())
def test_rref_idempotent_and_rank_nullity(m):
    red, rk = rref(m)
    assert rref(red) == (red, rk)
    assert rk + null_space(m).dim == m.cols
    for v in null_space(m).vectors():
        assert not any(m @ list(v))


@given(matrices(6, 6))
def test_backends_agree(m):
    rows = m.sparse_rows()
    assert rref_sparse(rows, m.cols, "python") == rref_sparse(rows, m.cols, "flint")
    assert rank_sparse(rows, m.cols, "python") == rank_sparse(rows, m.cols, "flint") == rank(m)
    assert null_space_sparse(rows, m.cols, "python") == null_space_sparse(rows, m.cols, "flint")


@given(matrices(4, 5), matrices(4, 5))
def test_grassmann_identity(a, b):
    n = 5
    sa = Subspace.span([list(a.row(i)) + [0] * (n - a.cols) for i in range(a.rows)], n)
    sb = Subspace.span([list(b.row(i)) + [0] * (n - b.cols) for i in range(b.rows)], n)
    assert (sa + sb).dim + (sa & sb).dim == sa.dim + sb.dim
    assert (sa & sb) <= sa and sa <= sa + sb


@given(matrices(4, 4))
def test_canonical_equality(m):
    s = Subspace.span(m.to_rows(), m.cols)
    shuffled = Subspace.span(list(reversed(m.to_rows())) + [[2 * x for x in m.row(0)]], m.cols)
    assert s == shuffled
    assert all(shuffled.contains(v) for v in s.vectors())


@given(matrices(4, 4))
def test_inverse_round_trip(m):
    if m.rows != m.cols:
        return
    if rank(m) < m.rows:
        with pytest.raises(SingularMatrixError):
            m.inverse()
    else:
        assert m @ m.inverse() == Matrix.identity(m.rows)


def test_complement_basis_picks_new_directions():
    base = [{0: Fraction(1)}]
    cands = [{0: Fraction(2)}, {1: Fraction(1)}, {0: Fraction(1), 1: Fraction(1)}]
    assert complement_basis(base, cands, 2) == [1]


def test_rank_splits_blocks():
    rows = [{0: Fraction(1), 1: Fraction(1)}, {2: Fraction(1)}, {0: Fraction(2), 1: Fraction(2)}]
    assert rank_sparse(rows, 3) == 2
