import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from leibniz_lab.algebra import (
    Algebra,
    bracket,
    center,
    change_basis,
    fingerprint,
    is_ideal,
    is_leibniz,
    is_lie,
    is_nilpotent,
    is_solvable,
    leibniz_residual,
    left_annihilator,
    nil_index,
    quotient,
    random_invertible,
    residual_at,
    right_annihilator,
    series,
)
from leibniz_lab.catalog import build, default_suite
from leibniz_lab.linalg import Matrix, SingularMatrixError, Subspace

SUITE = default_suite()


def e(i, n):
    return [1 if k == i - 1 else 0 for k in range(n)]


@pytest.fixture(scope="module")
def g15():
    return build("g1n1:n=5")


def test_bracket_examples(g15):
    assert bracket(g15, e(1, 5), e(2, 5)) == e(3, 5)
    assert bracket(g15, e(2, 5), e(3, 5)) == e(5, 5)
    assert bracket(g15, [0] * 5, e(4, 5)) == [0] * 5


def test_perturbed_table_fails_identity(g15):
    table = {k: dict(v) for k, v in g15.table.items()}
    table[(0, 1)] = {2: Fraction(-1)}  # [e1,e2] = -e3 but [e2,e1] = e3
    bad = Algebra(5, table)
    res = leibniz_residual(bad)
    assert res and not is_leibniz(bad)
    i, j, k, vec = res[0]
    assert {m: x for m, x in enumerate(vec) if x} == residual_at(bad, i, j, k)


def test_abelian_and_zero_algebras():
    assert leibniz_residual(Algebra.abelian(3)) == []
    assert is_lie(Algebra.abelian(0))


def test_lie_status():
    assert is_lie(build("g2_9"))
    r3 = build("R3_g1:n=5,delta_n-1=1")
    assert is_leibniz(r3) and not is_lie(r3)


def test_series_of_g15(g15):
    lc = series(g15, "lower_central")
    # L^4 = [L^3, L] already vanishes: e4 only arises from [e1,e3] and e3 is not in L^3
    assert lc.dims == [5, 3, 2, 0]
    assert lc.nil_index == 4 == nil_index(g15)
    for big, small in zip(lc.terms, lc.terms[1:]):
        assert small <= big


def test_two_dim_extension_is_solvable_not_nilpotent():
    r = build("R_g1n1_2:n=5")
    assert not is_nilpotent(r) and not series(r).reaches_zero
    assert is_solvable(r) and series(r, "derived").reaches_zero


def test_center_and_annihilators(g15):
    assert center(g15) == Subspace.coordinate([3, 4], 5)
    lie = build("g2n1:n=7")
    assert right_annihilator(lie) == center(lie) == left_annihilator(lie)
    r4 = build("R4_g1:n=5,delta_n=1")
    assert r4.product(5, 5) == {4: 1}
    assert right_annihilator(r4).contains(e(5, 6))


@pytest.mark.parametrize("entry", SUITE, ids=lambda s: str(s.id))
def test_squares_and_symmetrized_products_in_right_annihilator(entry):
    a = entry.build()
    ann = right_annihilator(a)
    for i in range(a.dim):
        for j in range(a.dim):
            w = dict(a.product(i, j))
            for k, v in a.product(j, i).items():
                w[k] = w.get(k, 0) + v
            assert ann.contains_sparse({k: v for k, v in w.items() if v})


def test_ideals(g15):
    g26 = build("g2n1:n=6")
    assert is_ideal(g26, Subspace.coordinate(range(1, 6), 6))
    assert not is_ideal(g15, Subspace.coordinate([0], 5))
    assert is_ideal(g15, Subspace.full(5))


def test_quotient_by_center(g15):
    q = quotient(g15, center(g15))
    assert q.dim == 3 and is_lie(q)


def test_change_basis_examples(g15):
    assert change_basis(g15, Matrix.identity(5)) == g15
    swap = Matrix.from_rows([[1 if (i, j) in {(0, 0), (1, 1), (2, 2), (3, 4), (4, 3)} else 0
                              for j in range(5)] for i in range(5)])
    b = change_basis(g15, swap)
    assert is_leibniz(b) and nil_index(b) == 4
    scale = Matrix.diagonal([1, 2, 1, 1, 1])
    scaled = change_basis(g15, scale)
    assert scaled.product(0, 1) == {2: Fraction(1, 2)}
    assert change_basis(scaled, scale.inverse()) == g15
    with pytest.raises(SingularMatrixError):
        change_basis(g15, Matrix.zeros(5, 5))


@given(st.integers(0, 10_000))
def test_change_basis_is_a_group_action(seed):
    rng = random.Random(seed)
    a = build("R7_g1:n=5,b2=2")
    g = random_invertible(a.dim, rng)
    h = random_invertible(a.dim, rng)
    assert change_basis(change_basis(a, g), h) == change_basis(a, h @ g)


@pytest.mark.parametrize("entry", [s for s in SUITE if s.dim <= 8], ids=lambda s: str(s.id))
def test_fingerprint_invariant_under_basis_change(entry):
    a = entry.build()
    rng = random.Random(7)
    base = fingerprint(a)
    for _ in range(3):
        assert fingerprint(change_basis(a, random_invertible(a.dim, rng))) == base
