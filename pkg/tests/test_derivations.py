import random
from fractions import Fraction

import pytest

from leibniz_lab.algebra import Algebra, change_basis, random_invertible
from leibniz_lab.catalog import build, default_suite, nilradical
from leibniz_lab.derivations import (
    LinearMap,
    derivation_defects,
    derivation_space,
    inner_derivations,
    is_derivation,
    is_nilpotent_map,
    nil_independent,
    parametric_derivations,
    restricted_right_multiplication,
    right_multiplication,
    verify_derivation_parametrization,
    verify_nilradical,
)
from leibniz_lab.linalg import Matrix, rank

SUITE = default_suite()


def test_derivation_space_dims():
    assert derivation_space(Algebra.abelian(3)).dim == 9
    # null-space oracle at the smallest allowed dimension; the general formulas
    # give 9 and 8 here, see the parametrization tests below
    assert derivation_space(nilradical("g1n1", 5)).dim == 10
    assert derivation_space(nilradical("g2n1", 5)).dim == 10
    assert derivation_space(nilradical("g1n1", 7)).dim == 12


def test_abelian_constraint_matrix_has_rank_zero():
    from leibniz_lab.derivations import derivation_constraints

    assert derivation_constraints(Algebra.abelian(3)) == []
    assert rank(Matrix.zeros(27, 9)) == 0


@pytest.mark.parametrize("entry", SUITE, ids=lambda s: str(s.id))
def test_basis_derivations_and_right_multiplications(entry):
    a = entry.build()
    space = derivation_space(a)
    for d in space.basis:
        assert not derivation_defects(a, d)
    for i in range(a.dim):
        assert space.contains(right_multiplication(a, i))
    # Der(L) is closed under the commutator
    for d1, d2 in zip(space.basis, space.basis[1:3]):
        assert space.contains(d1.commutator(d2))


def test_derivation_dim_invariant_under_basis_change():
    a = build("R2_g2:n=5,a2=1")
    g = random_invertible(a.dim, random.Random(3))
    assert derivation_space(change_basis(a, g)).dim == derivation_space(a).dim


def test_nilpotent_maps():
    g15 = nilradical("g1n1", 5)
    assert is_nilpotent_map(right_multiplication(g15, 0))
    assert is_nilpotent_map(LinearMap.zero(4))
    r7 = build("R7_g1:n=5,b2=2")
    rx = restricted_right_multiplication(r7, 5, range(5))
    assert not is_nilpotent_map(rx)


def test_nil_independence_examples():
    r = build("R_g1n1_2:n=5")
    maps = [restricted_right_multiplication(r, x, range(5)) for x in (5, 6)]
    res = nil_independent(maps)
    assert res.independent and res.method == "triangular"
    assert not nil_independent([right_multiplication(nilradical("g1n1", 5), 0)])
    d = maps[0]
    res = nil_independent([d, d.scale(-1)])
    assert not res.independent and res.witness == (1, 1)
    with pytest.raises(ValueError):
        nil_independent([])


def test_nil_independence_non_triangular_paths():
    a = LinearMap(Matrix.from_rows([[1, 1], [1, 1]]))
    b = LinearMap(Matrix.from_rows([[2, 0], [1, 0]]))
    res = nil_independent([a, b])
    assert res.method == "sampled" and res.independent
    res = nil_independent([a, b, a + b])
    assert res.method == "linear-dependence" and not res.independent
    n = LinearMap(Matrix.from_rows([[1, 1], [-1, -1]]))
    res = nil_independent([a, n])
    assert res.method == "single-map" and res.witness == (0, 1)


def test_nilradical_certificates():
    assert verify_nilradical(build("R7_g1:n=5,b2=2"), range(5)).passed
    assert verify_nilradical(build("R_g2n1_2:n=6"), range(6)).passed
    bad = verify_nilradical(build("R7_g1:n=5,b2=2"), range(4))
    assert not bad.passed and not bad.contains_derived
    with pytest.raises(IndexError):
        verify_nilradical(build("g1n1:n=5"), [7])


@pytest.mark.parametrize("family,n", [("g1n1", 7), ("g1n1", 9), ("g2n1", 6), ("g2n1", 7), ("g2n1", 9),
                                      ("g3n1", 7), ("g3n1", 8), ("g3n1", 9), ("g2_9", None)])
def test_parametrization_matches(family, n):
    rep = verify_derivation_parametrization(family, n)
    assert rep.passed, rep.discrepancies()


def test_parametrization_g17_diagonal_tail():
    maps = parametric_derivations("g1_7")
    a1 = maps["a1"]
    assert a1.image(5)[5] == 6 and a1.image(6)[6] == 7


def test_parametrization_discrepancies_are_reported():
    rep = verify_derivation_parametrization("g1_7")
    assert rep.non_derivations["a2"][:2] == ["e1", "e3"]
    assert rep.derivation_dim == 10 and rep.missing_dim == 0
    rep = verify_derivation_parametrization("g3_11")
    assert "b9" in rep.non_derivations
    assert {"d(e2)": "e9", "d(e3)": "e10"} in rep.missing_examples
    rep = verify_derivation_parametrization("g1n1", 5)
    assert (rep.parameter_count, rep.derivation_dim) == (9, 10)


def test_inner_derivations_are_derivations():
    a = build("R_g2n1_2:n=5")
    inner = inner_derivations(a)
    space = derivation_space(a).subspace()
    assert inner <= space
