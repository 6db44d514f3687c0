import random

import pytest

from leibniz_lab.algebra import Algebra, change_basis, random_invertible
from leibniz_lab.catalog import build, default_suite
from leibniz_lab.gradings import (
    Gradation,
    GradationError,
    gradation_length,
    has_maximum_length,
    iter_gradations,
    max_length_search,
    verify_gradation,
)

NILPOTENT = [e for e in default_suite() if e.kind == "nilpotent"]


def test_verify_examples():
    a = build("g1n1:n=5")
    assert verify_gradation(a, (1, 3, 4, 5, 7))
    assert not verify_gradation(a, (1, 3, 4, 5, 8))
    with pytest.raises(GradationError):
        verify_gradation(a, (1, 2))


def test_length_and_connectedness():
    a = build("g2n1:n=5")
    assert gradation_length(Gradation(a, (1, 3, 4, 5, 2))) == (5, True)
    ab = Algebra.abelian(2)
    assert gradation_length(Gradation(ab, (0, 2))) == (3, False)
    with pytest.raises(GradationError):
        gradation_length(Gradation(build("g1n1:n=5"), (1, 3, 4, 5, 8)))


def test_scaling_preserves_validity():
    g = Gradation(build("g1n1:n=5"), (1, 3, 4, 5, 7))
    assert g.scaled(-2).is_valid()
    assert g.components()[1] == ["e1"]


def test_enumeration_is_deterministic_and_valid():
    a = build("g1n1:n=5")
    first = [g.weights for _, g in zip(range(30), iter_gradations(a, 3))]
    again = [g.weights for _, g in zip(range(30), iter_gradations(a, 3))]
    assert first == again and len(set(first)) == len(first)
    assert all(verify_gradation(a, w) for w in first)
    with pytest.raises(GradationError):
        next(iter_gradations(a, 0))


@pytest.mark.parametrize("entry", NILPOTENT, ids=lambda e: str(e.id))
def test_maximum_length_found(entry):
    a = entry.build()
    g = max_length_search(a, 2 * a.dim)
    assert g is not None and g.is_valid()
    assert gradation_length(g) == (a.dim, True)


def test_non_adapted_basis_loses_maximum_length():
    # weights are tied to the basis: a generic basis change destroys homogeneity
    a = change_basis(build("g1n1:n=5"), random_invertible(5, random.Random(3)))
    assert not has_maximum_length(a, 4)


def test_abelian_weights_are_free():
    # no products, so any weights work; the search takes 0, 1, -1 first
    g = max_length_search(Algebra.abelian(3), 3)
    assert g.weights == (0, 1, -1) and gradation_length(g) == (3, True)
