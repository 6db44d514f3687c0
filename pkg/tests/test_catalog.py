from fractions import Fraction

import pytest

from leibniz_lab.algebra import fingerprint, is_leibniz, is_lie, nil_index
from leibniz_lab.catalog import (
    CatalogError,
    CatalogId,
    build,
    cohomology_claims,
    default_suite,
)
from leibniz_lab.derivations import derivation_space
from leibniz_lab.document import DocumentError, content_hash, dumps, from_document, loads, to_document

SUITE = default_suite()


def test_suite_contents():
    by_id = {str(e.id): e for e in SUITE}
    assert by_id["g1_7"].dim == 7 and by_id["g1_7"].expected["nil_index"] == 6
    assert by_id["R_g2n1_2:n=5"].dim == 7
    assert by_id["R_g3_11_1"].dim == 12 and by_id["R_g3_11_1"].expected["H2"] == 1
    assert "g1n1:n=9" in by_id and "g3n1:n=5" not in by_id


@pytest.mark.parametrize("text", ["g1n1:n=7", "R7_g1:n=5,b2=2", "R3_g2:n=5,gamma_n-1=1", "g2_9"])
def test_id_round_trip(text):
    assert str(CatalogId.parse(text)) == text
    assert CatalogId.parse(f" {text} ") == CatalogId.parse(text)


def test_id_parses_rationals():
    cid = CatalogId.parse("R7_g1:n=5,b2=3/2")
    assert cid.param_dict() == {"b2": Fraction(3, 2)}


@pytest.mark.parametrize("text", [
    "foo:n=5",            # unknown family
    "g1n1:n",             # missing value
    "g1n1:n=6",           # g1 needs odd n
    "g3n1:n=5",           # g3 needs n >= 7
    "g1_7:n=9",           # fixed dimension
    "g1n1:n=5,a2=1",      # nilpotent families take no parameters
    "R7_g1:n=5,zz=1",     # unknown parameter
    "R7_g1:n=5,b2=1",     # excluded value
    "R4_g1:n=6,delta_n=1",
])
def test_constraint_errors(text):
    with pytest.raises(CatalogError):
        build(text)


def test_excluded_value_allowed_when_not_strict():
    assert build("R7_g1:n=5,b2=1", strict=False).dim == 6


@pytest.mark.parametrize("n", [5, 7])
def test_degeneration_shares_fingerprint(n):
    a = build(f"R2_g1:n={n},a_n-1=0", strict=False)
    b = build(f"R7_g1:n={n},b2={4 - n}", strict=False)
    assert fingerprint(a) == fingerprint(b)
    assert derivation_space(a).dim == derivation_space(b).dim


def test_half_integer_coefficients_stay_exact():
    a = build("R4_g1:n=5,delta_n=1")
    coeffs = {c for (_, _), terms in a.nonzero_products() for c in terms.values()}
    assert any(c.denominator == 2 for c in coeffs)


@pytest.mark.parametrize("entry", SUITE, ids=lambda e: str(e.id))
def test_suite_instances(entry):
    a = entry.build()
    assert a.dim == entry.dim and is_leibniz(a)
    if entry.kind == "nilpotent":
        assert is_lie(a) and nil_index(a) == a.dim - 1
    else:
        assert nil_index(a) is None


@pytest.mark.parametrize("entry", SUITE, ids=lambda e: str(e.id))
def test_document_round_trip(entry):
    a = entry.build()
    b = loads(dumps(a))
    assert b == a
    assert content_hash(b) == content_hash(a)


def test_document_validation():
    doc = to_document(build("g1n1:n=5"))
    bad = dict(doc, labels=["e1", "e1", "e3", "e4", "e5"])
    with pytest.raises(DocumentError):
        from_document(bad)
    bad = dict(doc, brackets=[{"left": "e1", "right": "e9", "terms": []}])
    with pytest.raises(DocumentError):
        from_document(bad)
    bad = dict(doc, schema_version="2")
    with pytest.raises(DocumentError):
        from_document(bad)
    empty = {"schema_version": "1", "dim": 3, "field": "Q", "labels": ["a", "b", "c"], "brackets": []}
    assert nil_index(from_document(empty)) == 2  # L^2 = 0


def test_cohomology_claims():
    assert cohomology_claims("R_g1n1_2:n=5")[("leibniz", 2)] == 0
    assert cohomology_claims("R_g3_11_1")[("lie", 2)] == 1
    assert cohomology_claims("g1n1:n=5") == {}
