"""JSON interchange format for algebras.

Rationals are written as decimal integer strings ``num``/``den`` so that no
precision is lost; omitted brackets are zero.
"""
from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from pathlib import Path

from .algebra import Algebra

SCHEMA_VERSION = "1"


class DocumentError(ValueError):
    pass


def to_document(a: Algebra) -> dict:
    brackets = []
    for (i, j), terms in sorted(a.nonzero_products()):
        brackets.append({
            "left": a.labels[i],
            "right": a.labels[j],
            "terms": [{"basis": a.labels[k], "num": str(v.numerator), "den": str(v.denominator)}
                      for k, v in sorted(terms.items())],
        })
    doc = {"schema_version": SCHEMA_VERSION, "dim": a.dim, "field": "Q", "labels": list(a.labels),
           "brackets": brackets}
    if a.name:
        doc["name"] = a.name
    return doc


def _require(cond, msg):
    if not cond:
        raise DocumentError(msg)


def _integer(text, what) -> int:
    _require(isinstance(text, str), f"{what} must be an integer string")
    try:
        return int(text)
    except ValueError:
        raise DocumentError(f"{what} {text!r} is not an integer") from None


def from_document(doc: dict) -> Algebra:
    _require(isinstance(doc, dict), "document must be a JSON object")
    _require(doc.get("schema_version") == SCHEMA_VERSION,
             f"unsupported schema_version {doc.get('schema_version')!r}")
    _require(doc.get("field") == "Q", "only the field Q is supported")
    dim = doc.get("dim")
    _require(isinstance(dim, int) and not isinstance(dim, bool) and dim >= 0, "dim must be a nonnegative integer")
    labels = doc.get("labels")
    _require(isinstance(labels, list) and all(isinstance(x, str) for x in labels), "labels must be a list of strings")
    _require(len(labels) == dim, f"{len(labels)} labels declared for dim {dim}")
    _require(len(set(labels)) == dim, "labels must be unique")
    index = {x: i for i, x in enumerate(labels)}

    def lookup(label):
        _require(label in index, f"undeclared label {label!r}")
        return index[label]

    table: dict[tuple[int, int], dict[int, Fraction]] = {}
    brackets = doc.get("brackets", [])
    _require(isinstance(brackets, list), "brackets must be a list")
    for b in brackets:
        _require(isinstance(b, dict), "each bracket must be an object")
        key = (lookup(b.get("left")), lookup(b.get("right")))
        _require(key not in table, f"bracket [{b['left']},{b['right']}] listed twice")
        terms = {}
        for t in b.get("terms", []):
            k = lookup(t.get("basis"))
            den = _integer(t.get("den", "1"), "den")
            _require(den != 0, "zero denominator")
            terms[k] = terms.get(k, Fraction(0)) + Fraction(_integer(t.get("num"), "num"), den)
        table[key] = terms
    return Algebra(dim, table, labels, doc.get("name", ""))


def dumps(a: Algebra) -> str:
    return json.dumps(to_document(a), indent=2, sort_keys=True) + "\n"


def loads(text: str) -> Algebra:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"invalid JSON: {e}") from None
    return from_document(doc)


def load(path) -> Algebra:
    return loads(Path(path).read_text())


def content_hash(a: Algebra) -> str:
    """sha256 of the canonical document, ignoring the display name."""
    doc = to_document(a)
    doc.pop("name", None)
    return hashlib.sha256(json.dumps(doc, sort_keys=True, separators=(",", ":")).encode()).hexdigest()
