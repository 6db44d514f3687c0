"""Generators for the quasi-filiform Lie algebras of maximum length and their
solvable Leibniz extensions.

Tables list one orientation of each product.  Nilradical products are Lie, so
the builder fills ``[b, a] = -[a, b]``; products with the complement are
written ``[e_i, x] = -[x, e_i]`` and are completed the same way; squares such
as ``[x, x] = delta e_{n-1}`` are kept one-sided.

Catalog ids are strings like ``"g1n1:n=7"`` or ``"R7_g1:n=5,b2=2"``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .algebra import Algebra, default_labels
from .linalg import as_rational


class CatalogError(ValueError):
    """Unknown family, bad parameter, or violated validity constraint."""


class _Table:
    """Accumulates structure constants with 1-based indices."""

    def __init__(self, dim: int):
        self.dim = dim
        self.data: dict[tuple[int, int], dict[int, Fraction]] = {}

    def set(self, i: int, j: int, k: int, coeff=1):
        coeff = as_rational(coeff)
        if not coeff:
            return
        terms = self.data.setdefault((i - 1, j - 1), {})
        terms[k - 1] = terms.get(k - 1, Fraction(0)) + coeff

    def lie(self, i: int, j: int, k: int, coeff=1):
        """[e_i, e_j] = coeff e_k and [e_j, e_i] = -coeff e_k."""
        self.set(i, j, k, coeff)
        self.set(j, i, k, -as_rational(coeff))

    def build(self, labels, name) -> Algebra:
        return Algebra(self.dim, self.data, labels, name)


# ---------------------------------------------------------------------------
# nilradicals


def _nilpotent_table(family: str, n: int) -> _Table:
    t = _Table(n)
    if family == "g1n1":
        for i in range(2, n - 1):
            t.lie(1, i, i + 1)
        for i in range(2, (n - 1) // 2 + 1):
            t.lie(i, n - i, n, (-1) ** i)
    elif family == "g2n1":
        for i in range(2, n - 1):
            t.lie(1, i, i + 1)
        for i in range(2, n - 2):
            t.lie(i, n, i + 2)
    elif family == "g3n1":
        for i in range(2, n - 1):
            t.lie(1, i, i + 1)
        for i in range(2, n - 2):
            t.lie(i, n, i + 2)
        for i in range(3, n - 3):
            t.lie(2, i, i + 3)
    elif family == "g1_7":
        for i in range(2, 6):
            t.lie(1, i, i + 1)
        for i in (3, 4):
            t.lie(2, i, i + 2)
        for i in (2, 3):
            t.lie(i, 7 - i, 7, (-1) ** i)
    elif family == "g2_9":
        for i in range(2, 8):
            t.lie(1, i, i + 1)
        for i in (3, 4):
            t.lie(2, i, i + 2)
        t.lie(2, 5, 7, 3)
        t.lie(2, 6, 8, 5)
        for i in (4, 5):
            t.lie(3, i, i + 3, -2)
        for i in (2, 3, 4):
            t.lie(i, 9 - i, 9, (-1) ** i)
    elif family == "g3_11":
        for i in range(2, 10):
            t.lie(1, i, i + 1)
        for i in (3, 4):
            t.lie(2, i, i + 2)
        for i in (6, 7):
            t.lie(2, i, i + 2, -1)
        t.lie(3, 7, 10, -1)
        for i in (4, 5):
            t.lie(3, i, i + 3)
        for i in (5, 6):
            t.lie(4, i, i + 4)
        for i in range(2, 6):
            t.lie(i, 11 - i, 11, (-1) ** i)
    else:  # pragma: no cover - guarded by callers
        raise CatalogError(f"unknown nilpotent family {family!r}")
    return t


NILPOTENT_FAMILIES = ("g1n1", "g2n1", "g3n1", "g1_7", "g2_9", "g3_11")
FIXED_DIMS = {"g1_7": 7, "g2_9": 9, "g3_11": 11}


def check_nilradical_dim(family: str, n: int | None) -> int:
    if family in FIXED_DIMS:
        if n is not None and n != FIXED_DIMS[family]:
            raise CatalogError(f"{family} has fixed dimension {FIXED_DIMS[family]}")
        return FIXED_DIMS[family]
    if n is None:
        raise CatalogError(f"{family} needs a dimension n")
    if family == "g1n1" and (n < 5 or n % 2 == 0):
        raise CatalogError(f"g1n1 needs n >= 5 and n odd (got n={n})")
    if family == "g2n1" and n < 5:
        raise CatalogError(f"g2n1 needs n >= 5 (got n={n})")
    if family == "g3n1" and n < 7:
        raise CatalogError(f"g3n1 needs n >= 7 (got n={n})")
    return n


def nilradical(family: str, n: int | None = None) -> Algebra:
    n = check_nilradical_dim(family, n)
    name = family if family in FIXED_DIMS else f"{family}(n={n})"
    return _nilpotent_table(family, n).build(default_labels(n), name)


# ---------------------------------------------------------------------------
# solvable extensions


@dataclass
class Family:
    key: str
    nilradical: str
    complement: int
    params: Callable[[int], list[str]]
    defaults: Callable[[int], dict]
    fill: Callable
    excluded: Callable[[int], dict] = field(default=lambda n: {})
    note: str = ""


def _even_b_slots(n: int) -> set[int]:
    # b_{2k} = 0 for 2 <= k <= (n-3)/2
    return {2 * k for k in range(2, (n - 3) // 2 + 1)}


def _r1_g1_params(n):
    return ["a2"] + [f"b{t}" for t in range(4, n)]


def _fill_r1_g1(t, n, p, x):
    for s in _even_b_slots(n):
        if p.get(f"b{s}"):
            raise CatalogError(f"R1_g1: b{s} must vanish (b_2k = 0 for 2 <= k <= (n-3)/2)")
    a2 = p["a2"]
    t.lie(1, x, 2, a2)
    for i in range(2, n - 1):
        t.lie(i, x, i, 1)
        for s in range(i + 2, n):
            t.lie(i, x, s, p.get(f"b{s - i + 2}", 0))
    t.lie(n - 1, x, n - 1, 1)
    t.lie(n - 1, x, n, a2)
    t.lie(n, x, n, 2)


def _fill_r2_g1(t, n, p, x):
    t.lie(1, x, 1)
    t.lie(1, x, n - 1, p["a_n-1"])
    for i in range(2, n):
        t.lie(i, x, i, i + 2 - n)
    t.lie(n, x, n, 4 - n)


def _fill_r3_g1(t, n, p, x):
    t.lie(1, x, 1)
    for i in range(2, n - 1):
        t.lie(i, x, i, i + 1 - n)
    t.lie(n, x, n, 2 - n)
    t.set(x, x, n - 1, p["delta_n-1"])


def _fill_r4_g1(t, n, p, x):
    t.lie(1, x, 1)
    for i in range(2, n):
        t.lie(i, x, i, Fraction(2 * i - n, 2))
    t.set(x, x, n, p["delta_n"])


def _fill_r5_g1(t, n, p, x):
    t.lie(1, x, 1)
    t.lie(1, x, n, p["a_n"])
    for i in range(2, n):
        t.lie(i, x, i, Fraction(2 * i + 1 - n, 2))
    t.lie(n, x, n, 1)


def _fill_r6_g1(t, n, p, x):
    a2 = p["a2"]
    t.lie(1, x, 1)
    t.lie(1, x, 2, a2)
    for i in range(2, n - 1):
        t.lie(i, x, i, i - 1)
    t.lie(n - 1, x, n - 1, n - 2)
    t.lie(n - 1, x, n, a2)
    t.lie(n, x, n, n - 2)


def _fill_r7_g1(t, n, p, x):
    b2 = p["b2"]
    t.lie(1, x, 1)
    for i in range(2, n):
        t.lie(i, x, i, i - 2 + b2)
    t.lie(n, x, n, n - 4 + 2 * b2)


def _fill_r1_g2(t, n, p, x):
    for i in range(2, n):
        t.lie(i, x, i, 1)
        for s in range(i + 2, n):
            t.lie(i, x, s, p.get(f"b{s - i + 2}", 0))


def _fill_r2_g2(t, n, p, x):
    a2 = p["a2"]
    t.lie(1, x, 1)
    t.lie(1, x, 2, a2)
    for i in range(2, n):
        t.lie(i, x, i, i - 1)
    t.lie(n, x, 3, -a2)
    t.lie(n, x, n, 2)


def _fill_r3_g2(t, n, p, x):
    t.lie(1, x, 1)
    for i in range(2, n):
        t.lie(i, x, i, i + 3 - n)
    t.lie(n, x, n - 1, p["gamma_n-1"])
    t.lie(n, x, n, 2)


def _fill_r4_g2(t, n, p, x):
    t.lie(1, x, 1)
    for i in range(2, n):
        t.lie(i, x, i, i + 1 - n)
    t.lie(n, x, n, 2)
    t.set(x, x, n - 1, p["delta_n-1"])


def _fill_r5_g2(t, n, p, x):
    b2 = p["b2"]
    t.lie(1, x, 1)
    for i in range(2, n):
        t.lie(i, x, i, i - 2 + b2)
    t.lie(n, x, n, 2)


def _fill_r_g3(t, n, p, x):
    t.lie(1, x, 1)
    for i in range(2, n):
        t.lie(i, x, i, i + 1)
    t.lie(n, x, n, 2)


def _fill_r_sporadic(t, n, p, x):
    for i in range(1, n + 1):
        t.lie(i, x, i, i)


def _fill_r_g1_2(t, n, p, x):
    y = x + 1
    t.lie(1, x, 1)
    for i in range(2, n):
        t.lie(i, x, i, i - 2)
        t.lie(i, y, i, 1)
    t.lie(n, x, n, n - 4)
    t.lie(n, y, n, 2)


def _fill_r_g2_2(t, n, p, x):
    y = x + 1
    t.lie(1, x, 1)
    for i in range(2, n):
        t.lie(i, x, i, i - 2)
        t.lie(i, y, i, 1)
    t.lie(n, x, n, 2)


def _one(name):
    return lambda n: {name: Fraction(1)}


FAMILIES: dict[str, Family] = {
    "R1_g1": Family("R1_g1", "g1n1", 1, _r1_g1_params, lambda n: {"a2": Fraction(1)}, _fill_r1_g1,
                    note="b4 is free only at n=5; for n>=7 the slots b_2k, 2<=k<=(n-3)/2, vanish"),
    "R2_g1": Family("R2_g1", "g1n1", 1, lambda n: ["a_n-1"], _one("a_n-1"), _fill_r2_g1),
    "R3_g1": Family("R3_g1", "g1n1", 1, lambda n: ["delta_n-1"], _one("delta_n-1"), _fill_r3_g1),
    "R4_g1": Family("R4_g1", "g1n1", 1, lambda n: ["delta_n"], _one("delta_n"), _fill_r4_g1,
                    note="coefficients i - n/2 are half-integers because n is odd"),
    "R5_g1": Family("R5_g1", "g1n1", 1, lambda n: ["a_n"], _one("a_n"), _fill_r5_g1),
    "R6_g1": Family("R6_g1", "g1n1", 1, lambda n: ["a2"], _one("a2"), _fill_r6_g1),
    "R7_g1": Family("R7_g1", "g1n1", 1, lambda n: ["b2"], lambda n: {"b2": Fraction(2)}, _fill_r7_g1,
                    excluded=lambda n: {"b2": {Fraction(4 - n), Fraction(3 - n), Fraction(4 - n, 2),
                                               Fraction(5 - n, 2), Fraction(1)}}),
    "R1_g2": Family("R1_g2", "g2n1", 1, lambda n: [f"b{t}" for t in range(4, n)],
                    lambda n: {"b4": Fraction(1)}, _fill_r1_g2),
    "R2_g2": Family("R2_g2", "g2n1", 1, lambda n: ["a2"], _one("a2"), _fill_r2_g2),
    "R3_g2": Family("R3_g2", "g2n1", 1, lambda n: ["gamma_n-1"], _one("gamma_n-1"), _fill_r3_g2),
    "R4_g2": Family("R4_g2", "g2n1", 1, lambda n: ["delta_n-1"], _one("delta_n-1"), _fill_r4_g2),
    "R5_g2": Family("R5_g2", "g2n1", 1, lambda n: ["b2"], lambda n: {"b2": Fraction(2)}, _fill_r5_g2,
                    excluded=lambda n: {"b2": {Fraction(1), Fraction(5 - n), Fraction(3 - n)}}),
    "R_g3n1_1": Family("R_g3n1_1", "g3n1", 1, lambda n: [], lambda n: {}, _fill_r_g3),
    "R_g1_7_1": Family("R_g1_7_1", "g1_7", 1, lambda n: [], lambda n: {}, _fill_r_sporadic),
    "R_g2_9_1": Family("R_g2_9_1", "g2_9", 1, lambda n: [], lambda n: {}, _fill_r_sporadic),
    "R_g3_11_1": Family("R_g3_11_1", "g3_11", 1, lambda n: [], lambda n: {}, _fill_r_sporadic),
    "R_g1n1_2": Family("R_g1n1_2", "g1n1", 2, lambda n: [], lambda n: {}, _fill_r_g1_2),
    "R_g2n1_2": Family("R_g2n1_2", "g2n1", 2, lambda n: [], lambda n: {}, _fill_r_g2_2),
}

ALL_FAMILIES = NILPOTENT_FAMILIES + tuple(FAMILIES)


# ---------------------------------------------------------------------------
# ids


@dataclass(frozen=True)
class CatalogId:
    family: str
    n: int | None = None
    params: tuple[tuple[str, Fraction], ...] = ()

    @classmethod
    def parse(cls, text: str) -> "CatalogId":
        text = text.strip()
        family, _, rest = text.partition(":")
        family = family.strip()
        if family not in ALL_FAMILIES:
            raise CatalogError(f"unknown catalog family {family!r}")
        n = None
        params = {}
        for item in filter(None, (s.strip() for s in rest.split(","))):
            key, eq, value = item.partition("=")
            if not eq:
                raise CatalogError(f"expected key=value, got {item!r}")
            key = key.strip()
            try:
                if key == "n":
                    n = int(value)
                else:
                    params[key] = as_rational(value)
            except (ValueError, ZeroDivisionError):
                raise CatalogError(f"bad value for {key}: {value!r}") from None
        return cls(family, n, tuple(sorted(params.items())))

    def param_dict(self) -> dict[str, Fraction]:
        return dict(self.params)

    def __str__(self) -> str:
        items = ([f"n={self.n}"] if self.n is not None else []) + [f"{k}={v}" for k, v in self.params]
        return self.family + (":" + ",".join(items) if items else "")


def nilradical_dim(cid: CatalogId) -> int:
    fam = cid.family if cid.family in NILPOTENT_FAMILIES else FAMILIES[cid.family].nilradical
    return check_nilradical_dim(fam, cid.n)


def complement_dim(cid: CatalogId) -> int:
    return 0 if cid.family in NILPOTENT_FAMILIES else FAMILIES[cid.family].complement


def resolve_params(cid: CatalogId, strict: bool = True) -> dict[str, Fraction]:
    fam = FAMILIES[cid.family]
    n = nilradical_dim(cid)
    allowed = fam.params(n)
    given = cid.param_dict()
    for key in given:
        if key not in allowed:
            raise CatalogError(f"{cid.family} at n={n} has no parameter {key!r} (allowed: {', '.join(allowed) or 'none'})")
    values = {k: Fraction(0) for k in allowed}
    if not given:
        values.update(fam.defaults(n))
    else:
        values.update(given)
    if strict:
        for key, bad in fam.excluded(n).items():
            if values.get(key) in bad:
                shown = ", ".join(str(b) for b in sorted(bad))
                raise CatalogError(f"{cid.family} at n={n}: {key}={values[key]} is excluded ({key} not in {{{shown}}})")
    return values


def build(cid: CatalogId | str, strict: bool = True) -> Algebra:
    """Structure tensor for a catalog id.

    ``strict=False`` skips the excluded-parameter check (the family's
    dimension constraints always apply); useful for degenerations such as
    R7_g1 at b2 = 4 - n.
    """
    if isinstance(cid, str):
        cid = CatalogId.parse(cid)
    if cid.family in NILPOTENT_FAMILIES:
        if cid.params:
            raise CatalogError(f"{cid.family} takes no parameters")
        return nilradical(cid.family, cid.n)
    fam = FAMILIES[cid.family]
    n = nilradical_dim(cid)
    params = resolve_params(cid, strict)
    base = _nilpotent_table(fam.nilradical, n)
    t = _Table(n + fam.complement)
    t.data = {k: dict(v) for k, v in base.data.items()}
    fam.fill(t, n, params, n + 1)
    labels = default_labels(n) + ["x", "y"][: fam.complement]
    shown = CatalogId(cid.family, cid.n if cid.family not in ("R_g1_7_1", "R_g2_9_1", "R_g3_11_1") else None,
                      tuple(sorted(params.items())))
    return t.build(labels, str(shown))


# ---------------------------------------------------------------------------
# acceptance instances


@dataclass(frozen=True)
class SuiteEntry:
    id: CatalogId
    dim: int
    kind: str  # "nilpotent" | "solvable"
    nilradical: tuple[int, ...]
    expected: dict

    def build(self) -> Algebra:
        return build(self.id)


def _cid(family, n=None, **params):
    return CatalogId(family, n, tuple(sorted((k.replace("_nm1", "_n-1"), as_rational(v)) for k, v in params.items())))


def default_suite(ns=(5, 7, 9)) -> list[SuiteEntry]:
    """Fixed instance list used by the acceptance tests.

    Expected fingerprints only record facts stated for the family: dimension,
    nilpotency index for the nilpotent algebras, and the second cohomology
    dimensions claimed for the extensions with two-dimensional complement
    (H^2 = HL^2 = 0) and the one-dimensional extensions of g3n1 and the
    sporadic algebras (H^2 = 1).
    """
    out: list[SuiteEntry] = []

    def add(cid, expected=None):
        n = nilradical_dim(cid)
        dim = n + complement_dim(cid)
        kind = "nilpotent" if cid.family in NILPOTENT_FAMILIES else "solvable"
        exp = {"dim": dim}
        if kind == "nilpotent":
            exp["nil_index"] = dim - 1
        exp.update(expected or {})
        out.append(SuiteEntry(cid, dim, kind, tuple(range(n)), exp))

    for n in ns:
        if n >= 5 and n % 2:
            add(_cid("g1n1", n))
        if n >= 5:
            add(_cid("g2n1", n))
        if n >= 7:
            add(_cid("g3n1", n))
    add(_cid("g1_7"))
    add(_cid("g2_9"))
    add(_cid("g3_11"))
    for n in ns:
        if n >= 5 and n % 2:
            add(_cid("R1_g1", n, a2=1))
            add(_cid("R2_g1", n, a_nm1=1))
            add(_cid("R3_g1", n, delta_nm1=1))
            add(_cid("R4_g1", n, delta_n=1))
            add(_cid("R5_g1", n, a_n=1))
            add(_cid("R6_g1", n, a2=1))
            add(_cid("R7_g1", n, b2=2))
    for n in ns:
        if n >= 5:
            add(_cid("R1_g2", n, b4=1))
            add(_cid("R2_g2", n, a2=1))
            add(_cid("R3_g2", n, gamma_nm1=1))
            add(_cid("R4_g2", n, delta_nm1=1))
            add(_cid("R5_g2", n, b2=2))
    for n in ns:
        if n >= 7:
            add(_cid("R_g3n1_1", n), {"H2": 1})
    add(_cid("R_g1_7_1"), {"H2": 1})
    add(_cid("R_g2_9_1"), {"H2": 1})
    add(_cid("R_g3_11_1"), {"H2": 1})
    for n in ns:
        if n >= 5 and n % 2:
            add(_cid("R_g1n1_2", n), {"H2": 0, "HL2": 0})
        if n >= 5:
            add(_cid("R_g2n1_2", n), {"H2": 0, "HL2": 0})
    return out


def cohomology_claims(cid: CatalogId | str) -> dict[tuple[str, int], int]:
    """Cohomology dimensions stated for a catalog algebra, keyed by (theory, degree)."""
    if isinstance(cid, str):
        cid = CatalogId.parse(cid)
    if cid.family in ("R_g1n1_2", "R_g2n1_2"):
        return {("lie", 0): 0, ("lie", 1): 0, ("lie", 2): 0, ("leibniz", 2): 0}
    if cid.family in ("R_g3n1_1", "R_g1_7_1", "R_g2_9_1", "R_g3_11_1"):
        return {("lie", 2): 1, ("leibniz", 2): 1}
    return {}
