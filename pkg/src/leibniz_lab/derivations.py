"""Derivations, right multiplications, nil-independence and nilradical certificates."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import Algebra, derived_algebra, format_vector, is_ideal, is_nilpotent, restrict
from .linalg import DimensionError, Matrix, Subspace, complement_basis, null_space_sparse, rref_sparse, rank_sparse

_ZERO = Fraction(0)


class LinearMap:
    """Endomorphism of an algebra's underlying space; column j is the image of b_j."""

    __slots__ = ("algebra_dim", "m")

    def __init__(self, m: Matrix):
        if not m.is_square():
            raise DimensionError("a linear map on an algebra is square")
        self.algebra_dim = m.rows
        self.m = m

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> "LinearMap":
        return cls(Matrix.from_columns(columns))

    @classmethod
    def from_vector(cls, v: Sequence, dim: int) -> "LinearMap":
        """Inverse of :meth:`vector` (row-major flattening of the matrix)."""
        return cls(Matrix(dim, dim, v))

    @classmethod
    def zero(cls, dim: int) -> "LinearMap":
        return cls(Matrix.zeros(dim, dim))

    def vector(self) -> tuple[Fraction, ...]:
        return self.m.entries

    def __call__(self, v: Sequence) -> tuple[Fraction, ...]:
        return self.m @ v

    def image(self, j: int) -> tuple[Fraction, ...]:
        return self.m.col(j)

    def _check(self, other):
        if self.algebra_dim != other.algebra_dim:
            raise DimensionError("maps act on spaces of different dimensions")

    def __add__(self, other: "LinearMap") -> "LinearMap":
        self._check(other)
        return LinearMap(self.m + other.m)

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        self._check(other)
        return LinearMap(self.m - other.m)

    def __neg__(self):
        return LinearMap(-self.m)

    def scale(self, s) -> "LinearMap":
        return LinearMap(self.m.scale(s))

    __rmul__ = scale

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self after other."""
        self._check(other)
        return LinearMap(self.m @ other.m)

    __matmul__ = compose

    def commutator(self, other: "LinearMap") -> "LinearMap":
        return self @ other - other @ self

    def power(self, k: int) -> "LinearMap":
        return LinearMap(self.m ** k)

    def is_nilpotent(self) -> bool:
        return (self.m ** self.algebra_dim).is_zero()

    def is_zero(self) -> bool:
        return self.m.is_zero()

    def __eq__(self, other):
        return isinstance(other, LinearMap) and self.m == other.m

    def __hash__(self):
        return hash(self.m)

    def __repr__(self):
        return f"LinearMap({self.m!r})"


def is_nilpotent_map(d: LinearMap) -> bool:
    return d.is_nilpotent()


def right_multiplication(a: Algebra, v: Sequence | int) -> LinearMap:
    """R_v : y -> [y, v]."""
    if isinstance(v, int):
        v = a.basis_vector(v)
    vs = {k: Fraction(x) for k, x in enumerate(v) if x}
    cols = [a.bracket_sparse({j: Fraction(1)}, vs) for j in range(a.dim)]
    return LinearMap(Matrix.from_columns([[c.get(k, _ZERO) for k in range(a.dim)] for c in cols], a.dim))


def left_multiplication(a: Algebra, v: Sequence | int) -> LinearMap:
    """L_v : y -> [v, y]."""
    if isinstance(v, int):
        v = a.basis_vector(v)
    vs = {k: Fraction(x) for k, x in enumerate(v) if x}
    cols = [a.bracket_sparse(vs, {j: Fraction(1)}) for j in range(a.dim)]
    return LinearMap(Matrix.from_columns([[c.get(k, _ZERO) for k in range(a.dim)] for c in cols], a.dim))


def derivation_defects(a: Algebra, d: LinearMap) -> list[tuple[int, int, list[Fraction]]]:
    """Basis pairs where d([x,y]) - [d x, y] - [x, d y] is nonzero."""
    n = a.dim
    if d.algebra_dim != n:
        raise DimensionError("map and algebra dimensions differ")
    cols = [{k: x for k, x in enumerate(d.image(j)) if x} for j in range(n)]
    out = []
    for i in range(n):
        for j in range(n):
            acc: dict[int, Fraction] = {}
            for m, c in a.product(i, j).items():
                for k, x in cols[m].items():
                    acc[k] = acc.get(k, _ZERO) + c * x
            for k, x in a.bracket_sparse(cols[i], {j: Fraction(1)}).items():
                acc[k] = acc.get(k, _ZERO) - x
            for k, x in a.bracket_sparse({i: Fraction(1)}, cols[j]).items():
                acc[k] = acc.get(k, _ZERO) - x
            if any(acc.values()):
                out.append((i, j, [acc.get(k, _ZERO) for k in range(n)]))
    return out


def is_derivation(a: Algebra, d: LinearMap) -> bool:
    return not derivation_defects(a, d)


def derivation_constraints(a: Algebra) -> list[dict[int, Fraction]]:
    """Rows of the dim^3 x dim^2 system expressing d([b_i,b_j]) = [d b_i, b_j] + [b_i, d b_j].

    Unknown D[r][s] (coefficient of b_r in d(b_s)) sits in column r*dim + s.
    """
    n = a.dim
    rows = []
    for i in range(n):
        for j in range(n):
            acc: dict[int, dict[int, Fraction]] = {}

            def add(k, col, v):
                row = acc.setdefault(k, {})
                row[col] = row.get(col, _ZERO) + v

            for m, c in a.product(i, j).items():
                for k in range(n):
                    add(k, k * n + m, c)
            for m in range(n):
                for k, c in a.product(m, j).items():
                    add(k, m * n + i, -c)
                for k, c in a.product(i, m).items():
                    add(k, m * n + j, -c)
            for row in acc.values():
                row = {c: v for c, v in row.items() if v}
                if row:
                    rows.append(row)
    return rows


@dataclass
class DerivationSpace:
    algebra: Algebra
    basis: list[LinearMap]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def subspace(self) -> Subspace:
        n = self.algebra.dim
        return Subspace.span([d.vector() for d in self.basis], n * n)

    def contains(self, d: LinearMap) -> bool:
        return self.subspace().contains(d.vector())


def derivation_space(a: Algebra) -> DerivationSpace:
    n = a.dim
    kernel = null_space_sparse(derivation_constraints(a), n * n)
    basis = []
    for v in kernel:
        entries = [_ZERO] * (n * n)
        for k, x in v.items():
            entries[k] = x
        basis.append(LinearMap(Matrix(n, n, entries)))
    return DerivationSpace(a, basis)


def inner_derivations(a: Algebra) -> Subspace:
    """span{R_{b_i}} as dim^2-vectors; these are the 1-coboundaries of the Leibniz complex."""
    n = a.dim
    return Subspace.span([right_multiplication(a, i).vector() for i in range(n)], n * n)


# ---------------------------------------------------------------------------
# nil-independence


@dataclass
class NilIndependenceResult:
    independent: bool
    method: str
    witness: tuple[Fraction, ...] | None = None
    trials: int = 0

    def __bool__(self):
        return self.independent


def _diagonal(m: Matrix) -> list[Fraction]:
    return [m[i, i] for i in range(m.rows)]


def nil_independent(maps: Sequence[LinearMap], trials: int = 50, seed: int = 0) -> NilIndependenceResult:
    """Decide whether no nonzero combination sum a_i d_i is nilpotent.

    Exact when all maps are simultaneously upper (or lower) triangular: a
    triangular matrix is nilpotent iff its diagonal vanishes, so the question
    becomes linear independence of the diagonals.  Otherwise: exact linear
    dependence (a vanishing combination is nilpotent) and single-map checks,
    then random sampling of combinations.  A sampled ``True`` is a randomized
    certificate; ``False`` always comes with a witness.
    """
    maps = list(maps)
    if not maps:
        raise ValueError("nil_independent needs at least one map")
    dim = maps[0].algebra_dim
    for d in maps:
        if d.algebra_dim != dim:
            raise DimensionError("maps act on spaces of different dimensions")
    k = len(maps)

    def unit(i):
        return tuple(Fraction(int(i == j)) for j in range(k))

    if all(d.m.is_upper_triangular() for d in maps) or all(d.m.is_lower_triangular() for d in maps):
        # columns: maps; rows: diagonal positions
        rows = [{j: _diagonal(d.m)[i] for j, d in enumerate(maps) if d.m[i, i]} for i in range(dim)]
        kernel = null_space_sparse(rows, k)
        if kernel:
            w = tuple(kernel[0].get(j, _ZERO) for j in range(k))
            return NilIndependenceResult(False, "triangular", w)
        return NilIndependenceResult(True, "triangular")

    kernel = null_space_sparse([{j: d.vector()[p] for j, d in enumerate(maps) if d.vector()[p]}
                                for p in range(dim * dim)], k)
    if kernel:
        w = tuple(kernel[0].get(j, _ZERO) for j in range(k))
        return NilIndependenceResult(False, "linear-dependence", w)
    for i, d in enumerate(maps):
        if d.is_nilpotent():
            return NilIndependenceResult(False, "single-map", unit(i))
    if k == 1:
        return NilIndependenceResult(True, "single-map")
    rng = random.Random(seed)
    for t in range(trials):
        coeffs = tuple(Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(k))
        if not any(coeffs):
            continue
        combo = LinearMap.zero(dim)
        for a, d in zip(coeffs, maps):
            combo = combo + d.scale(a)
        if _trace_obstruction(combo.m):
            continue
        if combo.is_nilpotent():
            return NilIndependenceResult(False, "sampled", coeffs, t + 1)
    return NilIndependenceResult(True, "sampled", None, trials)


def _trace_obstruction(m: Matrix) -> bool:
    """True if some tr(m^p), p <= dim, is nonzero (then m is not nilpotent)."""
    p = m
    for _ in range(m.rows):
        if p.trace():
            return True
        p = p @ m
    return False


# ---------------------------------------------------------------------------
# nilradical certificate


@dataclass
class NilradicalReport:
    ideal: bool
    nilpotent: bool
    contains_derived: bool
    complement_nil_independent: bool
    complement_derivations: bool = True
    complement_non_nilpotent: list[bool] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return (self.ideal and self.nilpotent and self.contains_derived
                and self.complement_derivations and self.complement_nil_independent)

    def checks(self) -> dict[str, bool]:
        return {
            "ideal": self.ideal,
            "nilpotent": self.nilpotent,
            "contains_derived": self.contains_derived,
            "complement_nil_independent": self.complement_derivations and self.complement_nil_independent,
        }

    def first_failure(self) -> int | None:
        for pos, ok in enumerate(self.checks().values(), start=1):
            if not ok:
                return pos
        return None


def restricted_right_multiplication(r: Algebra, x: int, n_indices: Sequence[int]) -> LinearMap | None:
    """R_x restricted to span{b_i : i in n_indices}, in those coordinates; None if it leaves the span."""
    idx = list(n_indices)
    pos = {g: l for l, g in enumerate(idx)}
    cols = []
    for g in idx:
        w = r.product(g, x)
        if any(k not in pos for k in w):
            return None
        col = [_ZERO] * len(idx)
        for k, v in w.items():
            col[pos[k]] = v
        cols.append(col)
    return LinearMap(Matrix.from_columns(cols, len(idx)))


def verify_nilradical(r: Algebra, n_indices: Sequence[int], trials: int = 50, seed: int = 0) -> NilradicalReport:
    """Certify span{b_i : i in n_indices} as the nilradical of the solvable algebra ``r``.

    Checks: (1) two-sided ideal; (2) nilpotent; (3) contains [r, r];
    (4) right multiplications by the remaining basis vectors restrict to
    nil-independent derivations of N.
    """
    idx = sorted(set(n_indices))
    if len(idx) != len(list(n_indices)):
        raise ValueError("duplicate nilradical indices")
    for i in idx:
        if not 0 <= i < r.dim:
            raise IndexError(f"index {i} out of range for dimension {r.dim}")
    span = Subspace.coordinate(idx, r.dim)
    ideal = is_ideal(r, span)
    details: dict = {}
    try:
        sub = restrict(r, idx)
        nilpotent = is_nilpotent(sub)
    except ValueError:
        sub = None
        nilpotent = False
    contains_derived = derived_algebra(r).issubset(span)
    if not contains_derived:
        outside = [(i, j) for (i, j), w in r.nonzero_products() if not span.contains_sparse(w)]
        details["derived_outside"] = [(r.labels[i], r.labels[j]) for i, j in outside]
    complement = [i for i in range(r.dim) if i not in set(idx)]
    maps = []
    derivs = True
    non_nil = []
    for x in complement:
        d = restricted_right_multiplication(r, x, idx)
        if d is None or sub is None:
            derivs = False
            non_nil.append(False)
            continue
        derivs = derivs and is_derivation(sub, d)
        non_nil.append(not d.is_nilpotent())
        maps.append(d)
    if complement and derivs and len(maps) == len(complement):
        res = nil_independent(maps, trials, seed)
        indep = res.independent
        details["nil_independence_method"] = res.method
        if res.witness is not None:
            details["nilpotent_combination"] = [str(w) for w in res.witness]
    else:
        indep = not complement
    return NilradicalReport(ideal, nilpotent, contains_derived, indep, derivs, non_nil, details)


# ---------------------------------------------------------------------------
# parametric derivations of the nilradical families


class _Param:
    """Builds one LinearMap per free parameter from formulas d(e_s) = sum coeff * param * e_t."""

    def __init__(self, n: int):
        self.n = n
        self.terms: dict[str, dict[tuple[int, int], Fraction]] = {}

    def add(self, param: str, source: int, target: int, coeff=1):
        if not (1 <= source <= self.n and 1 <= target <= self.n):
            return
        slot = self.terms.setdefault(param, {})
        key = (target - 1, source - 1)
        slot[key] = slot.get(key, _ZERO) + Fraction(coeff)

    def maps(self, forced_zero=()) -> dict[str, LinearMap]:
        out = {}
        for p, entries in self.terms.items():
            if p in forced_zero:
                continue
            e = [_ZERO] * (self.n * self.n)
            for (r, c), v in entries.items():
                e[r * self.n + c] = v
            out[p] = LinearMap(Matrix(self.n, self.n, e))
        return out


def _params_g1n1(n):
    P = _Param(n)
    for t in range(1, n + 1):
        P.add(f"a{t}", 1, t)
    for t in range(2, n + 1):
        P.add(f"b{t}", 2, t)
    for i in range(3, n):
        P.add("a1", i, i, i - 2)
        P.add("b2", i, i, 1)
        for t in range(i + 1, n):
            P.add(f"b{t - i + 2}", i, t)
        P.add(f"a{n - i + 1}", i, n, (-1) ** i)
    P.add("a1", n, n, n - 4)
    P.add("b2", n, n, 2)
    forced = {f"b{2 * k}" for k in range(2, (n - 3) // 2 + 1)}
    return P, forced


def _params_g2n1(n):
    P = _Param(n)
    for t in range(1, n):
        P.add(f"a{t}", 1, t)
    for i in range(2, n):
        P.add("a1", i, i, i - 2)
        P.add("b2", i, i, 1)
        for t in range(i + 1, n):
            P.add(f"b{t - i + 2}", i, t)
    for t in range(3, n - 1):
        P.add(f"a{t - 1}", n, t, -1)
    P.add(f"c{n - 1}", n, n - 1)
    P.add("a1", n, n, 2)
    return P, set()


def _params_g3n1(n):
    P = _Param(n)
    P.add("a1", 1, 1)
    for t in range(3, n):
        P.add(f"a{t}", 1, t)
    P.add("a1", 2, 2, 3)
    for t in range(3, n):
        P.add(f"b{t}", 2, t)
    for i in range(3, n):
        P.add("a1", i, i, i + 1)
        # terms beyond e_{n-1} are dropped: e_n is not part of the chain e_3..e_{n-1}
        if i + 1 <= n - 1:
            P.add("b3", i, i + 1)
        if i + 2 <= n - 1:
            P.add("b4", i, i + 2)
        for j in range(i + 3, n):
            P.add(f"b{j - i + 2}", i, j)
            P.add(f"a{j - i}", i, j, -1)
    for t in range(4, n - 1):
        P.add(f"a{t - 1}", n, t, -1)
    P.add(f"c{n - 1}", n, n - 1)
    P.add("a1", n, n, 2)
    return P, set()


def _table_params(n, rows):
    """rows: {source: [(param, target, coeff), ...]}; 'a1' diagonal handled by caller's rows."""
    P = _Param(n)
    for s, items in rows.items():
        for param, target, coeff in items:
            P.add(param, s, target, coeff)
    return P, set()


def _params_g1_7():
    return _table_params(7, {
        1: [(f"a{t}", t, 1) for t in range(1, 8)],
        2: [("a1", 2, 2), ("b3", 3, 1), ("b5", 5, 1), ("b6", 6, 1), ("b7", 7, 1)],
        3: [("a1", 3, 3), ("b3", 4, 1), ("a3", 5, -1), ("b5", 6, 1), ("a4", 6, -1), ("a5", 7, -1)],
        4: [("a1", 4, 4), ("b3", 5, 1), ("a3", 6, -1), ("a4", 7, 1)],
        5: [("a1", 5, 5), ("b3", 6, 1), ("a3", 7, -1)],
        6: [("a1", 6, 6)],
        7: [("a1", 7, 7)],
    })


def _params_g2_9():
    return _table_params(9, {
        1: [("a1", 1, 1)] + [(f"a{t}", t, 1) for t in range(3, 10)],
        2: [("a1", 2, 2), ("b3", 3, 1), ("a4", 5, 1), ("a5", 6, 1), ("b7", 7, 1), ("b8", 8, 1), ("b9", 9, 1)],
        3: [("a1", 3, 3), ("b3", 4, 1), ("a3", 5, -1), ("a5", 7, -2), ("b7", 8, 1), ("a6", 8, -5), ("a7", 9, -1)],
        4: [("a1", 4, 4), ("b3", 5, 1), ("a3", 6, -1), ("a4", 7, 2), ("a6", 9, 1)],
        5: [("a1", 5, 5), ("b3", 6, 1), ("a3", 7, -3), ("a4", 8, 2), ("a5", 9, -1)],
        6: [("a1", 6, 6), ("b3", 7, 1), ("a3", 8, -5), ("a4", 9, 1)],
        7: [("a1", 7, 7), ("b3", 8, 1), ("a3", 9, -1)],
        8: [("a1", 8, 8)],
        9: [("a1", 9, 9)],
    })


def _params_g3_11():
    return _table_params(11, {
        1: [("a1", 1, 1)] + [(f"a{t}", t, 1) for t in range(3, 12)],
        2: [("a1", 2, 2), ("b3", 3, 1), ("a4", 5, 1), ("a5", 6, 1), ("b7", 7, 1), ("a7", 8, -1),
            ("b9", 9, 1), ("b10", 10, 1), ("b11", 11, 1)],
        3: [("a1", 3, 3), ("b3", 4, 1), ("a3", 5, -1), ("a5", 7, 1), ("b7", 8, 1), ("a6", 8, 1),
            ("b9", 9, -1), ("a9", 11, -1)],
        4: [("a1", 4, 4), ("b3", 5, 1), ("a3", 6, -1), ("a4", 7, -1), ("a6", 9, 1), ("b7", 9, 1),
            ("a7", 10, 1), ("a8", 11, 1)],
        5: [("a1", 5, 5), ("b3", 6, 1), ("a4", 8, -1), ("a5", 9, -1), ("b7", 10, 1), ("a7", 11, -1)],
        6: [("a1", 6, 6), ("b3", 7, 1), ("a3", 8, 1), ("a5", 10, -1), ("a6", 11, 1)],
        7: [("a1", 7, 7), ("b3", 8, 1), ("a3", 9, 1), ("a4", 10, 1), ("a5", 11, -1)],
        8: [("a1", 8, 8), ("b3", 9, 1), ("a4", 11, 1)],
        9: [("a1", 9, 9), ("b3", 10, 1), ("a3", 11, -1)],
        10: [("a1", 10, 10)],
        11: [("a1", 11, 11)],
    })


def parametric_derivations(family: str, n: int | None = None) -> dict[str, LinearMap]:
    """One map per free parameter of the published derivation formulas (that parameter 1, others 0)."""
    from .catalog import check_nilradical_dim

    n = check_nilradical_dim(family, n)
    if family == "g1n1":
        P, forced = _params_g1n1(n)
    elif family == "g2n1":
        P, forced = _params_g2n1(n)
    elif family == "g3n1":
        P, forced = _params_g3n1(n)
    elif family == "g1_7":
        P, forced = _params_g1_7()
    elif family == "g2_9":
        P, forced = _params_g2_9()
    elif family == "g3_11":
        P, forced = _params_g3_11()
    else:
        raise ValueError(f"no derivation parametrization for {family!r}")
    return P.maps(forced)


@dataclass
class ParametrizationReport:
    family: str
    n: int
    parameter_count: int
    derivation_dim: int
    parametric_span_dim: int
    non_derivations: dict[str, list] = field(default_factory=dict)
    missing_dim: int = 0
    missing_examples: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (not self.non_derivations and self.missing_dim == 0
                and self.parametric_span_dim == self.derivation_dim == self.parameter_count)

    def discrepancies(self) -> list[dict]:
        out = []
        for p, (x, y, w) in self.non_derivations.items():
            out.append({"kind": "not_a_derivation", "parameter": p, "pair": [x, y], "defect": w})
        for ex in self.missing_examples:
            out.append({"kind": "missing_derivation", "map": ex})
        if self.parametric_span_dim != self.parameter_count:
            out.append({"kind": "dependent_parameters", "parameters": self.parameter_count,
                        "span_dim": self.parametric_span_dim})
        if self.derivation_dim != self.parameter_count:
            out.append({"kind": "dimension", "claimed": self.parameter_count, "computed": self.derivation_dim})
        return out


def format_map(d: LinearMap, labels: Sequence[str]) -> dict[str, str]:
    """{"d(e1)": "e1+2e3", ...} over the basis vectors with nonzero image."""

    out = {}
    for j, label in enumerate(labels):
        img = {k: v for k, v in enumerate(d.image(j)) if v}
        if img:
            out[f"d({label})"] = format_vector(img, labels)
    return out


def verify_derivation_parametrization(family: str, n: int | None = None) -> ParametrizationReport:
    """Compare the published parametrization with the computed derivation algebra.

    Each parameter map must be a derivation, the maps must be independent, and
    their span must equal the full null-space solution.
    """
    from .catalog import check_nilradical_dim, nilradical

    n = check_nilradical_dim(family, n)
    a = nilradical(family, n)
    maps = parametric_derivations(family, n)
    bad = {}
    for p, d in maps.items():
        defects = derivation_defects(a, d)
        if defects:
            i, j, w = defects[0]
            bad[p] = [a.labels[i], a.labels[j], format_vector({k: x for k, x in enumerate(w) if x}, a.labels)]
    space = derivation_space(a)
    full = space.subspace()
    span = Subspace.span([d.vector() for d in maps.values()], n * n)
    missing = full.dim - full.intersect(span).dim
    examples = []
    if missing:
        extra = complement_basis(span.sparse_vectors(), full.sparse_vectors(), n * n)
        for i in extra:
            d = LinearMap.from_vector(full.vectors()[i], n)
            examples.append(format_map(d, a.labels))
    return ParametrizationReport(family, n, len(maps), space.dim, span.dim, bad, missing, examples)
