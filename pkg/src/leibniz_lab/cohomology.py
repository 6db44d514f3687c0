"""Cochain complexes with adjoint coefficients.

Two theories are supported:

``leibniz``
    CL^n(L, L) = Hom(L^{(x)n}, L) with the Loday differential::

        (d phi)(x_1..x_{n+1}) = [x_1, phi(x_2..x_{n+1})]
            + sum_{i>=2} (-1)^i [phi(x_1..^x_i..x_{n+1}), x_i]
            + sum_{i<j} (-1)^{j+1} phi(x_1..x_{i-1}, [x_i,x_j], x_{i+1}..^x_j..x_{n+1})

    In degree 0 this reads (d m)(x) = [x, m].

``lie``
    Chevalley-Eilenberg complex of alternating cochains::

        (d phi)(x_1..x_{n+1}) = sum_i (-1)^{i+1} [x_i, phi(..^x_i..)]
            + sum_{i<j} (-1)^{i+j} phi([x_i,x_j], ..^x_i..^x_j..)

Differentials are available both as direct evaluation on a :class:`Cochain`
and as sparse coefficient matrices; dimensions of cocycles, coboundaries and
cohomology come from exact ranks of the latter.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, lcm
from typing import Iterable, Sequence

from .algebra import Algebra, is_lie
from .linalg import (
    DimensionError,
    SparseRow,
    complement_basis,
    null_space_sparse,
    rank_sparse,
    Subspace,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)
THEORIES = ("leibniz", "lie")
SUPPORTED_DEGREES = (0, 1, 2)


class CohomologyError(ValueError):
    pass


def _perm_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq`` (0 if entries repeat)."""
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    s = list(seq)
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            if s[i] > s[j]:
                sign = -sign
    return sign


# ---------------------------------------------------------------------------
# cochains


@dataclass(frozen=True)
class Cochain:
    """Multilinear map from ``source_dim``-space^degree to ``target_dim``-space.

    ``coeffs[flat(args) * target_dim + k]`` is the k-th coordinate of
    phi(b_{args[0]}, ..., b_{args[-1]}), with ``flat`` the base-``source_dim``
    number of the argument tuple.
    """

    degree: int
    source_dim: int
    target_dim: int
    coeffs: tuple
    alternating: bool = False

    def __post_init__(self):
        expected = self.source_dim ** self.degree * self.target_dim
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        if len(coeffs) != expected:
            raise DimensionError(f"cochain needs {expected} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)
        if self.alternating and not self._check_alternating():
            raise CohomologyError("cochain is marked alternating but is not antisymmetric")

    @classmethod
    def zero(cls, degree: int, source_dim: int, target_dim: int | None = None, alternating=False) -> "Cochain":
        target_dim = source_dim if target_dim is None else target_dim
        return cls(degree, source_dim, target_dim, (_ZERO,) * (source_dim ** degree * target_dim), alternating)

    @classmethod
    def from_values(cls, degree: int, source_dim: int, values: dict, target_dim: int | None = None,
                    alternating: bool = False) -> "Cochain":
        """Build from ``{args: {k: coeff}}``.

        With ``alternating=True`` each listed value is extended by antisymmetry,
        so only one ordering per argument set needs to be given.
        """
        target_dim = source_dim if target_dim is None else target_dim
        out = [_ZERO] * (source_dim ** degree * target_dim)
        for args, vec in values.items():
            args = tuple(args)
            if len(args) != degree:
                raise DimensionError(f"argument tuple {args} has the wrong length")
            items = [(k, Fraction(v)) for k, v in (vec.items() if isinstance(vec, dict) else enumerate(vec)) if v]
            if not alternating:
                base = _flat(args, source_dim) * target_dim
                for k, v in items:
                    out[base + k] += v
                continue
            if len(set(args)) != len(args):
                if items:
                    raise CohomologyError("alternating cochain cannot take a nonzero value on repeated arguments")
                continue
            for perm in itertools.permutations(range(degree)):
                sign = _perm_sign(perm)
                base = _flat(tuple(args[i] for i in perm), source_dim) * target_dim
                for k, v in items:
                    out[base + k] += sign * v
        return cls(degree, source_dim, target_dim, tuple(out), alternating)

    def value(self, args: Sequence[int]) -> tuple[Fraction, ...]:
        base = _flat(tuple(args), self.source_dim) * self.target_dim
        return self.coeffs[base:base + self.target_dim]

    def value_sparse(self, args: Sequence[int]) -> SparseRow:
        return {k: v for k, v in enumerate(self.value(args)) if v}

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _check_alternating(self) -> bool:
        for args in itertools.product(range(self.source_dim), repeat=self.degree):
            v = self.value(args)
            if len(set(args)) != len(args):
                if any(v):
                    return False
                continue
            srt = tuple(sorted(args))
            if srt == args:
                continue
            s = _perm_sign(args)
            w = self.value(srt)
            if any(a != s * b for a, b in zip(v, w)):
                return False
        return True

    def is_alternating(self) -> bool:
        return self._check_alternating()

    def nonzero_values(self) -> dict[tuple, SparseRow]:
        out = {}
        for args in itertools.product(range(self.source_dim), repeat=self.degree):
            v = self.value_sparse(args)
            if v:
                out[args] = v
        return out

    def __add__(self, other: "Cochain") -> "Cochain":
        self._same_space(other)
        return Cochain(self.degree, self.source_dim, self.target_dim,
                       tuple(a + b for a, b in zip(self.coeffs, other.coeffs)),
                       self.alternating and other.alternating)

    def scale(self, s) -> "Cochain":
        s = Fraction(s)
        return Cochain(self.degree, self.source_dim, self.target_dim, tuple(s * a for a in self.coeffs), self.alternating)

    def _same_space(self, other):
        if (self.degree, self.source_dim, self.target_dim) != (other.degree, other.source_dim, other.target_dim):
            raise DimensionError("cochains live in different spaces")

    def to_vector(self, theory: str) -> SparseRow:
        """Coordinates in the column basis used by :func:`coboundary_matrix`."""
        if theory == "leibniz":
            return {i: v for i, v in enumerate(self.coeffs) if v}
        if not self.is_alternating():
            raise CohomologyError("lie theory needs an alternating cochain")
        out = {}
        t = self.target_dim
        for idx, args in enumerate(itertools.combinations(range(self.source_dim), self.degree)):
            for k, v in enumerate(self.value(args)):
                if v:
                    out[idx * t + k] = v
        return out

    @classmethod
    def from_vector(cls, theory: str, degree: int, source_dim: int, target_dim: int, vec: SparseRow) -> "Cochain":
        if theory == "leibniz":
            out = [_ZERO] * (source_dim ** degree * target_dim)
            for i, v in vec.items():
                out[i] = v
            return cls(degree, source_dim, target_dim, tuple(out))
        combos = list(itertools.combinations(range(source_dim), degree))
        values: dict[tuple, dict] = {}
        for col, v in vec.items():
            idx, k = divmod(col, target_dim)
            values.setdefault(combos[idx], {})[k] = v
        return cls.from_values(degree, source_dim, values, target_dim, alternating=True)

    def transport(self, g, ginv) -> "Cochain":
        """(g . phi)(x_1..x_n) = g phi(g^{-1} x_1, ..., g^{-1} x_n) for a square basis change."""
        if self.source_dim != self.target_dim:
            raise DimensionError("transport needs an endomorphism-valued cochain")
        n = self.source_dim
        cols = [{k: x for k, x in enumerate(ginv.col(i)) if x} for i in range(n)]
        values = {}
        nz = self.nonzero_values()
        for args in itertools.product(range(n), repeat=self.degree):
            acc: dict[int, Fraction] = {}
            for combo in itertools.product(*(cols[a].items() for a in args)):
                coeff = _ONE
                inner = []
                for idx, c in combo:
                    coeff *= c
                    inner.append(idx)
                v = nz.get(tuple(inner))
                if v:
                    for k, x in v.items():
                        acc[k] = acc.get(k, _ZERO) + coeff * x
            if any(acc.values()):
                out = {}
                for k, x in acc.items():
                    if x:
                        for r, y in enumerate(g.col(k)):
                            if y:
                                out[r] = out.get(r, _ZERO) + x * y
                values[args] = {k: v for k, v in out.items() if v}
        return Cochain.from_values(self.degree, n, values, n, alternating=False)


def _flat(args: tuple, base: int) -> int:
    idx = 0
    for a in args:
        idx = idx * base + a
    return idx


# ---------------------------------------------------------------------------
# direct evaluation of the differentials


def _check_theory(theory: str):
    if theory not in THEORIES:
        raise CohomologyError(f"unknown theory {theory!r}; use 'leibniz' or 'lie'")


def _add(acc: dict, v: SparseRow, s):
    for k, x in v.items():
        acc[k] = acc.get(k, _ZERO) + s * x


def differential(theory: str, a: Algebra, phi: Cochain) -> Cochain:
    """Apply d^n to ``phi`` by evaluating the defining formula on basis tuples."""
    _check_theory(theory)
    if phi.source_dim != a.dim or phi.target_dim != a.dim:
        raise DimensionError("cochain and algebra dimensions differ")
    n = phi.degree
    dim = a.dim

    def e(i):
        return {i: _ONE}

    values = {}
    if theory == "leibniz":
        for x in itertools.product(range(dim), repeat=n + 1):
            acc: dict[int, Fraction] = {}
            _add(acc, a.bracket_sparse(e(x[0]), phi.value_sparse(x[1:])), 1)
            for p in range(1, n + 1):
                rest = x[:p] + x[p + 1:]
                _add(acc, a.bracket_sparse(phi.value_sparse(rest), e(x[p])), (-1) ** (p + 1))
            for p in range(n + 1):
                for q in range(p + 1, n + 1):
                    for l, c in a.product(x[p], x[q]).items():
                        args = x[:p] + (l,) + x[p + 1:q] + x[q + 1:]
                        _add(acc, phi.value_sparse(args), (-1) ** q * c)
            acc = {k: v for k, v in acc.items() if v}
            if acc:
                values[x] = acc
        return Cochain.from_values(n + 1, dim, values, dim)

    if not is_lie(a):
        raise CohomologyError("lie theory needs a Lie algebra")
    if not phi.is_alternating():
        raise CohomologyError("lie theory needs an alternating cochain")
    for x in itertools.combinations(range(dim), n + 1):
        acc = {}
        for p in range(n + 1):
            rest = x[:p] + x[p + 1:]
            _add(acc, a.bracket_sparse(e(x[p]), phi.value_sparse(rest)), (-1) ** p)
        for p in range(n + 1):
            for q in range(p + 1, n + 1):
                rest = x[:p] + x[p + 1:q] + x[q + 1:]
                for l, c in a.product(x[p], x[q]).items():
                    _add(acc, phi.value_sparse((l,) + rest), (-1) ** (p + q) * c)
        acc = {k: v for k, v in acc.items() if v}
        if acc:
            values[x] = acc
    return Cochain.from_values(n + 1, dim, values, dim, alternating=True)


# ---------------------------------------------------------------------------
# sparse coefficient matrices


@dataclass
class CochainSpace:
    """Column/row indexing for a cochain space (arguments x target coordinate)."""

    theory: str
    degree: int
    source_dim: int
    target_dim: int

    def __post_init__(self):
        if self.theory == "leibniz":
            self.tuples = list(itertools.product(range(self.source_dim), repeat=self.degree))
        else:
            self.tuples = list(itertools.combinations(range(self.source_dim), self.degree))
        self.index = {t: i for i, t in enumerate(self.tuples)}

    @property
    def dim(self) -> int:
        return len(self.tuples) * self.target_dim

    def column(self, args: tuple, k: int) -> tuple[int, int]:
        """(column, sign) for phi(args)_k; sign 0 if the entry vanishes identically."""
        if self.theory == "leibniz":
            return self.index[args] * self.target_dim + k, 1
        s = _perm_sign(args)
        if not s:
            return -1, 0
        return self.index[tuple(sorted(args))] * self.target_dim + k, s


def _integral_table(a: Algebra) -> tuple[int, dict[tuple[int, int], dict[int, int]]]:
    """(D, D * structure constants as ints) with D the lcm of all denominators."""
    prods = dict(a.nonzero_products())
    den = lcm(1, *(v.denominator for w in prods.values() for v in w.values()))
    return den, {key: {k: int(v * den) for k, v in w.items()} for key, w in prods.items()}


def _finish_rows(acc_rows: dict[int, dict[int, int]], den: int, integral: bool) -> dict[int, SparseRow]:
    if integral:
        return acc_rows
    return {key: {c: Fraction(v, den) for c, v in r.items()} for key, r in acc_rows.items()}


def _leibniz_rows(a: Algebra, n: int, integral: bool = False) -> tuple[dict[int, SparseRow], int]:
    """Rows of d^n; with ``integral`` they are scaled by a common denominator and kept as ints."""
    dim = a.dim
    src = CochainSpace("leibniz", n, dim, dim)
    den, table = _integral_table(a)
    left: dict[int, list] = {}
    right: dict[int, list] = {}
    for (i, j), terms in table.items():
        left.setdefault(i, []).append((j, terms))
        right.setdefault(j, []).append((i, terms))
    rows = {}
    for t, x in enumerate(itertools.product(range(dim), repeat=n + 1)):
        acc: dict[int, dict[int, int]] = {}

        def put(m, col, v):
            r = acc.setdefault(m, {})
            r[col] = r.get(col, 0) + v

        base = src.index[x[1:]] * dim
        for k, terms in left.get(x[0], ()):
            for m, c in terms.items():
                put(m, base + k, c)
        for p in range(1, n + 1):
            sign = (-1) ** (p + 1)
            base = src.index[x[:p] + x[p + 1:]] * dim
            for k, terms in right.get(x[p], ()):
                for m, c in terms.items():
                    put(m, base + k, sign * c)
        for p in range(n + 1):
            for q in range(p + 1, n + 1):
                sign = (-1) ** q
                for l, c in table.get((x[p], x[q]), {}).items():
                    base = src.index[x[:p] + (l,) + x[p + 1:q] + x[q + 1:]] * dim
                    for m in range(dim):
                        put(m, base + m, sign * c)
        for m, r in acc.items():
            r = {c: v for c, v in r.items() if v}
            if r:
                rows[t * dim + m] = r
    return _finish_rows(rows, den, integral), src.dim


def _ce_rows(a: Algebra, source: Sequence[int], n: int, integral: bool = False) -> tuple[dict[int, SparseRow], int]:
    """CE differential on alternating n-cochains of span(source) with values in ``a``.

    ``source`` must span a subalgebra; it acts on ``a`` by the bracket.
    """
    dim = a.dim
    src_idx = list(source)
    pos = {g: l for l, g in enumerate(src_idx)}
    N = len(src_idx)
    space = CochainSpace("lie", n, N, dim)
    den, table = _integral_table(a)
    act = {l: [(k, table[g, k]) for k in range(dim) if (g, k) in table] for l, g in enumerate(src_idx)}
    inner: dict[tuple[int, int], dict[int, int]] = {}
    for li, gi in enumerate(src_idx):
        for lj, gj in enumerate(src_idx):
            w = table.get((gi, gj))
            if w:
                if any(k not in pos for k in w):
                    raise CohomologyError("source span is not closed under the bracket")
                inner[(li, lj)] = {pos[k]: v for k, v in w.items()}
    rows = {}
    for t, x in enumerate(itertools.combinations(range(N), n + 1)):
        acc: dict[int, dict[int, int]] = {}

        def put(m, col, v):
            r = acc.setdefault(m, {})
            r[col] = r.get(col, 0) + v

        for p in range(n + 1):
            sign = (-1) ** p
            base = space.index[x[:p] + x[p + 1:]] * dim
            for k, terms in act[x[p]]:
                for m, c in terms.items():
                    put(m, base + k, sign * c)
        for p in range(n + 1):
            for q in range(p + 1, n + 1):
                rest = x[:p] + x[p + 1:q] + x[q + 1:]
                for l, c in inner.get((x[p], x[q]), {}).items():
                    col0, s = space.column((l,) + rest, 0)
                    if not s:
                        continue
                    for m in range(dim):
                        put(m, col0 + m, (-1) ** (p + q) * c * s)
        for m, r in acc.items():
            r = {c: v for c, v in r.items() if v}
            if r:
                rows[t * dim + m] = r
    return _finish_rows(rows, den, integral), space.dim


def coboundary_operator(theory: str, a: Algebra, n: int, integral: bool = False) -> tuple[dict[int, SparseRow], int]:
    """Nonzero rows of d^n keyed by their coordinate in C^{n+1}, and dim C^n.

    Coordinates follow :meth:`Cochain.to_vector` in both degrees.  With
    ``integral`` the rows are D * d^n in ints (same kernel and rank).
    """
    _check_theory(theory)
    if theory == "leibniz":
        return _leibniz_rows(a, n, integral)
    if not is_lie(a):
        raise CohomologyError("lie theory needs a Lie algebra")
    return _ce_rows(a, range(a.dim), n, integral)


def coboundary_matrix(theory: str, a: Algebra, n: int) -> tuple[list[SparseRow], int]:
    """Sparse rows of d^n : C^n -> C^{n+1} and the number of columns (dim C^n)."""
    rows, ncols = coboundary_operator(theory, a, n)
    return list(rows.values()), ncols


def apply_operator(rows: dict[int, SparseRow], vec: SparseRow) -> SparseRow:
    out = {}
    for key, r in rows.items():
        v = sum((x * vec.get(c, _ZERO) for c, x in r.items()), _ZERO)
        if v:
            out[key] = v
    return out


def _columns(rows: dict[int, SparseRow] | Sequence[SparseRow], ncols: int) -> list[SparseRow]:
    """Column vectors, indexed by row key (or position for a plain list)."""
    items = rows.items() if isinstance(rows, dict) else enumerate(rows)
    cols: list[SparseRow] = [dict() for _ in range(ncols)]
    for i, r in items:
        for c, v in r.items():
            cols[c][i] = v
    return cols


# ---------------------------------------------------------------------------
# cohomology


@dataclass
class CohomologyReport:
    theory: str
    degree: int
    dim_cocycles: int
    dim_coboundaries: int
    dim_cochains: int = 0
    representative_basis: list = field(default_factory=list)

    @property
    def dim_H(self) -> int:
        return self.dim_cocycles - self.dim_coboundaries

    def as_dict(self) -> dict:
        return {
            "theory": self.theory,
            "degree": self.degree,
            "dim_cochains": self.dim_cochains,
            "dim_cocycles": self.dim_cocycles,
            "dim_coboundaries": self.dim_coboundaries,
            "dim_H": self.dim_H,
        }


def _check_degree(n: int):
    if n not in SUPPORTED_DEGREES:
        raise CohomologyError(f"degree {n} not supported (use 0, 1 or 2)")


def cohomology(theory: str, a: Algebra, n: int, representatives: bool = True) -> CohomologyReport:
    """dim Z^n, B^n, H^n from exact ranks of d^n and d^{n-1}."""
    _check_theory(theory)
    _check_degree(n)
    if not representatives:
        rows_n, cols_n = coboundary_operator(theory, a, n, integral=True)
        dim_z = cols_n - rank_sparse(list(rows_n.values()), cols_n)
        dim_b = 0
        if n > 0:
            rows_prev, cols_prev = coboundary_operator(theory, a, n - 1, integral=True)
            dim_b = rank_sparse(list(rows_prev.values()), cols_prev)
        return CohomologyReport(theory, n, dim_z, dim_b, cols_n)
    rows_n, cols_n = coboundary_matrix(theory, a, n)
    if n > 0:
        rows_prev, cols_prev = coboundary_operator(theory, a, n - 1)
        dim_b = rank_sparse(list(rows_prev.values()), cols_prev)
    else:
        rows_prev, cols_prev, dim_b = {}, 0, 0
    z_basis = null_space_sparse(rows_n, cols_n)
    b_vectors = [c for c in _columns(rows_prev, cols_prev) if c] if n > 0 else []
    chosen = complement_basis(b_vectors, z_basis, cols_n)
    reps = [Cochain.from_vector(theory, n, a.dim, a.dim, z_basis[i]) for i in chosen]
    return CohomologyReport(theory, n, len(z_basis), dim_b, cols_n, reps)


def coboundary_space(theory: str, a: Algebra, n: int) -> Subspace:
    """B^n as a subspace of the column space of C^n."""
    _check_degree(n)
    if n == 0:
        return Subspace.zero(CochainSpace(theory, 0, a.dim, a.dim).dim)
    rows_prev, cols_prev = coboundary_operator(theory, a, n - 1)
    return Subspace.span_sparse([c for c in _columns(rows_prev, cols_prev) if c],
                                CochainSpace(theory, n, a.dim, a.dim).dim)


def is_cocycle(theory: str, a: Algebra, phi: Cochain) -> bool:
    return differential(theory, a, phi).is_zero()


def is_coboundary(theory: str, a: Algebra, phi: Cochain) -> bool:
    return coboundary_space(theory, a, phi.degree).contains_sparse(phi.to_vector(theory))


def cohomology_dims(theory: str, a: Algebra, degrees: Iterable[int] = SUPPORTED_DEGREES) -> dict[int, int]:
    return {n: cohomology(theory, a, n, representatives=False).dim_H for n in degrees}


# ---------------------------------------------------------------------------
# Q-invariant cohomology and the Hochschild-Serre assembly


def _validate_partition(a: Algebra, n_indices, q_indices) -> tuple[list[int], list[int]]:
    n_idx, q_idx = list(n_indices), list(q_indices)
    allidx = n_idx + q_idx
    if len(set(allidx)) != len(allidx) or sorted(allidx) != list(range(a.dim)):
        raise CohomologyError("nilradical and complement indices must partition the basis")
    return n_idx, q_idx


def _check_q_abelian(a: Algebra, q_idx):
    for i in q_idx:
        for j in q_idx:
            if a.product(i, j):
                raise CohomologyError(
                    f"complement is not abelian: [{a.labels[i]},{a.labels[j]}] != 0")


def _invariance_rows(a: Algebra, n_idx: list[int], q_idx: list[int], b: int) -> list[SparseRow]:
    """Rows of (x . phi)(z_1..z_b) = [x, phi(z)] - sum_k phi(..[x, z_k]..) for x in Q."""
    dim = a.dim
    pos = {g: l for l, g in enumerate(n_idx)}
    space = CochainSpace("lie", b, len(n_idx), dim)
    rows = []
    for x in q_idx:
        act_n = {}
        for l, g in enumerate(n_idx):
            w = a.product(x, g)
            if any(k not in pos for k in w):
                raise CohomologyError("the nilradical span must be an ideal")
            act_n[l] = {pos[k]: v for k, v in w.items()}
        act_r = [(k, a.product(x, k)) for k in range(dim) if a.product(x, k)]
        for T in space.tuples:
            acc: dict[int, dict[int, Fraction]] = {}

            def put(m, col, v):
                r = acc.setdefault(m, {})
                r[col] = r.get(col, _ZERO) + v

            base = space.index[T] * dim
            for k, terms in act_r:
                for m, c in terms.items():
                    put(m, base + k, c)
            for p in range(b):
                for l, c in act_n[T[p]].items():
                    col0, s = space.column(T[:p] + (l,) + T[p + 1:], 0)
                    if not s:
                        continue
                    for m in range(dim):
                        put(m, col0 + m, -c * s)
            for r in acc.values():
                r = {col: v for col, v in r.items() if v}
                if r:
                    rows.append(r)
    return rows


def _image(rows_cols: list[SparseRow], basis: Sequence[SparseRow]) -> list[SparseRow]:
    """Images of ``basis`` vectors under a matrix given by its columns."""
    out = []
    for v in basis:
        acc: dict[int, Fraction] = {}
        for c, x in v.items():
            for r, y in rows_cols[c].items():
                acc[r] = acc.get(r, _ZERO) + x * y
        out.append({r: y for r, y in acc.items() if y})
    return out


@dataclass
class InvariantCohomologyReport(CohomologyReport):
    dim_invariant_cochains: int = 0


def invariant_cohomology(a_full: Algebra, n_indices, q_indices, degree: int, theory: str = "lie",
                         representatives: bool = False) -> InvariantCohomologyReport:
    """H^b(N, R)^Q for R = N + Q with N spanned by ``n_indices`` and Q by ``q_indices``.

    Cochains are alternating maps on N with values in R; the invariant ones
    are those whose mixed differential with one Q-argument vanishes.
    """
    if theory != "lie":
        raise CohomologyError("invariant cohomology is implemented for the lie theory")
    _check_degree(degree)
    if not is_lie(a_full):
        raise CohomologyError("invariant cohomology needs a Lie algebra")
    n_idx, q_idx = _validate_partition(a_full, n_indices, q_indices)
    _check_q_abelian(a_full, q_idx)
    N = len(n_idx)
    dim = a_full.dim

    def invariant_basis(b):
        cols = CochainSpace("lie", b, N, dim).dim
        if not q_idx:
            return [{i: _ONE} for i in range(cols)]
        return null_space_sparse(_invariance_rows(a_full, n_idx, q_idx, b), cols)

    kb = invariant_basis(degree)
    rows_b, cols_b = _ce_rows(a_full, n_idx, degree)
    img_b = _image(_columns(rows_b, cols_b), kb)
    # cocycles: kernel of the matrix whose j-th column is img_b[j]
    m_rows = [r for r in _columns(img_b, CochainSpace("lie", degree + 1, N, dim).dim) if r]
    if representatives:
        z_coords = null_space_sparse(m_rows, len(kb))
        dim_z = len(z_coords)
    else:
        dim_z = len(kb) - rank_sparse(m_rows, len(kb))
    if degree > 0:
        kprev = invariant_basis(degree - 1)
        rows_p, cols_p = _ce_rows(a_full, n_idx, degree - 1)
        img_prev = [v for v in _image(_columns(rows_p, cols_p), kprev) if v]
        dim_b = rank_sparse(img_prev, cols_b)
    else:
        img_prev, dim_b = [], 0
    reps = []
    if representatives:
        cocycles = []
        for zc in z_coords:
            acc: dict[int, Fraction] = {}
            for j, x in zc.items():
                for c, y in kb[j].items():
                    acc[c] = acc.get(c, _ZERO) + x * y
            cocycles.append({c: y for c, y in acc.items() if y})
        chosen = complement_basis(img_prev, cocycles, cols_b)
        reps = [Cochain.from_vector("lie", degree, N, dim, cocycles[i]) for i in chosen]
    return InvariantCohomologyReport("lie", degree, dim_z, dim_b, cols_b, reps, dim_invariant_cochains=len(kb))


def check_diagonal_action(a: Algebra, n_indices, q_indices) -> list[str]:
    """Complement elements whose right multiplication is not diagonal on N."""
    bad = []
    for x in q_indices:
        for z in n_indices:
            w = a.product(z, x)
            if any(k != z for k in w):
                bad.append(f"[{a.labels[z]},{a.labels[x]}]")
    return bad


def hochschild_serre_terms(a_full: Algebra, n_indices, q_indices, n: int = 2) -> dict[tuple[int, int], tuple[int, int]]:
    """{(a, b): (dim H^a(Q, F), dim H^b(N, R)^Q)} for a + b = n."""
    n_idx, q_idx = _validate_partition(a_full, n_indices, q_indices)
    _check_q_abelian(a_full, q_idx)
    bad = check_diagonal_action(a_full, n_idx, q_idx)
    if bad:
        raise CohomologyError("complement does not act diagonally on N: " + ", ".join(bad))
    out = {}
    for qa in range(n + 1):
        b = n - qa
        # abelian Q with trivial coefficients: H^a(Q, F) = Lambda^a Q^*
        out[(qa, b)] = (comb(len(q_idx), qa), invariant_cohomology(a_full, n_idx, q_idx, b).dim_H)
    return out


def hochschild_serre_h2(a_full: Algebra, n_indices, q_indices) -> int:
    return sum(x * y for x, y in hochschild_serre_terms(a_full, n_indices, q_indices, 2).values())


# ---------------------------------------------------------------------------
# published 2-cocycle representatives


def published_representative(family: str, n: int | None = None) -> Cochain:
    """The alternating 2-cochain listed as spanning H^2 for the one-dimensional extensions."""
    vals: dict[tuple[int, int], dict[int, Fraction]] = {}

    def put(i, j, k, c):
        if c:
            vals.setdefault((i - 1, j - 1), {})[k - 1] = Fraction(c)

    if family == "R_g3n1_1":
        put(1, n, 2, 1)
        for i in range(4, n - 2):
            put(i, n, i + 2, i - 3)
        for i in range(5, n - 3):
            put(2, i, i + 3, Fraction(3, 2) * (i - 4))
        for i in range(4, n - 4):
            put(3, i, i + 4, Fraction(-3, 2))
        dim = n + 1
    elif family == "R_g1_7_1":
        put(1, 6, 7, 1)
        put(3, 4, 7, 1)
        dim = 8
    elif family == "R_g2_9_1":
        put(1, 8, 9, 1)
        put(2, 6, 8, -24)
        put(3, 4, 7, -6)
        put(3, 5, 8, -6)
        put(3, 6, 9, 5)
        put(4, 5, 9, -7)
        dim = 10
    elif family == "R_g3_11_1":
        F = Fraction
        for (i, j, k, c) in [(1, 10, 11, 1), (2, 5, 7, F(-3, 4)), (2, 6, 8, F(-3, 2)), (2, 7, 9, -1),
                             (2, 8, 10, F(3, 4)), (3, 4, 7, F(-3, 4)), (3, 5, 8, F(-3, 4)), (3, 6, 9, F(1, 2)),
                             (3, 7, 10, F(7, 4)), (4, 5, 9, F(-5, 4)), (4, 6, 10, F(-5, 4)), (4, 7, 11, -1),
                             (5, 6, 11, 2)]:
            put(i, j, k, c)
        dim = 12
    else:
        raise CohomologyError(f"no published representative for {family!r}")
    return Cochain.from_values(2, dim, vals, dim, alternating=True)


REPRESENTATIVE_FAMILIES = ("R_g3n1_1", "R_g1_7_1", "R_g2_9_1", "R_g3_11_1")


def extend_to_cocycle(a: Algebra, phi: Cochain) -> Cochain | None:
    """A Lie cocycle agreeing with ``phi`` wherever ``phi`` is nonzero, if one exists.

    Only argument sets on which ``phi`` vanishes are free; this tells an
    incomplete listing apart from inconsistent listed values.
    """
    rows, ncols = coboundary_matrix("lie", a, phi.degree)
    v = phi.to_vector("lie")
    dim = a.dim
    listed = {c // dim for c in v}
    free = [c for c in range(ncols) if c // dim not in listed]
    pos = {c: j for j, c in enumerate(free)}
    # solve D[:, free] psi = -D v through the kernel of [D[:, free] | D v]
    aug = []
    for r in rows:
        row = {pos[c]: x for c, x in r.items() if c in pos}
        rhs = sum((x * v.get(c, _ZERO) for c, x in r.items()), _ZERO)
        if rhs:
            row[len(free)] = rhs
        if row:
            aug.append(row)
    for z in null_space_sparse(aug, len(free) + 1):
        t = z.get(len(free))
        if t:
            out = dict(v)
            for j, x in z.items():
                if j < len(free):
                    out[free[j]] = x / t
            return Cochain.from_vector("lie", phi.degree, dim, dim, {c: x for c, x in out.items() if x})
    return None


@dataclass
class RepresentativeReport:
    catalog_id: str
    is_cocycle: bool
    is_coboundary: bool
    dim_H2: int
    residuals: list = field(default_factory=list)  # (label, label, label, residual) on failing triples
    computed_representative: dict | None = None
    listed_values_extend: bool | None = None

    @property
    def passed(self) -> bool:
        return self.is_cocycle and not self.is_coboundary and self.dim_H2 == 1

    def discrepancies(self) -> list[dict]:
        out = []
        if not self.is_cocycle:
            for t in self.residuals:
                out.append({"kind": "not_a_cocycle", "triple": list(t[:3]), "residual": t[3]})
            out.append({"kind": "completion", "listed_values_extend_to_cocycle": self.listed_values_extend})
        if self.is_coboundary:
            out.append({"kind": "coboundary", "detail": "listed cochain lies in B^2"})
        if self.dim_H2 != 1:
            out.append({"kind": "dimension", "claimed": 1, "computed": self.dim_H2})
        if out and self.computed_representative is not None:
            out.append({"kind": "computed_representative", "values": self.computed_representative})
        return out


def _format_cochain(phi: Cochain, labels) -> dict:
    from .algebra import format_vector

    out = {}
    for args, v in phi.nonzero_values().items():
        if list(args) == sorted(args):
            out["(" + ",".join(labels[a] for a in args) + ")"] = format_vector(v, labels)
    return out


def verify_cocycle_representatives(cid) -> RepresentativeReport:
    """Check the listed 2-cochain: cocycle, not a coboundary, and dim H^2 = 1."""
    from .catalog import CatalogId, build, nilradical_dim

    if isinstance(cid, str):
        cid = CatalogId.parse(cid)
    if cid.family not in REPRESENTATIVE_FAMILIES:
        raise CohomologyError(f"no listed representative for {cid.family!r}")
    a = build(cid)
    n = nilradical_dim(cid)
    phi = published_representative(cid.family, n)
    dphi = differential("lie", a, phi)
    residuals = []
    for args, v in dphi.nonzero_values().items():
        if list(args) == sorted(args):
            from .algebra import format_vector

            residuals.append((*[a.labels[i] for i in args], format_vector(v, a.labels)))
    report = cohomology("lie", a, 2, representatives=True)
    cob = coboundary_space("lie", a, 2).contains_sparse(phi.to_vector("lie"))
    rep = None
    if residuals or cob or report.dim_H != 1:
        rep = {"basis": [_format_cochain(r, a.labels) for r in report.representative_basis]}
    extends = None
    if residuals:
        extends = extend_to_cocycle(a, phi) is not None
    return RepresentativeReport(str(cid), not residuals, cob, report.dim_H, residuals, rep, extends)
