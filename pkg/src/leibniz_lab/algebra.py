"""Finite-dimensional algebras given by structure constants.

An :class:`Algebra` stores ``[b_i, b_j] = sum_k c[i][j][k] b_k``.  No identity
is assumed; being Leibniz or Lie is something you compute.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import flint

from .linalg import DimensionError, Matrix, SingularMatrixError, SparseRow, Subspace, as_rational

_ZERO = Fraction(0)


def default_labels(dim: int) -> list[str]:
    return [f"e{i + 1}" for i in range(dim)]


class Algebra:
    """Structure-constant algebra over Q.

    ``table`` maps ``(i, j)`` to ``{k: c_ijk}`` with only nonzero entries kept;
    the dense tensor is available as :attr:`c`.
    """

    __slots__ = ("dim", "labels", "name", "_table", "_left", "_hash")

    def __init__(self, dim: int, table: dict, labels: Sequence[str] | None = None, name: str = ""):
        if dim < 0:
            raise ValueError("dimension must be nonnegative")
        labels = list(labels) if labels is not None else default_labels(dim)
        if len(labels) != dim:
            raise ValueError(f"{len(labels)} labels for a {dim}-dimensional algebra")
        if len(set(labels)) != dim:
            raise ValueError("basis labels must be unique")
        clean: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), terms in table.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise IndexError(f"bracket index ({i}, {j}) out of range")
            out = {}
            for k, v in terms.items():
                if not 0 <= k < dim:
                    raise IndexError(f"basis index {k} out of range")
                v = as_rational(v)
                if v:
                    out[k] = v
            if out:
                clean[(i, j)] = out
        self.dim = dim
        self.labels = tuple(labels)
        self.name = name
        self._table = clean
        self._left = None
        self._hash = None

    @classmethod
    def from_tensor(cls, c, labels=None, name: str = "") -> "Algebra":
        dim = len(c)
        table = {}
        for i in range(dim):
            for j in range(dim):
                terms = {k: c[i][j][k] for k in range(dim) if c[i][j][k]}
                if terms:
                    table[(i, j)] = terms
        return cls(dim, table, labels, name)

    @classmethod
    def abelian(cls, dim: int) -> "Algebra":
        return cls(dim, {}, name=f"abelian{dim}")

    @property
    def table(self) -> dict[tuple[int, int], dict[int, Fraction]]:
        return self._table

    @property
    def c(self) -> list[list[list[Fraction]]]:
        n = self.dim
        out = [[[_ZERO] * n for _ in range(n)] for _ in range(n)]
        for (i, j), terms in self._table.items():
            for k, v in terms.items():
                out[i][j][k] = v
        return out

    def product(self, i: int, j: int) -> dict[int, Fraction]:
        """``[b_i, b_j]`` as a sparse coordinate dict (do not mutate)."""
        return self._table.get((i, j), {})

    def nonzero_products(self):
        return self._table.items()

    def with_name(self, name: str) -> "Algebra":
        return Algebra(self.dim, self._table, self.labels, name)

    def with_labels(self, labels: Sequence[str]) -> "Algebra":
        return Algebra(self.dim, self._table, labels, self.name)

    def basis_vector(self, i: int) -> list[Fraction]:
        v = [_ZERO] * self.dim
        v[i] = Fraction(1)
        return v

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown basis label {label!r}") from None

    def bracket(self, u: Sequence, v: Sequence) -> list[Fraction]:
        if len(u) != self.dim or len(v) != self.dim:
            raise DimensionError(f"vectors must have length {self.dim}")
        return _dense(self.bracket_sparse(_sp(u), _sp(v)), self.dim)

    def bracket_sparse(self, u: SparseRow, v: SparseRow) -> SparseRow:
        out: dict[int, Fraction] = {}
        for i, a in u.items():
            for j, b in v.items():
                terms = self._table.get((i, j))
                if terms:
                    ab = a * b
                    for k, c in terms.items():
                        out[k] = out.get(k, _ZERO) + ab * c
        return {k: x for k, x in out.items() if x}

    def is_antisymmetric(self) -> bool:
        for (i, j), terms in self._table.items():
            other = self._table.get((j, i), {})
            if set(terms) != set(other) or any(terms[k] != -other[k] for k in terms):
                return False
        return True

    def __eq__(self, other) -> bool:
        if not isinstance(other, Algebra):
            return NotImplemented
        return self.dim == other.dim and self._table == other._table

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.dim, tuple(sorted((k, tuple(sorted(v.items()))) for k, v in self._table.items()))))
        return self._hash

    def __repr__(self) -> str:
        tag = f" {self.name}" if self.name else ""
        return f"<Algebra{tag} dim={self.dim} products={len(self._table)}>"

    def describe(self) -> list[str]:
        """Multiplication table lines in the usual ``[e1,e2]=e3`` notation."""
        lines = []
        for (i, j) in sorted(self._table):
            lines.append(f"[{self.labels[i]},{self.labels[j]}] = {format_vector(self._table[(i, j)], self.labels)}")
        return lines


def format_vector(v: SparseRow, labels: Sequence[str]) -> str:
    if not v:
        return "0"
    parts = []
    for k in sorted(v):
        c = v[k]
        if c == 1:
            parts.append(f"+{labels[k]}")
        elif c == -1:
            parts.append(f"-{labels[k]}")
        else:
            sign = "+" if c > 0 else "-"
            parts.append(f"{sign}{abs(c)}{labels[k]}")
    s = "".join(parts)
    return s[1:] if s.startswith("+") else s


def _sp(v: Sequence) -> SparseRow:
    return {k: as_rational(x) for k, x in enumerate(v) if x}


def _dense(v: SparseRow, n: int) -> list[Fraction]:
    out = [_ZERO] * n
    for k, x in v.items():
        out[k] = x
    return out


def _add_into(acc: dict, v: SparseRow, scale=1):
    for k, x in v.items():
        acc[k] = acc.get(k, _ZERO) + scale * x


def bracket(a: Algebra, u: Sequence, v: Sequence) -> list[Fraction]:
    return a.bracket(u, v)


# ---------------------------------------------------------------------------
# identities


def residual_at(a: Algebra, i: int, j: int, k: int) -> SparseRow:
    """L(b_i, b_j, b_k) = [x,[y,z]] - [[x,y],z] + [[x,z],y]."""
    out: dict[int, Fraction] = {}
    ei, ej, ek = {i: Fraction(1)}, {j: Fraction(1)}, {k: Fraction(1)}
    _add_into(out, a.bracket_sparse(ei, a.product(j, k)))
    _add_into(out, a.bracket_sparse(a.product(i, j), ek), -1)
    _add_into(out, a.bracket_sparse(a.product(i, k), ej))
    return {m: x for m, x in out.items() if x}


def _right_operators(a: Algebra) -> list:
    """R_j as exact flint matrices; column i holds [b_i, b_j]."""
    n = a.dim
    ops = [flint.fmpq_mat(n, n) for _ in range(n)]
    for (i, j), terms in a.nonzero_products():
        for k, v in terms.items():
            ops[j][k, i] = flint.fmpq(v.numerator, v.denominator)
    return ops


def leibniz_residual(a: Algebra) -> list[tuple[int, int, int, list[Fraction]]]:
    """Nonzero residuals on basis triples, sorted; empty iff ``a`` is a Leibniz algebra.

    Basis triples suffice because the residual is trilinear.  For fixed
    (y, z) the identity reads R_[y,z] = R_z R_y - R_y R_z, which is checked
    one operator pair at a time.
    """
    n = a.dim
    ops = _right_operators(a)
    out = []
    for j in range(n):
        for k in range(n):
            m = ops[k] * ops[j] - ops[j] * ops[k]
            for t, v in a.product(j, k).items():
                m -= flint.fmpq(v.numerator, v.denominator) * ops[t]
            if not m:
                continue
            for i in range(n):
                col = [-Fraction(int(m[r, i].p), int(m[r, i].q)) for r in range(n)]
                if any(col):
                    out.append((i, j, k, col))
    out.sort(key=lambda t: t[:3])
    return out


def first_leibniz_failure(a: Algebra):
    res = leibniz_residual(a)
    return res[0] if res else None


def is_leibniz(a: Algebra) -> bool:
    return first_leibniz_failure(a) is None


def is_lie(a: Algebra) -> bool:
    # for an antisymmetric bracket the Leibniz identity is the Jacobi identity
    return a.is_antisymmetric() and is_leibniz(a)


# ---------------------------------------------------------------------------
# subspaces and series


def product_space(a: Algebra, s: Subspace, t: Subspace) -> Subspace:
    """[S, T], spanned by brackets of basis representatives."""
    if s.ambient_dim != a.dim or t.ambient_dim != a.dim:
        raise DimensionError("subspaces must live in the algebra")
    rows = []
    tv = t.sparse_vectors()
    for u in s.sparse_vectors():
        for v in tv:
            w = a.bracket_sparse(u, v)
            if w:
                rows.append(w)
    return Subspace.span_sparse(rows, a.dim)


def derived_algebra(a: Algebra) -> Subspace:
    """L^2 = [L, L]."""
    return Subspace.span_sparse([dict(t) for t in a.table.values()], a.dim)


@dataclass(frozen=True)
class SeriesReport:
    kind: str
    terms: list = field(default_factory=list)
    stabilized: bool = False
    nil_index: int | None = None

    @property
    def dims(self) -> list[int]:
        return [t.dim for t in self.terms]

    @property
    def reaches_zero(self) -> bool:
        return bool(self.terms) and self.terms[-1].is_zero()


def series(a: Algebra, kind: str = "lower_central") -> SeriesReport:
    """Lower central (L^{k+1} = [L^k, L]) or derived (L^{[s+1]} = [L^{[s]}, L^{[s]}]) series.

    ``terms[0]`` is the whole space.  The series stops when a term vanishes or
    repeats; ``nil_index`` is the 1-based position of the zero term, i.e. the
    minimal k with L^k = 0.
    """
    if kind not in ("lower_central", "derived"):
        raise ValueError(f"unknown series kind {kind!r}")
    whole = Subspace.full(a.dim)
    terms = [whole]
    while not terms[-1].is_zero():
        cur = terms[-1]
        nxt = product_space(a, cur, whole if kind == "lower_central" else cur)
        if nxt == cur:
            return SeriesReport(kind, terms, stabilized=True, nil_index=None)
        terms.append(nxt)
    return SeriesReport(kind, terms, stabilized=False, nil_index=len(terms))


def nil_index(a: Algebra) -> int | None:
    return series(a, "lower_central").nil_index


def is_nilpotent(a: Algebra) -> bool:
    return series(a, "lower_central").reaches_zero


def is_solvable(a: Algebra) -> bool:
    return series(a, "derived").reaches_zero


def _kernel_of_products(a: Algebra, sides: str) -> Subspace:
    # z = sum z_m b_m; conditions [z, b_i] = 0 (left) and/or [b_i, z] = 0 (right)
    n = a.dim
    rows = []
    for i in range(n):
        if "left" in sides:
            acc: dict[tuple, dict] = {}
            for m in range(n):
                for k, c in a.product(m, i).items():
                    acc.setdefault(k, {})[m] = c
            rows.extend(acc.values())
        if "right" in sides:
            acc = {}
            for m in range(n):
                for k, c in a.product(i, m).items():
                    acc.setdefault(k, {})[m] = c
            rows.extend(acc.values())
    from .linalg import null_space_sparse, rref_sparse

    return Subspace(n, rref_sparse(null_space_sparse(rows, n), n))


def center(a: Algebra) -> Subspace:
    return _kernel_of_products(a, "left+right")


def right_annihilator(a: Algebra) -> Subspace:
    """{z : [b_i, z] = 0 for all i}."""
    return _kernel_of_products(a, "right")


def left_annihilator(a: Algebra) -> Subspace:
    """{z : [z, b_i] = 0 for all i}."""
    return _kernel_of_products(a, "left")


def is_ideal(a: Algebra, s: Subspace, side: str = "two_sided") -> bool:
    if s.ambient_dim != a.dim:
        raise DimensionError("subspace must live in the algebra")
    if side != "two_sided":
        raise ValueError("only two-sided ideals are checked")
    for u in s.sparse_vectors():
        for i in range(a.dim):
            e = {i: Fraction(1)}
            if not s.contains_sparse(a.bracket_sparse(u, e)):
                return False
            if not s.contains_sparse(a.bracket_sparse(e, u)):
                return False
    return True


def is_subalgebra(a: Algebra, s: Subspace) -> bool:
    vs = s.sparse_vectors()
    return all(s.contains_sparse(a.bracket_sparse(u, v)) for u in vs for v in vs)


def restrict(a: Algebra, indices: Sequence[int]) -> Algebra:
    """The subalgebra spanned by the basis vectors ``indices``, in those coordinates."""
    idx = list(indices)
    pos = {g: l for l, g in enumerate(idx)}
    table = {}
    for li, gi in enumerate(idx):
        for lj, gj in enumerate(idx):
            terms = a.product(gi, gj)
            if not terms:
                continue
            if any(k not in pos for k in terms):
                raise ValueError("basis span is not closed under the bracket")
            table[(li, lj)] = {pos[k]: v for k, v in terms.items()}
    return Algebra(len(idx), table, [a.labels[i] for i in idx], name=f"{a.name}|sub" if a.name else "")


def quotient(a: Algebra, ideal: Subspace) -> Algebra:
    """L / I in coordinates given by the non-pivot basis vectors of I."""
    if not is_ideal(a, ideal):
        raise ValueError("quotient needs a two-sided ideal")
    pivots = set(ideal.pivots)
    keep = [i for i in range(a.dim) if i not in pivots]
    pos = {g: l for l, g in enumerate(keep)}
    reducer = {min(r): r for r in ideal.sparse_vectors()}
    from .linalg import _reduce_against

    table = {}
    for li, gi in enumerate(keep):
        for lj, gj in enumerate(keep):
            w = _reduce_against(dict(a.product(gi, gj)), reducer)
            if w:
                table[(li, lj)] = {pos[k]: v for k, v in w.items()}
    return Algebra(len(keep), table, [a.labels[i] for i in keep])


# ---------------------------------------------------------------------------
# GL action


def change_basis(a: Algebra, g: Matrix) -> Algebra:
    """(g * lambda)(x, y) = g(lambda(g^{-1} x, g^{-1} y)).

    Labels stay attached to positions.
    """
    n = a.dim
    if g.shape != (n, n):
        raise DimensionError(f"basis change must be {n}x{n}")
    try:
        ginv = g.inverse()
    except SingularMatrixError:
        raise SingularMatrixError("basis change matrix is singular") from None
    cols = [{k: x for k, x in enumerate(ginv.col(i)) if x} for i in range(n)]
    gcols = [{k: x for k, x in enumerate(g.col(m)) if x} for m in range(n)]
    table = {}
    for i in range(n):
        for j in range(n):
            w = a.bracket_sparse(cols[i], cols[j])
            if not w:
                continue
            out: dict[int, Fraction] = {}
            for m, x in w.items():
                for k, y in gcols[m].items():
                    out[k] = out.get(k, _ZERO) + x * y
            out = {k: v for k, v in out.items() if v}
            if out:
                table[(i, j)] = out
    return Algebra(n, table, a.labels, a.name)


def random_invertible(n: int, rng: random.Random, bound: int = 2) -> Matrix:
    """Random P * L * D * U with small integer entries; always invertible."""
    perm = list(range(n))
    rng.shuffle(perm)
    p = Matrix(n, n, [1 if perm[i] == j else 0 for i in range(n) for j in range(n)])
    lower = Matrix(n, n, [1 if i == j else (rng.randint(-bound, bound) if i > j else 0)
                          for i in range(n) for j in range(n)])
    upper = Matrix(n, n, [1 if i == j else (rng.randint(-bound, bound) if i < j else 0)
                          for i in range(n) for j in range(n)])
    diag = Matrix.diagonal([rng.choice([1, -1, 2, -2, Fraction(1, 2)]) for _ in range(n)])
    return p @ lower @ diag @ upper


def fingerprint(a: Algebra) -> dict:
    """Cheap basis-independent invariants."""
    lc = series(a, "lower_central")
    der = series(a, "derived")
    return {
        "dim": a.dim,
        "leibniz": is_leibniz(a),
        "lie": is_lie(a),
        "lower_central_dims": lc.dims,
        "derived_dims": der.dims,
        "nil_index": lc.nil_index,
        "center_dim": center(a).dim,
        "right_annihilator_dim": right_annihilator(a).dim,
        "left_annihilator_dim": left_annihilator(a).dim,
        "derived_algebra_dim": derived_algebra(a).dim,
    }
