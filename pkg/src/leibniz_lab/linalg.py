"""Exact linear algebra over the rationals.

Everything in the package reduces to row reduction of rational matrices.
Two elimination routes are available and produce identical canonical output:

* a pure-Python sparse Gauss-Jordan (rows stored as ``{column: Fraction}``),
  used for small systems and as an independent reference;
* python-flint's ``fmpz_mat`` routines, used for large systems.  Rows are
  scaled to integers first, which leaves the row space (and hence the RREF)
  unchanged.

Sparse systems are additionally split into the connected components of their
row/column incidence graph before elimination; the rank of a block-diagonal
matrix is the sum of the block ranks.
"""
from __future__ import annotations

import heapq
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

import flint

Rational = Fraction
SparseRow = dict  # column index -> nonzero Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)

# below this many nonzero entries the pure-Python route is faster than the
# conversion round-trip through flint
FLINT_THRESHOLD = 500


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass an int, Fraction or string")
    return Fraction(value)


class DimensionError(ValueError):
    """Operands live in spaces of different dimensions."""


class Matrix:
    """Immutable dense rational matrix stored row-major."""

    __slots__ = ("rows", "cols", "_entries", "_hash")

    def __init__(self, rows: int, cols: int, entries: Iterable = ()):
        entries = tuple(as_rational(e) for e in entries)
        if not entries and rows * cols:
            entries = (_ZERO,) * (rows * cols)
        if len(entries) != rows * cols:
            raise DimensionError(
                f"expected {rows * cols} entries for a {rows}x{cols} matrix, got {len(entries)}"
            )
        self.rows = rows
        self.cols = cols
        self._entries = entries
        self._hash = None

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionError("ragged rows")
        return cls(len(rows), cols, [e for r in rows for e in r])

    @classmethod
    def from_sparse_rows(cls, rows: Sequence[SparseRow], cols: int) -> "Matrix":
        entries = [_ZERO] * (len(rows) * cols)
        for i, row in enumerate(rows):
            for j, v in row.items():
                entries[i * cols + j] = v
        return cls(len(rows), cols, entries)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "Matrix":
        return cls.from_rows(columns, rows).transpose()

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [_ONE if i == j else _ZERO for i in range(n) for j in range(n)])

    @classmethod
    def diagonal(cls, values: Sequence) -> "Matrix":
        n = len(values)
        return cls(n, n, [values[i] if i == j else 0 for i in range(n) for j in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def entries(self) -> tuple[Fraction, ...]:
        return self._entries

    def __getitem__(self, key) -> Fraction:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(key)
        return self._entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return self._entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def sparse_rows(self) -> list[SparseRow]:
        c = self.cols
        return [
            {j: v for j, v in enumerate(self._entries[i * c:(i + 1) * c]) if v}
            for i in range(self.rows)
        ]

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    T = property(transpose)

    def is_zero(self) -> bool:
        return not any(self._entries)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            out = []
            ocols = [other.col(j) for j in range(other.cols)]
            for i in range(self.rows):
                r = self.row(i)
                nz = [(k, a) for k, a in enumerate(r) if a]
                for oc in ocols:
                    out.append(sum((a * oc[k] for k, a in nz), _ZERO))
            return Matrix(self.rows, other.cols, out)
        vec = [as_rational(v) for v in other]
        if len(vec) != self.cols:
            raise DimensionError(f"cannot apply {self.shape} matrix to a vector of length {len(vec)}")
        nzv = [(k, v) for k, v in enumerate(vec) if v]
        return tuple(sum((self._entries[i * self.cols + k] * v for k, v in nzv), _ZERO) for i in range(self.rows))

    def _check_same_shape(self, other: "Matrix"):
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(self.rows, self.cols, [a + b for a, b in zip(self._entries, other._entries)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(self.rows, self.cols, [a - b for a, b in zip(self._entries, other._entries)])

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, [-a for a in self._entries])

    def scale(self, s) -> "Matrix":
        s = as_rational(s)
        return Matrix(self.rows, self.cols, [s * a for a in self._entries])

    __rmul__ = scale

    def __pow__(self, k: int) -> "Matrix":
        if not self.is_square() or k < 0:
            raise ValueError("matrix power needs a square matrix and k >= 0")
        result = Matrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def trace(self) -> Fraction:
        return sum((self[i, i] for i in range(min(self.rows, self.cols))), _ZERO)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise DimensionError("row counts differ")
        return Matrix.from_rows([self.row(i) + other.row(i) for i in range(self.rows)], self.cols + other.cols)

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise DimensionError("column counts differ")
        return Matrix(self.rows + other.rows, self.cols, self._entries + other._entries)

    def inverse(self) -> "Matrix":
        if not self.is_square():
            raise DimensionError("only square matrices are invertible")
        n = self.rows
        red, r = rref(self.hstack(Matrix.identity(n)))
        if r < n or any(red[i, i] != 1 for i in range(n)):
            raise SingularMatrixError("matrix is singular")
        return Matrix.from_rows([red.row(i)[n:] for i in range(n)], n)

    def is_upper_triangular(self) -> bool:
        return all(not self[i, j] for i in range(self.rows) for j in range(min(i, self.cols)))

    def is_lower_triangular(self) -> bool:
        return self.transpose().is_upper_triangular()

    def is_diagonal(self) -> bool:
        return all(not self[i, j] for i in range(self.rows) for j in range(self.cols) if i != j)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._entries))
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(e) for e in self.row(i)) for i in range(self.rows))
        return f"Matrix({self.rows}x{self.cols}: [{body}])"


class SingularMatrixError(ValueError):
    pass


# ---------------------------------------------------------------------------
# sparse elimination kernel


def _reduce_against(row: SparseRow, pivots: dict[int, SparseRow]) -> SparseRow:
    """Eliminate every pivot column from ``row`` (in place) and return it."""
    heap = [c for c in row if c in pivots]
    heapq.heapify(heap)
    while heap:
        c = heapq.heappop(heap)
        v = row.get(c)
        if not v:
            continue
        for k, pv in pivots[c].items():
            nv = row.get(k, _ZERO) - v * pv
            if nv:
                if k not in row and k in pivots:
                    heapq.heappush(heap, k)
                row[k] = nv
            else:
                row.pop(k, None)
    return row


def _echelon_python(rows: Iterable[SparseRow]) -> dict[int, SparseRow]:
    """Pivot rows keyed by leading column; each row is monic at its pivot."""
    pivots: dict[int, SparseRow] = {}
    for src in rows:
        r = _reduce_against({k: v for k, v in src.items() if v}, pivots)
        if r:
            lead = min(r)
            inv = _ONE / r[lead]
            pivots[lead] = {k: v * inv for k, v in r.items()}
    return pivots


def _rref_python(rows: Iterable[SparseRow]) -> list[SparseRow]:
    pivots = _echelon_python(rows)
    done: dict[int, SparseRow] = {}
    for c in sorted(pivots, reverse=True):
        done[c] = _reduce_against_tail(pivots[c], c, done)
    return [done[c] for c in sorted(done)]


def _reduce_against_tail(row: SparseRow, lead: int, done: dict[int, SparseRow]) -> SparseRow:
    # done holds fully reduced rows whose pivots are all > lead
    for c in sorted(k for k in row if k in done and k != lead):
        v = row.get(c)
        if not v:
            continue
        for k, pv in done[c].items():
            nv = row.get(k, _ZERO) - v * pv
            if nv:
                row[k] = nv
            else:
                row.pop(k, None)
    return row


def _integer_rows(rows: Sequence[SparseRow]) -> list[dict[int, int]]:
    out = []
    for r in rows:
        if not r:
            continue
        m = lcm(*(v.denominator for v in r.values()))
        out.append({k: int(v * m) for k, v in r.items()})
    return out


def _to_fmpz(rows: Sequence[dict[int, int]], ncols: int) -> "flint.fmpz_mat":
    m = flint.fmpz_mat(len(rows), ncols)
    for i, r in enumerate(rows):
        for j, v in r.items():
            m[i, j] = v
    return m


def _rref_flint(rows: Sequence[SparseRow], ncols: int) -> list[SparseRow]:
    irows = _integer_rows(rows)
    if not irows:
        return []
    red, den, rk = _to_fmpz(irows, ncols).rref()
    den = int(den)
    out = []
    for i in range(rk):
        r = {}
        for j in range(ncols):
            v = red[i, j]
            if v:
                r[j] = Fraction(int(v), den)
        out.append(r)
    return out


def _rank_flint(rows: Sequence[SparseRow], ncols: int) -> int:
    irows = _integer_rows(rows)
    if not irows:
        return 0
    return _to_fmpz(irows, ncols).rank()


def _nnz(rows: Sequence[SparseRow]) -> int:
    return sum(len(r) for r in rows)


def _pick_backend(rows: Sequence[SparseRow], backend: str | None) -> str:
    if backend in ("python", "flint"):
        return backend
    if backend is not None:
        raise ValueError(f"unknown backend {backend!r}")
    return "flint" if _nnz(rows) > FLINT_THRESHOLD else "python"


def rref_sparse(rows: Sequence[SparseRow], ncols: int, backend: str | None = None) -> list[SparseRow]:
    """Nonzero rows of the reduced row echelon form, ordered by pivot column."""
    rows = [r for r in rows if r]
    if _pick_backend(rows, backend) == "flint":
        return _rref_flint(rows, ncols)
    return _rref_python(rows)


def _components(rows: Sequence[SparseRow]) -> list[list[int]]:
    parent: dict[int, int] = {}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for r in rows:
        cols = list(r)
        for c in cols:
            parent.setdefault(c, c)
        root = find(cols[0])
        for c in cols[1:]:
            rc = find(c)
            if rc != root:
                parent[rc] = root
    groups: dict[int, list[int]] = {}
    for i, r in enumerate(rows):
        groups.setdefault(find(next(iter(r))), []).append(i)
    return list(groups.values())


def rank_sparse(rows: Sequence[SparseRow], ncols: int, backend: str | None = None) -> int:
    rows = [r for r in rows if r]
    if not rows:
        return 0
    total = 0
    for idx in _components(rows):
        block = [rows[i] for i in idx]
        cols = sorted({c for r in block for c in r})
        if len(block) == 1:
            total += 1
            continue
        remap = {c: k for k, c in enumerate(cols)}
        block = [{remap[c]: v for c, v in r.items()} for r in block]
        if _pick_backend(block, backend) == "flint":
            total += _rank_flint(block, len(cols))
        else:
            total += len(_echelon_python(block))
    return total


def null_space_sparse(rows: Sequence[SparseRow], ncols: int, backend: str | None = None) -> list[SparseRow]:
    """Canonical kernel basis: one vector per free column, ordered by that column."""
    red = rref_sparse(rows, ncols, backend)
    pivot_of = {min(r): r for r in red}
    basis = []
    for f in range(ncols):
        if f in pivot_of:
            continue
        v = {f: _ONE}
        for p, r in pivot_of.items():
            x = r.get(f)
            if x:
                v[p] = -x
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# dense front end


def rref(m: Matrix, backend: str | None = None) -> tuple[Matrix, int]:
    """Reduced row echelon form of ``m`` (same shape, zero rows at the bottom) and its rank."""
    red = rref_sparse(m.sparse_rows(), m.cols, backend)
    full = red + [{}] * (m.rows - len(red))
    return Matrix.from_sparse_rows(full, m.cols), len(red)


def rank(m: Matrix, backend: str | None = None) -> int:
    return rank_sparse(m.sparse_rows(), m.cols, backend)


def null_space(m: Matrix, backend: str | None = None) -> "Subspace":
    basis = null_space_sparse(m.sparse_rows(), m.cols, backend)
    return Subspace.span([_dense(v, m.cols) for v in basis], m.cols)


def _dense(v: SparseRow, n: int) -> list[Fraction]:
    out = [_ZERO] * n
    for k, x in v.items():
        out[k] = x
    return out


def _sparse(v: Sequence) -> SparseRow:
    return {k: as_rational(x) for k, x in enumerate(v) if x}


class Subspace:
    """A subspace of Q^n, stored by its canonical RREF basis."""

    __slots__ = ("ambient_dim", "basis", "_rows")

    def __init__(self, ambient_dim: int, reduced_rows: Sequence[SparseRow]):
        # callers pass rows already in RREF; use Subspace.span otherwise
        self.ambient_dim = ambient_dim
        self._rows = [dict(r) for r in reduced_rows]
        self.basis = Matrix.from_sparse_rows(self._rows, ambient_dim)

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int, backend: str | None = None) -> "Subspace":
        rows = []
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionError(f"vector of length {len(v)} in a space of dimension {ambient_dim}")
            rows.append(_sparse(v))
        return cls(ambient_dim, rref_sparse(rows, ambient_dim, backend))

    @classmethod
    def span_sparse(cls, rows: Iterable[SparseRow], ambient_dim: int, backend: str | None = None) -> "Subspace":
        return cls(ambient_dim, rref_sparse(list(rows), ambient_dim, backend))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, [])

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, [{i: _ONE} for i in range(n)])

    @classmethod
    def coordinate(cls, indices: Iterable[int], n: int) -> "Subspace":
        idx = sorted(set(indices))
        for i in idx:
            if not 0 <= i < n:
                raise IndexError(f"basis index {i} out of range for dimension {n}")
        return cls(n, [{i: _ONE} for i in idx])

    @property
    def dim(self) -> int:
        return len(self._rows)

    def __len__(self) -> int:
        return self.dim

    @property
    def pivots(self) -> list[int]:
        return [min(r) for r in self._rows]

    def vectors(self) -> list[tuple[Fraction, ...]]:
        return [self.basis.row(i) for i in range(self.dim)]

    def sparse_vectors(self) -> list[SparseRow]:
        return [dict(r) for r in self._rows]

    def is_zero(self) -> bool:
        return not self._rows

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionError(f"ambient dimensions differ: {self.ambient_dim} vs {other.ambient_dim}")

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionError("vector length does not match ambient dimension")
        return self.contains_sparse(_sparse(v))

    def contains_sparse(self, v: SparseRow) -> bool:
        pivots = {min(r): r for r in self._rows}
        return not _reduce_against(dict(v), pivots)

    __contains__ = contains

    def coordinates(self, v: Sequence) -> list[Fraction]:
        """Coefficients of ``v`` in the canonical basis; raises if ``v`` is outside."""
        if not self.contains(v):
            raise ValueError("vector does not lie in the subspace")
        v = [as_rational(x) for x in v]
        return [v[p] for p in self.pivots]

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span_sparse(self._rows + other._rows, self.ambient_dim)

    __add__ = sum

    def intersect(self, other: "Subspace") -> "Subspace":
        """Intersection, as the null space of the stacked annihilator constraints."""
        self._check(other)
        n = self.ambient_dim
        constraints = self.annihilator() + other.annihilator()
        return Subspace(n, rref_sparse(null_space_sparse(constraints, n), n))

    __and__ = intersect

    def annihilator(self) -> list[SparseRow]:
        """Rows of a matrix whose null space is exactly this subspace."""
        return null_space_sparse(self._rows, self.ambient_dim)

    def issubset(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains_sparse(r) for r in self._rows)

    __le__ = issubset

    def equals(self, other: "Subspace") -> bool:
        self._check(other)
        return self.basis == other.basis

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    return a.sum(b)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    return a.intersect(b)


def contains(a: Subspace, v: Sequence) -> bool:
    return a.contains(v)


def equals(a: Subspace, b: Subspace) -> bool:
    return a.equals(b)


def complement_basis(base: Sequence[SparseRow], candidates: Sequence[SparseRow], n: int) -> list[int]:
    """Indices of ``candidates`` that greedily extend span(base) to span(base + candidates)."""
    pivots = _echelon_python(base)
    chosen = []
    for i, v in enumerate(candidates):
        r = _reduce_against(dict(v), pivots)
        if r:
            lead = min(r)
            inv = _ONE / r[lead]
            pivots[lead] = {k: x * inv for k, x in r.items()}
            chosen.append(i)
    return chosen
