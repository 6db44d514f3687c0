"""Z-gradations in which every basis vector is homogeneous.

A weight vector w is compatible with an algebra when every nonzero structure
constant c[i][j][k] has w[k] = w[i] + w[j].  Its length is max - min + 1, and
it is connected when every integer between the extremes is a weight.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .algebra import Algebra, derived_algebra
from .linalg import Subspace


class GradationError(ValueError):
    pass


@dataclass(frozen=True)
class Gradation:
    algebra: Algebra
    weights: tuple[int, ...]

    def __post_init__(self):
        w = tuple(int(x) for x in self.weights)
        if len(w) != self.algebra.dim:
            raise GradationError(f"need {self.algebra.dim} weights, got {len(w)}")
        object.__setattr__(self, "weights", w)

    @property
    def support(self) -> list[int]:
        return sorted(set(self.weights))

    def components(self) -> dict[int, list[str]]:
        out: dict[int, list[str]] = {}
        for label, w in zip(self.algebra.labels, self.weights):
            out.setdefault(w, []).append(label)
        return dict(sorted(out.items()))

    def is_valid(self) -> bool:
        return verify_gradation(self.algebra, self.weights)

    def scaled(self, c: int) -> "Gradation":
        return Gradation(self.algebra, tuple(c * w for w in self.weights))


def _conflicts(a: Algebra, weights: Sequence[int]) -> Iterator[tuple[int, int, int]]:
    for (i, j), terms in a.nonzero_products():
        for k in terms:
            if weights[k] != weights[i] + weights[j]:
                yield i, j, k


def verify_gradation(a: Algebra, weights: Sequence[int]) -> bool:
    if len(weights) != a.dim:
        raise GradationError(f"need {a.dim} weights, got {len(weights)}")
    return next(_conflicts(a, weights), None) is None


def gradation_length(g: Gradation) -> tuple[int, bool]:
    """(max - min + 1, connected) over the weights of nonzero components."""
    if not g.is_valid():
        i, j, k = next(_conflicts(g.algebra, g.weights))
        lab = g.algebra.labels
        raise GradationError(f"invalid gradation: [{lab[i]},{lab[j]}] has a {lab[k]} component")
    support = g.support
    if not support:
        return 0, True
    length = support[-1] - support[0] + 1
    return length, len(support) == length


def generators(a: Algebra) -> list[int]:
    """Basis vectors lying outside L^2."""
    sq = derived_algebra(a)
    return [i for i in range(a.dim) if not sq.contains_sparse({i: 1})]


def _value_order(bound: int) -> list[int]:
    out = [0]
    for v in range(1, bound + 1):
        out += [v, -v]
    return out


def _propagate(a: Algebra, weights: list, products) -> bool:
    """Fill weights forced by products; False on a conflict."""
    changed = True
    while changed:
        changed = False
        for i, j, ks in products:
            wi, wj = weights[i], weights[j]
            if wi is None or wj is None:
                continue
            for k in ks:
                if weights[k] is None:
                    weights[k] = wi + wj
                    changed = True
                elif weights[k] != wi + wj:
                    return False
    return True


def iter_gradations(a: Algebra, bound: int) -> Iterator[Gradation]:
    """All compatible weight vectors with free weights in [-bound, bound].

    Generators are the primary search variables; any weight left undetermined
    after propagation becomes a further variable.  Values are tried in the
    order 0, 1, -1, 2, -2, ... and variables in index order, so the
    enumeration is deterministic.
    """
    if bound < 1:
        raise GradationError("weight bound must be at least 1")
    products = [(i, j, tuple(t)) for (i, j), t in a.nonzero_products()]
    order = _value_order(bound)
    gens = generators(a)

    def rec(weights: list, pending: list[int]):
        if not pending:
            free = [i for i, w in enumerate(weights) if w is None]
            if not free:
                yield Gradation(a, tuple(weights))
                return
            pending = [free[0]]
        var, rest = pending[0], pending[1:]
        if weights[var] is not None:
            yield from rec(weights, rest)
            return
        for v in order:
            trial = list(weights)
            trial[var] = v
            if _propagate(a, trial, products):
                yield from rec(trial, rest)

    yield from rec([None] * a.dim, gens)


def max_length_search(a: Algebra, bound: int | None = None) -> Gradation | None:
    """Connected gradation of greatest length, stopping early at length = dim."""
    bound = 2 * a.dim if bound is None else bound
    best, best_len = None, 0
    for g in iter_gradations(a, bound):
        length, connected = gradation_length(g)
        if connected and length > best_len:
            best, best_len = g, length
            if length == a.dim:
                break
    return best


def has_maximum_length(a: Algebra, bound: int | None = None) -> bool:
    g = max_length_search(a, bound)
    return g is not None and gradation_length(g)[0] == a.dim
