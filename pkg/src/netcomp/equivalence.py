"""Equivalence of partial inputs with respect to a target function.

Fix disjoint sets of source indices I and J and a context ``c`` for J. Two
assignments ``a`` and ``b`` to I are equivalent when, with J pinned to ``c``
and every remaining source given the same value, f never tells them apart.
Index sets are 1-based and are always read in increasing order; ``c[t]``
belongs to the ``t``-th smallest member of J.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidInput
from .function import TargetFunction, mixed_rank, mixed_unrank
from .network import Network


@dataclass(frozen=True)
class EquivalencePartition:
    index_set: tuple[int, ...]
    context_set: tuple[int, ...]
    context: tuple[int, ...]
    input_size: int
    class_of: tuple[int, ...]
    representatives: tuple[tuple[int, ...], ...]

    @property
    def class_count(self) -> int:
        return len(self.representatives)

    def class_id(self, a: Sequence[int]) -> int:
        if len(a) != len(self.index_set):
            raise InvalidInput("assignment length does not match the index set")
        return self.class_of[mixed_rank(a, self.input_size)]

    def classes(self) -> list[list[tuple[int, ...]]]:
        out: list[list[tuple[int, ...]]] = [[] for _ in self.representatives]
        for r, cid in enumerate(self.class_of):
            out[cid].append(mixed_unrank(r, self.input_size, len(self.index_set)))
        return out


def _normalise(f: TargetFunction, I: Iterable[int], J: Iterable[int], c: Sequence[int]):
    I = tuple(sorted(set(I)))
    J = tuple(sorted(set(J)))
    c = tuple(c)
    if not I:
        raise InvalidInput("index set I must be non-empty")
    if set(I) & set(J):
        raise InvalidInput("index sets I and J overlap")
    for j in I + J:
        if not 1 <= j <= f.arity:
            raise InvalidInput(f"source index {j} outside 1..{f.arity}")
    if len(c) != len(J):
        raise InvalidInput(f"context has length {len(c)}, expected {len(J)}")
    for v in c:
        if not 0 <= v < f.input_size:
            raise InvalidInput(f"context symbol {v} outside input alphabet")
    return I, J, c


def partition(
    f: TargetFunction, I: Iterable[int], J: Iterable[int] = (), c: Sequence[int] = ()
) -> EquivalencePartition:
    """Partition A^|I| by the signature of f over all completions.

    Classes are numbered in order of first appearance in lexicographic
    order, so each representative is the smallest member of its class.
    """
    I, J, c = _normalise(f, I, J, c)
    q, s = f.input_size, f.arity
    stride = {j: q ** (s - j) for j in range(1, s + 1)}
    base = sum(stride[j] * v for j, v in zip(J, c))
    free = [j for j in range(1, s + 1) if j not in I and j not in J]
    free_offsets = [
        sum(stride[j] * v for j, v in zip(free, vals))
        for vals in itertools.product(range(q), repeat=len(free))
    ]
    table = f.table
    ids: dict[tuple[int, ...], int] = {}
    class_of = []
    reps = []
    for a in itertools.product(range(q), repeat=len(I)):
        off = base + sum(stride[j] * v for j, v in zip(I, a))
        sig = tuple(table[off + fo] for fo in free_offsets)
        cid = ids.get(sig)
        if cid is None:
            cid = ids[sig] = len(reps)
            reps.append(a)
        class_of.append(cid)
    return EquivalencePartition(I, J, c, q, tuple(class_of), tuple(reps))


def count_R(f: TargetFunction, I: Iterable[int]) -> int:
    return partition(f, I).class_count


def count_W(
    f: TargetFunction, I: Iterable[int], J: Iterable[int]
) -> tuple[int, tuple[int, ...]]:
    """Largest class count over all contexts of J, with the first maximiser."""
    J = tuple(sorted(set(J)))
    best, best_c = -1, ()
    for c in itertools.product(range(f.input_size), repeat=len(J)):
        w = partition(f, I, J, c).class_count
        if w > best:
            best, best_c = w, c
    return best, best_c


def count_W_for_cut(f: TargetFunction, net: Network, cut: Iterable[str]) -> tuple[int, tuple[int, ...]]:
    if f.arity != net.s:
        raise InvalidInput(f"function arity {f.arity} does not match {net.s} sources")
    ca = net.cut_analysis(cut)
    if not ca.is_cut_set:
        raise InvalidInput("not a cut set: no source is separated")
    return count_W(f, ca.separated_sources, ca.side_sources)


def block_equivalent(
    f: TargetFunction,
    I: Iterable[int],
    J: Iterable[int],
    c: Sequence[int],
    a: Sequence[Sequence[int]],
    b: Sequence[Sequence[int]],
) -> bool:
    """Block version: the context row is repeated on every row."""
    if len(a) != len(b) or any(len(r) != len(t) for r, t in zip(a, b)):
        raise InvalidInput("blocks must have the same shape")
    p = partition(f, I, J, c)
    return all(p.class_id(r) == p.class_id(t) for r, t in zip(a, b))
