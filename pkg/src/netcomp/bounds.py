"""Cut-set upper bounds on the computing capacity.

Each bound minimises ``|C| / log_q(count(C))`` over a family of cut sets,
where ``count`` is the class count W, the class count R or the image size,
depending on the bound. Ratios are compared exactly: for sizes c1, c2 and
counts w1, w2 (all > 1),

    c1 / log w1 <= c2 / log w2   <=>   w2 ** c1 <= w1 ** c2,

evaluated with Python integers. Floats appear only in displayed values.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import total_ordering
from typing import Callable, Iterable, Iterator

from .equivalence import count_R, count_W
from .errors import BudgetExceeded, InvalidInput
from .function import TargetFunction
from .network import UNBOUNDED, CutAnalysis, Network, edge_disjoint_path_count

MAX_FINITE_EDGES = 24
MAX_NODE_SUBSETS_LOG2 = 24

KINDS = ("min-cut", "min-cut-A", "min-cut-K", "prop2", "prop1-capacity")


@total_ordering
@dataclass(frozen=True)
class CutRatio:
    """The exact value size / log(count); infinite when count <= 1."""

    size: int
    count: int

    @property
    def infinite(self) -> bool:
        return self.count <= 1

    def __lt__(self, other: "CutRatio") -> bool:
        if self.infinite:
            return False
        if other.infinite:
            return True
        return other.count ** self.size < self.count ** other.size

    def __eq__(self, other) -> bool:
        if not isinstance(other, CutRatio):
            return NotImplemented
        if self.infinite or other.infinite:
            return self.infinite and other.infinite
        return other.count ** self.size == self.count ** other.size

    def __hash__(self):
        return hash((self.size, self.count)) if not self.infinite else hash("inf")

    def value(self, q: int) -> float:
        """size / log_q(count) as a float."""
        if self.infinite:
            return math.inf
        return self.size * math.log(q) / math.log(self.count)

    def compare_rational(self, q: int, num: int, den: int = 1) -> int:
        """Sign of (size / log_q count) - num/den, decided in integers."""
        if self.infinite:
            return 1
        # size/log_q(w) vs num/den  <=>  q^(den*size) vs w^num
        lhs = q ** (den * self.size)
        rhs = self.count ** num
        return (lhs > rhs) - (lhs < rhs)


@dataclass(frozen=True)
class CutRow:
    cut: tuple[str, ...]
    count: int
    ratio: CutRatio
    separated: frozenset[int] = frozenset()
    context: tuple[int, ...] = ()

    @property
    def size(self) -> int:
        return len(self.cut)


@dataclass
class BoundReport:
    kind: str
    q: int
    ratio: CutRatio | None
    witness_cut: tuple[str, ...] | None
    witness_count: int | None = None
    witness_context: tuple[int, ...] | None = None
    optimal_cuts: list[tuple[str, ...]] = field(default_factory=list)
    per_cut_table: list[CutRow] = field(default_factory=list)
    unbounded: bool = False

    @property
    def value(self) -> float:
        if self.unbounded or self.ratio is None:
            return math.inf
        return self.ratio.value(self.q)

    @property
    def finite(self) -> bool:
        return not math.isinf(self.value)

    def compare_rational(self, num: int, den: int = 1) -> int:
        if not self.finite:
            return 1
        return self.ratio.compare_rational(self.q, num, den)

    def equals(self, num: int, den: int = 1) -> bool:
        return self.compare_rational(num, den) == 0

    def at_most(self, num: int, den: int = 1) -> bool:
        return self.compare_rational(num, den) <= 0

    def row(self, cut: Iterable[str]) -> CutRow | None:
        key = frozenset(cut)
        for r in self.per_cut_table:
            if frozenset(r.cut) == key:
                return r
        return None


# -- rate certificate ----------------------------------------------------------

@dataclass(frozen=True)
class RateCertificate:
    W: int
    k: int
    n: int
    edge_alphabet: int
    cut_size: int

    @property
    def satisfied(self) -> bool:
        return self.W ** self.k <= self.edge_alphabet ** (self.n * self.cut_size)


def rate_certificate(W: int, k: int, n: int, edge_alphabet: int, cut_size: int) -> RateCertificate:
    """Pigeonhole test W^k <= |B|^(n|C|) for an (n, k) code across one cut."""
    for name, v in (("W", W), ("k", k), ("n", n), ("edge_alphabet", edge_alphabet), ("cut_size", cut_size)):
        if v < 1:
            raise InvalidInput(f"{name} must be positive")
    return RateCertificate(W, k, n, edge_alphabet, cut_size)


# -- cut enumeration -------------------------------------------------------------

def enumerate_cuts(
    net: Network,
    *,
    irreducible_only: bool = False,
    max_cut_size: int | None = None,
    node_cuts_only: bool = False,
    budget: int = MAX_FINITE_EDGES,
) -> Iterator[CutAnalysis]:
    """Yield cut sets by increasing size, then in edge order.

    With ``irreducible_only`` a cut is skipped when dropping one of its edges
    leaves the separated sources unchanged; such a cut never beats the
    smaller one. Infinite bundles never appear.
    """
    if node_cuts_only:
        yield from _node_cuts(net, max_cut_size, irreducible_only)
        return
    finite = net.finite_edges
    if len(finite) > budget:
        raise BudgetExceeded(
            f"{len(finite)} finite edges exceed the enumeration budget of {budget}"
        )
    top = len(finite) if max_cut_size is None else min(max_cut_size, len(finite))
    for size in range(1, top + 1):
        for cut in itertools.combinations(finite, size):
            sep = net.separated_sources(cut)
            if not sep:
                continue
            if irreducible_only and _reducible(net, cut, sep):
                continue
            yield net.cut_analysis(cut)


def _reducible(net: Network, cut: tuple[str, ...], sep: frozenset[int]) -> bool:
    for i in range(len(cut)):
        if net.separated_sources(cut[:i] + cut[i + 1:]) == sep:
            return True
    return False


def _node_cuts(net: Network, max_cut_size, irreducible_only) -> Iterator[CutAnalysis]:
    others = [u for u in net.nodes if u != net.sink]
    if len(others) > MAX_NODE_SUBSETS_LOG2:
        raise BudgetExceeded(f"2^{len(others)} node subsets exceed the enumeration budget")
    sources = set(net.sources)
    seen = set()
    found = []
    for size in range(1, len(others) + 1):
        for U in itertools.combinations(others, size):
            if not sources & set(U):
                continue
            cut = net.node_cut_edges(U)
            if cut in seen:
                continue
            seen.add(cut)
            if any(net.edge_by_id[e].infinite for e in cut):
                continue
            if max_cut_size is not None and len(cut) > max_cut_size:
                continue
            ordered = net.sort_edges(cut)
            if irreducible_only and _reducible(net, ordered, net.separated_sources(cut)):
                continue
            found.append(ordered)
    rank = net.edge_rank
    found.sort(key=lambda c: (len(c), [rank[e] for e in c]))
    for cut in found:
        yield net.cut_analysis(cut)


# -- bounds ----------------------------------------------------------------------

def _check_instance(net: Network, f: TargetFunction) -> None:
    net.check()
    if f.arity != net.s:
        raise InvalidInput(f"function arity {f.arity} does not match {net.s} sources")


def _minimise(
    kind: str,
    net: Network,
    f: TargetFunction,
    cuts: Iterable[CutAnalysis],
    count: Callable[[CutAnalysis], tuple[int, tuple[int, ...]]],
) -> BoundReport:
    rows: list[CutRow] = []
    best: CutRow | None = None
    for ca in cuts:
        w, ctx = count(ca)
        row = CutRow(net.sort_edges(ca.cut), w, CutRatio(len(ca.cut), w), ca.separated_sources, ctx)
        rows.append(row)
        if not row.ratio.infinite and (best is None or row.ratio < best.ratio):
            best = row
    if best is None:
        return BoundReport(kind, f.q, None, None, per_cut_table=rows, unbounded=True)
    ties = [r for r in rows if r.ratio == best.ratio]
    optimal = [r.cut for r in ties]
    # among tied cuts a global one is the more informative witness
    best = next((r for r in ties if len(r.separated) == net.s), ties[0])
    return BoundReport(
        kind,
        f.q,
        best.ratio,
        best.cut,
        best.count,
        best.context if kind == "min-cut" else None,
        optimal,
        rows,
    )


def min_cut_bound(
    net: Network,
    f: TargetFunction,
    *,
    irreducible_only: bool = False,
    max_cut_size: int | None = None,
) -> BoundReport:
    """min over cut sets C of |C| / log_q W_{C,f}.

    Among tied minimisers the witness is the first global one, else the
    first in enumeration order (smallest cut, then edge order); every
    minimiser is listed in ``optimal_cuts``.
    """
    _check_instance(net, f)
    cuts = enumerate_cuts(net, irreducible_only=irreducible_only, max_cut_size=max_cut_size)
    return _minimise(
        "min-cut", net, f, cuts, lambda ca: count_W(f, ca.separated_sources, ca.side_sources)
    )


def _r_count(f):
    cache: dict[frozenset[int], int] = {}

    def count(ca):
        key = ca.separated_sources
        if key not in cache:
            cache[key] = count_R(f, key)
        return cache[key], ()

    return count


def min_cut_A(
    net: Network,
    f: TargetFunction,
    *,
    irreducible_only: bool = False,
    max_cut_size: int | None = None,
) -> BoundReport:
    _check_instance(net, f)
    cuts = enumerate_cuts(net, irreducible_only=irreducible_only, max_cut_size=max_cut_size)
    return _minimise("min-cut-A", net, f, cuts, _r_count(f))


def min_cut_K(net: Network, f: TargetFunction, *, max_cut_size: int | None = None) -> BoundReport:
    _check_instance(net, f)
    cuts = enumerate_cuts(net, node_cuts_only=True, max_cut_size=max_cut_size)
    return _minimise("min-cut-K", net, f, cuts, _r_count(f))


def prop2_bound(
    net: Network,
    f: TargetFunction,
    *,
    irreducible_only: bool = False,
    max_cut_size: int | None = None,
) -> BoundReport:
    """min over global cut sets of |C| / log_q |image(f)|."""
    _check_instance(net, f)
    size = len(f.image)
    cuts = (
        ca
        for ca in enumerate_cuts(net, irreducible_only=irreducible_only, max_cut_size=max_cut_size)
        if len(ca.separated_sources) == net.s
    )
    return _minimise("prop2", net, f, cuts, lambda ca: (size, ()))


def prop1_capacity(net: Network, f: TargetFunction) -> BoundReport:
    """Exact capacity M / log_q |image(f)| of a single-source network."""
    _check_instance(net, f)
    if net.s != 1:
        raise InvalidInput("the single-source capacity needs exactly one source")
    M = edge_disjoint_path_count(net, net.sources[0], net.sink)
    image = len(f.image)
    if M == UNBOUNDED or image <= 1:
        return BoundReport("prop1-capacity", f.q, None, None, witness_count=image, unbounded=True)
    cut = _min_source_cut(net, M)
    ratio = CutRatio(M, image)
    return BoundReport("prop1-capacity", f.q, ratio, cut, image, None, [cut])


def _min_source_cut(net: Network, M: int) -> tuple[str, ...]:
    """A cut of size M separating the single source, found from the residual graph."""
    flow = net._max_flow(net.sources[0], net.sink, cap_inf=sum(1 for e in net.edges) + 1)
    big = sum(1 for e in net.edges) + 1
    reach = {net.sources[0]}
    changed = True
    while changed:
        changed = False
        for e in net.edges:
            cap = big if e.infinite else 1
            if e.tail in reach and e.head not in reach and flow[e.id] < cap:
                reach.add(e.head)
                changed = True
            if e.head in reach and e.tail not in reach and flow[e.id] > 0:
                reach.add(e.tail)
                changed = True
    cut = net.sort_edges(e.id for e in net.edges if e.tail in reach and e.head not in reach)
    assert len(cut) == M
    return cut


def exact_fraction(ratio: CutRatio, q: int, max_den: int = 12) -> tuple[int, int] | None:
    """(num, den) with ratio == num/den exactly, if one exists with den <= max_den."""
    if ratio.infinite:
        return None
    approx = ratio.value(q)
    for den in range(1, max_den + 1):
        num = round(approx * den)
        if num > 0 and ratio.compare_rational(q, num, den) == 0:
            return num, den
    return None
