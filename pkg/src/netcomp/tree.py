"""Optimal codes on multi-edge trees.

Every node u forwards only the class of its ancestors' inputs under the
J-empty equivalence of f restricted to the sources above u. A relay learns
the classes of its children-side predecessors, glues one representative per
predecessor into a full assignment of its own ancestor set, and forwards the
class of that assignment. Class vectors are packed into B-strings by
mixed-radix ranking.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .bounds import BoundReport, min_cut_bound, rate_certificate
from .code import CodeLayout, NetworkCode, _split, verify
from .equivalence import EquivalencePartition, partition
from .errors import InvalidInput
from .function import TargetFunction, mixed_rank, mixed_unrank
from .network import Network


def is_multi_edge_tree(net: Network) -> bool:
    """True iff contracting parallel edges leaves an in-tree rooted at the sink."""
    if not net.validate().ok:
        return False
    for u in net.nodes:
        if u == net.sink:
            continue
        heads = {net.edge_by_id[e].head for e in net.out_edges(u)}
        if len(heads) != 1:
            return False
    return True


@dataclass
class NodePlan:
    node: str
    ancestors: tuple[int, ...]
    preds: tuple[str, ...]
    out_edges: tuple[str, ...]
    classes: EquivalencePartition | None
    raw: bool = False  # leaves through an infinite bundle carrying its column

    @property
    def class_count(self) -> int:
        return 1 if self.classes is None else self.classes.class_count


@dataclass
class TreePlan:
    net: Network
    f: TargetFunction
    n: int
    k: int
    nodes: dict[str, NodePlan] = field(default_factory=dict)

    def width(self, u: str) -> int:
        return self.n * len(self.nodes[u].out_edges)

    def class_vector(self, u: str, x) -> tuple[int, ...]:
        """gamma_u applied row-wise to the ancestor columns of x."""
        p = self.nodes[u]
        if p.classes is None:
            return (0,) * self.k
        return tuple(p.classes.class_id([row[j - 1] for j in p.ancestors]) for row in x)


class InfeasiblePlan(InvalidInput):
    """Raised with one (node, class count, k, |B|, width) entry per overflowing node."""

    def __init__(self, failures):
        self.failures = list(failures)
        self.nodes = [fl[0] for fl in self.failures]
        super().__init__("; ".join(
            f"node {u}: {c}^{k} = {c ** k} classes exceed {B}^{w} = {B ** w} strings"
            for u, c, k, B, w in self.failures
        ))


def plan(net: Network, f: TargetFunction, n: int, k: int) -> TreePlan:
    if not is_multi_edge_tree(net):
        raise InvalidInput("network is not a multi-edge tree")
    if f.arity != net.s:
        raise InvalidInput(f"function arity {f.arity} does not match {net.s} sources")
    if n < 1 or k < 1:
        raise InvalidInput("n and k must be positive")
    tp = TreePlan(net, f, n, k)
    failures = []
    for u in net.topological_order:
        ancestors = tuple(
            i + 1 for i, src in enumerate(net.sources) if net.reachable(src, u)
        )
        preds = tuple(dict.fromkeys(net.edge_by_id[e].tail for e in net.in_edges(u)))
        outs = net.out_edges(u)
        raw = any(net.edge_by_id[e].infinite for e in outs)
        if raw and (len(outs) != 1 or not net.is_source(u)):
            raise InvalidInput(f"node {u}: an infinite bundle must be a source's only out-edge")
        classes = partition(f, ancestors) if ancestors else None
        tp.nodes[u] = NodePlan(u, ancestors, preds, outs, classes, raw)
        if u != net.sink and not raw:
            width = n * len(outs)
            cert = rate_certificate(tp.nodes[u].class_count, k, 1, net.edge_alphabet, width)
            if not cert.satisfied:
                failures.append((u, tp.nodes[u].class_count, k, net.edge_alphabet, width))
    if failures:
        raise InfeasiblePlan(failures)
    return tp


def _glue(tp: TreePlan, u: str, pred_classes: dict[str, tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Representative rows over the ancestors of u, one per block row."""
    pu = tp.nodes[u]
    where = {j: t for t, j in enumerate(pu.ancestors)}
    rows = []
    for r in range(tp.k):
        row = [0] * len(pu.ancestors)
        for v, cls in pred_classes.items():
            pv = tp.nodes[v]
            if pv.classes is None:
                continue
            rep = pv.classes.representatives[cls[r]]
            for j, val in zip(pv.ancestors, rep):
                row[where[j]] = val
        rows.append(tuple(row))
    return rows


def _encode(tp: TreePlan, u: str, classes: tuple[int, ...]) -> list[int]:
    """Pack a class vector into one B^n block rank per out-edge of u."""
    B, n = tp.net.edge_alphabet, tp.n
    value = mixed_rank(classes, tp.nodes[u].class_count)
    digits = mixed_unrank(value, B, tp.width(u))
    return [mixed_rank(digits[j * n:(j + 1) * n], B) for j in range(len(tp.nodes[u].out_edges))]


def _decode_preds(tp: TreePlan, layout: CodeLayout, u: str, labels, parts):
    """Class vectors of u's predecessors from the received blocks, or None."""
    net, B, n, k = tp.net, tp.net.edge_alphabet, tp.n, tp.k
    got = dict(zip(labels, parts))
    out = {}
    for v in tp.nodes[u].preds:
        pv = tp.nodes[v]
        if pv.raw:
            column = mixed_unrank(got[("input", net.source_index(v))], tp.f.input_size, k)
            out[v] = tuple(
                pv.classes.class_id((a,)) for a in column
            )
            continue
        digits: list[int] = []
        for e in pv.out_edges:
            digits.extend(mixed_unrank(got[("edge", e)], B, n))
        value = mixed_rank(digits, B)
        if value >= pv.class_count ** k:
            return None
        out[v] = mixed_unrank(value, pv.class_count, k)
    return out


def construct(
    net: Network, f: TargetFunction, n: int, k: int, *, debug: bool = False
) -> NetworkCode:
    """Build the class-forwarding (n, k) code; refuses if some node overflows."""
    tp = plan(net, f, n, k)
    layout = CodeLayout(net, n, k, f.input_size, f.output_size)
    encoders: dict[str, tuple[int, ...]] = {}
    for u in net.topological_order:
        pu = tp.nodes[u]
        if u == net.sink or pu.raw:
            continue
        if net.is_source(u):
            tables = [[] for _ in pu.out_edges]
            for c in range(layout.column_size):
                column = mixed_unrank(c, f.input_size, k)
                classes = tuple(pu.classes.class_id((a,)) for a in column)
                for j, block in enumerate(_encode(tp, u, classes)):
                    tables[j].append(block)
        else:
            labels = layout.labels[pu.out_edges[0]]
            radices = layout.radices(labels)
            size = layout.domain_size(pu.out_edges[0])
            tables = [[0] * size for _ in pu.out_edges]
            for i in range(size):
                pred = _decode_preds(tp, layout, u, labels, _split(i, radices))
                if pred is None:
                    continue
                rows = _glue(tp, u, pred)
                classes = tuple(
                    pu.classes.class_id(r) if pu.classes is not None else 0 for r in rows
                )
                for j, block in enumerate(_encode(tp, u, classes)):
                    tables[j][i] = block
        for e, table in zip(pu.out_edges, tables):
            encoders[e] = tuple(table)

    labels = layout.decoder_labels
    radices = layout.radices(labels)
    decoder = [0] * layout.decoder_domain_size
    for i in range(layout.decoder_domain_size):
        pred = _decode_preds(tp, layout, net.sink, labels, _split(i, radices))
        if pred is None:
            continue
        rows = _glue(tp, net.sink, pred)
        decoder[i] = mixed_rank([f.evaluate(r) for r in rows], f.output_size)
    code = NetworkCode(n, k, f.input_size, f.output_size, encoders, tuple(decoder))
    if debug:
        check_representatives(tp)
    return code


def check_representatives(tp: TreePlan) -> None:
    """Assert that glued representatives land in the same class as the true input."""
    net, f, k = tp.net, tp.f, tp.k
    for flat in itertools.product(range(f.input_size), repeat=k * net.s):
        x = [flat[r * net.s:(r + 1) * net.s] for r in range(k)]
        for u in net.topological_order:
            pu = tp.nodes[u]
            if net.is_source(u) or pu.classes is None:
                continue
            pred = {v: tp.class_vector(v, x) for v in pu.preds}
            rows = _glue(tp, u, pred)
            glued = tuple(pu.classes.class_id(r) for r in rows)
            actual = tp.class_vector(u, x)
            assert glued == actual, f"node {u}: glued classes {glued} != {actual} for x={x}"


@dataclass
class TreeReport:
    bound: BoundReport
    n: int | None = None
    k: int | None = None
    feasible: bool | None = None
    code: NetworkCode | None = None
    verified: bool | None = None
    failure: str = ""


def tree_capacity_report(
    net: Network, f: TargetFunction, n: int | None = None, k: int | None = None
) -> TreeReport:
    """The min-cut bound, which equals capacity on a tree, plus an optional code."""
    if not is_multi_edge_tree(net):
        raise InvalidInput("network is not a multi-edge tree")
    report = TreeReport(min_cut_bound(net, f))
    if n is None or k is None:
        return report
    report.n, report.k = n, k
    try:
        code = construct(net, f, n, k)
    except InfeasiblePlan as exc:
        report.feasible = False
        report.failure = str(exc)
        return report
    report.feasible = True
    report.code = code
    report.verified = verify(code, net, f).ok
    return report
