"""Directed acyclic networks and their purely topological queries.

A network is a multigraph with an ordered list of sources and one sink.
Source indices are 1-based everywhere in the public API, so source ``i``
is ``net.sources[i - 1]``.

An edge flagged ``infinite`` stands for an unbounded bundle of parallel
edges. Such an edge can be deleted only as a whole and never appears in an
enumerated cut set.
"""

from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .errors import InvalidInput, InvalidNetwork, ParseError

UNBOUNDED = math.inf


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str
    infinite: bool = False


@dataclass(frozen=True)
class CutAnalysis:
    cut: frozenset[str]
    separated_sources: frozenset[int]
    reaching_sources: frozenset[int]

    @property
    def side_sources(self) -> frozenset[int]:
        return self.reaching_sources - self.separated_sources

    @property
    def is_cut_set(self) -> bool:
        return bool(self.separated_sources)


@dataclass(frozen=True)
class ValidationReport:
    problems: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.problems

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class Network:
    nodes: tuple[str, ...]
    edges: tuple[Edge, ...]
    sources: tuple[str, ...]
    sink: str
    edge_alphabet: int = 2
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "sources", tuple(self.sources))
        if len(set(self.nodes)) != len(self.nodes):
            raise InvalidNetwork("duplicate node id")
        if len({e.id for e in self.edges}) != len(self.edges):
            raise InvalidNetwork("duplicate edge id")
        known = set(self.nodes)
        for e in self.edges:
            for end in (e.tail, e.head):
                if end not in known:
                    raise InvalidNetwork(f"edge {e.id} references unknown node {end}")
        for u in (*self.sources, self.sink):
            if u not in known:
                raise InvalidNetwork(f"unknown node {u}")
        if len(set(self.sources)) != len(self.sources):
            raise InvalidNetwork("a node is listed as a source twice")
        if self.edge_alphabet < 2:
            raise InvalidNetwork("edge alphabet must have at least 2 symbols")

    # -- basic structure -------------------------------------------------

    @property
    def s(self) -> int:
        return len(self.sources)

    @cached_property
    def edge_by_id(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    def edge(self, eid: str) -> Edge:
        try:
            return self.edge_by_id[eid]
        except KeyError:
            raise InvalidInput(f"unknown edge id {eid!r}") from None

    def source_index(self, node: str) -> int:
        return self.sources.index(node) + 1

    def is_source(self, node: str) -> bool:
        return node in self._source_pos

    @cached_property
    def _source_pos(self) -> dict[str, int]:
        return {u: i + 1 for i, u in enumerate(self.sources)}

    @cached_property
    def finite_edges(self) -> tuple[str, ...]:
        return tuple(eid for eid in self.edge_order if not self.edge_by_id[eid].infinite)

    def _check_node(self, u: str) -> None:
        if u not in self._node_pos:
            raise InvalidInput(f"unknown node id {u!r}")

    @cached_property
    def _node_pos(self) -> dict[str, int]:
        return {u: i for i, u in enumerate(self.nodes)}

    # -- validation ------------------------------------------------------

    def validate(self) -> ValidationReport:
        problems = []
        if self.sink in self._source_pos:
            problems.append(f"node {self.sink} is both a source and the sink")
        if not self.sources:
            problems.append("network has no source")
        for e in self.edges:
            if e.tail == e.head:
                problems.append(f"edge {e.id} is a self-loop on {e.tail}")
        cyc = self._find_cycle()
        if cyc:
            problems.append("cycle detected: " + " -> ".join(cyc))
        for u in self.sources:
            for e in self.edges:
                if e.head == u:
                    problems.append(f"source {u} has incoming edge {e.id}")
        for e in self.edges:
            if e.tail == self.sink:
                problems.append(f"sink {self.sink} has outgoing edge {e.id}")
        to_sink = self._backward_closure(self.sink, frozenset())
        for u in self.nodes:
            if u not in to_sink:
                problems.append(f"node {u} cannot reach the sink")
        return ValidationReport(tuple(problems))

    def check(self) -> "Network":
        report = self.validate()
        if not report.ok:
            raise InvalidNetwork("; ".join(report.problems))
        return self

    def _find_cycle(self) -> list[str] | None:
        succ: dict[str, list[str]] = {u: [] for u in self.nodes}
        for e in self.edges:
            succ[e.tail].append(e.head)
        color = dict.fromkeys(self.nodes, 0)
        for root in self.nodes:
            if color[root]:
                continue
            stack = [(root, iter(succ[root]))]
            path = [root]
            color[root] = 1
            while stack:
                u, it = stack[-1]
                nxt = next(it, None)
                if nxt is None:
                    color[u] = 2
                    stack.pop()
                    path.pop()
                elif color[nxt] == 1:
                    return path[path.index(nxt):] + [nxt]
                elif color[nxt] == 0:
                    color[nxt] = 1
                    stack.append((nxt, iter(succ[nxt])))
                    path.append(nxt)
        return None

    # -- orders ----------------------------------------------------------

    @cached_property
    def topological_order(self) -> tuple[str, ...]:
        """Kahn's algorithm; ties go to the earlier-declared node."""
        indeg = {u: 0 for u in self.nodes}
        succ: dict[str, list[str]] = {u: [] for u in self.nodes}
        for e in self.edges:
            indeg[e.head] += 1
            succ[e.tail].append(e.head)
        heap = [self._node_pos[u] for u in self.nodes if indeg[u] == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            u = self.nodes[heapq.heappop(heap)]
            order.append(u)
            for v in succ[u]:
                indeg[v] -= 1
                if indeg[v] == 0:
                    heapq.heappush(heap, self._node_pos[v])
        if len(order) != len(self.nodes):
            raise InvalidNetwork("network contains a cycle")
        return tuple(order)

    @cached_property
    def topo_index(self) -> dict[str, int]:
        return {u: i for i, u in enumerate(self.topological_order)}

    @cached_property
    def edge_order(self) -> tuple[str, ...]:
        """Edge ids sorted by (tail position, head position, declaration index)."""
        pos = self.topo_index
        decorated = sorted(
            (pos[e.tail], pos[e.head], i, e.id) for i, e in enumerate(self.edges)
        )
        return tuple(d[-1] for d in decorated)

    @cached_property
    def edge_rank(self) -> dict[str, int]:
        return {eid: i for i, eid in enumerate(self.edge_order)}

    def sort_edges(self, edges: Iterable[str]) -> tuple[str, ...]:
        rank = self.edge_rank
        return tuple(sorted(edges, key=rank.__getitem__))

    @cached_property
    def _in_edges(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {u: [] for u in self.nodes}
        for eid in self.edge_order:
            out[self.edge_by_id[eid].head].append(eid)
        return {u: tuple(v) for u, v in out.items()}

    @cached_property
    def _out_edges(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {u: [] for u in self.nodes}
        for eid in self.edge_order:
            out[self.edge_by_id[eid].tail].append(eid)
        return {u: tuple(v) for u, v in out.items()}

    def in_edges(self, u: str) -> tuple[str, ...]:
        return self._in_edges[u]

    def out_edges(self, u: str) -> tuple[str, ...]:
        return self._out_edges[u]

    # -- reachability ----------------------------------------------------

    @cached_property
    def _descendants(self) -> dict[str, frozenset[str]]:
        desc: dict[str, frozenset[str]] = {}
        for u in reversed(self.topological_order):
            acc = {u}
            for eid in self._out_edges[u]:
                acc |= desc[self.edge_by_id[eid].head]
            desc[u] = frozenset(acc)
        return desc

    def reachable(self, u: str, v: str) -> bool:
        """True iff u == v or a directed path leads from u to v."""
        self._check_node(u)
        self._check_node(v)
        return v in self._descendants[u]

    def _forward_reach(self, u: str) -> set[str]:
        seen = {u}
        queue = deque([u])
        while queue:
            w = queue.popleft()
            for e in self.edges:
                if e.tail == w and e.head not in seen:
                    seen.add(e.head)
                    queue.append(e.head)
        return seen

    def _backward_closure(self, target: str, removed: frozenset[str]) -> set[str]:
        pred: dict[str, list[str]] = {u: [] for u in self.nodes}
        for e in self.edges:
            if e.id not in removed:
                pred[e.head].append(e.tail)
        seen = {target}
        queue = deque([target])
        while queue:
            u = queue.popleft()
            for w in pred[u]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return seen

    # -- cuts --------------------------------------------------------------

    def separated_sources(self, cut: Iterable[str]) -> frozenset[int]:
        removed = frozenset(cut)
        alive = self._backward_closure(self.sink, removed)
        return frozenset(i + 1 for i, u in enumerate(self.sources) if u not in alive)

    def cut_analysis(self, cut: Iterable[str]) -> CutAnalysis:
        cut = frozenset(cut)
        for eid in cut:
            self.edge(eid)
        tails = {self.edge_by_id[eid].tail for eid in cut}
        reaching = frozenset(
            i + 1
            for i, u in enumerate(self.sources)
            if tails & self._descendants[u]
        )
        return CutAnalysis(cut, self.separated_sources(cut), reaching)

    def is_global_cut_set(self, cut: Iterable[str]) -> bool:
        return len(self.separated_sources(cut)) == self.s

    def f_extension(self, cut: Iterable[str]) -> frozenset[str]:
        """The cut plus every out-edge of each source it leaves connected."""
        cut = frozenset(cut)
        ca = self.cut_analysis(cut)
        if not ca.is_cut_set:
            raise InvalidInput("F-extension is defined only for cut sets")
        extra = set()
        for i, u in enumerate(self.sources, start=1):
            if i not in ca.separated_sources:
                extra.update(self._out_edges[u])
        return cut | extra

    def node_cut_edges(self, nodes: Iterable[str]) -> frozenset[str]:
        """Edges leaving the node set U, where U holds a source but not the sink."""
        U = set(nodes)
        for u in U:
            self._check_node(u)
        if self.sink in U or not U & set(self.sources):
            raise InvalidInput("a node cut must contain a source and exclude the sink")
        return frozenset(e.id for e in self.edges if e.tail in U and e.head not in U)

    # -- flows -------------------------------------------------------------

    def edge_disjoint_paths(self, u: str, v: str) -> list[list[str]]:
        """A maximum family of pairwise edge-disjoint u->v paths (finite edges only)."""
        if any(e.infinite for e in self.edges):
            raise InvalidInput("path extraction needs a network without infinite bundles")
        flow = self._max_flow(u, v, cap_inf=1)
        paths = []
        used = {eid for eid, f in flow.items() if f > 0}
        out: dict[str, list[str]] = {w: [] for w in self.nodes}
        for eid in self.edge_order:
            if eid in used:
                out[self.edge_by_id[eid].tail].append(eid)
        while out[u]:
            path = []
            w = u
            while w != v:
                eid = out[w].pop(0)
                path.append(eid)
                w = self.edge_by_id[eid].head
            paths.append(path)
        return paths

    def _max_flow(self, u: str, v: str, cap_inf: int) -> dict[str, int]:
        """Edmonds-Karp over edge ids with unit capacities."""
        self._check_node(u)
        self._check_node(v)
        cap = {e.id: (cap_inf if e.infinite else 1) for e in self.edges}
        flow = dict.fromkeys(cap, 0)
        out: dict[str, list[str]] = {w: [] for w in self.nodes}
        inc: dict[str, list[str]] = {w: [] for w in self.nodes}
        for e in self.edges:
            out[e.tail].append(e.id)
            inc[e.head].append(e.id)
        while True:
            parent: dict[str, tuple[str, int]] = {u: ("", 0)}
            queue = deque([u])
            while queue and v not in parent:
                w = queue.popleft()
                for eid in out[w]:
                    h = self.edge_by_id[eid].head
                    if h not in parent and flow[eid] < cap[eid]:
                        parent[h] = (eid, +1)
                        queue.append(h)
                for eid in inc[w]:
                    t = self.edge_by_id[eid].tail
                    if t not in parent and flow[eid] > 0:
                        parent[t] = (eid, -1)
                        queue.append(t)
            if v not in parent:
                return flow
            w = v
            while w != u:
                eid, d = parent[w]
                flow[eid] += d
                e = self.edge_by_id[eid]
                w = e.tail if d > 0 else e.head


def edge_disjoint_path_count(net: Network, u: str, v: str) -> int | float:
    """Maximum number of edge-disjoint u->v paths, or UNBOUNDED.

    The count is unbounded exactly when some u->v path runs through
    infinite bundles only.
    """
    net._check_node(u)
    net._check_node(v)
    if u == v:
        raise InvalidInput("endpoints must differ")
    inf_only = Network(
        net.nodes,
        [e for e in net.edges if e.infinite],
        net.sources,
        net.sink,
        net.edge_alphabet,
    )
    if v in inf_only._forward_reach(u):
        return UNBOUNDED
    big = sum(1 for e in net.edges if not e.infinite) + 1
    flow = net._max_flow(u, v, cap_inf=big)
    return sum(flow[e] for e in net.out_edges(u)) - sum(flow[e] for e in net.in_edges(u))


def split_sources(net: Network) -> Network:
    """Give every source with incoming edges its own feeder node.

    Source ``j`` becomes the interior node ``j'``, and a fresh source ``j``
    feeds it through one infinite bundle. Source order is kept.
    """
    fed = [u for u in net.sources if any(e.head == u for e in net.edges)]
    if not fed:
        return net
    rename = {u: f"{u}'" for u in fed}
    taken = set(net.nodes)
    for u in fed:
        if rename[u] in taken:
            raise InvalidNetwork(f"cannot split {u}: node {rename[u]} already exists")
    nodes = []
    for u in net.nodes:
        if u in rename:
            nodes.extend([u, rename[u]])
        else:
            nodes.append(u)

    def r(u):
        return rename.get(u, u)

    edges = [Edge(e.id, r(e.tail), r(e.head), e.infinite) for e in net.edges]
    used = {e.id for e in edges}
    for u in fed:
        eid = f"{u}>{rename[u]}"
        if eid in used:
            raise InvalidNetwork(f"cannot split {u}: edge id {eid} already exists")
        edges.append(Edge(eid, u, rename[u], infinite=True))
    return Network(nodes, edges, net.sources, r(net.sink), net.edge_alphabet, net.name)


# -- text format -----------------------------------------------------------

def parse_network(text: str, path: str = "<network>") -> Network:
    name = ""
    alphabet = 2
    nodes: list[str] = []
    sources: list[str] = []
    sink = None
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        key = tok[0]

        def need(count):
            if len(tok) != count:
                raise ParseError(path, lineno, line, f"'{key}' expects {count - 1} argument(s)")

        if key == "network":
            need(2)
            name = tok[1]
        elif key == "edge-alphabet":
            need(2)
            try:
                alphabet = int(tok[1])
            except ValueError:
                raise ParseError(path, lineno, tok[1], "edge alphabet size must be an integer") from None
            if alphabet < 2:
                raise ParseError(path, lineno, tok[1], "edge alphabet size must be at least 2")
        elif key == "node":
            need(2)
            if tok[1] in nodes:
                raise ParseError(path, lineno, tok[1], "duplicate node")
            nodes.append(tok[1])
        elif key == "source":
            need(2)
            if tok[1] not in nodes:
                nodes.append(tok[1])
            if tok[1] in sources:
                raise ParseError(path, lineno, tok[1], "duplicate source")
            sources.append(tok[1])
        elif key == "sink":
            need(2)
            if sink is not None:
                raise ParseError(path, lineno, tok[1], "sink declared twice")
            if tok[1] not in nodes:
                nodes.append(tok[1])
            sink = tok[1]
        elif key == "edge":
            if len(tok) not in (4, 5) or (len(tok) == 5 and tok[4] != "inf"):
                raise ParseError(path, lineno, line, "expected 'edge <id> <tail> <head> [inf]'")
            for end in tok[2:4]:
                if end not in nodes:
                    raise ParseError(path, lineno, end, "edge endpoint is not a declared node")
            if any(e.id == tok[1] for e in edges):
                raise ParseError(path, lineno, tok[1], "duplicate edge id")
            edges.append(Edge(tok[1], tok[2], tok[3], len(tok) == 5))
        else:
            raise ParseError(path, lineno, key, "unknown directive")
    if sink is None:
        raise ParseError(path, 0, "", "no sink declared")
    return Network(nodes, edges, sources, sink, alphabet, name)


def format_network(net: Network) -> str:
    lines = []
    if net.name:
        lines.append(f"network {net.name}")
    lines.append(f"edge-alphabet {net.edge_alphabet}")
    for u in net.nodes:
        lines.append(f"node {u}")
    for u in net.sources:
        lines.append(f"source {u}")
    lines.append(f"sink {net.sink}")
    for e in net.edges:
        lines.append(f"edge {e.id} {e.tail} {e.head}" + (" inf" if e.infinite else ""))
    return "\n".join(lines) + "\n"
