"""(n, k) function-computing network codes: execution, verification, search.

Every table is a flat tuple indexed by a mixed-radix rank of its inputs.

* A block in B^n travels as its rank in ``range(|B|**n)``, first symbol most
  significant.
* Source i feeds its encoders the rank of its column ``(x_1i, ..., x_ki)``
  in ``range(q**k)``, row 1 most significant.
* An interior edge's table is indexed by the ranks of the tail's in-edge
  blocks, concatenated in edge order.
* The decoder is indexed the same way over the sink's in-edges and returns
  the rank of the output vector in ``range(m**k)``.

An infinite bundle leaving a source carries that source's whole column.
Its "table" is fixed to the identity and is never stored or searched. The
executor also accepts a source that has incoming edges. Its own column is
then the first input of its out-edge tables. Codes on such a network and on
its split version therefore correspond one-to-one (see ``transport_code``).
"""

from __future__ import annotations

import itertools
import math
import sys
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import BudgetExceeded, InvalidInput, ParseError
from .function import TargetFunction, mixed_rank, mixed_unrank
from .network import Network

VERIFY_BUDGET = 2 ** 20
SEARCH_BUDGET = 2 ** 36


@dataclass(frozen=True)
class NetworkCode:
    n: int
    k: int
    input_size: int
    output_size: int
    encoders: dict[str, tuple[int, ...]]
    decoder: tuple[int, ...] | None = None

    def rate(self, edge_alphabet: int) -> float:
        """(k / n) * log_|B| q."""
        return self.k / self.n * math.log(self.input_size) / math.log(edge_alphabet)

    def with_decoder(self, decoder: Sequence[int] | None) -> "NetworkCode":
        return NetworkCode(
            self.n, self.k, self.input_size, self.output_size, dict(self.encoders),
            None if decoder is None else tuple(decoder),
        )


@dataclass(frozen=True)
class ExecutionTrace:
    blocks: dict[str, tuple[int, ...]]
    output: tuple[int, ...] | None


Label = tuple  # ("edge", edge id) or ("input", 1-based source index)


class CodeLayout:
    """Domain and codomain shapes of every table of an (n, k) code."""

    def __init__(self, net: Network, n: int, k: int, q: int, m: int):
        if n < 1 or k < 1:
            raise InvalidInput("n and k must be positive")
        net.topological_order  # raises on a cycle
        if net.out_edges(net.sink):
            raise InvalidInput("the sink has outgoing edges")
        self.net, self.n, self.k, self.q, self.m = net, n, k, q, m
        self.B = net.edge_alphabet
        self.edge_block = net.edge_alphabet ** n
        self.column_size = q ** k
        self.output_rank_size = m ** k
        self.block_size: dict[str, int] = {}
        for e in net.edges:
            if e.infinite:
                if not net.is_source(e.tail):
                    raise InvalidInput(
                        f"infinite bundle {e.id} must leave a source to carry a code"
                    )
                self.block_size[e.id] = self.column_size
            else:
                self.block_size[e.id] = self.edge_block
        self.order = net.edge_order
        self.coded_edges = tuple(eid for eid in self.order if not net.edge_by_id[eid].infinite)
        self.labels: dict[str, list[Label]] = {}
        for eid in self.order:
            e = net.edge_by_id[eid]
            if e.infinite:
                continue
            self.labels[eid] = self._node_labels(e.tail)
        self.decoder_labels = self._node_labels(net.sink)

    def _node_labels(self, u: str) -> list[Label]:
        out: list[Label] = []
        if self.net.is_source(u):
            out.append(("input", self.net.source_index(u)))
        for eid in self.net.in_edges(u):
            e = self.net.edge_by_id[eid]
            if e.infinite:
                out.append(("input", self.net.source_index(e.tail)))
            else:
                out.append(("edge", eid))
        return out

    def label_size(self, label: Label) -> int:
        return self.column_size if label[0] == "input" else self.edge_block

    def radices(self, labels: Sequence[Label]) -> list[int]:
        return [self.label_size(lb) for lb in labels]

    def domain_size(self, eid: str) -> int:
        size = 1
        for r in self.radices(self.labels[eid]):
            size *= r
        return size

    @property
    def decoder_domain_size(self) -> int:
        size = 1
        for r in self.radices(self.decoder_labels):
            size *= r
        return size

    def multipliers(self, labels: Sequence[Label]) -> list[tuple[Label, int]]:
        out = []
        mult = 1
        for lb in reversed(labels):
            out.append((lb, mult))
            mult *= self.label_size(lb)
        return list(reversed(out))

    def space_size(self) -> int:
        total = 1
        for eid in self.coded_edges:
            total *= self.edge_block ** self.domain_size(eid)
        return total

    def check_code(self, code: NetworkCode, need_decoder: bool = True) -> None:
        if (code.n, code.k) != (self.n, self.k):
            raise InvalidInput("code (n, k) does not match the layout")
        for eid in self.coded_edges:
            table = code.encoders.get(eid)
            if table is None:
                raise InvalidInput(f"no encoder for edge {eid}")
            if len(table) != self.domain_size(eid):
                raise InvalidInput(
                    f"encoder for {eid} has {len(table)} entries, expected {self.domain_size(eid)}"
                )
            if any(not 0 <= v < self.edge_block for v in table):
                raise InvalidInput(f"encoder for {eid} has an entry outside B^n")
        extra = set(code.encoders) - set(self.coded_edges)
        if extra:
            raise InvalidInput(f"encoders for unknown or infinite edges: {sorted(extra)}")
        if code.decoder is None:
            if need_decoder:
                raise InvalidInput("code has no decoder")
            return
        if len(code.decoder) != self.decoder_domain_size:
            raise InvalidInput(
                f"decoder has {len(code.decoder)} entries, expected {self.decoder_domain_size}"
            )
        if any(not 0 <= v < self.output_rank_size for v in code.decoder):
            raise InvalidInput("decoder entry outside O^k")


def layout_for(code: NetworkCode, net: Network) -> CodeLayout:
    return CodeLayout(net, code.n, code.k, code.input_size, code.output_size)


def _check_matrix(x, k: int, s: int, q: int) -> tuple[tuple[int, ...], ...]:
    x = tuple(tuple(int(v) for v in row) for row in x)
    if len(x) != k or any(len(row) != s for row in x):
        raise InvalidInput(f"input matrix must be {k} x {s}")
    if any(not 0 <= v < q for row in x for v in row):
        raise InvalidInput("input symbol outside the alphabet")
    return x


def _columns(x, q: int, s: int) -> list[int]:
    return [mixed_rank([row[j] for row in x], q) for j in range(s)]


class _Runner:
    """Precomputed evaluation plan for one code on one network."""

    def __init__(self, layout: CodeLayout, code: NetworkCode | None):
        self.layout = layout
        self.code = code
        net = layout.net
        self.steps = []
        for eid in layout.order:
            e = net.edge_by_id[eid]
            if e.infinite:
                self.steps.append((eid, None, net.source_index(e.tail)))
            else:
                self.steps.append((eid, layout.multipliers(layout.labels[eid]), None))
        self.dec_mult = layout.multipliers(layout.decoder_labels)

    @staticmethod
    def _index(values, mults) -> int:
        idx = 0
        for (kind, key), mult in mults:
            idx += values[key] * mult
        return idx

    def run(self, columns: Sequence[int], tables=None) -> dict:
        tables = tables if tables is not None else self.code.encoders
        values: dict = {i + 1: c for i, c in enumerate(columns)}
        for eid, mults, src in self.steps:
            if mults is None:
                values[eid] = values[src]
            else:
                values[eid] = tables[eid][self._index(values, mults)]
        return values

    def sink_index(self, values) -> int:
        return self._index(values, self.dec_mult)


def _all_inputs(q: int, k: int, s: int):
    for flat in itertools.product(range(q), repeat=k * s):
        yield tuple(flat[r * s:(r + 1) * s] for r in range(k))


def _input_budget(q: int, k: int, s: int, budget: int) -> None:
    if q ** (k * s) > budget:
        raise BudgetExceeded(f"{q}^{k * s} inputs exceed the verification budget of {budget}")


def _fk_rank(f: TargetFunction, x) -> int:
    return mixed_rank(f.evaluate_block(x), f.output_size)


# -- execution ---------------------------------------------------------------------

def execute(code: NetworkCode, net: Network, x: Sequence[Sequence[int]]) -> ExecutionTrace:
    layout = layout_for(code, net)
    layout.check_code(code, need_decoder=False)
    x = _check_matrix(x, code.k, net.s, code.input_size)
    runner = _Runner(layout, code)
    values = runner.run(_columns(x, code.input_size, net.s))
    blocks = {}
    for eid in layout.order:
        if net.edge_by_id[eid].infinite:
            blocks[eid] = mixed_unrank(values[eid], code.input_size, code.k)
        else:
            blocks[eid] = mixed_unrank(values[eid], net.edge_alphabet, code.n)
    output = None
    if code.decoder is not None:
        output = mixed_unrank(code.decoder[runner.sink_index(values)], code.output_size, code.k)
    return ExecutionTrace(blocks, output)


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    checked: int
    counterexample: tuple[tuple[int, ...], ...] | None = None
    expected: tuple[int, ...] | None = None
    got: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.ok


def _check_function(code: NetworkCode, net: Network, f: TargetFunction) -> None:
    if f.arity != net.s:
        raise InvalidInput(f"function arity {f.arity} does not match {net.s} sources")
    if (f.input_size, f.output_size) != (code.input_size, code.output_size):
        raise InvalidInput("code alphabets do not match the function")


def verify(
    code: NetworkCode, net: Network, f: TargetFunction, budget: int = VERIFY_BUDGET
) -> VerifyResult:
    """Run the code on every input; report the first failure in lexicographic order."""
    _check_function(code, net, f)
    q, k, s = f.input_size, code.k, net.s
    _input_budget(q, k, s, budget)
    layout = layout_for(code, net)
    layout.check_code(code)
    runner = _Runner(layout, code)
    count = 0
    for x in _all_inputs(q, k, s):
        count += 1
        values = runner.run(_columns(x, q, s))
        got = code.decoder[runner.sink_index(values)]
        want = _fk_rank(f, x)
        if got != want:
            return VerifyResult(
                False, count, x, f.evaluate_block(x), mixed_unrank(got, f.output_size, k)
            )
    return VerifyResult(True, count)


@dataclass(frozen=True)
class DecoderCheck:
    ok: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def _sink_map(code, net, f, budget):
    _check_function(code, net, f)
    q, k, s = f.input_size, code.k, net.s
    _input_budget(q, k, s, budget)
    layout = layout_for(code, net)
    layout.check_code(code, need_decoder=False)
    runner = _Runner(layout, code)
    for x in _all_inputs(q, k, s):
        values = runner.run(_columns(x, q, s))
        yield x, runner.sink_index(values), _fk_rank(f, x)


def decoder_exists(
    code: NetworkCode, net: Network, f: TargetFunction, budget: int = VERIFY_BUDGET
) -> DecoderCheck:
    """Whether the sink's received block determines f^(k).

    On failure the witness is a pair of inputs with equal sink blocks and
    different function values.
    """
    seen: dict[int, tuple] = {}
    for x, idx, val in _sink_map(code, net, f, budget):
        prev = seen.get(idx)
        if prev is None:
            seen[idx] = (x, val)
        elif prev[1] != val:
            return DecoderCheck(False, (prev[0], x))
    return DecoderCheck(True)


def synthesize_decoder(
    code: NetworkCode, net: Network, f: TargetFunction, budget: int = VERIFY_BUDGET
) -> NetworkCode:
    layout = layout_for(code, net)
    table = [0] * layout.decoder_domain_size
    seen: dict[int, int] = {}
    for x, idx, val in _sink_map(code, net, f, budget):
        if seen.setdefault(idx, val) != val:
            raise InvalidInput("no decoder exists: two inputs with different values reach the same sink block")
        table[idx] = val
    return code.with_decoder(table)


def cut_determinism_check(
    code: NetworkCode, net: Network, cut: Iterable[str], budget: int = VERIFY_BUDGET
) -> bool:
    """Whether the output is a function of the symbols on a global cut set."""
    cut = net.sort_edges(cut)
    if not net.is_global_cut_set(cut):
        raise InvalidInput("cut determinism needs a global cut set")
    layout = layout_for(code, net)
    layout.check_code(code)
    q, k, s = code.input_size, code.k, net.s
    _input_budget(q, k, s, budget)
    runner = _Runner(layout, code)
    seen: dict[tuple, int] = {}
    for x in _all_inputs(q, k, s):
        values = runner.run(_columns(x, q, s))
        key = tuple(values[e] for e in cut)
        out = code.decoder[runner.sink_index(values)]
        if seen.setdefault(key, out) != out:
            return False
    return True


# -- constructions -------------------------------------------------------------------

def single_source_code(net: Network, f: TargetFunction, n: int, k: int) -> NetworkCode:
    """Forwarding code for one source: ship the rank of f^(k)(x) along disjoint paths."""
    net.check()
    if net.s != 1:
        raise InvalidInput("single_source_code needs exactly one source")
    if f.arity != 1:
        raise InvalidInput("function arity must be 1")
    if any(e.infinite for e in net.edges):
        raise InvalidInput("single_source_code does not handle infinite bundles")
    src = net.sources[0]
    paths = net.edge_disjoint_paths(src, net.sink)
    M = len(paths)
    image = sorted(f.image)
    B = net.edge_alphabet
    if len(image) ** k > B ** (n * M):
        raise InvalidInput(
            f"rate condition fails: {len(image)}^{k} > {B}^{n * M}"
        )
    layout = CodeLayout(net, n, k, f.input_size, f.output_size)
    pos = {v: i for i, v in enumerate(image)}
    path_of: dict[str, tuple[int, int]] = {}
    for p, path in enumerate(paths):
        for hop, eid in enumerate(path):
            path_of[eid] = (p, hop)

    def digits_for(column_rank: int) -> tuple[int, ...]:
        col = mixed_unrank(column_rank, f.input_size, k)
        value = mixed_rank([pos[f.table[a]] for a in col], len(image))
        return mixed_unrank(value, B, n * M)

    encoders: dict[str, tuple[int, ...]] = {}
    for eid in layout.coded_edges:
        e = net.edge_by_id[eid]
        if eid not in path_of:
            encoders[eid] = (0,) * layout.domain_size(eid)
            continue
        p, hop = path_of[eid]
        if e.tail == src:
            encoders[eid] = tuple(
                mixed_rank(digits_for(c)[p * n:(p + 1) * n], B) for c in range(layout.column_size)
            )
        else:
            feeder = paths[p][hop - 1]
            labels = layout.labels[eid]
            radices = layout.radices(labels)
            slot = labels.index(("edge", feeder))
            encoders[eid] = tuple(
                _split(i, radices)[slot] for i in range(layout.domain_size(eid))
            )
    dec_labels = layout.decoder_labels
    radices = layout.radices(dec_labels)
    last = [("edge", path[-1]) for path in paths]
    slots = [dec_labels.index(lb) for lb in last]
    decoder = []
    for i in range(layout.decoder_domain_size):
        parts = _split(i, radices)
        digits: list[int] = []
        for slot in slots:
            digits.extend(mixed_unrank(parts[slot], B, n))
        value = mixed_rank(digits, B)
        if value >= len(image) ** k:
            decoder.append(0)
            continue
        outs = [image[j] for j in mixed_unrank(value, len(image), k)]
        decoder.append(mixed_rank(outs, f.output_size))
    return NetworkCode(n, k, f.input_size, f.output_size, encoders, tuple(decoder))


def _split(index: int, radices: Sequence[int]) -> list[int]:
    out = [0] * len(radices)
    for i in range(len(radices) - 1, -1, -1):
        index, out[i] = divmod(index, radices[i])
    return out


def n1_rate_two_code() -> NetworkCode:
    """The (1, 2) code on N1 for x1*x2 + x3.

    Row 1 of every source goes to v, row 2 straight to the sink. v sends
    f(x^1) on e7 and the sink evaluates f(x^2) itself.
    """
    enc = {}
    for i in (1, 2, 3):
        enc[f"e{i}"] = tuple(c >> 1 for c in range(4))
        enc[f"e{i + 3}"] = tuple(c & 1 for c in range(4))
    # v's in-edges in edge order: e1, e2, e3
    enc["e7"] = tuple(((i >> 2) & (i >> 1) & 1) ^ (i & 1) for i in range(8))
    decoder = []
    # sink in-edges in edge order: e4, e5, e6, e7
    for i in range(16):
        b4, b5, b6, b7 = (i >> 3) & 1, (i >> 2) & 1, (i >> 1) & 1, i & 1
        decoder.append(mixed_rank([b7, (b4 & b5) ^ b6], 2))
    return NetworkCode(1, 2, 2, 2, enc, tuple(decoder))


def transport_code(code: NetworkCode, src: Network, dst: Network) -> NetworkCode:
    """Carry a code across a source split, re-ordering table inputs.

    The finite edges of both networks must match by id, and each table's
    inputs must agree as sets of labels.
    """
    a = layout_for(code, src)
    b = layout_for(code, dst)
    if set(a.coded_edges) != set(b.coded_edges):
        raise InvalidInput("networks do not share their finite edges")

    def remap(table, src_labels, dst_labels):
        if sorted(src_labels) != sorted(dst_labels):
            raise InvalidInput("table inputs differ between the networks")
        src_mult = dict(a.multipliers(src_labels))
        dst_radices = b.radices(dst_labels)
        out = []
        size = 1
        for r in dst_radices:
            size *= r
        for i in range(size):
            parts = _split(i, dst_radices)
            idx = sum(v * src_mult[lb] for lb, v in zip(dst_labels, parts))
            out.append(table[idx])
        return tuple(out)

    enc = {eid: remap(code.encoders[eid], a.labels[eid], b.labels[eid]) for eid in b.coded_edges}
    dec = None
    if code.decoder is not None:
        dec = remap(code.decoder, a.decoder_labels, b.decoder_labels)
    return NetworkCode(code.n, code.k, code.input_size, code.output_size, enc, dec)


# -- exhaustive search -------------------------------------------------------------------

@dataclass
class SearchConfig:
    budget: int = SEARCH_BUDGET
    method: str = "backtrack"  # or "plain"
    symmetry: bool = True


@dataclass
class SearchResult:
    code: NetworkCode | None
    method: str
    space_size: int
    explored: int
    notes: list[str] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.code is not None


def exhaustive_search(
    net: Network,
    f: TargetFunction,
    n: int,
    k: int,
    config: SearchConfig | None = None,
) -> SearchResult:
    """Find an (n, k) code computing f, or prove that none exists.

    ``plain`` walks every full assignment of encoder tables in lexicographic
    order (edges in edge order) and returns the first one admitting a
    decoder. ``backtrack`` fills table entries only when some input first
    needs them, fails as soon as two inputs with different values of f^(k)
    meet at the sink, and with ``symmetry`` only tries a new block value
    once per edge. Neither pruning can discard the last surviving code, so a
    ``None`` result is a proof of impossibility.
    """
    config = config or SearchConfig()
    if f.arity != net.s:
        raise InvalidInput(f"function arity {f.arity} does not match {net.s} sources")
    layout = CodeLayout(net, n, k, f.input_size, f.output_size)
    _input_budget(f.input_size, k, net.s, VERIFY_BUDGET)
    if config.method == "plain":
        return _search_plain(layout, net, f, config)
    if config.method == "backtrack":
        return _search_backtrack(layout, net, f, config)
    raise InvalidInput(f"unknown search method {config.method!r}")


def _sink_profile(layout, runner, f, inputs, tables):
    seen: dict[int, int] = {}
    for cols, val in inputs:
        idx = runner.sink_index(runner.run(cols, tables))
        if seen.setdefault(idx, val) != val:
            return None
    return seen


def _finish(layout, net, f, tables, seen) -> NetworkCode:
    decoder = [0] * layout.decoder_domain_size
    for idx, val in seen.items():
        decoder[idx] = val
    code = NetworkCode(
        layout.n, layout.k, f.input_size, f.output_size,
        {eid: tuple(tables[eid]) for eid in layout.coded_edges}, tuple(decoder),
    )
    return code


def _prepared_inputs(layout, net, f):
    q, k, s = f.input_size, layout.k, net.s
    return [(_columns(x, q, s), _fk_rank(f, x)) for x in _all_inputs(q, k, s)]


def _search_plain(layout, net, f, config) -> SearchResult:
    space = layout.space_size()
    if space > config.budget:
        raise BudgetExceeded(f"encoder space of {space} candidates exceeds the budget of {config.budget}")
    runner = _Runner(layout, None)
    inputs = _prepared_inputs(layout, net, f)
    edges = layout.coded_edges
    choices = [
        itertools.product(range(layout.edge_block), repeat=layout.domain_size(eid)) for eid in edges
    ]
    explored = 0
    for combo in itertools.product(*[list(c) for c in choices]):
        explored += 1
        tables = dict(zip(edges, combo))
        seen = _sink_profile(layout, runner, f, inputs, tables)
        if seen is not None:
            return SearchResult(_finish(layout, net, f, tables, seen), "plain", space, explored)
    return SearchResult(None, "plain", space, explored)


def _search_backtrack(layout, net, f, config) -> SearchResult:
    space = layout.space_size()
    runner = _Runner(layout, None)
    inputs = _prepared_inputs(layout, net, f)
    # one input per output value first, so conflicts surface early
    first: dict[int, int] = {}
    for i, (_, val) in enumerate(inputs):
        first.setdefault(val, i)
    head = sorted(first.values())
    order = [inputs[i] for i in head] + [inp for i, inp in enumerate(inputs) if i not in set(head)]

    steps = runner.steps
    tables = {eid: [-1] * layout.domain_size(eid) for eid in layout.coded_edges}
    top = {eid: -1 for eid in layout.coded_edges}
    block = layout.edge_block
    seen: dict[int, int] = {}
    explored = 0
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 10 * len(order) * (len(steps) + 2) + 1000))

    def extend(t: int, j: int, values: dict) -> bool:
        nonlocal explored
        while j < len(steps):
            eid, mults, src = steps[j]
            if mults is None:
                values[eid] = values[src]
                j += 1
                continue
            idx = runner._index(values, mults)
            cur = tables[eid][idx]
            if cur >= 0:
                values[eid] = cur
                j += 1
                continue
            explored += 1
            if explored > config.budget:
                raise BudgetExceeded(f"search exceeded its budget of {config.budget} nodes")
            hi = min(top[eid] + 1, block - 1) if config.symmetry else block - 1
            saved = top[eid]
            for v in range(hi + 1):
                tables[eid][idx] = v
                top[eid] = max(saved, v)
                branch = dict(values)
                branch[eid] = v
                if extend(t, j + 1, branch):
                    return True
            tables[eid][idx] = -1
            top[eid] = saved
            return False
        key = runner.sink_index(values)
        val = order[t][1]
        prev = seen.get(key)
        if prev is not None and prev != val:
            return False
        if prev is None:
            seen[key] = val
        if t + 1 == len(order):
            return True
        nxt = {i + 1: c for i, c in enumerate(order[t + 1][0])}
        if extend(t + 1, 0, nxt):
            return True
        if prev is None:
            del seen[key]
        return False

    try:
        start = {i + 1: c for i, c in enumerate(order[0][0])}
        ok = extend(0, 0, start)
    finally:
        sys.setrecursionlimit(limit)
    if not ok:
        return SearchResult(None, "backtrack", space, explored)
    filled = {eid: [max(v, 0) for v in tab] for eid, tab in tables.items()}
    return SearchResult(_finish(layout, net, f, filled, dict(seen)), "backtrack", space, explored)


# -- text format -------------------------------------------------------------------

def format_code(code: NetworkCode, net: Network) -> str:
    lines = [f"code n {code.n} k {code.k}"]
    for eid in net.edge_order:
        if net.edge_by_id[eid].infinite:
            lines.append(f"enc {eid} inf")
        else:
            lines.append(f"enc {eid} " + " ".join(map(str, code.encoders[eid])))
    if code.decoder is not None:
        lines.append("dec " + " ".join(map(str, code.decoder)))
    return "\n".join(lines) + "\n"


def parse_code(text: str, net: Network, f: TargetFunction, path: str = "<code>") -> NetworkCode:
    n = k = None
    enc: dict[str, tuple[int, ...]] = {}
    where: dict[str, tuple[int, list[str]]] = {}
    dec = None
    last = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        last = lineno
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()

        def ints(items):
            out = []
            for t in items:
                try:
                    out.append(int(t))
                except ValueError:
                    raise ParseError(path, lineno, t, "expected an integer") from None
            return tuple(out)

        if tok[0] == "code":
            if len(tok) != 5 or tok[1] != "n" or tok[3] != "k":
                raise ParseError(path, lineno, line, "expected 'code n <n> k <k>'")
            n, k = ints([tok[2], tok[4]])
            if n < 1 or k < 1:
                raise ParseError(path, lineno, line, "n and k must be positive")
        elif tok[0] == "enc":
            if len(tok) < 3:
                raise ParseError(path, lineno, line, "expected 'enc <edge-id> <entries>'")
            if tok[1] not in net.edge_by_id:
                raise ParseError(path, lineno, tok[1], "unknown edge")
            if tok[1] in where:
                raise ParseError(path, lineno, tok[1], "duplicate encoder")
            if tok[2:] == ["inf"]:
                if not net.edge_by_id[tok[1]].infinite:
                    raise ParseError(path, lineno, tok[1], "edge is not an infinite bundle")
                continue
            if net.edge_by_id[tok[1]].infinite:
                raise ParseError(path, lineno, tok[1], "infinite bundles carry no table; write 'inf'")
            enc[tok[1]] = ints(tok[2:])
            where[tok[1]] = (lineno, tok[2:])
        elif tok[0] == "dec":
            dec = ints(tok[1:])
            where["dec"] = (lineno, tok[1:])
        else:
            raise ParseError(path, lineno, tok[0], "unknown directive")
    if n is None:
        raise ParseError(path, last, "", "missing 'code n <n> k <k>' header")
    layout = CodeLayout(net, n, k, f.input_size, f.output_size)

    def check(key, size, bound, what):
        lineno, toks = where[key]
        if len(toks) != size:
            raise ParseError(path, lineno, key, f"{what} has {len(toks)} entries, expected {size}")
        for t in toks:
            if not 0 <= int(t) < bound:
                raise ParseError(path, lineno, t, f"{what} entry outside 0..{bound - 1}")

    for eid in layout.coded_edges:
        if eid not in where:
            raise ParseError(path, last, eid, "no encoder for edge")
        check(eid, layout.domain_size(eid), layout.edge_block, f"encoder for {eid}")
    if dec is not None:
        check("dec", layout.decoder_domain_size, f.output_size ** k, "decoder")
    return NetworkCode(n, k, f.input_size, f.output_size, enc, dec)
