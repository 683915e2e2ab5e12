import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from netcomp.bounds import enumerate_cuts, min_cut_bound, min_cut_K
from netcomp.code import layout_for, synthesize_decoder, verify
from netcomp.equivalence import count_R, count_W
from netcomp.errors import InvalidInput
from netcomp.function import builtin
from netcomp.instances import instance, network_n1, network_n2_prime, two_source_tree
from netcomp.network import Edge, Network
from netcomp.tree import (
    InfeasiblePlan,
    check_representatives,
    construct,
    is_multi_edge_tree,
    plan,
    tree_capacity_report,
)
from oracles import functions

XOR = builtin("mod-sum", s=2, q=2)
SUM2 = builtin("arithmetic-sum", s=2, q=2)


def chain(parallel=2):
    edges = [Edge("a", "1", "v")] + [Edge(f"b{i}", "v", "rho") for i in range(parallel)]
    return Network(["1", "v", "rho"], edges, ["1"], "rho")


@st.composite
def trees(draw, max_sources=3, max_relays=2):
    """Random multi-edge in-trees with sources at the leaves or relays."""
    s = draw(st.integers(1, max_sources))
    r = draw(st.integers(0, max_relays))
    sources = [str(i + 1) for i in range(s)]
    relays = [f"v{j}" for j in range(r)]
    nodes = sources + relays + ["rho"]
    edges = []
    for i, u in enumerate(nodes[:-1]):
        later = [w for w in nodes[i + 1:] if w not in sources]
        parent = draw(st.sampled_from(later))
        for _ in range(draw(st.integers(1, 2))):
            edges.append(Edge(f"e{len(edges) + 1}", u, parent))
    return Network(nodes, edges, sources, "rho", 2, "tree")


class TestShape:
    def test_chain(self):
        assert is_multi_edge_tree(chain())

    def test_n1_and_n2_prime_are_not_trees(self):
        assert not is_multi_edge_tree(network_n1())
        assert not is_multi_edge_tree(network_n2_prime())

    def test_invalid_network_is_not_a_tree(self):
        assert not is_multi_edge_tree(Network(["a"], [], ["a"], "a"))


class TestPlan:
    def test_xor(self):
        tp = plan(two_source_tree(1), XOR, 1, 1)
        assert tp.nodes["v"].class_count == 2
        assert tp.nodes["v"].classes.classes() == [[(0, 0), (1, 1)], [(0, 1), (1, 0)]]

    def test_sum_double_edge(self):
        tp = plan(two_source_tree(2), SUM2, 1, 1)
        assert tp.nodes["v"].class_count == 3

    def test_sum_single_edge_infeasible(self):
        with pytest.raises(InfeasiblePlan) as info:
            plan(two_source_tree(1), SUM2, 1, 1)
        assert info.value.nodes == ["v"]
        assert info.value.failures == [("v", 3, 1, 2, 1)]

    def test_reports_every_failing_node(self):
        with pytest.raises(InfeasiblePlan) as info:
            plan(two_source_tree(1), SUM2, 1, 2)
        assert set(info.value.nodes) == {"1", "2", "v"}

    def test_rejects_non_tree(self):
        with pytest.raises(InvalidInput):
            plan(network_n1(), builtin("product-plus-mod2"), 1, 1)


class TestConstruct:
    def test_xor(self):
        net = two_source_tree(1)
        code = construct(net, XOR, 1, 1)
        assert verify(code, net, XOR).ok

    def test_sum_double_edge(self):
        net = two_source_tree(2)
        code = construct(net, SUM2, 1, 1, debug=True)
        assert verify(code, net, SUM2).ok

    @settings(max_examples=60)
    @given(functions(s=1, max_q=4, max_m=4))
    def test_chain_single_source(self, f):
        net = chain(2)
        # |image| <= |B|^n with n = 2
        code = construct(net, f, 2, 1)
        assert verify(code, net, f).ok
        classes = plan(net, f, 2, 1).nodes["v"].classes
        for a in range(f.q):
            for b in range(f.q):
                assert (classes.class_id((a,)) == classes.class_id((b,))) == (f(a) == f(b))

    def test_decoder_matches_synthesis_on_reachable_blocks(self):
        net = two_source_tree(2)
        code = construct(net, SUM2, 2, 2)
        synth = synthesize_decoder(code.with_decoder(None), net, SUM2)
        layout = layout_for(code, net)
        reached = set()
        from netcomp.code import _Runner, _all_inputs, _columns

        runner = _Runner(layout, code)
        for x in _all_inputs(2, 2, 2):
            reached.add(runner.sink_index(runner.run(_columns(x, 2, 2))))
        assert all(code.decoder[i] == synth.decoder[i] for i in reached)


class TestReport:
    def test_xor(self):
        rep = tree_capacity_report(two_source_tree(1), XOR, 1, 1)
        assert rep.bound.equals(1) and rep.feasible and rep.verified

    def test_sum_double_edge(self):
        rep = tree_capacity_report(two_source_tree(2), SUM2, 2, 2)
        assert rep.bound.equals(1)
        assert rep.feasible and rep.verified

    def test_infeasible_reported(self):
        rep = tree_capacity_report(two_source_tree(1), SUM2, 1, 2)
        assert rep.feasible is False and "v" in rep.failure

    def test_n1_rejected(self):
        with pytest.raises(InvalidInput):
            tree_capacity_report(network_n1(), builtin("product-plus-mod2"))


@settings(max_examples=200)
@given(trees(), st.data())
def test_w_equals_r_on_tree_node_cuts(net, data):
    f = data.draw(functions(s=net.s, max_q=3))
    for ca in enumerate_cuts(net, node_cuts_only=True):
        w, _ = count_W(f, ca.separated_sources, ca.side_sources)
        assert w == count_R(f, ca.separated_sources)
    mc, k = min_cut_bound(net, f), min_cut_K(net, f)
    assert mc.unbounded == k.unbounded
    if not mc.unbounded:
        assert mc.ratio == k.ratio


@settings(max_examples=120)
@given(trees(max_sources=3, max_relays=2), st.data())
def test_construction_verifies_when_feasible(net, data):
    f = data.draw(functions(s=net.s, max_q=2, max_m=3))
    n, k = data.draw(st.sampled_from([(1, 1), (2, 1), (2, 2), (1, 2)]))
    try:
        tp = plan(net, f, n, k)
    except InfeasiblePlan:
        return
    code = construct(net, f, n, k)
    check_representatives(tp)
    assert verify(code, net, f).ok


def test_instances_from_registry():
    for name in ("xor-tree", "sum-tree"):
        bundle = instance(name)
        rep = tree_capacity_report(bundle.network, bundle.function, 1, 1)
        assert rep.verified
