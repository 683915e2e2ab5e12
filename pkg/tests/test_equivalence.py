import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from netcomp.equivalence import block_equivalent, count_R, count_W, count_W_for_cut, partition
from netcomp.errors import InvalidInput
from netcomp.function import builtin
from netcomp.instances import network_n1
from netcomp.network import Edge, Network
from oracles import functions, naive_block_class_count, naive_classes, naive_equivalent, naive_W

PPM = builtin("product-plus-mod2")
SUM3 = builtin("arithmetic-sum", s=3, q=2)
N1 = network_n1()


def test_c0_partition():
    p = partition(PPM, {3}, {1, 2}, (1, 1))
    assert p.class_count == 2
    assert p.class_id((0,)) != p.class_id((1,))


def test_r_of_c1_is_four_singletons():
    p = partition(PPM, {1, 3})
    assert p.classes() == [[(0, 0)], [(0, 1)], [(1, 0)], [(1, 1)]]


def test_sum_pairs():
    p = partition(SUM3, {1, 2})
    assert p.classes() == [[(0, 0)], [(0, 1), (1, 0)], [(1, 1)]]
    assert p.representatives == ((0, 0), (0, 1), (1, 1))


def test_count_w_for_cut():
    assert count_W_for_cut(PPM, N1, {"e6", "e7"})[0] == 2
    assert count_W_for_cut(PPM, N1, {"e4", "e5", "e6", "e7"})[0] == len(PPM.image)
    single = Network(["1", "rho"], [Edge("e", "1", "rho")], ["1"], "rho")
    assert count_W_for_cut(builtin("identity", q=2), single, {"e"})[0] == 2


def test_count_w_reports_first_maximiser():
    # x1*x2 + x3 with I={1}, J={2}: c=0 collapses x1, c=1 separates it
    w, c = count_W(PPM, {1}, {2})
    assert (w, c) == (2, (1,))


def test_count_r_examples():
    assert count_R(PPM, {1, 3}) == 4
    assert count_R(PPM, {3}) == 2
    assert count_R(builtin("identity", q=4), {1}) == 4


def test_block_equivalent_examples():
    assert not block_equivalent(PPM, {3}, {1, 2}, (1, 1), [(0,)], [(1,)])
    assert block_equivalent(SUM3, {1, 2}, (), (), [(0, 1), (0, 0)], [(1, 0), (0, 0)])


@given(functions(), st.data())
def test_block_equivalent_reflexive(f, data):
    I = data.draw(st.sets(st.integers(1, f.s), min_size=1))
    k = data.draw(st.integers(1, 3))
    a = data.draw(st.lists(st.tuples(*[st.integers(0, f.q - 1)] * len(I)), min_size=k, max_size=k))
    assert block_equivalent(f, I, (), (), a, a)


@pytest.mark.parametrize(
    "I, J, c",
    [((), (), ()), ((1,), (1,), (0,)), ((4,), (), ()), ((1,), (2,), ()), ((1,), (2,), (5,))],
)
def test_bad_arguments(I, J, c):
    with pytest.raises(InvalidInput):
        partition(PPM, I, J, c)


@st.composite
def index_sets(draw, f):
    idx = list(range(1, f.s + 1))
    I = draw(st.sets(st.sampled_from(idx), min_size=1))
    J = draw(st.sets(st.sampled_from([j for j in idx if j not in I]))) if len(I) < f.s else set()
    c = tuple(draw(st.integers(0, f.q - 1)) for _ in J)
    return sorted(I), sorted(J), c


@settings(max_examples=250)
@given(st.data())
def test_partition_matches_pairwise_oracle(data):
    f = data.draw(functions(max_s=4, max_q=3))
    I, J, c = data.draw(index_sets(f))
    p = partition(f, I, J, c)
    assert sorted(map(sorted, p.classes())) == sorted(map(sorted, naive_classes(f, I, J, c)))
    a = data.draw(st.tuples(*[st.integers(0, f.q - 1)] * len(I)))
    b = data.draw(st.tuples(*[st.integers(0, f.q - 1)] * len(I)))
    assert (p.class_id(a) == p.class_id(b)) == naive_equivalent(f, I, J, c, a, b)


@settings(max_examples=120)
@given(st.data())
def test_representatives_are_lexicographic_minima(data):
    f = data.draw(functions())
    I, J, c = data.draw(index_sets(f))
    p = partition(f, I, J, c)
    for cid, members in enumerate(p.classes()):
        assert p.representatives[cid] == min(members)
    firsts = [p.class_of.index(cid) for cid in range(p.class_count)]
    assert firsts == sorted(firsts)


@settings(max_examples=200)
@given(st.data())
def test_w_is_max_over_contexts(data):
    f = data.draw(functions(max_s=3))
    I, J, _ = data.draw(index_sets(f))
    w, c = count_W(f, I, J)
    assert w == naive_W(f, I, J)
    assert partition(f, I, J, c).class_count == w


@settings(max_examples=200)
@given(st.data())
def test_block_class_count_is_power(data):
    f = data.draw(functions(max_s=3, max_q=2))
    I, J, c = data.draw(index_sets(f))
    k = data.draw(st.integers(1, 2))
    w = partition(f, I, J, c).class_count
    assert naive_block_class_count(f, I, J, c, k) == w ** k


def test_all_assignments_get_a_class():
    p = partition(SUM3, {1, 2, 3})
    assert len(p.class_of) == 8
    for a in itertools.product((0, 1), repeat=3):
        assert p.representatives[p.class_id(a)] is not None
