"""Acceptance gate: one test per criterion, exact arithmetic throughout.

Run under pytest (a PASS/FAIL line per criterion is printed in the terminal
summary) or directly with ``python tests/test_acceptance.py``.
"""

import itertools
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from netcomp.bounds import (  # noqa: E402
    CutRatio,
    enumerate_cuts,
    min_cut_A,
    min_cut_bound,
    min_cut_K,
    prop1_capacity,
    prop2_bound,
    rate_certificate,
)
from netcomp.code import (  # noqa: E402
    CodeLayout,
    NetworkCode,
    SearchConfig,
    cut_determinism_check,
    exhaustive_search,
    single_source_code,
    verify,
)
from netcomp.equivalence import count_R, count_W, partition  # noqa: E402
from netcomp.function import BUILTINS, TargetFunction, builtin  # noqa: E402
from netcomp.instances import instance, parallel_edges, two_source_tree  # noqa: E402
from netcomp.network import split_sources  # noqa: E402
from netcomp.tree import InfeasiblePlan, construct  # noqa: E402
from oracles import (  # noqa: E402
    naive_block_class_count,
    naive_classes,
    random_function,
    random_index_sets,
    random_network,
)

CASES = 200


def test_criterion_1_n1_min_cut_is_two():
    bundle = instance("n1")
    net, f = bundle.network, bundle.function
    full = min_cut_bound(net, f)
    assert full.equals(2)
    assert full.ratio.size == 2 and full.witness_count == 2
    assert full.row(("e6", "e7")).count == 2
    # every one of the 2^7 subsets was considered
    subsets = [
        c for r in range(1, 8) for c in itertools.combinations(net.edge_order, r)
        if net.separated_sources(c)
    ]
    assert len(full.per_cut_table) == len(subsets)
    pruned = min_cut_bound(net, f, irreducible_only=True)
    assert pruned.ratio == full.ratio


def test_criterion_2_prior_bounds_refuted():
    bundle = instance("n1")
    net, f = bundle.network, bundle.function
    a = min_cut_A(net, f)
    assert a.at_most(3, 2)
    c1 = a.row(("e4", "e6", "e7"))
    assert c1.count == 4 and c1.ratio.compare_rational(2, 3, 2) == 0
    k = min_cut_K(net, f)
    assert k.at_most(3, 2)
    assert net.node_cut_edges({"1", "3", "v"}) == {"e4", "e6", "e7"}
    assert ("e4", "e6", "e7") in k.optimal_cuts
    code = bundle.code
    assert verify(code, net, f).ok
    # rate k/n * log_|B| q = 2 > 3/2, in integers
    assert (code.n, code.k, code.input_size, net.edge_alphabet) == (1, 2, 2, 2)
    assert 2 * code.k > 3 * code.n


def test_criterion_3_n1_code_verifies():
    bundle = instance("n1")
    res = verify(bundle.code, bundle.network, bundle.function)
    assert res.ok and res.checked == 64 and res.counterexample is None


def test_criterion_4_prop2_is_four():
    bundle = instance("n1")
    rep = prop2_bound(bundle.network, bundle.function)
    assert rep.equals(4)
    assert rep.witness_cut == ("e4", "e5", "e6", "e7")


def test_criterion_5_n2_prime():
    n2, n2p = instance("n2"), instance("n2-prime")
    assert split_sources(n2.network) == n2p.network
    rep = min_cut_bound(n2p.network, n2p.function)
    assert rep.equals(1)
    assert rep.witness_cut == ("e2", "e4")
    bundles = {e.id for e in n2p.network.edges if e.infinite}
    assert bundles == {"1>1'", "2>2'"}
    for row in rep.per_cut_table:
        assert not bundles & set(row.cut)
    for ca in enumerate_cuts(n2p.network, node_cuts_only=True):
        assert not bundles & set(ca.cut)


def test_criterion_6_tree_achievability():
    for name in ("xor-tree", "sum-tree"):
        bundle = instance(name)
        for n, k in ((1, 1), (2, 2)):
            code = construct(bundle.network, bundle.function, n, k)
            res = verify(code, bundle.network, bundle.function)
            assert res.ok and res.checked == 4 ** k
    # double edge: 3^k > 2^(2n) refuses at v
    net, f = two_source_tree(2), builtin("arithmetic-sum", s=2, q=2)
    n, k = 1, 3
    assert not rate_certificate(3, k, n, 2, 2).satisfied
    try:
        construct(net, f, n, k)
        raise AssertionError("construction should refuse")
    except InfeasiblePlan as exc:
        assert "v" in exc.nodes
    # smallest infeasible single-edge case, whole encoder space enumerated
    single = instance("sum-tree-single")
    try:
        construct(single.network, single.function, 1, 2)
        raise AssertionError("construction should refuse")
    except InfeasiblePlan as exc:
        assert "v" in exc.nodes
    res = exhaustive_search(single.network, single.function, 1, 2, SearchConfig(method="plain"))
    assert not res.found and res.explored == res.space_size


def test_criterion_7_single_source():
    bundle = instance("parallel-mod2")
    net, f = bundle.network, bundle.function
    assert (f.q, net.edge_alphabet, f.table) == (4, 2, (0, 1, 0, 1))
    assert net == parallel_edges(2, net.name)
    assert prop1_capacity(net, f).equals(4)
    code = single_source_code(net, f, 1, 2)
    assert verify(code, net, f).ok
    assert not rate_certificate(2, 3, 1, 2, 2).satisfied
    assert not exhaustive_search(net, f, 1, 3).found


def _random_code(net, f, k, rng):
    layout = CodeLayout(net, 1, k, f.q, f.m)
    B = net.edge_alphabet
    enc = {e: tuple(rng.randrange(B) for _ in range(layout.domain_size(e))) for e in layout.coded_edges}
    dec = tuple(rng.randrange(f.m ** k) for _ in range(layout.decoder_domain_size))
    return NetworkCode(1, k, f.q, f.m, enc, dec)


def _random_cut(net, rng):
    while True:
        cut = [e for e in net.edge_order if rng.random() < 0.5]
        if cut and net.separated_sources(cut):
            return cut


def test_criterion_8_property_suites():
    rng = random.Random(20261019)
    counts = dict.fromkeys(
        ["r>=w", "monotone", "coarsen", "embed", "f-ext", "cut-determinism", "blocks", "ordering", "soundness"], 0
    )
    found_codes = 0

    for _ in range(CASES):
        net = random_network(rng)
        f = random_function(rng, net.s)
        cut = _random_cut(net, rng)
        ca = net.cut_analysis(cut)
        w, _ = count_W(f, ca.separated_sources, ca.side_sources)
        assert count_R(f, ca.separated_sources) >= w
        counts["r>=w"] += 1
        # drop edges while I_C stays put
        smaller = [e for e in cut if rng.random() < 0.5]
        if smaller and net.separated_sources(smaller) == ca.separated_sources:
            sa = net.cut_analysis(smaller)
            assert count_W(f, sa.separated_sources, sa.side_sources)[0] >= w
        counts["monotone"] += 1

    for _ in range(CASES):
        s = rng.randint(1, 4)
        f = random_function(rng, s, max_q=3 if s <= 3 else 2)
        I, J, c = random_index_sets(rng, f)
        Jp = sorted(j for j in J if rng.random() < 0.5)
        cp = tuple(v for j, v in zip(J, c) if j in Jp)
        fine, coarse = partition(f, I, Jp, cp), partition(f, I, J, c)
        for a, b in itertools.product(itertools.product(range(f.q), repeat=len(I)), repeat=2):
            if fine.class_id(a) == fine.class_id(b):
                assert coarse.class_id(a) == coarse.class_id(b)
        counts["coarsen"] += 1
        # embedding: equivalent on I stays equivalent on I' = I u J with J pinned equally
        r_I = partition(f, I)
        Ip = sorted(set(I) | set(J))
        r_Ip = partition(f, Ip)
        pos = {j: t for t, j in enumerate(Ip)}
        for a, b in itertools.product(itertools.product(range(f.q), repeat=len(I)), repeat=2):
            if r_I.class_id(a) != r_I.class_id(b):
                continue
            ap, bp = [0] * len(Ip), [0] * len(Ip)
            for j, va, vb in zip(I, a, b):
                ap[pos[j]], bp[pos[j]] = va, vb
            for j, v in zip(J, c):
                ap[pos[j]] = bp[pos[j]] = v
            assert r_Ip.class_id(ap) == r_Ip.class_id(bp)
        counts["embed"] += 1

    for _ in range(CASES):
        net = random_network(rng)
        cut = _random_cut(net, rng)
        ext = net.f_extension(cut)
        assert set(cut) <= ext and net.is_global_cut_set(ext)
        counts["f-ext"] += 1

    for _ in range(CASES):
        net = random_network(rng, max_edges=6)
        f = random_function(rng, net.s, max_q=2)
        code = _random_code(net, f, rng.randint(1, 2), rng)
        glob = [
            c for r in range(1, len(net.edges) + 1)
            for c in itertools.combinations(net.edge_order, r) if net.is_global_cut_set(c)
        ]
        for g in rng.sample(glob, min(4, len(glob))):
            assert cut_determinism_check(code, net, g)
        counts["cut-determinism"] += 1

    for _ in range(CASES):
        s = rng.randint(1, 3)
        f = random_function(rng, s, max_q=3 if s <= 2 else 2)
        I, J, c = random_index_sets(rng, f)
        k = rng.randint(1, 2)
        assert naive_block_class_count(f, I, J, c, k) == partition(f, I, J, c).class_count ** k
        counts["blocks"] += 1

    inf = CutRatio(1, 1)
    for _ in range(CASES):
        net = random_network(rng)
        f = random_function(rng, net.s)
        val = [inf if r.unbounded else r.ratio for r in
               (min_cut_bound(net, f), min_cut_K(net, f), min_cut_A(net, f))]
        assert val[0] >= val[1] >= val[2]
        counts["ordering"] += 1

    while counts["soundness"] < CASES:
        net = random_network(rng, max_sources=2, max_relays=2, max_edges=4)
        f = random_function(rng, net.s, max_q=3, max_m=3)
        n, k = rng.choice([(1, 1), (1, 2), (2, 1), (1, 3), (2, 3)])
        if f.q ** (k * net.s) > 2 ** 12:
            continue
        try:
            res = exhaustive_search(net, f, n, k, SearchConfig(budget=2 ** 16))
        except Exception as exc:  # budget refusals are skipped, not counted
            if type(exc).__name__ == "BudgetExceeded":
                continue
            raise
        counts["soundness"] += 1
        if res.found:
            found_codes += 1
            assert verify(res.code, net, f).ok
            for row in min_cut_bound(net, f).per_cut_table:
                assert row.count ** k <= net.edge_alphabet ** (n * row.size)

    assert all(v >= CASES for v in counts.values()), counts
    assert found_codes > 0


def _suite_functions(rng):
    for s in range(1, 9):
        # unary families: every q up to 16, then powers of two up to 256
        qs = list(range(2, 17)) + [32, 64, 128, 256] if s == 1 else range(2, 17)
        for q in qs:
            if q ** s > 256:
                break
            yield builtin("mod-sum", s=s, q=q)
            yield builtin("arithmetic-sum", s=s, q=q)
            yield builtin("max", s=s, q=q)
            if s == 1:
                yield builtin("identity", q=q)
    yield builtin("product-plus-mod2")
    yield builtin("constant", s=2, q=3, value=1)
    for _ in range(100):
        s = rng.randint(1, 8)
        q = rng.randint(2, max(2, int(256 ** (1 / s))))
        while q ** s > 256:
            q -= 1
        yield random_function(rng, s, q=q, max_m=5)


def test_criterion_9_signatures_match_pairwise_oracle():
    rng = random.Random(9)
    checked = 0
    for f in _suite_functions(rng):
        assert f.q ** f.s <= 256
        triples = []
        idx = range(1, f.s + 1)
        if f.s <= 3:
            for labels in itertools.product((0, 1, 2), repeat=f.s):
                I = [j for j, t in zip(idx, labels) if t == 1]
                J = [j for j, t in zip(idx, labels) if t == 2]
                if I:
                    triples.append((I, J, tuple(rng.randrange(f.q) for _ in J)))
        else:
            triples = [random_index_sets(rng, f) for _ in range(6)]
        for I, J, c in triples:
            ours = partition(f, I, J, c).classes()
            theirs = naive_classes(f, I, J, c)
            assert sorted(map(sorted, ours)) == sorted(map(sorted, theirs)), (f, I, J, c)
            checked += 1
    assert checked > 500


CRITERIA = [
    test_criterion_1_n1_min_cut_is_two,
    test_criterion_2_prior_bounds_refuted,
    test_criterion_3_n1_code_verifies,
    test_criterion_4_prop2_is_four,
    test_criterion_5_n2_prime,
    test_criterion_6_tree_achievability,
    test_criterion_7_single_source,
    test_criterion_8_property_suites,
    test_criterion_9_signatures_match_pairwise_oracle,
]


if __name__ == "__main__":
    failed = 0
    for fn in CRITERIA:
        try:
            fn()
            status = "PASS"
        except Exception as exc:  # report and keep going
            status = f"FAIL ({type(exc).__name__}: {exc})"
            failed += 1
        print(f"{status.split(' ')[0]:4}  {fn.__name__}" + (f"  {status[5:]}" if failed and status != "PASS" else ""))
    sys.exit(1 if failed else 0)
