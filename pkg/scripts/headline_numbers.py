"""Print the headline quantities for every bundled instance."""

from netcomp.bounds import exact_fraction, min_cut_A, min_cut_bound, min_cut_K, prop1_capacity, prop2_bound
from netcomp.code import exhaustive_search, verify
from netcomp.instances import INSTANCE_NAMES, instance
from netcomp.network import split_sources
from netcomp.tree import tree_capacity_report


def fmt(rep, q):
    if rep.unbounded:
        return "inf"
    frac = exact_fraction(rep.ratio, q)
    if frac is None:
        return f"{rep.value:.6f}"
    num, den = frac
    return str(num) if den == 1 else f"{num}/{den} ({rep.value:.6f})"


def main():
    for name in INSTANCE_NAMES:
        b = instance(name)
        net, f = b.network, b.function
        if name == "n2":
            split = split_sources(net)
            print(f"{name}: sources have in-edges; split form has {len(split.edges)} edges "
                  f"(was {len(net.edges)}), see n2-prime")
            continue
        print(f"{name}: s={net.s} q={f.q} |B|={net.edge_alphabet}")
        for label, fn in (("min-cut", min_cut_bound), ("min-cut-A", min_cut_A),
                          ("min-cut-K", min_cut_K), ("prop2", prop2_bound)):
            rep = fn(net, f)
            print(f"  {label:10s} {fmt(rep, f.q):>20s}  witness {{{','.join(rep.witness_cut or ())}}}")
        if net.s == 1:
            print(f"  {'prop1':10s} {fmt(prop1_capacity(net, f), f.q):>20s}")
        if b.code is not None:
            res = verify(b.code, net, f)
            print(f"  bundled ({b.code.n},{b.code.k}) code: {res.checked} inputs, ok={res.ok}")
        if name.endswith("tree") or name == "sum-tree-single":
            for n, k in ((1, 1), (1, 2), (2, 2)):
                rep = tree_capacity_report(net, f, n, k)
                status = "verified" if rep.verified else f"infeasible ({rep.failure})"
                print(f"  tree ({n},{k}): {status}")
    single = instance("sum-tree-single")
    res = exhaustive_search(single.network, single.function, 1, 2)
    print(f"sum-tree-single (1,2) search: found={res.found} explored={res.explored}")


if __name__ == "__main__":
    main()
