"""Search small random instances for codes and check each find against the cut bound."""

import argparse
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from netcomp.bounds import min_cut_bound  # noqa: E402
from netcomp.code import SearchConfig, exhaustive_search, verify  # noqa: E402
from netcomp.errors import BudgetExceeded  # noqa: E402
from oracles import random_function, random_network  # noqa: E402


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cases", type=int, default=200)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--budget", type=int, default=20_000)
    args = ap.parse_args(argv)

    rng = random.Random(args.seed)
    found = refused = skipped = 0
    for _ in range(args.cases):
        net = random_network(rng, max_sources=2, max_edges=5)
        f = random_function(rng, net.s, max_q=2, max_m=3)
        k = rng.randint(1, 2)
        bound = min_cut_bound(net, f)
        try:
            res = exhaustive_search(net, f, 1, k, SearchConfig(budget=args.budget))
        except BudgetExceeded:
            skipped += 1
            continue
        if res.found:
            assert verify(res.code, net, f).ok
            # rate k (with |B| = q = 2) never exceeds the bound
            assert bound.unbounded or bound.compare_rational(k) >= 0, (net, f, k)
            found += 1
        else:
            refused += 1
    print(f"codes found {found}, none exist {refused}, over budget {skipped}; no bound violated")


if __name__ == "__main__":
    main()
