"""Distribution of d_TBR / d_MP over every distinct pair of trees on n taxa.

    python3 scripts/ratio_sweep.py --n 6
"""
import argparse
import itertools
from collections import Counter

from dmpkernel.core import all_trees
from dmpkernel.harness import taxon_names
from dmpkernel.newick import write_newick
from dmpkernel.oracle import exact_dmp, exact_dtbr


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=6, help="number of taxa (exhaustive; 7 takes a while)")
    args = ap.parse_args()

    trees = list(all_trees(taxon_names(args.n)))
    hist: Counter = Counter()
    extreme = None
    for t1, t2 in itertools.combinations(trees, 2):
        dmp, dtbr = exact_dmp(t1, t2)[0], exact_dtbr(t1, t2, cap=args.n)[0]
        hist[(dmp, dtbr)] += 1
        if extreme is None or dtbr / dmp > extreme[0]:
            extreme = (dtbr / dmp, t1, t2)

    print(f"{len(trees)} trees, {sum(hist.values())} distinct pairs")
    print("d_MP  d_TBR  pairs")
    for (dmp, dtbr), count in sorted(hist.items()):
        print(f"{dmp:>4}  {dtbr:>5}  {count:>5}")
    if extreme:
        ratio, t1, t2 = extreme
        print(f"largest d_TBR/d_MP = {ratio:g}: {write_newick(t1)} vs {write_newick(t2)}")


if __name__ == "__main__":
    main()
