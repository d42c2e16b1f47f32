"""Reduce random pairs, build a kernel witness and report its certificate.

    python3 scripts/kernel_demo.py --n 1200 --pairs 3
"""
import argparse
import random
import time

from dmpkernel.harness import InstanceSpec, default_seed, generate_instance
from dmpkernel.kernel import DEFAULT_PARAMS, kernel_witness
from dmpkernel.parsimony import ps
from dmpkernel.reduction import reduce


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=1200)
    ap.add_argument("--pairs", type=int, default=3)
    ap.add_argument("--seed", type=int, default=default_seed())
    args = ap.parse_args()

    rng = random.Random(args.seed)
    print("pair  |X'|  k  PS(T1)  PS(T2)  distance  seconds")
    for i in range(args.pairs):
        t1, t2 = generate_instance(InstanceSpec(args.n, "random", rng.randrange(2**32)))
        start = time.perf_counter()
        r1, r2, _ = reduce(t1, t2)
        k = r1.n // DEFAULT_PARAMS.alpha
        chi = kernel_witness(r1, r2, k)
        p1, p2 = ps(r1, chi), ps(r2, chi)
        print(f"{i:>4}  {r1.n:>4}  {k}  {p1:>6}  {p2:>6}  {abs(p1 - p2):>8}  {time.perf_counter() - start:>7.2f}")


if __name__ == "__main__":
    main()
