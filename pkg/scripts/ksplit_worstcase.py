"""Solver cuts versus exact minimum on the block instances that force (k-1)n cuts."""
import argparse

from consensus_halving.additive import solve_k_splitting
from consensus_halving.core import Ratios, cut_count
from consensus_halving.generators import gen_ksplit_worstcase
from consensus_halving.oracles import min_cuts_oracle


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-n", type=int, default=2)
    p.add_argument("--max-k", type=int, default=3)
    a = p.parse_args()
    print(f"{'n':>3} {'k':>3} {'b':>3} {'solver':>7} {'minimum':>8} {'bound':>6}")
    for n in range(1, a.max_n + 1):
        for k in range(2, a.max_k + 1):
            ratios = Ratios.uniform(k)
            gen = gen_ksplit_worstcase(n, ratios)
            solver = cut_count(solve_k_splitting(gen.instance, ratios))
            best = min_cuts_oracle(gen.instance, ratios, measure="cuts").cuts
            print(f"{n:>3} {k:>3} {gen.metadata['b']:>3} {solver:>7} {best:>8} {(k - 1) * n:>6}")


if __name__ == "__main__":
    main()
