"""How often one agent's k-splitting is found by the single-cut greedy packing."""
import argparse
import json

from consensus_halving.cli import run_stats


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--m", type=int, default=1000)
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--denom", type=int, default=10**6)
    p.add_argument("--threads", type=int, default=1)
    a = p.parse_args()
    report = run_stats("greedy-one-cut", a.trials, 1, a.m, a.k, a.seed, a.denom, a.threads)
    print(json.dumps(report, indent=2))


if __name__ == "__main__":
    main()
