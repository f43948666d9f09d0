"""Distribution of the exact minimum number of cut items on random instances."""
import argparse
import json

from consensus_halving.cli import run_stats


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--m", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--denom", type=int, default=10**6)
    p.add_argument("--threads", type=int, default=1)
    a = p.parse_args()
    report = run_stats("min-cuts", a.trials, a.n, a.m, 2, a.seed, a.denom, a.threads)
    print(json.dumps(report, indent=2))


if __name__ == "__main__":
    main()
