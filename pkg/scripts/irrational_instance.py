"""Three-item monotone instance whose only halvings put an irrational share in parts."""
import argparse

from consensus_halving.monotonic import solve_table1_instance


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--digits", type=int, default=15)
    a = p.parse_args()
    res = solve_table1_instance()
    lo, hi = res.bracket
    print(f"x        = {res.decimal(a.digits)}")
    print(f"bracket  = [{float(lo):.15f}, {float(hi):.15f}]")
    print(f"4x^2+29x-13 = {float(4 * res.x**2 + 29 * res.x - 13):.3e}")
    for i, r in enumerate(res.residuals):
        print(f"agent {i} residual = {float(r):.3e}")


if __name__ == "__main__":
    main()
