"""Value the hedging acts under symmetric capacities v(A) = v(Ac) = v."""

import argparse

import numpy as np

from stationarity.evaluate import prefer
from stationarity.scenarios import example_cdeu, hedging_scenario


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--steps", type=int, default=9)
    args = ap.parse_args()
    sc = hedging_scenario()
    print(f"{'v':>6} {'V(f_hat)':>10} {'V(g_hat)':>10}  relation")
    for v in np.linspace(0.1, 0.9, args.steps):
        r = prefer(example_cdeu(float(v)), sc.f_hat, sc.g_hat)
        print(f"{v:6.3f} {r.values[0]:10.4f} {r.values[1]:10.4f}  {r.relation}")


if __name__ == "__main__":
    main()
