"""Run every axiom against the reference models and print violation counts."""

import argparse
import time

from stationarity.axioms import AxiomId, reference_models, run_trials
from stationarity.streams import StateSpace


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--states", type=int, default=3)
    args = ap.parse_args()
    zoo = reference_models(StateSpace.of(args.states))
    axioms = list(AxiomId)
    print("model".ljust(14) + "".join(a.value.rjust(7) for a in axioms))
    t0 = time.perf_counter()
    for name, model in zoo.items():
        counts = [run_trials(model, a, args.trials, args.seed, stop_at_first=False).counts["violated"]
                  for a in axioms]
        print(name.ljust(14) + "".join(str(c).rjust(7) for c in counts))
    print(f"violations per {args.trials} trials; {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
