"""Run the two-sided theorem harness over every built-in algebra and tabulate the outcome."""
import argparse
import time

from semigraph.algebra import BUILTIN_NAMES, builtin_algebra
from semigraph.witness import test_theorem


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--universe", default="1,2", help="comma-separated universe for union.intersect")
    args = ap.parse_args()

    universe = [int(x) if x.isdigit() else x for x in args.universe.split(",") if x]
    print(f"{'algebra':<16} {'conditions':<16} {'valid':>11} {'lemma':>6} {'sec':>6}")
    for name in BUILTIN_NAMES:
        alg = builtin_algebra(name, universe if name == "union.intersect" else None)
        t0 = time.perf_counter()
        v = test_theorem(alg, args.trials, args.seed)
        dt = time.perf_counter() - t0
        cex = "-" if v.counterexample is None else str(v.counterexample.lemma)
        status = "hold" if v.conditions.all_hold() else v.conditions.first_failure()[0]
        print(f"{name:<16} {status:<16} {v.forward_trials:>5}/{v.trials:<5} {cex:>6} {dt:6.2f}")


if __name__ == "__main__":
    main()
