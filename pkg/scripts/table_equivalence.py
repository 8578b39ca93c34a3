"""Classify every identity-respecting (⊕, ⊗) pair on a 3-element carrier.

Prints how many tables fall to each lemma construction, how many satisfy all
three conditions, and any table where the two sides of the equivalence disagree.
"""
import argparse
import time
from collections import Counter

from semigraph.witness import classify_tables


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--list-compliant", action="store_true")
    args = ap.parse_args()

    t0 = time.perf_counter()
    verdicts = classify_tables(args.trials, args.seed)
    dt = time.perf_counter() - t0
    by_lemma = Counter("none" if v.counterexample is None else f"lemma {v.counterexample.lemma}"
                       for v in verdicts)
    for k in sorted(by_lemma):
        print(f"{k:<8} {by_lemma[k]:>5}")
    wrong = [v.algebra for v in verdicts if not v.equivalent]
    print(f"tables {len(verdicts)}, disagreements {len(wrong)}, {dt:.1f}s")
    for name in wrong:
        print("  disagreement:", name)
    if args.list_compliant:
        for v in verdicts:
            if v.counterexample is None:
                print("  compliant:", v.algebra)


if __name__ == "__main__":
    main()
