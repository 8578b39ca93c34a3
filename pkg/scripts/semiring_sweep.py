"""Correlate two fields of a table under all seven numeric semirings, unit and reweighted."""
import argparse
from pathlib import Path

from semigraph.cli import DEMO_WEIGHTS, semiring_sweep
from semigraph.ingest import load_demo, read_tsv


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("table", nargs="?", type=Path, help="TSV file (default: bundled demo)")
    ap.add_argument("--out-field", default="Genre")
    ap.add_argument("--in-field", default="Writer")
    ap.add_argument("--weight", action="append", default=[], metavar="COL=VAL")
    args = ap.parse_args()

    src = read_tsv(args.table) if args.table else load_demo()
    weights = dict(w.split("=", 1) for w in args.weight) or DEMO_WEIGHTS
    for label, w in (("unit weights", {}), (f"weights {weights}", weights)):
        groups = semiring_sweep(src, args.out_field, args.in_field, w)
        print(f"== {label}: {len(groups)} distinct tables ==")
        for g in groups:
            print(" = ".join(g["semirings"]))
            print(g["text"])
            print()


if __name__ == "__main__":
    main()
