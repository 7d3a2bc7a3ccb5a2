"""Search the catalog for property separations and negative controls.

Each predicate's result is a bounded-exhaustive statement, printed with its
bounds.  Negative controls must come back empty.
"""
import argparse
import sys

from factorlab.hunt import NEGATIVE_CONTROLS, HuntSpec, hunt

EXPLORATORY = (
    "HFM && !FFM",
    "FFM && !HFM",
    "atomic && !BFM",
    "semi_factorable && !factorable && S_meets_ZM",
    "semi_factorable && !factorable && !S_meets_ZM",
    "BFM && !BFM'",                          # S-BFM without S'-BFM
    "BFM && loc_BFM && !BFM'",
    "HFM && loc_HFM && !HFM' && !S_is_units",
    "FFM && loc_FFM && !FFM'",
    "UFM && loc_UFM && !UFM'",
    "splits && !S_is_units && !S_is_R",
)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-ring", type=int, default=8)
    ap.add_argument("--max-module", type=int, default=8)
    ap.add_argument("--show", type=int, default=2, help="witnesses to print per predicate")
    args = ap.parse_args()

    failed = False
    for label, preds in (("negative control", NEGATIVE_CONTROLS), ("exploratory", EXPLORATORY)):
        for p in preds:
            res = hunt(HuntSpec(p, args.max_ring, args.max_module))
            print(f"[{label}] {p}: {res.statement()}")
            for w in res.witnesses[: args.show]:
                print(f"    {w['desc']}")
            if label == "negative control" and res.witnesses:
                failed = True
    return 3 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
