"""Desk-scale computations on F2 + X F4[X], the Laurent fragment over F2, and
the (Z, Q) witnesses."""
import argparse
import json

from factorlab.axb import (atomic_classes, axb_fragment, axb_nonbfd_witness, check_ex_main,
                           check_ex_splits, check_fragment_invariants, check_laurent_transfer,
                           compact_uniqueness, zq_factorization_valid, zq_star_check)
from factorlab.modules import regular_module


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--deg", type=int, default=4)
    ap.add_argument("--laurent-deg", type=int, default=3)
    ap.add_argument("--max-k", type=int, default=10)
    args = ap.parse_args()

    F = axb_fragment(2, 4, args.deg)
    R = F.ring
    print(f"F2 + X F4[X], degree <= {args.deg}: {R.size} elements")
    print("invariants:", check_fragment_invariants(F))
    res = check_ex_splits((2, 4), args.deg)
    print("conditions:", {k: res[k] for k in ("condition_1", "condition_2", "condition_3")},
          "S splits R:", res["S_splits_R"])
    unique = all(compact_uniqueness(F, f)[0] for f in regular_module(R).nonzero)
    print("compact factorizations unique up to associates:", unique)
    X2 = F.encode([0, 0, 1])
    classes = atomic_classes(F, X2)
    print("X^2 atomic classes:", [[[R.labels[s] for s in f.scalars] for f in c] for c in classes])
    main_res = check_ex_main(2, 4, args.deg)
    w = main_res["non_unique_witness"]
    print("flags:", main_res["flags"], "unit index:", main_res["unit_index"],
          "non-unique witness:", R.labels[w] if w is not None else None)

    lt = check_laurent_transfer(2, args.laurent_deg)
    print(f"Laurent over F2, degree <= {args.laurent_deg}: {len(lt['mismatches'])} mismatches; "
          f"flags agree: {lt['flags_agree']}")

    zq = check_ex_splits(("Z", "Q"))
    print("(Z, Q) conditions:", json.dumps({k: v for k, v in zq.items() if k != "pair"}))
    ok = [zq_factorization_valid(axb_nonbfd_witness(k)) for k in range(1, args.max_k + 1)]
    print(f"X = 2^k (X/2^k) verified for k = 1..{args.max_k}:", all(ok))
    print("star check r=2, t=X, x=X:", zq_star_check((2,), (0, 1), (0, 1)))


if __name__ == "__main__":
    main()
