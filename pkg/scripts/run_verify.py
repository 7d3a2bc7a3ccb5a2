"""Run the theorem checks over the catalog and write an NDJSON report.

    python3 scripts/run_verify.py --max-ring 8 --max-module 8 --out reports/verify_8.ndjson
"""
import argparse
import logging
import sys
import time
from pathlib import Path

from factorlab.config import RunConfig
from factorlab.report import canonical_json
from factorlab.verify import run_verify, selected


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-ring", type=int, default=8)
    ap.add_argument("--max-module", type=int, default=8)
    ap.add_argument("--deg", type=int, default=4)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--sample", type=int)
    ap.add_argument("--theorems", default="all")
    ap.add_argument("--checkpoint")
    ap.add_argument("--out", default="reports/verify.ndjson")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(message)s")

    cfg = RunConfig(max_ring=args.max_ring, max_module=args.max_module, deg=args.deg,
                    workers=args.workers, seed=args.seed, sample=args.sample,
                    theorems=tuple(args.theorems.split(",")), out=args.out,
                    checkpoint=args.checkpoint)
    out = Path(cfg.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    t0 = time.perf_counter()

    def progress(done, total):
        if done % 100 == 0 or done == total:
            logging.info("%d/%d instances", done, total)

    with out.open("w") as fh:
        summary = run_verify(cfg, sink=fh, progress=progress)
        rec = summary.to_json(selected(cfg.theorems))
        fh.write(canonical_json(rec) + "\n")
    print(summary.table())
    for w in rec["warnings"]:
        print("WARNING", w)
    print(f"{summary.instances} instances, {rec['violations']} violations, "
          f"{time.perf_counter() - t0:.1f}s -> {out}")
    return 3 if summary.violations else 0


if __name__ == "__main__":
    sys.exit(main())
