"""Census over a (d, f) grid: all three characterizations side by side.

    python scripts/run_census.py --d-range=-30:30 --f-range=2:12 --out census.csv
"""

import argparse
import json
import time

from hfquad.cli import _header, format_report, run_census


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--d-range", default="-30:30")
    ap.add_argument("--f-range", default="2:12")
    ap.add_argument("--oracle-bound", type=int, default=0)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--format", choices=["csv", "json"], default="csv")
    ap.add_argument("--out", default="census.csv")
    args = ap.parse_args()

    lo, hi = map(int, args.d_range.split(":"))
    flo, fhi = map(int, args.f_range.split(":"))
    t0 = time.perf_counter()
    rows, skipped = run_census(range(lo, hi + 1), range(flo, fhi + 1), threads=args.threads, oracle_bound=args.oracle_bound)
    elapsed = time.perf_counter() - t0

    summary = {
        "orders": len(rows),
        "half_factorial": sum(r.verdict_theorem for r in rows),
        "skipped_d": len(skipped),
        "agreement_failures": sum(bool(r.agreement_failures()) for r in rows),
        "inconclusive": sum(r.oracle_result == "inconclusive" for r in rows),
        "seconds": round(elapsed, 2),
    }
    with open(args.out, "w") as fh:
        fh.write(format_report(_header("census", vars(args)), rows, summary, args.format))
    print(json.dumps(summary))
    for r in rows:
        if r.verdict_theorem:
            print(f"  half-factorial: d={r.d} f={r.f}  unit_index={r.unit_index}")


if __name__ == "__main__":
    main()
