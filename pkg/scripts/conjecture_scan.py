"""Look for half-factorial orders contained in a non-half-factorial order
(O of conductor f inside O' of conductor f' | f).
    python scripts/conjecture_scan.py --d-range=-20:20 --f-max 30
"""

import argparse

from hfquad.checker import conjecture_scan, theorem_verdict
from hfquad.field import is_squarefree
from hfquad.order import make_order


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--d-range", default="-20:20")
    ap.add_argument("--f-max", type=int, default=30)
    args = ap.parse_args()

    lo, hi = map(int, args.d_range.split(":"))
    ds = [d for d in range(lo, hi + 1) if d not in (0, 1) and is_squarefree(d)]
    orders = [make_order(d, f) for d in ds for f in range(1, args.f_max + 1)]
    hf = [o for o in orders if theorem_verdict(o).overall]
    pairs = conjecture_scan(orders)
    print(f"{len(orders)} orders, {len(hf)} half-factorial")
    for o in hf:
        print(f"  {o}")
    print(f"{len(pairs)} half-factorial orders with a non-half-factorial overorder")
    for a, b in pairs:
        print(f"  {a} inside {b}")


if __name__ == "__main__":
    main()
