"""Smallest norm of an element with two factorization lengths, per order.

Shows how far the witness search has to go for non-half-factorial orders;
the curated list plus any orders given as d,f pairs on the command line.
"""

import argparse

from hfquad.checker import theorem_verdict
from hfquad.oracle import hf_witness_search
from hfquad.order import make_order

CURATED = [(-3, 2), (5, 2), (5, 3), (5, 6), (-1, 1), (-5, 1), (-7, 2), (-1, 2), (5, 4), (5, 8), (-23, 1), (-5, 3)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("orders", nargs="*", help="extra orders as d,f")
    ap.add_argument("--norm-bound", type=int, default=10**4)
    args = ap.parse_args()

    todo = CURATED + [tuple(map(int, s.split(","))) for s in args.orders]
    print(f"{'order':<12} {'theorem':>8}  first witness (norm, lengths)")
    for d, f in todo:
        o = make_order(d, f)
        hf = theorem_verdict(o).overall
        r = hf_witness_search(o, args.norm_bound)
        found = f"{r.witness}  ({abs(r.witness.norm())}, {sorted(r.lengths)})" if r.found else f"none up to {args.norm_bound}"
        print(f"{str(o):<12} {'HF' if hf else 'non-HF':>8}  {found}")


if __name__ == "__main__":
    main()
