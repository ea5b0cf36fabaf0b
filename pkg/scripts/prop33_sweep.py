"""Local profiles of Z + p^k O_K for non-split p and k up to --kmax.

Prints alpha, the atom valuations and whether the local order is
half-factorial, and counts violations of "valuations within {1,2} => alpha <= 4".

    python scripts/prop33_sweep.py --d-range=-30:30 --primes 2,3 --kmax 5
"""

import argparse

from hfquad.field import is_squarefree, make_field
from hfquad.ideals import Splitting, splitting_type
from hfquad.local import local_half_factorial, local_profile
from hfquad.order import make_order


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--d-range", default="-30:30")
    ap.add_argument("--primes", default="2,3")
    ap.add_argument("--kmax", type=int, default=5)
    args = ap.parse_args()

    lo, hi = map(int, args.d_range.split(":"))
    primes = [int(p) for p in args.primes.split(",")]
    violations = 0
    print(f"{'d':>4} {'p':>2} {'k':>2} {'variant':>9} {'alpha':>5}  valuations        local_hf")
    for d in range(lo, hi + 1):
        if d in (0, 1) or not is_squarefree(d):
            continue
        K = make_field(d)
        for p in primes:
            spl = splitting_type(K, p)
            if spl.variant is Splitting.SPLIT:
                continue
            for k in range(1, args.kmax + 1):
                pr = local_profile(make_order(d, p**k), p, cap=None)
                vals = sorted(pr.atom_valuations)
                if pr.atom_valuations <= {1, 2} and pr.alpha > 4:
                    violations += 1
                print(f"{d:>4} {p:>2} {k:>2} {spl.variant.value:>9} {pr.alpha:>5}  {str(vals):<16} {local_half_factorial(pr)}")
    print(f"violations: {violations}")


if __name__ == "__main__":
    main()
