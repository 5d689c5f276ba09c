"""List a staircase sequence with its volume and terminal order.

    python3 scripts/staircase_listing.py 3 3
"""

import argparse

from kolchin.bounds import C
from kolchin.mu import build_mu, terminal_order, vol_mu


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("r0", type=int)
    ap.add_argument("m", type=int)
    args = ap.parse_args()
    seq = build_mu(args.r0, args.m)
    for i, xi in enumerate(seq.elems, 1):
        print(f"{i:>6}  {xi}")
    last = terminal_order(seq)
    print(f"length {len(seq)}, volume {vol_mu(seq)}, terminal order {last}, C(r0, m, 1) = {C(args.r0, args.m, 1)}")


if __name__ == "__main__":
    main()
