"""Print a table of typical-dimension bounds a_tau <= ... over a grid of (r, m, n).

    python3 scripts/bound_table.py --r 1 6 --m 2 3 --n 1 2
"""

import argparse

from kolchin.bounds import Cap, typical_dim_bound


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--r", type=int, nargs=2, default=(1, 6), metavar=("LO", "HI"))
    ap.add_argument("--m", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--n", type=int, nargs=2, default=(1, 2), metavar=("LO", "HI"))
    ap.add_argument("--cap-steps", type=int, default=10**5)
    args = ap.parse_args()
    cap = Cap(steps=args.cap_steps)
    for m in args.m:
        print(f"m = {m}")
        print("  r  n  " + "  ".join(f"{'tau=' + str(t):>14}" for t in range(m)))
        for r in range(args.r[0], args.r[1] + 1):
            for n in range(args.n[0], args.n[1] + 1):
                cells = []
                for tau in range(m):
                    v = typical_dim_bound(r, m, n, tau, cap).value
                    cells.append(f"{'over cap' if v is None else v:>14}")
                print(f"{r:>3}{n:>3}  " + "  ".join(cells))
        print()


if __name__ == "__main__":
    main()
