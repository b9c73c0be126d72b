"""Build doubly refined x-enumeration tables from singly refined ones and compare with the census."""

import argparse

from sixvertex import lattice, ortho


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=5)
    ap.add_argument("--x", type=int, action="append", choices=(1, 2, 3))
    args = ap.parse_args()
    bad = 0
    for x in args.x or [1, 2, 3]:
        for n in range(2, args.n_max + 1):
            big, small = lattice.x_weighted_tables(n, x), lattice.x_weighted_tables(n - 1, x)
            built = ortho.two_point_table_from_one_point(big["H1"], small["H1"])
            ok = built == big["H2"]
            bad += not ok
            print(f"x={x} n={n} {'match' if ok else 'MISMATCH'}")
            for row in built:
                print("   " + "  ".join(f"{str(v):>10}" for v in row))
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
