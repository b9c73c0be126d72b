"""Watch the inhomogeneous two-point table converge to the homogeneous one as the spread shrinks."""

import argparse
import math

from mpmath import mp

from sixvertex import homogeneous as hom
from sixvertex import inhomogeneous as inh
from sixvertex.params import InhomParams, WeightParams
from sixvertex.scalar import precision


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--lambda", dest="lam", default="1.1")
    ap.add_argument("--eta", default="0.35")
    ap.add_argument("--precision", type=int, default=768)
    args = ap.parse_args()
    with precision(args.precision):
        base = WeightParams.of(args.lam, args.eta)
        ref = hom.H2_hom_table(args.n, base)
        prev = None
        for k in range(2, 8):
            delta = f"1e-{k}"
            p = InhomParams.homogeneous_perturbation(args.n, base.lam, base.eta, delta)
            got = inh.H2_inhom_table(p)
            err = max(abs(a - b) for ra, rb in zip(got, ref) for a, b in zip(ra, rb))
            rate = "" if prev is None else f"  order {math.log10(float(prev / err)):.3f}"
            print(f"delta={delta}  max dev={mp.nstr(err, 5)}{rate}")
            prev = err
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
