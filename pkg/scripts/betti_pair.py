"""Two chain spaces with equal Betti numbers that are not diffeomorphic.

Prints codes, short complexes, Betti ranks and the separating invariant for
d = 3..6.
"""

import argparse

from chainspace.cohomology import betti_numbers
from chainspace.lengths import LengthVector
from chainspace.realization import equivalent, short_complex
from chainspace.subsets import genetic_code


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("first", nargs="?", default="1,1,1,2,3,3")
    ap.add_argument("second", nargs="?", default="1/4,1,1,1,2,2")
    ap.add_argument("--d", type=int, nargs="+", default=[3, 4, 5, 6])
    args = ap.parse_args()

    vecs = [LengthVector.parse(args.first), LengthVector.parse(args.second)]
    for lv in vecs:
        cx = short_complex(lv)
        print(f"{lv}  code {genetic_code(lv)}  facets {sorted(sorted(f) for f in cx.facets)}")
    for d in args.d:
        b1, b2 = (betti_numbers(lv, d).ranks for lv in vecs)
        cmp = equivalent(vecs[0], vecs[1], d)
        print(f"d={d}: betti {b1} vs {b2}; {cmp.verdict} ({cmp.certificate.describe()})")


if __name__ == "__main__":
    main()
