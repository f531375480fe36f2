"""Count chambers by n, with and without the dominance restriction.

Optionally cross-checks each count against the integer-grid oracle.
"""

import argparse
import time

from chainspace.oracle import stable_grid_chambers
from chainspace.realization import enumerate_chambers


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=7)
    ap.add_argument("--oracle-up-to", type=int, default=5, help="grid-check counts for n up to this")
    args = ap.parse_args()

    print(f"{'n':>2} {'dominated':>10} {'all':>6} {'oracle':>7} {'sec':>6}")
    for n in range(4, args.max_n + 1):
        t0 = time.perf_counter()
        dom = enumerate_chambers(n, dominated_only=True, up_to_isomorphism=False, max_n=args.max_n)
        every = enumerate_chambers(n, dominated_only=False, up_to_isomorphism=False, max_n=args.max_n)
        check = "-"
        if n <= args.oracle_up_to:
            ok = all(
                {(not c.empty_space, frozenset(c.faces())) for c in codes} == stable_grid_chambers(n, flag)[0]
                for codes, flag in ((dom, True), (every, False))
            )
            check = "ok" if ok else "MISMATCH"
        print(f"{n:>2} {len(dom):>10} {len(every):>6} {check:>7} {time.perf_counter() - t0:6.2f}")


if __name__ == "__main__":
    main()
