"""Brute-force cross-checks that avoid the optimized code paths.

* :func:`brute_sh_faces` classifies every one of the 2^n subsets directly.
* :func:`grid_chambers` collects the short complexes of every integer length
  vector on a grid.  An odd total can never be split evenly, so every grid
  point with odd total is generic; no LP is involved.  :func:`stable_grid_chambers`
  grows the grid until the collected set stops changing.
"""

from __future__ import annotations

from itertools import combinations_with_replacement

from .lengths import Classification, LengthVector, classify_subset


def brute_sh_faces(lengths: LengthVector) -> frozenset[int]:
    n = lengths.n
    top = 1 << (n - 1)
    out = set()
    for mask in range(1 << n):
        cls = classify_subset(lengths, mask)
        if cls is Classification.DEGENERATE:
            raise ValueError(f"{lengths} is not generic")
        if mask & top and mask != top and cls is Classification.SHORT:
            out.add(mask ^ top)
    return frozenset(out)


def _faces_int(w: list[int], total: int) -> tuple[bool, frozenset[int]]:
    n = len(w)
    top = 1 << (n - 1)
    sums = [0] * (1 << n)
    faces = set()
    for mask in range(1, 1 << n):
        low = mask & -mask
        sums[mask] = sums[mask ^ low] + w[low.bit_length() - 1]
    n_short = 2 * w[-1] < total
    for m in range(1, top):
        if 2 * sums[m | top] < total:
            faces.add(m)
    return n_short, frozenset(faces)


def grid_chambers(n: int, bound: int, dominated_only: bool = True) -> set[tuple[bool, frozenset[int]]]:
    """(n short?, faces) for sorted integer vectors with entries in 1..bound.

    The last entry ranges up to (n-1)*bound + 1 so the empty chamber is hit.
    """
    out = set()
    for head in combinations_with_replacement(range(1, bound + 1), n - 1):
        s = sum(head)
        lo = head[-1] if dominated_only else 1
        for last in range(lo, (n - 1) * bound + 2):
            if (s + last) % 2 == 0:
                continue
            w = list(head) + [last]
            out.add(_faces_int(w, s + last))
    return out


def stable_grid_chambers(n: int, dominated_only: bool = True, start: int = 3, patience: int = 2):
    """Grow the grid bound until ``patience`` consecutive bounds add nothing."""
    bound = start
    found = grid_chambers(n, bound, dominated_only)
    quiet = 0
    while quiet < patience:
        bound += 1
        more = grid_chambers(n, bound, dominated_only)
        quiet = quiet + 1 if more == found else 0
        found = more
    return found, bound


def random_lengths(rng, n: int, dominated: bool = True, max_den: int = 6) -> LengthVector:
    """Random generic rational length vector (resampled until generic).

    ``rng`` is a :class:`random.Random`.  When ``dominated`` the last entry is
    at least the largest other entry and occasionally exceeds the sum of the
    others, so empty chain spaces occur too.
    """
    from fractions import Fraction

    from .lengths import is_generic

    while True:
        head = [Fraction(rng.randint(1, 12), rng.randint(1, max_den)) for _ in range(n - 1)]
        if dominated:
            lo, hi = max(head), sum(head)
            t = Fraction(rng.randint(0, 60), 60)
            last = lo + t * (hi - lo) * Fraction(rng.choice([1, 1, 1, 6]), 5)
        else:
            last = Fraction(rng.randint(1, 12), rng.randint(1, max_den))
        lv = LengthVector(tuple(head) + (last,))
        if is_generic(lv):
            return lv
