"""Short subsets, the complex of short sets through n, and genetic codes.

Genetic codes follow the convention of the chamber tables: for a length vector
whose first n-1 entries are sorted ascending, the family

    Sh = {J in {1..n-1} : J + {n} short}

is closed under removing elements and under replacing an element by a smaller
one.  A gene is a maximal element for that (shifted) order, and the code lists
each gene J as the digits of J + {n} in descending order, e.g. ``<632,64>``.
Codes are always computed on the sorted vector; :func:`sorting_permutation`
gives the relabeling back to the caller's indices.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .lengths import (
    LengthVector,
    check_size,
    is_normalized,
    mask_of,
    members,
    normalize,
    require_generic,
)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def complement(mask: int, n: int) -> int:
    return ((1 << n) - 1) ^ mask


def short_family(lengths: LengthVector) -> tuple[int, ...]:
    """All short subsets of {1..n} as masks, ascending."""
    require_generic(lengths)
    n = lengths.n
    check_size(n)
    w, total = lengths.integer_weights()
    sums = [0] * (1 << n)
    out = []
    for mask in range(1, 1 << n):
        low = mask & -mask
        sums[mask] = sums[mask ^ low] + w[low.bit_length() - 1]
    for mask in range(1 << n):
        if 2 * sums[mask] < total:
            out.append(mask)
    return tuple(out)


def long_family(lengths: LengthVector) -> tuple[int, ...]:
    n = lengths.n
    return tuple(sorted(complement(m, n) for m in short_family(lengths)))


def n_is_short(lengths: LengthVector) -> bool:
    return 2 * lengths.entries[-1] < lengths.total


def _short_through_n(lengths: LengthVector) -> list[int]:
    """Masks J over {1..n-1} (including 0) with J + {n} short, ascending.

    Depth-first over increasing elements; since shortness is inherited by
    subsets, only faces are ever visited.
    """
    w, total = lengths.integer_weights()
    n = lengths.n
    budget = total - 2 * w[-1]  # J + {n} short  <=>  2 * sum(J) < budget
    if budget <= 0:
        return []
    out = []
    stack = [(0, 0, 0)]  # (mask, sum, next index)
    while stack:
        mask, s, start = stack.pop()
        out.append(mask)
        for i in range(start, n - 1):
            t = s + w[i]
            if 2 * t < budget:
                stack.append((mask | (1 << i), t, i + 1))
    out.sort()
    return out


def sh_faces(lengths: LengthVector) -> tuple[int, ...]:
    """Nonempty faces of the short complex, as masks over {1..n-1}, ascending."""
    require_generic(lengths)
    check_size(lengths.n)
    return tuple(m for m in _short_through_n(lengths) if m)


def a_vector(lengths: LengthVector) -> tuple[int, ...]:
    """Counts a_0..a_{n-2}: a_k sets J in Sh with |J| = k."""
    require_generic(lengths)
    check_size(lengths.n)
    counts = [0] * (lengths.n - 1)
    for m in _short_through_n(lengths):
        counts[popcount(m)] += 1
    return tuple(counts)


# -- shifted order -------------------------------------------------------------


def _desc(mask: int) -> list[int]:
    return members(mask)[::-1]


def shifted_leq(a: int, b: int) -> bool:
    """``a`` lies below ``b`` in the shifted order (drop elements, lower elements)."""
    da, db = _desc(a), _desc(b)
    if len(da) > len(db):
        return False
    return all(x <= y for x, y in zip(da, db))


def shifted_covers(mask: int, top: int) -> Iterator[int]:
    """Sets covering ``mask`` in the shifted order on {1..top}."""
    if not mask & 1 and top >= 1:
        yield mask | 1
    for i in members(mask):
        if i < top and not mask >> i & 1:
            yield (mask ^ (1 << (i - 1))) | (1 << i)


def shifted_down_closure(genes: Iterable[int]) -> set[int]:
    """Every set lying below some gene (the empty set included)."""
    out: set[int] = set()

    def walk(desc: Sequence[int], pos: int, ceiling: int, acc: int):
        out.add(acc)
        if pos == len(desc):
            return
        for x in range(min(desc[pos], ceiling - 1), 0, -1):
            walk(desc, pos + 1, x, acc | (1 << (x - 1)))

    for g in genes:
        d = _desc(g)
        walk(d, 0, (d[0] + 1) if d else 1, 0)
    return out


def shifted_maximal(family: Iterable[int], top: int) -> list[int]:
    fam = set(family)
    return sorted(m for m in fam if not any(c in fam for c in shifted_covers(m, top)))


# -- chamber codes ---------------------------------------------------------------


def _gene_key(mask: int):
    # larger genes first, then descending digit strings
    return (-popcount(mask), [-x for x in _desc(mask)])


@dataclass(frozen=True)
class ChamberCode:
    """Antichain of genes; each gene is a mask over {1..n-1}.

    ``genes == ()`` means {n} is long (empty chain space); ``genes == (0,)`` is
    the code ``<n>``: {n} short but no {i, n} short.
    """

    n: int
    genes: tuple[int, ...]

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("n must be at least 3")
        genes = tuple(sorted(set(self.genes), key=_gene_key))
        for g in genes:
            if g < 0 or g >> (self.n - 1):
                raise ValueError(f"gene {members(g)} is not inside 1..{self.n - 1}")
        for a in genes:
            for b in genes:
                if a != b and shifted_leq(a, b):
                    raise ValueError(f"genes {self._render(a)} and {self._render(b)} are comparable")
        object.__setattr__(self, "genes", genes)

    @property
    def empty_space(self) -> bool:
        return not self.genes

    def _render(self, gene: int) -> str:
        digits = [self.n] + _desc(gene)
        sep = "" if self.n < 10 else "."
        return sep.join(str(x) for x in digits)

    def __str__(self):
        return "⟨" + ",".join(self._render(g) for g in self.genes) + "⟩"

    def ascii(self) -> str:
        return "<" + ",".join(self._render(g) for g in self.genes) + ">"

    def to_json(self) -> list[list[int]]:
        return [[self.n] + _desc(g) for g in self.genes]

    @classmethod
    def from_json(cls, n: int, genes: Sequence[Sequence[int]]) -> "ChamberCode":
        masks = []
        for g in genes:
            g = list(g)
            if n not in g:
                raise ValueError(f"gene {g} must contain n={n}")
            masks.append(mask_of(x for x in g if x != n))
        return cls(n, tuple(masks))

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "ChamberCode":
        """Parse ``"<632,64>"``, ``"⟨641⟩"`` or ``"632,64"``.

        Digit-per-label form needs n <= 9; larger n uses dots (``10.3.1``).
        """
        body = text.strip().strip("<>⟨⟩ ")
        parts = [p for p in re.split(r"[,\s]+", body) if p]
        genes = []
        for p in parts:
            labels = [int(x) for x in p.split(".")] if "." in p else [int(c) for c in p]
            genes.append(labels)
        if n is None:
            if not genes:
                raise ValueError("cannot infer n from an empty code; pass n explicitly")
            n = max(max(g) for g in genes)
        return cls.from_json(n, genes)

    def faces(self) -> tuple[int, ...]:
        """Nonempty faces of the short complex encoded by this code (sorted labels)."""
        return tuple(sorted(m for m in shifted_down_closure(self.genes) if m))

    def a_vector(self) -> tuple[int, ...]:
        counts = [0] * (self.n - 1)
        if self.genes:
            counts[0] = 1
            for m in self.faces():
                counts[popcount(m)] += 1
        return tuple(counts)


def code_from_faces(n: int, faces: Iterable[int], n_short: bool = True) -> ChamberCode:
    """Code of a family of faces over sorted labels (must be shifted-closed)."""
    if not n_short:
        return ChamberCode(n, ())
    fam = set(faces) | {0}
    genes = shifted_maximal(fam, n - 1)
    code = ChamberCode(n, tuple(genes))
    if set(code.faces()) != fam - {0}:
        raise ValueError("face family is not closed under the shifted order")
    return code


def genetic_code(lengths: LengthVector) -> ChamberCode:
    """Genetic code of the chamber of ``lengths`` (computed after sorting)."""
    require_generic(lengths)
    check_size(lengths.n)
    srt = lengths if is_normalized(lengths) else normalize(lengths)
    fam = _short_through_n(srt)
    if not fam:
        return ChamberCode(lengths.n, ())
    genes = shifted_maximal(fam, lengths.n - 1)
    return ChamberCode(lengths.n, tuple(genes))


def relabel(mask: int, mapping: dict[int, int]) -> int:
    return mask_of(mapping[i] for i in members(mask))
