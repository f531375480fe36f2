"""Length vectors with exact rational entries.

Subsets of ``{1..n}`` are passed around as integer bitmasks: bit ``i`` is set
when element ``i + 1`` belongs to the subset.
"""

from __future__ import annotations

import enum
import math
import os
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

DEFAULT_MAX_N = 24


class Classification(enum.Enum):
    SHORT = "short"
    LONG = "long"
    DEGENERATE = "degenerate"


class NonGenericError(ValueError):
    """Raised when an operation needs a generic length vector."""

    def __init__(self, lengths: "LengthVector", subsets: Sequence[int]):
        self.lengths = lengths
        self.subsets = tuple(subsets)
        shown = ", ".join(format_subset(m) for m in self.subsets[:4])
        super().__init__(f"length vector {lengths} is not generic; balanced subset(s): {shown}")


def max_n() -> int:
    """Upper bound on n for 2^n enumerations (env ``CHAINS_MAX_N`` overrides)."""
    raw = os.environ.get("CHAINS_MAX_N")
    if raw is None:
        return DEFAULT_MAX_N
    value = int(raw)
    if value > DEFAULT_MAX_N:
        warnings.warn(
            f"CHAINS_MAX_N={value} exceeds {DEFAULT_MAX_N}; subset enumeration costs 2^n",
            RuntimeWarning,
            stacklevel=2,
        )
    return value


def parse_rational(text) -> Fraction:
    """Parse ``"3"``, ``"1/4"`` or ``"0.25"`` exactly. Floats go through their repr."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise TypeError("booleans are not lengths")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        return Fraction(repr(text))
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse {text!r} as a rational number") from exc


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_subset(mask: int) -> str:
    return "{" + ",".join(str(i) for i in members(mask)) + "}"


def members(mask: int) -> list[int]:
    """1-based elements of a bitmask, ascending."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for i in elements:
        if i < 1:
            raise ValueError(f"subset elements are 1-based, got {i}")
        m |= 1 << (i - 1)
    return m


@dataclass(frozen=True)
class LengthVector:
    entries: tuple[Fraction, ...]
    total: Fraction = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        entries = tuple(parse_rational(x) for x in self.entries)
        if len(entries) < 3:
            raise ValueError(f"a length vector needs n >= 3 entries, got {len(entries)}")
        if any(x <= 0 for x in entries):
            raise ValueError("length vector entries must be strictly positive")
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "total", sum(entries, Fraction(0)))

    @classmethod
    def parse(cls, text: str) -> "LengthVector":
        """Build from a comma separated list such as ``"1/4,1,1,1,2,2"``."""
        parts = [p for p in text.replace(" ", "").split(",") if p]
        return cls(tuple(parts))

    @property
    def n(self) -> int:
        return len(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __str__(self):
        return "(" + ",".join(format_rational(x) for x in self.entries) + ")"

    def as_strings(self) -> list[str]:
        return [format_rational(x) for x in self.entries]

    def scaled(self, c) -> "LengthVector":
        c = parse_rational(c)
        if c <= 0:
            raise ValueError("scale factor must be positive")
        return LengthVector(tuple(c * x for x in self.entries))

    def subset_sum(self, mask: int) -> Fraction:
        if mask >> self.n:
            raise IndexError(f"subset {format_subset(mask)} is not contained in 1..{self.n}")
        return sum((self.entries[i - 1] for i in members(mask)), Fraction(0))

    def integer_weights(self) -> tuple[list[int], int]:
        """Entries scaled to integers by the lcm of denominators, and that total."""
        den = reduce(lambda a, b: a * b // math.gcd(a, b), (x.denominator for x in self.entries), 1)
        w = [int(x * den) for x in self.entries]
        return w, sum(w)


def classify_subset(lengths: LengthVector, mask: int) -> Classification:
    if mask < 0:
        raise IndexError("negative subset mask")
    inside = lengths.subset_sum(mask)
    outside = lengths.total - inside
    if inside < outside:
        return Classification.SHORT
    if inside > outside:
        return Classification.LONG
    return Classification.DEGENERATE


def _subset_sums(weights: Sequence[int]) -> set[int]:
    sums = {0}
    for x in weights:
        sums |= {s + x for s in sums}
    return sums


def is_generic(lengths: LengthVector) -> bool:
    """True when no subset sum equals half the total.

    Meet-in-the-middle over the integer rescaling: O(2^(n/2)) sums per side.
    """
    w, total = lengths.integer_weights()
    if total % 2:
        return True
    half = total // 2
    left = _subset_sums(w[: len(w) // 2])
    return not any(half - r in left for r in _subset_sums(w[len(w) // 2 :]))


def degenerate_subsets(lengths: LengthVector, limit: int | None = None) -> list[int]:
    """Masks J (with n not in J, one per complementary pair) balancing their complement."""
    w, total = lengths.integer_weights()
    if total % 2:
        return []
    n = lengths.n
    target = total // 2
    out: list[int] = []
    # enumerate subsets of 1..n-1 in mask order; J and its complement pair up via n
    for mask in range(1 << (n - 1)):
        s = 0
        m, i = mask, 0
        while m:
            if m & 1:
                s += w[i]
            m >>= 1
            i += 1
        if s == target:
            out.append(mask)
            if limit is not None and len(out) >= limit:
                break
    return out


def require_generic(lengths: LengthVector) -> None:
    if not is_generic(lengths):
        raise NonGenericError(lengths, degenerate_subsets(lengths, limit=4))


def is_dominated(lengths: LengthVector) -> bool:
    last = lengths.entries[-1]
    return all(last >= x for x in lengths.entries[:-1])


def sorting_permutation(lengths: LengthVector) -> tuple[int, ...]:
    """``perm[k]`` is the original (1-based) label placed at sorted position k+1.

    Stable, so ties keep their original relative order; n stays last.
    """
    n = lengths.n
    order = sorted(range(n - 1), key=lambda i: lengths.entries[i])
    return tuple(i + 1 for i in order) + (n,)


def normalize(lengths: LengthVector) -> LengthVector:
    head = sorted(lengths.entries[:-1])
    return LengthVector(tuple(head) + (lengths.entries[-1],))


def is_normalized(lengths: LengthVector) -> bool:
    head = lengths.entries[:-1]
    return all(a <= b for a, b in zip(head, head[1:]))


def dimension(n: int, d: int) -> int:
    """Dimension of the chain space for generic lengths."""
    if n < 3:
        raise ValueError(f"n must be at least 3, got {n}")
    if d < 2:
        raise ValueError(f"d must be at least 2, got {d}")
    return (n - 2) * (d - 1) - 1


def check_size(n: int, limit: int | None = None) -> None:
    limit = max_n() if limit is None else limit
    if n > limit:
        raise ValueError(f"n={n} exceeds the enumeration cap {limit} (raise with --max-n / CHAINS_MAX_N)")
