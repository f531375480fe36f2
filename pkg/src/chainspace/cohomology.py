"""Cohomological bookkeeping for chain spaces, all from closed-form counts.

Nothing here builds a cell complex: Betti ranks come from the a-vector, the
degree-(d-1) subring is the face ring Z2[X]/(X_i^2, non-faces) of the short
complex, and Morse data are read off short/long subsets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

from .complex import IsoCertificate, SimplicialComplex, are_isomorphic
from .lengths import (
    LengthVector,
    dimension,
    is_dominated,
    mask_of,
    members,
    require_generic,
)
from .subsets import a_vector, complement, long_family, n_is_short, popcount, sh_faces, short_family

MorseTag = Literal["g_on_V", "f_prime_on_Z_prime"]


def _check_d(d: int) -> None:
    if d < 3:
        raise ValueError(
            f"d={d} is not supported: Betti numbers and the ring are only determined here for d >= 3"
        )


@dataclass(frozen=True)
class BettiTable:
    n: int
    d: int
    dim: int
    ranks: tuple[int, ...] | None
    dominated_valid: bool

    def to_json(self) -> dict:
        out = {"d": self.d, "dim": self.dim, "dominated_valid": self.dominated_valid}
        if self.ranks is not None:
            out["ranks"] = list(self.ranks)
        return out


def betti_from_a(a: tuple[int, ...], n: int, d: int) -> tuple[int, ...]:
    """Integral ranks in degrees 0..dim from the a-vector (dominated case)."""
    dim = dimension(n, d)
    ranks = [0] * (dim + 1)
    a = list(a) + [0] * max(0, n - len(a))
    for s in range(n - 2):  # k = s(d-1), s = 0..n-3
        k = s * (d - 1)
        if 0 <= k <= dim:
            ranks[k] += a[s]
    for s in range(n - 1):  # k = s(d-1) - 1, s = 0..n-2
        k = s * (d - 1) - 1
        if 0 <= k <= dim:
            ranks[k] += a[n - s - 2]
    return tuple(ranks)


def betti_numbers(lengths: LengthVector, d: int) -> BettiTable:
    _check_d(d)
    require_generic(lengths)
    n = lengths.n
    dim = dimension(n, d)
    if not is_dominated(lengths):
        return BettiTable(n, d, dim, None, False)
    return BettiTable(n, d, dim, betti_from_a(a_vector(lengths), n, d), True)


def euler_characteristic(table: BettiTable) -> int:
    if not table.dominated_valid or table.ranks is None:
        raise ValueError("Euler characteristic needs a valid (dominated) Betti table")
    return sum((-1) ** k * r for k, r in enumerate(table.ranks))


# -- face ring over Z2 -----------------------------------------------------------


@dataclass(frozen=True)
class GradedRing:
    """Z2 algebra with basis X_J for J a face or empty; X_J X_K = X_{J+K} or 0.

    ``basis`` is sorted by (size, mask); ``grade_unit`` is the degree of X_i.
    ``zero=True`` is the zero ring (empty chain space): no basis at all.
    """

    n: int
    grade_unit: int
    basis: tuple[int, ...]
    zero: bool = False
    _index: frozenset = field(repr=False, compare=False, default=frozenset())

    def __post_init__(self):
        if self.zero and self.basis:
            raise ValueError("the zero ring has no basis")
        basis = () if self.zero else tuple(sorted(set(self.basis) | {0}, key=lambda m: (popcount(m), m)))
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "_index", frozenset(basis))

    @classmethod
    def of_complex(cls, n: int, cx: SimplicialComplex, grade_unit: int) -> "GradedRing":
        return cls(n, grade_unit, tuple(mask_of(f) for f in cx.faces()))

    def degree(self, mask: int) -> int:
        return self.grade_unit * popcount(mask)

    def multiply(self, a: int, b: int) -> int | None:
        """Product of basis monomials; None stands for zero."""
        if a not in self._index or b not in self._index:
            raise KeyError("not a basis monomial")
        if a & b:
            return None
        c = a | b
        return c if c in self._index else None

    def graded_dims(self) -> dict[int, int]:
        dims: dict[int, int] = {}
        for m in self.basis:
            k = self.degree(m)
            dims[k] = dims.get(k, 0) + 1
        return dims

    def product_table(self) -> list[tuple[int, int, int]]:
        """Nonzero products (J, K, J+K) with J < K, both nonempty, as masks."""
        out = []
        faces = [m for m in self.basis if m]
        for i, a in enumerate(faces):
            for b in faces[i + 1 :]:
                if not a & b and (a | b) in self._index:
                    out.append((a, b, a | b))
        return out

    def complex(self) -> SimplicialComplex:
        return SimplicialComplex.from_masks(m for m in self.basis if m)

    def monomial(self, mask: int) -> str:
        return "1" if mask == 0 else "X_" + ".".join(str(i) for i in members(mask))

    def to_json(self) -> dict:
        return {
            "grade_unit": self.grade_unit,
            "zero": self.zero,
            "graded_dims": {str(k): v for k, v in sorted(self.graded_dims().items())},
            "basis": [members(m) for m in self.basis],
            "products": [[members(a), members(b), members(c)] for a, b, c in self.product_table()],
        }


def ring_presentation(lengths: LengthVector, d: int) -> GradedRing:
    _check_d(d)
    require_generic(lengths)
    if not is_dominated(lengths):
        raise ValueError("the face-ring presentation holds only for dominated length vectors")
    if not n_is_short(lengths):
        return GradedRing(lengths.n, d - 1, (), zero=True)
    return GradedRing(lengths.n, d - 1, sh_faces(lengths))


def _ring_invariants(r: GradedRing) -> tuple:
    # number of nonzero products by degree pair: a cheap label-free summary
    prods: dict[tuple[int, int], int] = {}
    for a, b, _ in r.product_table():
        key = tuple(sorted((popcount(a), popcount(b))))
        prods[key] = prods.get(key, 0) + 1
    return (tuple(sorted(r.graded_dims().items())), tuple(sorted(prods.items())))


def rings_isomorphic(
    r1: GradedRing, r2: GradedRing, cx1: SimplicialComplex, cx2: SimplicialComplex
) -> IsoCertificate:
    """Graded-ring isomorphism of face rings, decided through the complexes.

    A graded isomorphism of these rings is induced by a simplicial
    isomorphism, so we test that and then check the induced monomial
    substitution against both product tables.  The bijection in the returned
    certificate maps monomial masks of ``r1`` to those of ``r2``.
    """
    if r1.grade_unit != r2.grade_unit:
        raise ValueError("rings have different generator degrees")
    if r1.zero or r2.zero:
        if r1.zero and r2.zero:
            return IsoCertificate(True, bijection=())
        return IsoCertificate(False, invariant="zero ring", values=(r1.zero, r2.zero))
    if set(r1.basis) != {mask_of(f) for f in cx1.faces()} | {0}:
        raise ValueError("first ring was not built from the first complex")
    if set(r2.basis) != {mask_of(f) for f in cx2.faces()} | {0}:
        raise ValueError("second ring was not built from the second complex")
    i1, i2 = _ring_invariants(r1), _ring_invariants(r2)
    if i1 != i2:
        name = "graded dimensions" if i1[0] != i2[0] else "product counts"
        k = 0 if i1[0] != i2[0] else 1
        return IsoCertificate(False, invariant=name, values=(i1[k], i2[k]))
    cert = are_isomorphic(cx1, cx2)
    if not cert.isomorphic:
        return cert
    vmap = cert.mapping

    def image(m: int) -> int:
        return mask_of(vmap[i] for i in members(m))

    mono = {m: image(m) for m in r1.basis}
    if sorted(mono.values()) != sorted(r2.basis):
        raise AssertionError("induced substitution is not a basis bijection")
    for a, b, c in r1.product_table():
        if r2.multiply(mono[a], mono[b]) != mono[c]:
            raise AssertionError("induced substitution does not respect products")
    return IsoCertificate(True, bijection=tuple(sorted(mono.items())))


# -- Morse data ------------------------------------------------------------------


@dataclass(frozen=True)
class CriticalPoint:
    subset: int
    index: int
    signs: str  # rho_J(i) = +/- e_1 for i = 1..n

    def to_json(self) -> dict:
        return {"J": members(self.subset), "index": self.index, "signs": self.signs}


@dataclass(frozen=True)
class MorseInventory:
    function_tag: str
    d: int
    critical_points: tuple[CriticalPoint, ...]

    def index_counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self.critical_points:
            out[p.index] = out.get(p.index, 0) + 1
        return dict(sorted(out.items()))

    def to_json(self, full: bool = True) -> dict:
        out = {
            "function": self.function_tag,
            "d": self.d,
            "count": len(self.critical_points),
            "index_counts": {str(k): v for k, v in self.index_counts().items()},
        }
        if full:
            out["critical_points"] = [p.to_json() for p in self.critical_points]
        return out


def critical_signs(mask: int, n: int) -> str:
    """Signs s_i with rho_J(i) = s_i e_1: kappa_J(i) if n in J, else -kappa_J(i)."""
    n_in = mask >> (n - 1) & 1
    out = []
    for i in range(n):
        kappa = -1 if mask >> i & 1 else 1
        s = kappa if n_in else -kappa
        out.append("+" if s > 0 else "-")
    return "".join(out)


def morse_inventory(lengths: LengthVector, d: int, which: MorseTag = "g_on_V") -> MorseInventory:
    require_generic(lengths)
    if d < 1:
        raise ValueError("d must be positive")
    n = lengths.n
    top = 1 << (n - 1)
    if which == "g_on_V":
        sets = [m for m in short_family(lengths) if m & top]
        pts = [CriticalPoint(m, (d - 1) * (popcount(m) - 1), critical_signs(m, n)) for m in sets]
    elif which == "f_prime_on_Z_prime":
        sets = list(long_family(lengths))
        pts = [CriticalPoint(m, (d - 1) * (n - popcount(m)), critical_signs(m, n)) for m in sets]
    else:
        raise ValueError(f"unknown Morse function tag {which!r}")
    return MorseInventory(which, d, tuple(pts))


# -- mod 2 intersection pairing ------------------------------------------------


def intersection_pairing(n: int, J: int, K: int) -> int:
    """Mod-2 intersection number of the classes W_J, W_K with n in both."""
    top = 1 << (n - 1)
    if J >> n or K >> n:
        raise ValueError(f"subsets must lie in 1..{n}")
    if not (J & top and K & top):
        raise ValueError("both subsets must contain n")
    if popcount(J) + popcount(K) != n + 1:
        raise ValueError("|J| + |K| must equal n + 1")
    return 1 if J & K == top else 0


def pairing_basis(n: int, size: int) -> list[int]:
    """Masks J containing n with |J| = size, ascending."""
    top = 1 << (n - 1)
    return [m | top for m in range(top) if popcount(m) == size - 1]


def pairing_matrix(n: int, k: int) -> tuple[list[int], list[int], list[list[int]]]:
    """Rows J (n in J, |J| = n-k), columns K (n in K, |K| = k+1), entries mod 2."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if not 0 <= k <= n - 1:
        raise ValueError(f"k must lie in 0..{n - 1}")
    rows = pairing_basis(n, n - k)
    cols = pairing_basis(n, k + 1)
    return rows, cols, [[intersection_pairing(n, J, K) for K in cols] for J in rows]


def is_permutation_matrix(mat: list[list[int]]) -> bool:
    if not mat:
        return True
    if any(len(r) != len(mat) for r in mat):
        return False
    return all(sum(r) == 1 for r in mat) and all(sum(c) == 1 for c in zip(*mat))


def dual_partner(n: int, J: int) -> int:
    """The column matched to row J: complement of J with n put back."""
    return complement(J, n) | (1 << (n - 1))
