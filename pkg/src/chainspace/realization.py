"""Realizing short complexes by length vectors, enumerating chambers, and
comparing chain spaces.

Realizability is an open polyhedral cone condition.  We maximize a common
slack ``delta`` over all strict inequalities with ``sum(l) <= 1`` and call the
target realizable iff the optimum is positive; the optimal point (rescaled to
total 1) is the witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .cohomology import BettiTable, GradedRing, betti_numbers, rings_isomorphic
from .complex import IsoCertificate, SimplicialComplex, are_isomorphic, canonical_form
from .lengths import LengthVector, is_dominated, is_generic, mask_of, members
from .lp import maximize
from .subsets import (
    ChamberCode,
    code_from_faces,
    genetic_code,
    n_is_short,
    popcount,
    sh_faces,
)

ENUMERATE_MAX_N = 7


@dataclass(frozen=True)
class RealizationProblem:
    """Target short complex on {1..n-1}.

    ``n_short=False`` asks for the empty chain space ({n} long, code ``<>``);
    with ``n_short=True`` and no facets the target is the code ``<n>``.
    ``ordered`` adds l_1 <= ... <= l_{n-1}, used when the target comes from
    a genetic code so the witness reproduces that code verbatim.
    """

    n: int
    target: SimplicialComplex
    require_dominated: bool = True
    n_short: bool = True
    ordered: bool = False

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("n must be at least 3")
        bad = [v for v in self.target.vertices if not 1 <= v <= self.n - 1]
        if bad:
            raise ValueError(f"target vertices {bad} are outside 1..{self.n - 1}")
        if not self.n_short and self.target.facets:
            raise ValueError("an empty chain space has no short complex")

    @classmethod
    def from_code(cls, code: ChamberCode, require_dominated: bool = True) -> "RealizationProblem":
        return cls(
            code.n,
            SimplicialComplex.from_masks(code.faces()),
            require_dominated=require_dominated,
            n_short=not code.empty_space,
            ordered=True,
        )

    @classmethod
    def from_facets(cls, n: int, facets: Iterable[Iterable[int]], require_dominated: bool = True):
        return cls(n, SimplicialComplex.from_faces(facets), require_dominated=require_dominated)

    def face_masks(self) -> set[int]:
        return {mask_of(f) for f in self.target.faces()}


@dataclass(frozen=True)
class RealizationResult:
    feasible: bool
    witness: LengthVector | None = None
    slack: Fraction | None = None
    problem: RealizationProblem | None = field(default=None, repr=False, compare=False)

    def integer_witness(self) -> LengthVector | None:
        if self.witness is None:
            return None
        w, _ = self.witness.integer_weights()
        from math import gcd
        from functools import reduce

        g = reduce(gcd, w)
        return LengthVector(tuple(x // g for x in w))


def minimal_non_faces(n: int, faces: set[int]) -> list[int]:
    """Minimal subsets of {1..n-1} (as masks) that are not in ``faces`` (empty set is a face)."""
    faces = set(faces) | {0}
    out = set()
    for f in faces:
        for i in range(n - 1):
            bit = 1 << i
            if f & bit:
                continue
            k = f | bit
            if k in faces or k in out:
                continue
            if all((k ^ (1 << j)) in faces for j in range(n - 1) if k >> j & 1):
                out.add(k)
    return sorted(out)


class _Cone:
    """Rows r with the strict condition r . l > 0 (plus l_i > 0 and optional weak rows)."""

    def __init__(self, n: int, dominated: bool, ordered: bool):
        self.n = n
        self.strict: list[tuple[int, ...]] = []
        self.weak: list[tuple[int, ...]] = []
        for i in range(n):
            self.strict.append(tuple(1 if j == i else 0 for j in range(n)))
        if dominated:
            for i in range(n - 1):
                self.weak.append(tuple(1 if j == n - 1 else (-1 if j == i else 0) for j in range(n)))
        if ordered:
            for i in range(n - 2):
                self.weak.append(tuple(1 if j == i + 1 else (-1 if j == i else 0) for j in range(n)))

    def copy(self) -> "_Cone":
        c = _Cone.__new__(_Cone)
        c.n, c.strict, c.weak = self.n, list(self.strict), list(self.weak)
        return c

    def short(self, mask: int):
        """Require the subset ``mask`` (over 1..n) to be short."""
        self.strict.append(tuple(-1 if mask >> j & 1 else 1 for j in range(self.n)))

    def long(self, mask: int):
        self.strict.append(tuple(1 if mask >> j & 1 else -1 for j in range(self.n)))

    def solve(self) -> tuple[Fraction, tuple[Fraction, ...]]:
        n = self.n
        A, b = [], []
        for r in self.strict:  # -r.l + delta <= 0
            A.append([-x for x in r] + [1])
            b.append(0)
        for r in self.weak:  # -r.l <= 0
            A.append([-x for x in r] + [0])
            b.append(0)
        A.append([1] * n + [0])
        b.append(1)
        sol = maximize([0] * n + [1], A, b)
        x = sol.x[:n]
        total = sum(x, Fraction(0))
        if sol.value <= 0 or total <= 0:
            return Fraction(0), ()
        return sol.value / total, tuple(v / total for v in x)


def _cone_for(p: RealizationProblem) -> _Cone:
    n = p.n
    top = 1 << (n - 1)
    cone = _Cone(n, p.require_dominated, p.ordered)
    if not p.n_short:
        cone.long(top)
        return cone
    faces = p.face_masks()
    facets = [mask_of(f) for f in p.target.facets] or [0]
    for f in facets:
        cone.short(f | top)
    for k in minimal_non_faces(n, faces):
        cone.long(k | top)
    return cone


def _verify(p: RealizationProblem, witness: LengthVector) -> None:
    if not is_generic(witness):
        raise AssertionError(f"witness {witness} is not generic")
    if p.require_dominated and not is_dominated(witness):
        raise AssertionError(f"witness {witness} is not dominated")
    if n_is_short(witness) != p.n_short:
        raise AssertionError("witness gets the class of {n} wrong")
    if set(sh_faces(witness)) != p.face_masks():
        raise AssertionError(f"witness {witness} does not reproduce the target complex")


def realize(p: RealizationProblem) -> RealizationResult:
    slack, x = _cone_for(p).solve()
    if slack <= 0:
        return RealizationResult(False, problem=p)
    witness = LengthVector(x)
    _verify(p, witness)
    return RealizationResult(True, witness, slack, p)


# -- chamber enumeration ----------------------------------------------------------


def _shifted_predecessors(mask: int, n: int) -> list[int]:
    out = []
    for i in members(mask):
        out.append(mask ^ (1 << (i - 1)))
        if i > 1 and not mask >> (i - 2) & 1:
            out.append(mask ^ (1 << (i - 1)) ^ (1 << (i - 2)))
    return out


def _strictly_short(x: Sequence[Fraction], mask: int) -> int:
    """+1 if ``mask`` is short under x, -1 if long, 0 if balanced."""
    inside = sum((x[j] for j in range(len(x)) if mask >> j & 1), Fraction(0))
    outside = sum(x, Fraction(0)) - inside
    return (inside < outside) - (inside > outside)


def _search_sorted_chambers(n: int, dominated: bool) -> list[frozenset]:
    """Face sets of all chambers with l_1 <= ... <= l_{n-1} and {n} short.

    Elements of the shifted order are decided in a linear extension; a
    decision forced by an earlier non-face costs nothing, and at each branch
    the current interior witness settles one side, so at most one LP runs
    per branching node.
    """
    top = 1 << (n - 1)
    elems = sorted(range(1, top), key=lambda m: (popcount(m), sum(members(m)), m))
    results: list[frozenset] = []
    root = _Cone(n, dominated, ordered=True)
    root.short(top)
    slack, w = root.solve()
    if slack <= 0:
        return results

    def rec(pos: int, cone: _Cone, witness, faces: set[int], nonfaces: set[int]):
        while pos < len(elems):
            k = elems[pos]
            if any(q in nonfaces for q in _shifted_predecessors(k, n)):
                nonfaces.add(k)
                pos += 1
                continue
            break
        if pos == len(elems):
            results.append(frozenset(faces))
            return
        k = elems[pos]
        side = _strictly_short(witness, k | top)
        branches = []
        for face in (True, False):
            c = cone.copy()
            (c.short if face else c.long)(k | top)
            if (side > 0 and face) or (side < 0 and not face):
                branches.append((face, c, witness))
            else:
                s, x = c.solve()
                if s > 0:
                    branches.append((face, c, x))
        for face, c, x in branches:
            if face:
                rec(pos + 1, c, x, faces | {k}, set(nonfaces))
            else:
                rec(pos + 1, c, x, set(faces), nonfaces | {k})

    rec(0, root, w, set(), set())
    return results


def enumerate_chambers(
    n: int,
    dominated_only: bool = True,
    up_to_isomorphism: bool = True,
    max_n: int = ENUMERATE_MAX_N,
) -> list[ChamberCode]:
    """All realizable genetic codes for n, each re-verified by :func:`realize`.

    With ``up_to_isomorphism`` codes whose short complexes are isomorphic are
    merged (the first in sorted order is kept).
    """
    if not 4 <= n <= max_n:
        raise ValueError(f"chamber enumeration supports 4 <= n <= {max_n}, got n={n}")
    codes = [ChamberCode(n, ())]
    for faces in _search_sorted_chambers(n, dominated_only):
        codes.append(code_from_faces(n, faces))
    codes.sort(key=lambda c: (c.a_vector(), c.to_json()))
    for c in codes:
        res = realize(RealizationProblem.from_code(c, require_dominated=dominated_only))
        if not res.feasible or genetic_code(res.witness) != c:
            raise AssertionError(f"enumerated code {c} failed its realization round trip")
    if not up_to_isomorphism:
        return codes
    seen = set()
    out = []
    for c in codes:
        key = (c.empty_space, canonical_form(SimplicialComplex.from_masks(c.faces())))
        if key not in seen:
            seen.add(key)
            out.append(c)
    return out


# -- comparing chain spaces ----------------------------------------------------------


@dataclass(frozen=True)
class Comparison:
    verdict: str  # "diffeomorphic" | "not diffeomorphic" | "undecided"
    certificate: IsoCertificate
    betti: tuple[BettiTable, BettiTable]
    ring_certificate: IsoCertificate | None
    betti_equal: bool | None
    dominated: tuple[bool, bool]
    codes: tuple[ChamberCode, ChamberCode]

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "certificate": self.certificate.to_json(),
            "consistency": {
                "complex_isomorphic": self.certificate.isomorphic,
                "ring_isomorphic": None if self.ring_certificate is None else self.ring_certificate.isomorphic,
                "betti_equal": self.betti_equal,
            },
            "dominated": list(self.dominated),
            "codes": [str(c) for c in self.codes],
            "betti": [t.to_json() for t in self.betti],
        }


def short_complex(lengths: LengthVector) -> SimplicialComplex:
    return SimplicialComplex.from_masks(sh_faces(lengths))


def equivalent(l1: LengthVector, l2: LengthVector, d: int) -> Comparison:
    """Decide whether two chain spaces are O(d-1)-equivariantly diffeomorphic.

    Isomorphic short complexes always give diffeomorphic spaces.  The converse
    is only available when both vectors are dominated; otherwise a negative
    complex test is reported as undecided.
    """
    if d < 3:
        raise ValueError(f"d={d} is not supported; the classification needs d >= 3")
    if l1.n != l2.n:
        raise ValueError(f"length vectors have different n ({l1.n} vs {l2.n})")
    b1, b2 = betti_numbers(l1, d), betti_numbers(l2, d)
    dom = (is_dominated(l1), is_dominated(l2))
    codes = (genetic_code(l1), genetic_code(l2))
    e1, e2 = not n_is_short(l1), not n_is_short(l2)
    if e1 or e2:
        same = e1 and e2
        cert = (
            IsoCertificate(True, bijection=())
            if same
            else IsoCertificate(False, invariant="empty chain space", values=(e1, e2))
        )
        return Comparison(
            "diffeomorphic" if same else "not diffeomorphic",
            cert,
            (b1, b2),
            None,
            b1.ranks == b2.ranks if all(dom) else None,
            dom,
            codes,
        )
    cx1, cx2 = short_complex(l1), short_complex(l2)
    cert = are_isomorphic(cx1, cx2)
    ring_cert = None
    betti_equal = None
    if all(dom):
        r1 = GradedRing.of_complex(l1.n, cx1, d - 1)
        r2 = GradedRing.of_complex(l2.n, cx2, d - 1)
        ring_cert = rings_isomorphic(r1, r2, cx1, cx2)
        betti_equal = b1.ranks == b2.ranks
        verdict = "diffeomorphic" if cert.isomorphic else "not diffeomorphic"
    else:
        verdict = "diffeomorphic" if cert.isomorphic else "undecided"
    return Comparison(verdict, cert, (b1, b2), ring_cert, betti_equal, dom, codes)
