"""Finite abstract simplicial complexes on labeled vertices.

Isomorphism is decided by plain backtracking over vertex maps, pruned by
vertex invariants.  Canonical forms come from a separate
individualization/refinement search, so the two routes can be cross-checked.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

Face = frozenset


def _maximal(faces: Iterable[Iterable[int]]) -> tuple[frozenset, ...]:
    fs = {frozenset(f) for f in faces}
    fs.discard(frozenset())
    by_size = sorted(fs, key=len, reverse=True)
    kept: list[frozenset] = []
    for f in by_size:
        if not any(f < g for g in kept):
            kept.append(f)
    return tuple(sorted(kept, key=lambda f: (len(f), sorted(f))))


@dataclass(frozen=True)
class SimplicialComplex:
    """A complex stored by its facets.  Vertices are positive integers."""

    facets: tuple[frozenset, ...]

    def __post_init__(self):
        object.__setattr__(self, "facets", _maximal(self.facets))

    @classmethod
    def from_faces(cls, faces: Iterable[Iterable[int]]) -> "SimplicialComplex":
        return cls(tuple(frozenset(f) for f in faces))

    @classmethod
    def from_masks(cls, masks: Iterable[int]) -> "SimplicialComplex":
        from .lengths import members

        return cls(tuple(frozenset(members(m)) for m in masks))

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(set().union(*self.facets))) if self.facets else ()

    def faces(self) -> set[frozenset]:
        """All nonempty faces (down-closure of the facets)."""
        out: set[frozenset] = set()
        for f in self.facets:
            items = sorted(f)
            for k in range(1, len(items) + 1):
                out.update(frozenset(c) for c in combinations(items, k))
        return out

    def contains(self, face: Iterable[int]) -> bool:
        face = frozenset(face)
        return any(face <= f for f in self.facets)

    def relabeled(self, mapping: Mapping[int, int]) -> "SimplicialComplex":
        return SimplicialComplex(tuple(frozenset(mapping[v] for v in f) for f in self.facets))

    def to_json(self) -> list[list[int]]:
        return [sorted(f) for f in self.facets]

    def to_dot(self, name: str = "sh") -> str:
        lines = [f"graph {name} {{"]
        for v in self.vertices:
            lines.append(f"  {v};")
        edges = sorted({tuple(sorted(e)) for f in self.facets for e in combinations(f, 2)})
        for a, b in edges:
            lines.append(f"  {a} -- {b};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __str__(self):
        return json.dumps(self.to_json())


def f_vector(cx: SimplicialComplex) -> tuple[int, ...]:
    """Entry k-1 counts faces with k vertices."""
    faces = cx.faces()
    if not faces:
        return ()
    top = max(len(f) for f in faces)
    counts = [0] * top
    for f in faces:
        counts[len(f) - 1] += 1
    return tuple(counts)


def _components(cx: SimplicialComplex) -> list[set[int]]:
    parent = {v: v for v in cx.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for f in cx.facets:
        it = iter(f)
        root = find(next(it))
        for v in it:
            r = find(v)
            if r != root:
                parent[r] = root
    groups: dict[int, set[int]] = {}
    for v in cx.vertices:
        groups.setdefault(find(v), set()).add(v)
    return sorted(groups.values(), key=lambda g: min(g))


def connected_components(cx: SimplicialComplex) -> int:
    return len(_components(cx))


def degree_sequence(cx: SimplicialComplex) -> tuple[int, ...]:
    """Sorted number of edges at each vertex."""
    edges = {frozenset(e) for f in cx.facets for e in combinations(sorted(f), 2)}
    deg = {v: 0 for v in cx.vertices}
    for e in edges:
        for v in e:
            deg[v] += 1
    return tuple(sorted(deg.values(), reverse=True))


@dataclass(frozen=True)
class IsoCertificate:
    """Outcome of an isomorphism test.

    Exactly one of ``bijection`` (a witness map) or ``invariant`` (the name of
    a differing invariant plus the two values) is set.
    """

    isomorphic: bool
    bijection: tuple[tuple[int, int], ...] | None = None
    invariant: str | None = None
    values: tuple | None = None

    @property
    def mapping(self) -> dict[int, int]:
        return dict(self.bijection or ())

    def describe(self) -> str:
        if self.isomorphic:
            return "bijection " + ", ".join(f"{a}->{b}" for a, b in self.bijection)
        if self.values is None:
            return self.invariant
        return f"{self.invariant} {self.values[0]} != {self.values[1]}"

    def to_json(self) -> dict:
        if self.isomorphic:
            return {"isomorphic": True, "bijection": [[a, b] for a, b in self.bijection]}
        out = {"isomorphic": False, "invariant": self.invariant}
        if self.values is not None:
            out["values"] = [_jsonable(v) for v in self.values]
        return out


def _jsonable(v):
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    return v


def verify_bijection(a: SimplicialComplex, b: SimplicialComplex, mapping: Mapping[int, int]) -> bool:
    if set(mapping) != set(a.vertices) or sorted(mapping.values()) != list(b.vertices):
        return False
    return set(a.relabeled(mapping).facets) == set(b.facets)


def _vertex_profile(cx: SimplicialComplex) -> dict[int, tuple]:
    """Label-free per-vertex data: facet sizes through v and face counts by size."""
    prof: dict[int, list] = {v: [] for v in cx.vertices}
    for f in cx.facets:
        for v in f:
            prof[v].append(len(f))
    faces = cx.faces()
    counts: dict[int, dict[int, int]] = {v: {} for v in cx.vertices}
    for f in faces:
        for v in f:
            counts[v][len(f)] = counts[v].get(len(f), 0) + 1
    return {v: (tuple(sorted(prof[v])), tuple(sorted(counts[v].items()))) for v in cx.vertices}


def are_isomorphic(a: SimplicialComplex, b: SimplicialComplex) -> IsoCertificate:
    """Decide isomorphism exactly; returns a checked witness or a separating invariant."""
    checks = [
        ("f-vector", f_vector),
        ("component count", connected_components),
        ("component sizes", lambda c: tuple(sorted(len(g) for g in _components(c)))),
        ("degree sequence", degree_sequence),
        ("facet count", lambda c: len(c.facets)),
    ]
    for name, fn in checks:
        va, vb = fn(a), fn(b)
        if va != vb:
            return IsoCertificate(False, invariant=name, values=(va, vb))

    pa, pb = _vertex_profile(a), _vertex_profile(b)
    if sorted(pa.values()) != sorted(pb.values()):
        return IsoCertificate(False, invariant="vertex profiles")

    facets_b = set(b.facets)
    # facets of a indexed by their largest vertex in the search order
    order = sorted(a.vertices, key=lambda v: (sum(1 for w in b.vertices if pb[w] == pa[v]), v))
    pos = {v: i for i, v in enumerate(order)}
    closing: dict[int, list[frozenset]] = {v: [] for v in order}
    for f in a.facets:
        closing[max(f, key=pos.__getitem__)].append(f)
    candidates = {v: [w for w in b.vertices if pb[w] == pa[v]] for v in order}

    mapping: dict[int, int] = {}
    used: set[int] = set()

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in candidates[v]:
            if w in used:
                continue
            mapping[v] = w
            if all(frozenset(mapping[x] for x in f) in facets_b for f in closing[v]):
                used.add(w)
                if extend(i + 1):
                    return True
                used.discard(w)
            del mapping[v]
        return False

    if extend(0) and verify_bijection(a, b, mapping):
        return IsoCertificate(True, bijection=tuple(sorted(mapping.items())))
    return IsoCertificate(False, invariant="exhaustive search")


# -- canonical form ------------------------------------------------------------


def _refine(facets: list[tuple[int, ...]], colors: list[int]) -> list[int]:
    """Colour refinement on the vertex/facet incidence structure (vertices 0..m-1)."""
    m = len(colors)
    while True:
        sig: list[list] = [[] for _ in range(m)]
        for f in facets:
            fc = tuple(sorted(colors[v] for v in f))
            for v in f:
                sig[v].append(fc)
        keys = [(colors[v], tuple(sorted(sig[v]))) for v in range(m)]
        ranks = {k: i for i, k in enumerate(sorted(set(keys)))}
        new = [ranks[k] for k in keys]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def _twins(facets: list[tuple[int, ...]], m: int) -> list[int]:
    """Representative of each vertex's class under transposition automorphisms."""
    fset = {frozenset(f) for f in facets}
    rep = list(range(m))
    for u in range(m):
        if rep[u] != u:
            continue
        for v in range(u + 1, m):
            if rep[v] != v:
                continue
            swap = {u: v, v: u}
            if all(frozenset(swap.get(x, x) for x in f) in fset for f in fset):
                rep[v] = u
    return rep


def canonical_form(cx: SimplicialComplex) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """Relabeling-invariant normal form ``(vertex count, facets on 1..m)``.

    Minimum of the relabeled facet encoding over all leaves of an
    individualization/refinement tree; vertices swappable by a transposition
    automorphism are branched on only once.
    """
    verts = cx.vertices
    index = {v: i for i, v in enumerate(verts)}
    facets = [tuple(index[v] for v in f) for f in cx.facets]
    m = len(verts)
    if m == 0:
        return (0, ())
    twin = _twins(facets, m)
    best: list = [None]

    def encode(colors: list[int]) -> tuple:
        return tuple(sorted(tuple(sorted(colors[v] + 1 for v in f)) for f in facets))

    def search(colors: list[int]):
        colors = _refine(facets, colors)
        if len(set(colors)) == m:
            enc = encode(colors)
            if best[0] is None or enc < best[0]:
                best[0] = enc
            return
        sizes: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            sizes.setdefault(c, []).append(v)
        # first smallest non-singleton cell
        cell = min((c for c in sizes if len(sizes[c]) > 1), key=lambda c: (len(sizes[c]), c))
        seen_twin = set()
        for v in sizes[cell]:
            if twin[v] in seen_twin:
                continue
            seen_twin.add(twin[v])
            # individualize v: it precedes the rest of its cell
            new = [2 * c if c != cell else (2 * c if u == v else 2 * c + 1) for u, c in enumerate(colors)]
            search(new)

    search([0] * m)
    return (m, best[0])
