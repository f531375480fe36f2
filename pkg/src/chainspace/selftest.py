"""Oracle cross-checks run by ``chainspace selftest``.

Each check returns ``(ok, detail)``; they are smaller versions of the
acceptance tests in the pytest suite.
"""

from __future__ import annotations

import random

from .cohomology import betti_numbers, euler_characteristic, is_permutation_matrix, pairing_matrix
from .complex import SimplicialComplex, are_isomorphic, canonical_form, connected_components
from .lengths import LengthVector
from .oracle import brute_sh_faces, random_lengths, stable_grid_chambers
from .realization import RealizationProblem, enumerate_chambers, equivalent, realize
from .subsets import a_vector, genetic_code, sh_faces


def betti_twins():
    l1 = LengthVector.parse("1,1,1,2,3,3")
    l2 = LengthVector.parse("1/4,1,1,1,2,2")
    codes = (str(genetic_code(l1)), str(genetic_code(l2)))
    comps = tuple(connected_components(SimplicialComplex.from_masks(sh_faces(x))) for x in (l1, l2))
    verdicts = {equivalent(l1, l2, d).verdict for d in (3, 4, 5)}
    ok = codes == ("⟨632,64⟩", "⟨641⟩") and comps == (2, 1) and verdicts == {"not diffeomorphic"}
    return ok, f"codes {codes}, components {comps}, verdicts {sorted(verdicts)}"


def duality(count: int = 200, seed: int = 1):
    rng = random.Random(seed)
    for _ in range(count):
        lv = random_lengths(rng, rng.randint(4, 9))
        d = rng.choice((3, 4, 6))
        t = betti_numbers(lv, d)
        r = t.ranks
        if any(r[k] != r[t.dim - k] for k in range(t.dim + 1)):
            return False, f"duality fails for {lv}, d={d}"
        if sum(r) != 2 * sum(a_vector(lv)):
            return False, f"rank total fails for {lv}, d={d}"
        if d % 2 and euler_characteristic(t) != 0:
            return False, f"Euler characteristic nonzero for {lv}, d={d}"
    return True, f"{count} random dominated vectors"


def faces_vs_brute(count: int = 100, seed: int = 2):
    rng = random.Random(seed)
    for _ in range(count):
        lv = random_lengths(rng, rng.randint(3, 10), dominated=rng.random() < 0.5)
        if frozenset(sh_faces(lv)) != brute_sh_faces(lv):
            return False, f"face mismatch for {lv}"
    return True, f"{count} random vectors"


def chambers_vs_grid(max_n: int = 5):
    for n in range(4, max_n + 1):
        for dom in (True, False):
            grid, _ = stable_grid_chambers(n, dom)
            codes = enumerate_chambers(n, dom, up_to_isomorphism=False)
            mine = {(not c.empty_space, frozenset(c.faces())) for c in codes}
            if mine != grid:
                return False, f"n={n} dominated={dom}: {len(mine)} vs oracle {len(grid)}"
    return True, f"n=4..{max_n}"


def realization_round_trip(max_n: int = 6):
    total = 0
    for n in range(4, max_n + 1):
        for c in enumerate_chambers(n, True, up_to_isomorphism=False):
            res = realize(RealizationProblem.from_code(c))
            total += 1
            if not res.feasible or genetic_code(res.witness) != c:
                return False, f"round trip fails for {c}"
    return True, f"{total} codes"


def iso_vs_canonical(max_n: int = 5):
    pairs = 0
    for n in range(4, max_n + 1):
        cxs = [SimplicialComplex.from_masks(c.faces()) for c in enumerate_chambers(n, False, False)]
        for i, a in enumerate(cxs):
            for b in cxs[i:]:
                pairs += 1
                if are_isomorphic(a, b).isomorphic != (canonical_form(a) == canonical_form(b)):
                    return False, f"disagreement on {a} vs {b}"
    return True, f"{pairs} pairs"


def pairing(max_n: int = 10):
    for n in range(2, max_n + 1):
        for k in range(n):
            if not is_permutation_matrix(pairing_matrix(n, k)[2]):
                return False, f"n={n}, k={k}"
    return True, f"n=2..{max_n}"


CHECKS = {
    "betti_twins": betti_twins,
    "betti_duality": duality,
    "faces_vs_brute_force": faces_vs_brute,
    "chambers_vs_grid_oracle": chambers_vs_grid,
    "realization_round_trip": realization_round_trip,
    "isomorphism_vs_canonical_form": iso_vs_canonical,
    "pairing_permutation": pairing,
}
