import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from chainspace.complex import SimplicialComplex, canonical_form
from chainspace.lengths import LengthVector, is_dominated, mask_of, members
from chainspace.oracle import grid_chambers, random_lengths, stable_grid_chambers
from chainspace.realization import (
    RealizationProblem,
    enumerate_chambers,
    equivalent,
    minimal_non_faces,
    realize,
)
from chainspace.subsets import ChamberCode, genetic_code, sh_faces

from conftest import length_vectors

L = LengthVector.parse


def test_realize_star():
    res = realize(RealizationProblem.from_facets(6, [[1, 2], [1, 3], [1, 4]]))
    assert res.feasible
    assert res.slack > 0
    assert sum(res.witness.entries) == 1
    assert str(genetic_code(res.witness)) == "⟨641⟩"
    # the reference witness lands in the same chamber
    assert genetic_code(L("1/4,1,1,1,2,2")) == genetic_code(res.witness)


def test_realize_full_simplex_infeasible():
    res = realize(RealizationProblem.from_facets(6, [[1, 2, 3, 4, 5]]))
    assert not res.feasible
    assert res.witness is None


def test_realize_four_points():
    res = realize(RealizationProblem.from_facets(5, [[1], [2], [3], [4]]))
    assert res.feasible
    # the hand-checked witness (1,1,1,1,3/2) is also valid
    hand = L("1,1,1,1,3/2")
    assert set(sh_faces(hand)) == set(sh_faces(res.witness)) == {1, 2, 4, 8}


def test_realize_special_codes():
    empty = realize(RealizationProblem.from_code(ChamberCode(5, ())))
    assert empty.feasible and 2 * empty.witness[-1] > empty.witness.total
    point = realize(RealizationProblem.from_code(ChamberCode(5, (0,))))
    assert point.feasible and sh_faces(point.witness) == ()
    assert str(genetic_code(point.witness)) == "⟨5⟩"


def test_realize_malformed():
    with pytest.raises(ValueError):
        RealizationProblem.from_facets(5, [[1, 5]])
    with pytest.raises(ValueError):
        RealizationProblem(5, SimplicialComplex.from_faces([[1]]), n_short=False)


def test_dominance_matters():
    # ⟨421⟩ (all of 1,2 with 4 short, 3 excluded) needs l_4 below l_3
    code = ChamberCode.parse("<421>")
    assert not realize(RealizationProblem.from_code(code, require_dominated=True)).feasible
    res = realize(RealizationProblem.from_code(code, require_dominated=False))
    assert res.feasible and not is_dominated(res.witness)


def test_minimal_non_faces():
    faces = {mask_of(f) for f in ([1], [2], [3], [1, 2])}
    got = {frozenset(members(m)) for m in minimal_non_faces(6, faces)}
    assert got == {frozenset(x) for x in ([4], [5], [1, 3], [2, 3])}


def test_integer_witness():
    res = realize(RealizationProblem.from_facets(6, [[1, 2], [1, 3], [1, 4]]))
    w = res.integer_witness()
    assert all(x.denominator == 1 for x in w.entries)
    assert genetic_code(w) == genetic_code(res.witness)


@settings(max_examples=60, deadline=None)
@given(length_vectors(min_n=4, max_n=7, generic=True))
def test_realize_recovers_any_short_complex(lv):
    faces = sh_faces(lv)
    if 2 * lv.entries[-1] > lv.total:
        return
    p = RealizationProblem(lv.n, SimplicialComplex.from_masks(faces), require_dominated=is_dominated(lv))
    res = realize(p)
    assert res.feasible
    assert set(sh_faces(res.witness)) == set(faces)


@pytest.mark.parametrize("n", [4, 5])
@pytest.mark.parametrize("dominated", [True, False])
def test_enumeration_matches_grid_oracle(n, dominated):
    grid, _ = stable_grid_chambers(n, dominated)
    codes = enumerate_chambers(n, dominated, up_to_isomorphism=False)
    assert {(not c.empty_space, frozenset(c.faces())) for c in codes} == grid


def test_grid_oracle_grows_monotonically():
    small = grid_chambers(5, 3)
    assert small <= grid_chambers(5, 5)


def test_enumeration_n4_dominated():
    codes = enumerate_chambers(4, True)
    assert [str(c) for c in codes] == ["⟨⟩", "⟨4⟩", "⟨41⟩"]


def test_enumeration_contains_betti_twins():
    texts = {str(c) for c in enumerate_chambers(6, True)}
    assert {"⟨632,64⟩", "⟨641⟩"} <= texts


def test_enumeration_deduplicated_and_deterministic():
    a = enumerate_chambers(6, False)
    b = enumerate_chambers(6, False)
    assert a == b
    keys = [(c.empty_space, canonical_form(SimplicialComplex.from_masks(c.faces()))) for c in a]
    assert len(keys) == len(set(keys))


def test_enumeration_range():
    with pytest.raises(ValueError):
        enumerate_chambers(3)
    with pytest.raises(ValueError):
        enumerate_chambers(8)


def test_pruning_soundness_n5():
    # every candidate the search pruned is infeasible: compare against all shifted families
    from itertools import combinations

    from chainspace.subsets import shifted_down_closure

    n = 5
    realizable = {frozenset(c.faces()) for c in enumerate_chambers(n, False, False) if not c.empty_space}
    elems = range(1 << (n - 1))
    tried = set()
    for k in range(1, 4):
        for genes in combinations(elems, k):
            fam = frozenset(m for m in shifted_down_closure(genes) if m)
            if fam in tried:
                continue
            tried.add(fam)
            res = realize(RealizationProblem(n, SimplicialComplex.from_masks(fam), require_dominated=False, ordered=True))
            assert res.feasible == (fam in realizable)


# -- equivalence --------------------------------------------------------------


def test_betti_twins_not_diffeomorphic():
    for d in (3, 4, 5):
        cmp = equivalent(L("1,1,1,2,3,3"), L("1/4,1,1,1,2,2"), d)
        assert cmp.verdict == "not diffeomorphic"
        assert cmp.betti_equal is True
        assert cmp.betti[0].ranks == cmp.betti[1].ranks
        assert cmp.certificate.invariant == "component count"
        assert cmp.ring_certificate.isomorphic is False


def test_permutation_and_scaling():
    lv = L("1,1,1,2,3,3")
    cmp = equivalent(lv, L("3,1,1,2,1,3"), 3)
    assert cmp.verdict == "diffeomorphic"
    assert equivalent(lv, lv.scaled(3), 4).verdict == "diffeomorphic"


def test_equivalence_errors():
    with pytest.raises(ValueError):
        equivalent(L("1,1,1,2"), L("1,1,1,2"), 2)
    with pytest.raises(ValueError):
        equivalent(L("1,1,1,2"), L("1,1,1,1,3"), 3)


def test_undominated_verdicts():
    a, b = L("1,1,1,1/2"), L("1,1,1,2")
    cmp = equivalent(a, b, 3)
    assert cmp.dominated == (False, True)
    assert cmp.verdict == "undecided"
    assert cmp.betti_equal is None


def test_empty_spaces():
    cmp = equivalent(L("1,1,1,1,5"), L("1,1,1,1,7"), 3)
    assert cmp.verdict == "diffeomorphic"
    cmp = equivalent(L("1,1,1,1,5"), L("1,1,1,1,3"), 3)
    assert cmp.verdict == "not diffeomorphic"


def test_random_relabelings_are_diffeomorphic():
    rng = random.Random(11)
    for _ in range(30):
        lv = random_lengths(rng, rng.randint(4, 8))
        head = list(lv.entries[:-1])
        rng.shuffle(head)
        other = LengthVector(tuple(head) + (lv.entries[-1],)).scaled(Fraction(rng.randint(1, 9), rng.randint(1, 9)))
        assert equivalent(lv, other, rng.choice((3, 4, 6))).verdict == "diffeomorphic"
