import math

import pytest

from obslab.graph import CrossingSet, Graph, complete, complete_bipartite, cycle
from obslab.realisability import is_two_realisable
from obslab.symmetry import (
    SymmetryError,
    act_on_pairs,
    automorphism_group,
    burnside_orbit_count,
    cycles,
    fixed_ksubset_count,
    fixed_ksubset_count_direct,
    orbit_representatives,
    same_orbit,
)


def paper_k23():
    """K2,3 with the 3-side labelled 1,2,3 and the 2-side 4,5."""
    return Graph(5, tuple((i, j) for i in range(3) for j in (3, 4)), labels=("1", "2", "3", "4", "5"))


def perm_from_cycles(n, *cycs):
    p = list(range(n))
    for c in cycs:
        for a, b in zip(c, c[1:] + c[:1]):
            p[a - 1] = b - 1
    return tuple(p)


def pairs_named(g, names):
    """'(14)(25)' -> pair of edge indices, using 1-based labels."""
    out = []
    for s in names:
        a, b, c, d = (int(ch) - 1 for ch in s.replace("(", "").replace(")", ""))
        out.append((g.edge_index[(min(a, b), max(a, b))], g.edge_index[(min(c, d), max(c, d))]))
    return CrossingSet.from_pairs(g, out).bits


@pytest.mark.parametrize("g, order", [(complete(5), 120), (complete_bipartite(2, 3), 12), (cycle(4), 8)])
def test_group_orders(g, order):
    grp = automorphism_group(g)
    assert grp.order == order
    assert grp.identity in grp.elements


def test_group_size_limit():
    with pytest.raises(SymmetryError):
        automorphism_group(cycle(11))


def test_act_on_pairs(k4, k23):
    ident = tuple(range(4))
    assert act_on_pairs(ident, k4.pairs) == (0, 1, 2)
    # K4 pairs: {01,23}, {02,13}, {03,12}; swapping 1 and 2 exchanges the last two
    assert act_on_pairs((0, 2, 1, 3), k4.pairs) == (1, 0, 2)
    swap_parts = (1, 0, 2, 3, 4)
    induced = act_on_pairs(swap_parts, k23.pairs)
    assert induced != tuple(range(6))
    assert all(induced[induced[i]] == i for i in range(6))
    with pytest.raises(SymmetryError):
        act_on_pairs((1, 2, 0, 3), Graph(4, ((0, 1), (2, 3))).pairs)


def test_fixed_counts_examples():
    g = paper_k23()
    assert fixed_ksubset_count(perm_from_cycles(5), g.pairs, 2) == 15
    assert fixed_ksubset_count(perm_from_cycles(5, (1, 2, 3)), g.pairs, 2) == 0
    assert fixed_ksubset_count(perm_from_cycles(5, (1, 2, 3), (4, 5)), g.pairs, 3) == 0


@pytest.mark.parametrize("g", [complete(5), complete_bipartite(2, 3), complete_bipartite(3, 3)])
def test_cycle_index_matches_direct_enumeration(g):
    grp = automorphism_group(g)
    n = len(g.pairs)
    for p in grp.elements[:: max(1, grp.order // 12)]:
        for k in (0, 1, 2, 3, n // 2, n):
            assert fixed_ksubset_count(p, g.pairs, k) == fixed_ksubset_count_direct(p, g.pairs, k)


def test_orbit_counts(k5, k23):
    assert burnside_orbit_count(k23, 2) == 3
    assert burnside_orbit_count(k23, 3) == 3
    assert burnside_orbit_count(k5, 3) == 9


@pytest.mark.parametrize("g", [complete(4), complete(5), complete_bipartite(2, 3)])
def test_orbit_count_complement_symmetry(g):
    n = len(g.pairs)
    for k in range(n + 1):
        assert burnside_orbit_count(g, k) == burnside_orbit_count(g, n - k)


@pytest.mark.parametrize("g, k", [(complete(5), 3), (complete(5), 2), (complete_bipartite(2, 3), 2),
                                  (complete_bipartite(2, 3), 3), (complete(4), 2)])
def test_orbits_partition_subsets(g, k):
    orbits = orbit_representatives(g, k)
    assert len(orbits) == burnside_orbit_count(g, k)
    assert sum(o.size for o in orbits) == math.comb(len(g.pairs), k)
    for o in orbits:
        assert len(o.representative) == k


def test_empty_subset_orbit(k5):
    (only,) = orbit_representatives(k5, 0)
    assert only.representative.bits == 0 and only.size == 1


def test_paper_k5_list_hits_every_orbit():
    g = Graph(5, tuple((i, j) for i in range(5) for j in range(i + 1, 5)), labels=tuple("12345"))
    listed = [
        ["(12)(34)", "(13)(24)", "(14)(23)"],
        ["(12)(34)", "(13)(24)", "(12)(35)"],
        ["(12)(35)", "(13)(24)", "(14)(23)"],
        ["(12)(34)", "(12)(35)", "(12)(45)"],
        ["(12)(34)", "(12)(35)", "(15)(24)"],
        ["(12)(34)", "(13)(25)", "(14)(25)"],
        ["(12)(34)", "(15)(23)", "(14)(25)"],
        ["(14)(23)", "(15)(23)", "(14)(25)"],
        ["(14)(23)", "(13)(25)", "(15)(24)"],
    ]
    masks = [pairs_named(g, s) for s in listed]
    reps = [o.representative.bits for o in orbit_representatives(g, 3)]
    matched = sorted(next(i for i, r in enumerate(reps) if same_orbit(g, m, r)) for m in masks)
    assert matched == list(range(9))


def test_k23_two_subsets_hit_every_orbit():
    g = paper_k23()
    listed = [["(14)(25)", "(14)(35)"], ["(14)(25)", "(24)(35)"], ["(14)(25)", "(15)(24)"]]
    reps = [o.representative.bits for o in orbit_representatives(g, 2)]
    hit = {next(i for i, r in enumerate(reps) if same_orbit(g, pairs_named(g, s), r)) for s in listed}
    assert hit == {0, 1, 2}


def test_k23_three_subset_orbits():
    g = paper_k23()
    assert sorted(o.size for o in orbit_representatives(g, 3)) == [2, 6, 12]
    a = pairs_named(g, ["(14)(25)", "(15)(24)", "(24)(35)"])
    b = pairs_named(g, ["(14)(25)", "(14)(35)", "(15)(34)"])
    # related by the relabelling (23) followed by (12)
    assert same_orbit(g, a, b)
    c = pairs_named(g, ["(14)(25)", "(14)(35)", "(24)(35)"])
    assert not same_orbit(g, a, c)


def test_realisability_constant_on_orbits(models, k5):
    m = models["K5"]
    grp = automorphism_group(k5)
    from obslab.symmetry import apply_to_mask
    perms = [act_on_pairs(p, k5.pairs) for p in grp.elements]
    for k in range(4):
        for o in orbit_representatives(k5, k, grp):
            verdicts = {is_two_realisable(m, CrossingSet(k5, apply_to_mask(p, o.representative.bits)))
                        for p in perms}
            assert len(verdicts) == 1


def test_cycles_helper():
    assert cycles((1, 0, 2)) == [(0, 1), (2,)]
