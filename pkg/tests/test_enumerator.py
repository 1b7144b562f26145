import itertools
import json

import pytest

from surfacerep.enumerator import (SearchSpec, atlas_is_closed, canonical, enumerate_hom_tuples,
                                   enumerate_homs, fixed_point_atlas, gl_order, gl_tables,
                                   to_representation)
from surfacerep.homology import character_fixed_points
from surfacerep.linalg import CapExceeded
from surfacerep.mapping import shipped_genset
from surfacerep.repspace import act, conjugate_witness, is_global_fixed_point


def mat_mul_mod2(a, b):
    return ((a[0] * b[0] + a[1] * b[2]) % 2, (a[0] * b[1] + a[1] * b[3]) % 2,
            (a[2] * b[0] + a[3] * b[2]) % 2, (a[2] * b[1] + a[3] * b[3]) % 2)


def quadruple_loop_count():
    """Independent count of [A1,B1][A2,B2] = I over GL(2, 2) with hand-rolled 2x2 arithmetic."""
    G = [m for m in itertools.product((0, 1), repeat=4) if (m[0] * m[3] - m[1] * m[2]) % 2]
    ident = (1, 0, 0, 1)
    inv = {a: next(b for b in G if mat_mul_mod2(a, b) == ident) for a in G}

    def comm(x, y):
        return mat_mul_mod2(mat_mul_mod2(mat_mul_mod2(x, y), inv[x]), inv[y])

    count = 0
    for a1, b1, a2, b2 in itertools.product(G, repeat=4):
        if mat_mul_mod2(comm(a1, b1), comm(a2, b2)) == ident:
            count += 1
    return count


def test_gl_orders():
    assert gl_order(2, 2) == len(gl_tables(2, 2)) == 6
    assert gl_order(2, 3) == len(gl_tables(2, 3)) == 48
    assert gl_order(1, 7) == 6


def test_torus_rank_one_count():
    homs = list(enumerate_homs(SearchSpec(1, 0, 1, 5)))
    assert len(homs) == 16
    assert any(h.is_trivial() for h in homs)


def test_genus_two_gl22_count_matches_oracle():
    n = len(enumerate_hom_tuples(SearchSpec(2, 0, 2, 2)))
    assert n == quadruple_loop_count() == 486


def test_punctured_enumerates_all_tuples():
    assert len(enumerate_hom_tuples(SearchSpec(0, 3, 1, 3))) == 2**3
    assert len(enumerate_hom_tuples(SearchSpec(1, 1, 2, 2))) == 6**3


def test_cap_at_launch():
    with pytest.raises(CapExceeded):
        fixed_point_atlas(SearchSpec(3, 0, 2, 3, max_tuples=1000), shipped_genset(3, 0))


def test_canonical_is_class_invariant():
    T = gl_tables(2, 3)
    hom = (5, 17, 30)
    for row in T.conj:
        assert canonical(T, tuple(row[x] for x in hom)) == canonical(T, hom)


@pytest.mark.parametrize("g", [1, 2, 3])
def test_rank_one_atlas_single_fixed_class(g):
    atlas = fixed_point_atlas(SearchSpec(g, 0, 1, 5), shipped_genset(g, 0))
    assert len(atlas.fixed) == 1
    assert atlas.fixed_representations()[0].is_trivial()
    assert len(atlas.fixed) == len(character_fixed_points(shipped_genset(g, 0), 5))


def test_atlas_invariants_gl22():
    S = shipped_genset(2, 0)
    atlas = fixed_point_atlas(SearchSpec(2, 0, 2, 2), S)
    assert sum(k * v for k, v in atlas.orbit_histogram.items()) == atlas.class_count
    assert all(len(o) == 1 for o in atlas.orbits if o[0] in atlas.fixed)
    assert atlas_is_closed(atlas)
    data = atlas.to_json()
    assert data["note"] == "empirical over GF(2)"
    assert data["total_homs"] == 486


def test_fixed_classes_agree_with_stabilizer_search():
    """Every class representative is tested with the linear-algebra conjugacy solver."""
    S = shipped_genset(2, 0)
    spec = SearchSpec(2, 0, 2, 2)
    atlas = fixed_point_atlas(spec, S)
    fixed = set(atlas.fixed)
    for orb in atlas.orbits:
        for st in orb:
            rep = to_representation(spec, st)
            assert is_global_fixed_point(rep, S) == (st in fixed)


def test_hom_orbits_refine_class_orbits():
    S = shipped_genset(2, 0)
    T = gl_tables(2, 2)
    cls = fixed_point_atlas(SearchSpec(2, 0, 2, 2), S)
    hom = fixed_point_atlas(SearchSpec(2, 0, 2, 2, mode="hom"), S)
    where = {st: i for i, orb in enumerate(cls.orbits) for st in orb}
    for orb in hom.orbits:
        assert len({where[canonical(T, h)] for h in orb}) == 1
    assert hom.class_count == hom.total_homs


def test_action_matches_repspace():
    S = shipped_genset(2, 0)
    spec = SearchSpec(2, 0, 2, 2, mode="hom")
    atlas = fixed_point_atlas(spec, S)
    for (st, k), img in list(atlas.action.items())[::37]:
        assert act(S.classes[k], to_representation(spec, st)) == to_representation(spec, img)


def test_class_action_matches_conjugacy():
    S = shipped_genset(2, 0)
    spec = SearchSpec(2, 0, 2, 2)
    atlas = fixed_point_atlas(spec, S)
    for (st, k), img in list(atlas.action.items())[::11]:
        moved = act(S.classes[k], to_representation(spec, st))
        assert conjugate_witness(moved, to_representation(spec, img)) is not None


def test_parallel_is_byte_identical():
    S = shipped_genset(2, 0)
    one = fixed_point_atlas(SearchSpec(2, 0, 2, 2), S).dumps()
    many = fixed_point_atlas(SearchSpec(2, 0, 2, 2, workers=3), S).dumps()
    assert one == many
    assert json.loads(one)["class_count"] == 116
