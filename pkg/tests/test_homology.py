import itertools

import pytest
from hypothesis import given, strategies as st

from surfacerep.homology import (character_fixed_points, coinvariants, is_trivial_character,
                                 primitive_root)
from surfacerep.mapping import (MappingClass, genset_from_classes, homology_action, homology_rank,
                                point_push, shipped_genset)
from surfacerep.words import Presentation


def brute_force_fixed_characters(S, q):
    """Every assignment of GF(q)^x values to the H_1 basis, kept if H(f)^T fixes its exponent vector."""
    p = S.presentation
    h = homology_rank(p)
    mats = [homology_action(f) for f in S]
    fixed = 0
    for vals in itertools.product(range(1, q), repeat=h):
        ok = True
        for M in mats:
            # chi(f_* x_k) = prod_i chi(x_i)^{M[i,k]}
            for k in range(h):
                img = 1
                for i in range(h):
                    img = img * pow(vals[i], M[i, k], q) % q
                if img != vals[k]:
                    ok = False
                    break
            if not ok:
                break
        fixed += ok
    return fixed


def test_torus_coinvariants_zero():
    rep = coinvariants(shipped_genset(1, 0))
    assert rep.smith_diagonal == (1, 1)
    assert rep.is_zero and rep.describe() == "0"


@pytest.mark.parametrize("gn", [(2, 0), (3, 0), (1, 1), (2, 1), (3, 1)])
def test_shipped_coinvariants_zero(gn):
    rep = coinvariants(shipped_genset(*gn))
    assert all(d == 1 for d in rep.smith_diagonal)
    assert rep.free_rank == 0 and rep.torsion == ()


def test_pure_sphere_control():
    rep = coinvariants(shipped_genset(0, 3))
    assert rep.smith_diagonal == (0, 0)
    assert rep.free_rank == 2 and rep.describe() == "Z^2"
    assert not rep.is_zero


def test_torsion_reported():
    # t_a^2 alone on the torus: H_1 / (2 a) = Z/2 + Z
    p = Presentation.surface(1, 0)
    sq = MappingClass.from_strings(p, {"b1": "b1 a1 a1"}, {"b1": "b1 a1' a1'"}, "t_a^2")
    rep = coinvariants([sq])
    assert rep.torsion == (2,) and rep.free_rank == 1
    assert rep.torsion_primes == (2,)
    assert rep.describe() == "Z/2 + Z"
    assert rep.to_json()["smith_diagonal"] == ["2", "0"]


@pytest.mark.parametrize("g", [1, 2, 3])
@pytest.mark.parametrize("q", [5, 7])
def test_only_trivial_character(g, q):
    chars = character_fixed_points(shipped_genset(g, 0), q)
    assert len(chars) == 1 and is_trivial_character(chars[0])


def test_identity_fixes_everything():
    p = Presentation.surface(2, 0)
    assert len(character_fixed_points([MappingClass.identity(p)], 5)) == 4**4


def test_sphere_has_nontrivial_fixed_characters():
    chars = character_fixed_points(shipped_genset(0, 3), 3)
    assert len(chars) == 4
    assert any(not is_trivial_character(c) for c in chars)
    # values on c1, c2, c3 multiply to 1
    assert all(c[0] * c[1] * c[2] % 3 == 1 for c in chars)


@pytest.mark.parametrize("gn,q", [((1, 0), 5), ((1, 0), 7), ((2, 0), 5), ((0, 3), 5), ((0, 3), 7), ((1, 1), 3)])
def test_characters_match_brute_force(gn, q):
    S = shipped_genset(*gn)
    assert len(character_fixed_points(S, q)) == brute_force_fixed_characters(S, q)


def test_torsion_bad_prime():
    # Z/2 torsion: characters of order 2 survive exactly when q - 1 is even
    p = Presentation.surface(1, 0)
    sq = MappingClass.from_strings(p, {"b1": "b1 a1 a1"}, {"b1": "b1 a1' a1'"}, "t_a^2")
    for q in (3, 5, 7):
        assert len(character_fixed_points([sq], q)) == brute_force_fixed_characters(genset_from_classes(p, [sq]), q)


def test_primitive_root():
    assert primitive_root(7) == 3
    assert primitive_root(5) == 2
    with pytest.raises(ValueError):
        primitive_root(9)


@given(st.sampled_from([(1, 0), (2, 0), (1, 1), (2, 1), (0, 3)]), st.lists(st.integers(0, 5), max_size=3))
def test_pushes_do_not_change_report(gn, picks):
    S = shipped_genset(*gn)
    p = S.presentation
    extra = [point_push(p.parse(p.symbols[k % len(p.symbols)]), p) for k in picks]
    a, b = coinvariants(S), coinvariants(list(S) + extra)
    assert a.smith_diagonal == b.smith_diagonal
    assert character_fixed_points(S, 5) == character_fixed_points(list(S) + extra, 5)


@pytest.mark.parametrize("gn", [(1, 0), (2, 0), (3, 0), (0, 3)])
def test_coinvariants_zero_iff_trivial_characters(gn):
    S = shipped_genset(*gn)
    rep = coinvariants(S)
    for q in (3, 5, 7, 11):
        if q in rep.torsion_primes:
            continue
        trivial_only = len(character_fixed_points(S, q)) == 1
        assert trivial_only == rep.is_zero
