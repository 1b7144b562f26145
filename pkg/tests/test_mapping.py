import json
from importlib import resources

import pytest
from hypothesis import given, strategies as st

from surfacerep.linalg import IntMatrix
from surfacerep.mapping import (SHIPPED, GeneratorSet, InvalidMappingClass, MappingClass, apply,
                                birman_relation_check, compose, homology_action, homology_rank,
                                homology_vector, intersection_form, inverse, load_genset,
                                maps_equal_in_group, point_push, power, shipped_genset,
                                symplectic_check, validate)
from surfacerep.words import Presentation, Word, all_words, are_equal_in_group

T1 = Presentation.surface(1, 0)
SETS = {gn: shipped_genset(*gn) for gn in SHIPPED}


def torus_ta():
    return MappingClass.from_strings(T1, {"b1": "b1 a1"}, {"b1": "b1 a1'"}, "t_a")


def words(p, max_size=6):
    letters = [(s, e) for s in p.symbols for e in (1, -1)]
    return st.lists(st.sampled_from(letters), max_size=max_size).map(lambda ls: Word(tuple(ls)))


def classes_of(p):
    S = SETS[(p.g, p.n)]
    alpha = p.parse(" ".join(p.symbols[:2]))
    return st.sampled_from(S.with_inverses() + [point_push(alpha, p)])


def test_apply_examples():
    ident = MappingClass.identity(T1)
    assert apply(ident, T1.parse("a1 b1")) == T1.parse("a1 b1")
    assert str(apply(torus_ta(), T1.parse("b1"))) == "b1 a1"
    assert apply(torus_ta(), Word()) == Word()


def test_compose_examples():
    t = torus_ta()
    assert compose(t, inverse(t)).key() == MappingClass.identity(T1).key()
    assert str(compose(t, t).forward["b1"]) == "b1 a1 a1"
    assert compose(MappingClass.identity(T1), t).key() == t.key()
    assert power(t, 2).key() == compose(t, t).key()


def test_point_push_examples():
    p = Presentation.surface(2, 0)
    assert point_push(Word(), p).key() == MappingClass.identity(p).key()
    assert str(point_push(p.parse("a1"), p).forward["b1"]) == "a1 b1 a1'"
    assert str(point_push(p.parse("a1 b1"), p).forward["a1"]) == "a1 b1 a1 b1' a1'"


def test_homology_examples():
    assert homology_action(torus_ta()).rows == ((1, 1), (0, 1))
    p = Presentation.surface(2, 1)
    assert homology_action(point_push(p.parse("a1 c1 b2"), p)) == IntMatrix.identity(homology_rank(p))
    assert homology_vector(Presentation.surface(1, 3).parse("c3"), Presentation.surface(1, 3)) == (0, 0, -1, -1)


def test_birman_examples():
    assert birman_relation_check(MappingClass.identity(T1), T1.parse("a1 b1'"))
    assert birman_relation_check(torus_ta(), T1.parse("b1"))


@pytest.mark.parametrize("gn", SHIPPED)
def test_shipped_sets_validate(gn):
    S = SETS[gn]
    assert len(S) > 0
    for rep in S.validate():
        assert rep.ok, (rep.label, rep.failures())
    assert all(validate(f).ok for f in S.with_inverses())


@pytest.mark.parametrize("gn", [(2, 0), (3, 0)])
def test_shipped_symplectic(gn):
    assert all(symplectic_check(f) for f in SETS[gn])


def test_symplectic_negative_control():
    # orientation reversal b1 -> b1^-1 is an automorphism but not symplectic
    flip = MappingClass.from_strings(T1, {"b1": "b1'"}, {"b1": "b1'"}, "flip")
    assert not symplectic_check(flip)
    rep = validate(flip)
    assert not rep.checks["symplectic"]


def test_corrupted_class_rejected():
    # b1 -> b1 a1 a1 stored with the inverse of t_a: the inverse check catches it
    bad = MappingClass.from_strings(T1, {"b1": "b1 a1 a1"}, {"b1": "b1 a1'"}, "t_a")
    rep = validate(bad)
    assert not rep.ok and "inverse" in rep.failures()
    with pytest.raises(InvalidMappingClass):
        compose(bad, torus_ta())


def test_relator_check_rejects_non_automorphism():
    p = Presentation.surface(2, 0)
    bad = MappingClass.from_strings(p, {"a1": "a2", "a2": "a1"}, {"a1": "a2", "a2": "a1"}, "swap")
    assert not validate(bad).checks["relator"]


def test_purity_check():
    p = Presentation.surface(0, 3)
    swap = MappingClass.from_strings(p, {"c1": "c2", "c2": "c1"}, {"c1": "c2", "c2": "c1"}, "swap", pure=True)
    assert not validate(swap).checks["purity"]


def test_curves_give_transvections():
    """Each shipped twist acts on H_1 by v -> v - <v, c> c, c the class of its curve."""
    for g, n in SHIPPED:
        if g == 0:
            continue
        raw = json.loads(resources.files("surfacerep.data").joinpath(f"genset_g{g}_n{n}.json").read_text())
        p = Presentation.surface(g, n)
        h = homology_rank(p)
        J = [[0] * h for _ in range(h)]
        for i, row in enumerate(intersection_form(g).rows):
            J[i][: 2 * g] = row
        for entry, f in zip(raw["classes"], SETS[(g, n)]):
            c = homology_vector(p.parse(entry["curve"]), p)
            M = homology_action(f)
            for k in range(h):
                e = [int(i == k) for i in range(h)]
                form = sum(e[i] * J[i][j] * c[j] for i in range(h) for j in range(h))
                assert [M[i, k] for i in range(h)] == [e[i] - form * c[i] for i in range(h)]


@given(st.data())
def test_apply_compose_is_substitution(data):
    gn = data.draw(st.sampled_from([(1, 0), (2, 0), (2, 1), (3, 0)]))
    p = Presentation.surface(*gn)
    f, g = data.draw(classes_of(p)), data.draw(classes_of(p))
    w = data.draw(words(p))
    assert apply(compose(f, g, check=False), w) == apply(f, apply(g, w))


@given(st.data())
def test_homology_is_homomorphism(data):
    gn = data.draw(st.sampled_from(SHIPPED))
    p = Presentation.surface(*gn)
    f, g = data.draw(classes_of(p)), data.draw(classes_of(p))
    assert homology_action(compose(f, g, check=False)) == homology_action(f) @ homology_action(g)
    assert abs(homology_action(f).det()) == 1


@given(st.data())
def test_birman_sampled_words(data):
    gn = data.draw(st.sampled_from([(1, 0), (1, 1), (2, 0), (2, 1)]))
    p = Presentation.surface(*gn)
    f = data.draw(st.sampled_from(SETS[gn].with_inverses()))
    gamma = data.draw(words(p, 4))
    assert birman_relation_check(f, gamma)


@given(st.data())
def test_inverse_roundtrip_in_group(data):
    gn = data.draw(st.sampled_from(SHIPPED))
    p = Presentation.surface(*gn)
    f = data.draw(st.sampled_from(SETS[gn].classes))
    w = data.draw(words(p))
    assert are_equal_in_group(apply(inverse(f), apply(f, w)), w, p)


def test_push_commutes_with_group_equality():
    p = Presentation.surface(2, 0)
    # pushing around the relator is the identity automorphism in pi
    assert maps_equal_in_group(point_push(p.relator, p), MappingClass.identity(p))
    assert not maps_equal_in_group(point_push(p.parse("a1"), p), MappingClass.identity(p))


def test_genset_json_roundtrip(tmp_path):
    S = SETS[(2, 1)]
    path = tmp_path / "g.json"
    path.write_text(json.dumps(S.to_json()))
    T = load_genset(path)
    assert [f.key() for f in T] == [f.key() for f in S]
    assert GeneratorSet.from_json(S.to_json()).provenance == S.provenance


def test_single_symbol_birman_small():
    p = Presentation.surface(1, 1)
    for f in SETS[(1, 1)].with_inverses():
        for w in all_words(p.symbols, 1):
            assert birman_relation_check(f, w)
