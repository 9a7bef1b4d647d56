import random

import pytest

from lowerk.amalgams import (
    Amalgam,
    GraphWithAction,
    INFINITE,
    SIDE_A,
    SIDE_B,
    amalgam_construct,
    graph_of_groups_quotient,
)
from lowerk.casebook import PHI_IMAGES, full_braid_amalgam, phi, pure_braid_graph_fixture
from lowerk.errors import EdgeInversion, NotAnAction, NotHomomorphism, NotInjective
from lowerk.groups import GroupHom, build_group, is_isomorphic
from lowerk.presentations import Word, parse_word, van_buskirk, verify_homomorphism


def degenerate_amalgam(name="quaternion:8"):
    G = build_group(name)
    ident = GroupHom(G, G, dict(G.generator_labels))
    return Amalgam(G, G, G, ident, ident)


def pb3_amalgam():
    Z4 = build_group("cyclic:4")
    Q8 = build_group("quaternion:8")
    Z2 = build_group("cyclic:2")
    iA = GroupHom(Z2, Z4, {"g": Z4.power(Z4.generator_labels["g"], 2)})
    iB = GroupHom(Z2, Q8, {"g": Q8.power(Q8.generator_labels["x"], 2)})
    return amalgam_construct(Z4, Q8, Z2, iA, iB)


def test_degenerate_amalgam_every_element_has_empty_syllables():
    am = degenerate_amalgam()
    G = am.A
    assert am.index(SIDE_A) == 1 and am.index(SIDE_B) == 1
    for g in range(G.order):
        e = am.embed_vertex(SIDE_A, g)
        assert e.syllables == ()
        assert am.order_of(e) == G.element_order(g)


def test_pb3_amalgam_indices():
    am = pb3_amalgam()
    assert am.index(SIDE_A) == 2
    assert am.index(SIDE_B) == 4


def test_construct_rejects_bad_embeddings():
    Z4 = build_group("cyclic:4")
    Q8 = build_group("quaternion:8")
    Z2 = build_group("cyclic:2")
    not_inj = GroupHom(Z2, Z4, {"g": Z4.identity})
    ok = GroupHom(Z2, Q8, {"g": Q8.power(Q8.generator_labels["x"], 2)})
    with pytest.raises(NotInjective):
        amalgam_construct(Z4, Q8, Z2, not_inj, ok)
    Z3 = build_group("cyclic:3")
    not_hom = GroupHom(Z3, Z4, {"g": Z4.generator_labels["g"]})
    with pytest.raises((NotHomomorphism, NotInjective)):
        amalgam_construct(Z4, Q8, Z3, not_hom, GroupHom(Z3, Q8, {"g": Q8.identity}))


def _random_word(rng, symbols, max_len=6):
    entries = [(rng.choice(symbols), rng.randint(-3, 3)) for _ in range(rng.randint(0, max_len))]
    return Word.of(*entries)


@pytest.mark.parametrize("which,seed", [("pb3", 101), ("b3", 202), ("degenerate", 303)])
def test_normal_form_homomorphism_property(which, seed):
    # acceptance: 500 random words per bundled amalgam
    if which == "pb3":
        am = pb3_amalgam()
    elif which == "degenerate":
        am = degenerate_amalgam()
    else:
        am = full_braid_amalgam()
    symbols = sorted(am.A.generator_labels) + sorted(am.B.generator_labels)
    rng = random.Random(seed)
    for _ in range(500):
        w1 = _random_word(rng, symbols)
        w2 = _random_word(rng, symbols)
        assert am.evaluate(w1 * w2) == am.mul(am.evaluate(w1), am.evaluate(w2))


@pytest.mark.parametrize("which", ["pb3", "b3"])
def test_normal_form_alternation(which):
    am = pb3_amalgam() if which == "pb3" else full_braid_amalgam()
    symbols = sorted(am.A.generator_labels) + sorted(am.B.generator_labels)
    rng = random.Random(123)
    for _ in range(200):
        e = am.evaluate(_random_word(rng, symbols))
        for (s1, t1), (s2, t2) in zip(e.syllables, e.syllables[1:]):
            assert s1 != s2
        for side, t in e.syllables:
            assert t != am._vertex[side].identity
            assert t in am.transversal(side)


def test_order_of_consistency():
    am = full_braid_amalgam()
    symbols = sorted(am.A.generator_labels) + sorted(am.B.generator_labels)
    rng = random.Random(5)
    seen_infinite = 0
    for _ in range(100):
        e = am.evaluate(_random_word(rng, symbols, max_len=4))
        k = am.order_of(e)
        if k is INFINITE or k == INFINITE:
            seen_infinite += 1
            for j in range(1, 25):
                assert am.power(e, j) != am.identity_element
        else:
            assert am.power(e, k) == am.identity_element
            for j in range(1, k):
                assert am.power(e, j) != am.identity_element
    assert seen_infinite > 0


def test_empty_word_evaluates_to_identity():
    am = full_braid_amalgam()
    e = am.evaluate(Word())
    assert e.head == am.C.identity
    assert e.syllables == ()
    assert e == am.identity_element


def test_braid_amalgam_examples():
    am = full_braid_amalgam()
    assert am.evaluate(parse_word("P^2 X^-1 Y^-2")) == am.identity_element
    lhs = am.evaluate(parse_word("Z P Y^3 Y Q^-1 Z^-1 Z P Y^3"))
    rhs = am.evaluate(parse_word("Y Q^-1 Z^-1 Z P Y^3 Y Q^-1 Z^-1"))
    assert lhs == rhs
    assert am.order_of(am.evaluate(parse_word("P Y^3"))) == INFINITE
    assert am.order_of(am.evaluate(parse_word("Y"))) == 12
    assert am.order_of(am.identity_element) == 1


def test_broken_image_fails_one_relator():
    am = full_braid_amalgam()
    vb = van_buskirk(3)
    images = dict(PHI_IMAGES)
    images["s1"] = parse_word("Z P Y^2")
    report = verify_homomorphism(vb, am, images)
    assert not report.ok
    assert report.failing_relators


def test_evaluate_unknown_symbol():
    from lowerk.errors import UnknownSymbol

    am = full_braid_amalgam()
    with pytest.raises(UnknownSymbol):
        am.evaluate(parse_word("W^2"))


def test_vertex_words_agree_with_group_evaluation():
    # a word purely in one vertex group's labels evaluates to the
    # embedding of that group's own evaluation
    am = full_braid_amalgam()
    rng = random.Random(17)
    for side, G in ((SIDE_A, am.A), (SIDE_B, am.B)):
        symbols = sorted(G.generator_labels)
        for _ in range(100):
            w = _random_word(rng, symbols)
            assert am.evaluate(w) == am.embed_vertex(side, G.evaluate(w))


# --- graph of groups ---------------------------------------------------------

def test_fixture_orbits_and_stabilizers():
    gwa = pure_braid_graph_fixture()
    gog = graph_of_groups_quotient(gwa)
    assert len(gog.vertex_orbits) == 2
    assert len(gog.edge_orbits) == 2
    assert gog.is_segment()
    for data in gog.vertex_orbits + gog.edge_orbits:
        assert len(data.orbit) * data.stabilizer.order == 8
    assert gwa.vertex_stabilizer(0).order == 8


def test_fixture_segment_amalgam_matches_marked_graph():
    gog = graph_of_groups_quotient(pure_braid_graph_fixture())
    am = gog.segment_amalgam()
    types = {am.A.order: am.A, am.B.order: am.B}
    assert set(types) == {4, 8}
    assert is_isomorphic(types[4], build_group("cyclic:4"))
    assert is_isomorphic(types[8], build_group("quaternion:8"))
    assert is_isomorphic(am.C, build_group("cyclic:2"))
    assert {am.index(SIDE_A), am.index(SIDE_B)} == {2, 4}


def test_trivial_group_on_single_edge():
    triv = build_group("cyclic:1")
    gwa = GraphWithAction(triv, 2, ((0, 1), (1, 0)), (1, 0), {})
    gog = graph_of_groups_quotient(gwa)
    assert gog.is_segment()
    am = gog.segment_amalgam()
    assert am.A.order == am.B.order == am.C.order == 1


def test_edge_inversion_detected():
    Z2 = build_group("cyclic:2")
    # swapping an edge with its reversal while fixing both endpoints
    with pytest.raises(EdgeInversion):
        GraphWithAction(Z2, 2, ((0, 1), (1, 0)), (1, 0),
                        {"g": ((1, 0), (1, 0))})


def test_inconsistent_action_detected():
    Z4 = build_group("cyclic:4")
    # the generator has order 4 but the permutation assignment forces
    # its square to act nontrivially on a two-edge graph in a bad way
    with pytest.raises((NotAnAction, EdgeInversion)):
        GraphWithAction(Z4, 3, ((0, 1), (1, 0), (1, 2), (2, 1)), (1, 0, 3, 2),
                        {"g": ((0, 2, 1), (2, 3, 0, 1))})
