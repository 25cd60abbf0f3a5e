import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as hs

import oracles
from atgroups import catalog, iso
from atgroups import engine
from atgroups.engine import enumerate_group
from atgroups.errors import CosetLimitExceeded, NotAPGroup
from atgroups.presentation import parse_presentation

ORDERS = [
    ("C2", 2), ("C4", 4), ("C2^2", 4), ("C3^3", 27), ("D8", 8), ("Q8", 8),
    ("M2(3,1)", 16), ("M2(2,2,1)", 32), ("M3(2,2)", 81), ("M5(2,1)", 125),
]


def pres(text):
    return parse_presentation(text)


@pytest.fixture(scope="module")
def groups():
    return {label: iso.label_group(label) for label, _ in ORDERS}


@pytest.mark.parametrize("label, order", ORDERS)
def test_orders(groups, label, order):
    assert groups[label].order == order


@pytest.mark.parametrize("label, order", ORDERS)
def test_generators_act_as_bijections(groups, label, order):
    G = groups[label]
    for g in range(G.ngens):
        assert sorted(G.gen_action[g].tolist()) == list(range(order))


@pytest.mark.parametrize("label, order", ORDERS)
def test_relators_hold(groups, label, order):
    G = groups[label]
    for r in G.source.relators():
        assert np.array_equal(G.word_permutation(r), np.arange(order))


@pytest.mark.parametrize("label, order", ORDERS)
def test_table_is_a_latin_square_with_identity(groups, label, order):
    T = groups[label].table
    assert np.array_equal(T[0], np.arange(order)) and np.array_equal(T[:, 0], np.arange(order))
    assert all(len(set(row)) == order for row in T.tolist())
    assert all(len(set(col)) == order for col in T.T.tolist())


@pytest.mark.parametrize("label", ["M2(2,2,1)", "M3(2,2)", "M5(2,1)"])
def test_associativity_1000_triples(groups, label):
    G = groups[label]
    rng = np.random.default_rng(7)
    x, y, z = rng.integers(0, G.order, size=(3, 1000))
    T = G.table.astype(np.int64)
    assert np.array_equal(T[T[x, y], z], T[x, T[y, z]])


@pytest.mark.parametrize("label", ["D8", "Q8", "M2(3,1)"])
def test_associativity_exhaustive(groups, label):
    T = groups[label].table.astype(np.int64)
    n = np.arange(len(T))
    assert np.array_equal(T[T[:, :, None], n[None, None, :]],
                          T[n[:, None, None], T[None, :, :]])


def test_representative_words_evaluate_to_their_element(groups):
    G = groups["M3(2,2)"]
    for x in range(G.order):
        assert G.evaluate(G.repr_word[x]) == x


def test_word_application_agrees_with_table(groups):
    G = groups["M2(2,2,1)"]
    for x in range(0, G.order, 3):
        for y in range(G.order):
            assert G.apply_word(x, G.repr_word[y]) == G.table[x, y]


def test_d8_q8_match_hand_models(groups):
    assert oracles.find_isomorphism(groups["D8"].table.astype(int), oracles.dihedral8_table()) is not None
    assert oracles.find_isomorphism(groups["Q8"].table.astype(int), oracles.quaternion8_table()) is not None
    assert oracles.find_isomorphism(groups["D8"].table.astype(int), oracles.quaternion8_table()) is None


def test_enumeration_is_deterministic():
    P = catalog.build("thm3.7")
    A, B = enumerate_group(P), enumerate_group(P)
    assert np.array_equal(A.gen_action, B.gen_action)
    assert [str(w) for w in A.repr_word] == [str(w) for w in B.repr_word]


def test_not_a_p_group():
    with pytest.raises(NotAPGroup):
        enumerate_group(pres("group c6\np 2\ngens a\nrel a^6 = 1\n"))


def test_infinite_group_hits_limit():
    with pytest.raises(CosetLimitExceeded):
        enumerate_group(pres("group z\np 2\ngens a\n"))
    with pytest.raises(CosetLimitExceeded):
        # free product C2 * C2 is infinite dihedral
        enumerate_group(pres("group dinf\np 2\ngens a b\nrel a^2 = b^2 = 1\n"), max_cosets=2000)


def test_small_limit_is_respected():
    with pytest.raises(CosetLimitExceeded):
        enumerate_group(pres("group c64\np 2\ngens a\nrel a^64 = 1\n"), max_cosets=10)


def test_trivial_group():
    G = enumerate_group(pres("group one\np 3\ngens a\nrel a = 1\n"))
    assert G.order == 1


def test_nilpotent_quotient_fallback_recovers_group():
    # plain scanning of this presentation needs millions of cosets
    prm = catalog.parameter_grid("thm3.6.23")
    prm = [q for q in prm if q["p"] == 3][0]
    G = enumerate_group(catalog.build("thm3.6.23", prm))
    assert G.order == catalog.expected("thm3.6.23", prm).order == 3**7
    for r in G.source.relators():
        assert np.array_equal(G.word_permutation(r), np.arange(G.order))


def test_class_relators_are_commutators():
    rels = engine._class_relators(2, 2)
    # [a,b] and [b,a]
    assert len(rels) == 2
    assert rels[0] == [-1, -2, 1, 2]


@given(hs.sampled_from(["M2(2,2,1)", "M3(2,2)"]), hs.data())
def test_arithmetic_identities(label, data):
    G = iso.label_group(label)
    x = data.draw(hs.integers(0, G.order - 1))
    y = data.draw(hs.integers(0, G.order - 1))
    k = data.draw(hs.integers(-20, 20))
    assert G.mul(x, G.inv(x)) == 0
    assert G.commutator(x, y) == G.mul(G.inv(x), G.conjugate(x, y))
    assert G.pow(x, k) == G.power_map(k)[x]
    assert G.pow(x, G.element_order(x)) == 0
    assert G.mul(G.pow(x, k), G.pow(x, 3)) == G.pow(x, k + 3)


@given(hs.integers(1, 6), hs.sampled_from([2, 3, 5]))
def test_cyclic_orders(n, p):
    if p**n > 4000:
        return
    G = enumerate_group(catalog.cyclic(p, n))
    assert G.order == p**n
    assert sorted(set(G.element_orders.tolist())) == [p**i for i in range(n + 1)]
