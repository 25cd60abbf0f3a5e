import random
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as hs

import oracles
from atgroups import catalog, iso
from atgroups import structure as st
from atgroups.engine import ConcreteGroup
from atgroups.errors import IsoCapExceeded, InvalidParameters

ORDER16 = catalog.candidate_labels(2, 4)
ORDER27 = catalog.candidate_labels(3, 3)


def relabeled(G, seeds):
    """The same group rebuilt from the right-multiplication action of other generators."""
    T = G.table.astype(np.int64)
    perms = [T[:, s] for s in seeds]
    H, _ = ConcreteGroup.from_action(perms, G.prime, [f"s{i}" for i in range(len(seeds))])
    return H


@pytest.mark.parametrize("a, b", list(combinations(ORDER16, 2)))
def test_order16_pairs_against_brute_force(a, b):
    A, B = iso.label_group(a), iso.label_group(b)
    want = oracles.find_isomorphism(A.table.astype(int), B.table.astype(int)) is not None
    assert iso.is_isomorphic(A, B) == want


@pytest.mark.parametrize("label", ORDER16 + ORDER27)
def test_found_map_is_isomorphism(label):
    G = iso.label_group(label)
    H = relabeled(G, list(range(1, G.order)))
    phi = iso.find_isomorphism(G, H)
    assert phi is not None
    assert sorted(phi.tolist()) == list(range(G.order))
    assert iso.is_homomorphism(G, H, phi)


@settings(max_examples=30)
@given(hs.sampled_from(["D8 x C2", "Q8 x C2", "M2(2,2,1)", "M3(2,1) x C3", "D8 * C8", "M2(2,2) x C2"]), hs.integers(0, 2**32))
def test_invariant_under_random_generating_sets(label, seed):
    rnd = random.Random(seed)
    G = iso.label_group(label)
    while True:
        seeds = rnd.sample(range(1, G.order), st.min_gens(G) + rnd.randint(0, 1))
        if st.closure(G, seeds).order == G.order:
            break
    H = relabeled(G, seeds)
    assert iso.is_isomorphic(G, H)
    assert iso.recognize(H) == iso.recognize(G)


def test_fingerprint_distinguishes_d8_q8():
    D, Q = iso.label_group("D8"), iso.label_group("Q8")
    assert iso.fingerprint(D) != iso.fingerprint(Q)
    assert iso.fingerprint(D).cheap() == iso.fingerprint(D, lattice_cap=1).cheap()
    assert iso.fingerprint(D).subgroup_counts == ((1, 1), (2, 5), (4, 3), (8, 1))


def test_cap():
    G = iso.label_group("C2^3")
    with pytest.raises(IsoCapExceeded):
        iso.find_isomorphism(G, G, cap=4)
    with pytest.raises(IsoCapExceeded):
        iso.recognize(G, cap=4)


@pytest.mark.parametrize("label", ["D8", "Q8", "C4 x C2", "M3(1,1,1)", "M3(2,1)", "Q8 x C2", "D8 * C4"])
def test_recognize_known(label):
    assert iso.matches_label(iso.label_group(label), label)
    r = iso.recognize(iso.label_group(label))
    assert iso.is_isomorphic(iso.label_group(r), iso.label_group(label))


def test_recognize_trivial():
    G = iso.label_group("C2")
    assert iso.recognize(st.trivial(G)) == "1"


def test_recognize_subgroup():
    G = iso.label_group("D8 x C2")
    D = st.derived_subgroup(G)
    assert iso.recognize(D) == "C2"


@pytest.mark.parametrize(
    "group, label, expected",
    [("D8 x C2", "D8.C2", True), ("C8", "C4.C2", True), ("C2^3", "C4.C2", False), ("Q8", "C4.C2", True),
     ("C4 x C2", "C2^2.C2", True), ("D8", "C2^2.C2", True), ("Q8", "C2^2.C2", False)],
)
def test_extension_labels(group, label, expected):
    assert iso.matches_label(iso.label_group(group), label) == expected


def test_extension_label_order_mismatch():
    assert iso.label_order("M2(2,2,1).C2") == 64
    assert not iso.matches_label(iso.label_group("M2(2,2,1)"), "M2(2,2,1).C2")


def test_extension_label_has_no_presentation():
    with pytest.raises(InvalidParameters):
        catalog.build_label("D8.C2")


def test_central_product_coincidence_named_non_metacyclic():
    a = iso.label_group("M3(1,1,1) * C9")
    b = iso.label_group("M3(2,1) * C9")
    assert iso.is_isomorphic(a, b)
    assert iso.recognize(b) == "M3(1,1,1) * C9"
