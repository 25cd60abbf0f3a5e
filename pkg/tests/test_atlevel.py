import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as hs

import oracles
from atgroups import atlevel as at
from atgroups import catalog, iso, lemmas
from atgroups import structure as st
from atgroups.engine import enumerate_group
from atgroups.errors import PreconditionFailed

SMALL = ["C2^3", "D8", "Q8", "M2(3,1)", "M2(2,2,1)", "M3(1,1,1)", "D8 x C2", "Q8 x C2", "D8 x C4", "M2(2,2) x C2",
         "D8 * C8", "M3(2,1) x C3"]


@pytest.mark.parametrize("label", SMALL)
def test_levels_match_recursive_definition(label):
    G = iso.label_group(label)
    T = G.table.astype(int)
    want = oracles.levels(T)
    L = st.lattice(G)
    got = at.lattice_levels(G)
    assert {S.mask.tobytes(): lv for S, lv in zip(L.subgroups, got)} == want


@pytest.mark.parametrize(
    "label, level",
    [("C4 x C2", 0), ("D8", 1), ("Q8", 1), ("M3(2,1)", 1), ("D8 x C2", 2), ("M2(2,2,1)", 1), ("D8 x C2^2", 3)],
)
def test_level_values(label, level):
    assert at.at_level(iso.label_group(label)) == level


def test_level_index_definition_on_d8xc4():
    # A_t: some subgroup of index p^(t-1) is non-abelian, all of index p^t are abelian
    G = iso.label_group("D8 x C4")
    t = at.at_level(G)
    subs = st.all_subgroups(G)
    by_index = lambda k: [S for S in subs if S.order * 2**k == G.order]
    assert any(not st.is_abelian(S) for S in by_index(t - 1))
    assert all(st.is_abelian(S) for S in by_index(t))


def test_alpha_counts_on_d8xc2():
    G = iso.label_group("D8 x C2")
    T = G.table.astype(int)
    lv = list(oracles.levels(T).values())
    assert at.alpha(G) == {1: lv.count(1), 2: lv.count(2)}
    assert at.alpha_k(G, 2) == 1


def test_subgroup_level_by_induced_group():
    G = iso.label_group("D8 x C4")
    for S in st.all_subgroups(G)[::7]:
        K, _ = st.induced_group(S)
        assert at.at_level(S) == at.at_level(K)


def test_unique_a2_of_order_64_group():
    G = enumerate_group(catalog.build("thm3.7"))
    K, in_phi = at.unique_a2(G)
    assert in_phi and K == st.frattini(G)


def test_unique_a2_absent_when_several():
    # D8 x C2 sits in D8 x C2^2 three times
    G = iso.label_group("D8 x C2^2")
    assert at.alpha_k(G, 2) >= 2
    assert at.unique_a2(G) is None


@pytest.mark.parametrize("label", ["D8", "Q8", "M3(2,1)", "M2(2,2,1)", "C4 x C2", "D8 x C2"])
def test_minimal_nonabelian_three_ways(label):
    G = iso.label_group(label)
    assert at.is_minimal_nonabelian(G) == (at.at_level(G) == 1)


def test_omega1_lift():
    G = iso.label_group("M3(2,1) x C9")
    L = at.omega1_lift(G)
    D = st.derived_subgroup(G)
    assert D <= L
    q = st.quotient(G, D)
    assert L.order // D.order == st.omega_s(q.quotient, 1).order


def test_omega_matrix_rows_hold():
    G = lemmas.omega_group(3, np.diag([1, 0, 0]))
    om = at.omega_matrix(G)
    x, y, z = om.commutators
    for ai, m, row in zip(om.basis, om.exponents, om.entries):
        rhs = G.mul(G.mul(G.pow(x, int(row[0])), G.pow(y, int(row[1]))), G.pow(z, int(row[2])))
        assert G.pow(ai, 3**m) == rhs


def test_omega_matrix_zero():
    G = lemmas.omega_group(2, np.zeros((3, 3)))
    om = at.omega_matrix(G)
    assert om.zero_minors() == 3
    assert at.alpha_k(G, 2) >= 2


def test_omega_matrix_preconditions():
    with pytest.raises(PreconditionFailed):
        at.omega_matrix(iso.label_group("D8"))


@settings(max_examples=15)
@given(hs.lists(hs.integers(0, 1), min_size=9, max_size=9))
def test_omega_minors_imply_alpha2(entries):
    w = np.array(entries).reshape(3, 3)
    G = lemmas.omega_group(2, w)
    try:
        om = at.omega_matrix(G)
    except PreconditionFailed:
        return
    if om.zero_minors() >= 2:
        assert at.alpha_k(G, 2) >= 2


@given(hs.sampled_from(SMALL))
def test_maximal_subgroup_levels_bounded(label):
    # level drops by at most one to some maximal subgroup, never rises
    G = iso.label_group(label)
    t = at.at_level(G)
    ls = [at.at_level(M) for M in st.maximal_subgroups(G)]
    assert max(ls) == max(t - 1, 0)
