import numpy as np
import pytest

from atgroups import atlevel as at
from atgroups import lemmas
from atgroups import structure as st

MINI = ["D8", "Q8", "D8 x C2", "Q8 x C2", "M2(2,2,1)", "D8 * C8", "M3(1,1,1) x C3", "M3(2,1) * C9"]


@pytest.fixture(scope="module")
def mini():
    return [(label, lemmas._label_group(label)) for label in MINI]


def test_empty_suite_does_not_pass():
    r = lemmas.SuiteResult("x", "nothing")
    assert not r.passed
    r.checked = 1
    assert r.passed
    r.violations.append("bad")
    assert not r.passed and r.as_dict()["violations"] == ["bad"]


def test_corpus_bounds_and_order(corpus):
    assert all(G.order <= lemmas.CORPUS_MAX_ORDER for _, G in corpus)
    names = [n for n, _ in corpus]
    assert len(names) == len(set(names))
    assert names[0] == "C2" and "thm3.7" in names


@pytest.mark.parametrize("suite", ["2.1", "2.3", "2.4", "2.5", "3.2", "3.3", "3.4"])
def test_suites_on_mini_corpus(mini, suite):
    r = lemmas.run_suite(suite, mini)
    assert not r.violations


def test_unknown_suite():
    with pytest.raises(ValueError):
        lemmas.run_suite("9.9")


def test_level_arithmetic_suite_catches_wrong_levels(monkeypatch):
    real = at.at_level
    monkeypatch.setattr(at, "at_level", lambda S, cap=st.DEFAULT_LATTICE_CAP: real(S, cap) + (S.order > 8))
    r = lemmas.level_arithmetic()
    assert r.violations


def test_biconditional_suite_catches_flipped_frattini_flag(mini, monkeypatch):
    real = at.unique_a2

    def flipped(G, cap=st.DEFAULT_LATTICE_CAP):
        found = real(G, cap)
        return None if found is None else (found[0], not found[1])

    monkeypatch.setattr(at, "unique_a2", flipped)
    groups = [(n, G) for n, G in lemmas.corpus(256) if n.startswith("thm3.6.") or n == "thm3.7"]
    assert lemmas.outside_frattini_criterion(groups).violations


def test_omega_group_relations():
    w = np.array([[1, 1, 0], [0, 1, 0], [0, 0, 0]])
    G = lemmas.omega_group(2, w)
    assert G.order == 2**6
    assert st.derived_subgroup(G).order == 8
    assert st.frattini_product(G) <= st.center(G)


def test_omega_minor_suite_checks_something():
    r = lemmas.omega_minors_force_two_a2()
    assert r.checked >= 3 and not r.violations
