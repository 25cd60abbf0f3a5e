"""Property suites for the structural facts the catalog relies on, run over a built-in corpus.

Each suite returns a :class:`SuiteResult` with the number of instances
checked and a description of every violation.  A suite with no
applicable instance reports ``checked == 0`` rather than passing silently.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

import numpy as np

from . import atlevel as at
from . import catalog
from . import structure as st
from .engine import ConcreteGroup, enumerate_group, log_p
from .errors import InternalInconsistency, PreconditionFailed
from .presentation import parse_presentation
from .structure import Subgroup

CORPUS_MAX_ORDER = 729


@dataclass
class SuiteResult:
    suite: str
    title: str
    checked: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.checked > 0 and not self.violations

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "title": self.title,
            "checked": self.checked,
            "violations": list(self.violations),
            "passed": self.passed,
        }


# ---------------------------------------------------------------------------
# corpus


@lru_cache(maxsize=None)
def _catalog_group(id: str, key: tuple) -> ConcreteGroup:
    return enumerate_group(catalog.build(id, dict(key)))


@lru_cache(maxsize=None)
def _label_group(label: str) -> ConcreteGroup:
    return enumerate_group(catalog.build_label(label), name=label)


def _label_corpus(max_order: int) -> list[str]:
    labels = []
    for p, top in ((2, 6), (3, 5), (5, 3)):
        for e in range(1, top + 1):
            if p**e > max_order:
                break
            labels += catalog.candidate_labels(p, e)
    return labels


def corpus(max_order: int = CORPUS_MAX_ORDER, caps: catalog.Caps = catalog.Caps()) -> list[tuple[str, ConcreteGroup]]:
    """Named groups (small catalog labels) then catalog builds, each of order <= max_order."""
    out = []
    for label in _label_corpus(max_order):
        out.append((label, _label_group(label)))
    ids = ["thm3.1"] + catalog.ENTRY_IDS + ["mp-nm", "mp-nm1"]
    for id in ids:
        for prm in catalog.parameter_grid(id, caps):
            if catalog.expected(id, prm).order > max_order:
                continue
            name = id + ("" if not prm else " " + ",".join(f"{k}={prm[k]}" for k in sorted(prm)))
            out.append((name, _catalog_group(id, tuple(sorted(prm.items())))))
    return out


# ---------------------------------------------------------------------------
# suites


def minimal_nonabelian_criteria(groups, max_order: int = 64) -> SuiteResult:
    res = SuiteResult("2.1", "minimal non-abelian: definition, d=2 and |G'|=p, d=2 and Z=Phi agree")
    for name, G in groups:
        if G.order > max_order:
            continue
        for S in st.all_subgroups(G):
            res.checked += 1
            try:
                at.is_minimal_nonabelian(S)
            except InternalInconsistency as exc:
                res.violations.append(f"{name}: subgroup of order {S.order}: {exc}")
    return res


def _level_arithmetic_instances():
    """Direct instances (M, A label) and central ones (M, cyclic factor orders of A)."""
    direct = []
    for M in ["D8", "Q8", "M2(2,2)", "M2(3,1)", "M2(2,1,1)", "D8 x C2", "Q8 x C2", "M3(1,1,1)", "M3(2,1)", "M5(1,1,1)"]:
        p = _label_group(M).prime
        for A in (f"C{p}", f"C{p * p}", f"C{p}^2"):
            if _label_group(M).order * _label_group(A).order <= 729:
                direct.append((M, A))
    central = []
    for M in ["D8", "Q8", "M2(2,2,1)", "D8 x C2", "M3(1,1,1)", "M3(2,1)"]:
        p = _label_group(M).prime
        for A in ([p**2], [p**3], [p**2, p]):
            if _label_group(M).order * int(np.prod(A)) // p <= 729:
                central.append((M, A))
    return direct, central


def _abelian_group(p: int, orders: list[int]) -> ConcreteGroup:
    return _label_group(" x ".join(f"C{n}" for n in orders))


def level_arithmetic() -> SuiteResult:
    res = SuiteResult("2.2", "M x A and M * A (M cap A = M') raise the level by k")
    direct, central = _level_arithmetic_instances()
    for M, A in direct:
        GM, GA = _label_group(M), _label_group(A)
        t = at.at_level(GM)
        k = log_p(GA.order, GA.prime)
        G = st.direct_product(GM, GA)
        res.checked += 1
        got = at.at_level(G)
        if got != t + k:
            res.violations.append(f"{M} x {A}: level {got}, expected {t} + {k}")
    for M, A in central:
        GM = _label_group(M)
        p = GM.prime
        GA = _abelian_group(p, A)
        t = at.at_level(GM)
        k = log_p(GA.order, p) - 1
        D = st.derived_subgroup(GM)
        if D.order != p:
            continue
        m = int(D.members[1])
        # an element of order p in the first (largest) cyclic factor of A
        a = GA.pow(GA.generator_elements()[0], A[0] // p)
        G = st.central_product(GM, GA, [(m, a)])
        res.checked += 1
        got = at.at_level(G)
        if G.order != GM.order * GA.order // p:
            res.violations.append(f"{M} * {A}: order {G.order}")
        elif got != t + k:
            res.violations.append(f"{M} * {'x'.join(f'C{n}' for n in A)}: level {got}, expected {t} + {k}")
    return res


def derived_order_bound(groups) -> SuiteResult:
    res = SuiteResult("2.3", "|G'| <= p |M1' M2'| for distinct maximal M1, M2")
    for name, G in groups:
        D = st.derived_subgroup(G)
        derived = [st.derived_subgroup(M) for M in st.maximal_subgroups(G)]
        for D1, D2 in combinations(derived, 2):
            res.checked += 1
            if D.order > G.prime * st.join(D1, D2).order:
                res.violations.append(f"{name}: |G'| = {D.order} > p |M1'M2'| = {G.prime * st.join(D1, D2).order}")
    return res


def _normal_in_frattini(G: ConcreteGroup) -> list[Subgroup]:
    phi = st.frattini(G)
    return [N for N in st.normal_subgroups(G) if N <= phi and N.order > 1]


def normal_without_pp_is_cyclic(groups) -> SuiteResult:
    res = SuiteResult("2.4", "normal N <= Phi(G) without a normal (p,p) subgroup is cyclic")
    for name, G in groups:
        normals = st.normal_subgroups(G)
        pp = [V for V in normals if V.order == G.prime**2 and not st.is_cyclic(V)]
        for N in _normal_in_frattini(G):
            if any(V <= N for V in pp):
                continue
            res.checked += 1
            if not st.is_cyclic(N):
                res.violations.append(f"{name}: N of order {N.order} is not cyclic")
    return res


def cyclic_center_is_cyclic(groups) -> SuiteResult:
    res = SuiteResult("2.5", "normal N <= Phi(G) with Z(N) cyclic is cyclic")
    for name, G in groups:
        for N in _normal_in_frattini(G):
            if not st.is_cyclic(st.center(N)):
                continue
            res.checked += 1
            if not st.is_cyclic(N):
                res.violations.append(f"{name}: N of order {N.order} has cyclic center but is not cyclic")
    return res


def central_product_family(caps: catalog.Caps = catalog.Caps(max_order=5**6), lattice_cap: int = 5**6) -> SuiteResult:
    res = SuiteResult("3.1", "H * C has a unique A_2-subgroup K, and K/G' = Omega_1(G/G')")
    for prm in catalog.parameter_grid("thm3.1", caps):
        G = _catalog_group("thm3.1", tuple(sorted(prm.items())))
        if G.order > lattice_cap:
            continue
        res.checked += 1
        a2 = at.alpha_k(G, 2, lattice_cap)
        found = at.unique_a2(G, lattice_cap)
        if a2 != 1 or found is None:
            res.violations.append(f"thm3.1 {prm}: alpha_2 = {a2}")
        elif found[0] != at.omega1_lift(G):
            res.violations.append(f"thm3.1 {prm}: K/G' != Omega_1(G/G')")
    return res


def small_derived_outside_frattini(groups) -> SuiteResult:
    res = SuiteResult("3.2", "unique A_2-subgroup and |G'| = p imply K not in Phi(G)")
    for name, G in groups:
        if st.derived_subgroup(G).order != G.prime:
            continue
        found = at.unique_a2(G)
        if found is None:
            continue
        res.checked += 1
        if found[1]:
            res.violations.append(f"{name}: K <= Phi(G)")
    return res


def _maximal_levels(G: ConcreteGroup) -> list[int]:
    L = st.lattice(G)
    levels = at.lattice_levels(G)
    return [levels[j] for j in L.maximal_in[-1]]


def outside_frattini_criterion(groups) -> SuiteResult:
    res = SuiteResult("3.3", "unique A_2 and |G'| >= p^2: K not in Phi iff an A_1-subgroup of index p exists")
    for name, G in groups:
        if st.derived_subgroup(G).order < G.prime**2:
            continue
        found = at.unique_a2(G)
        if found is None:
            continue
        res.checked += 1
        outside = not found[1]
        has_a1 = 1 in _maximal_levels(G)
        if outside != has_a1:
            res.violations.append(f"{name}: K not in Phi = {outside}, A_1 of index p = {has_a1}")
    return res


def unique_a1_forces_two_generators(groups) -> SuiteResult:
    res = SuiteResult("3.4", "unique A_1 of index p, |G'| >= p^2 and unique A_2 force a 2-generator 2-group")
    for name, G in groups:
        if st.derived_subgroup(G).order < G.prime**2:
            continue
        L = st.lattice(G)
        levels = at.lattice_levels(G)
        a1 = [j for j in L.maximal_in[-1] if levels[j] == 1]
        if len(a1) != 1 or at.unique_a2(G) is None:
            continue
        res.checked += 1
        abelian_max = sum(1 for j in L.maximal_in[-1] if levels[j] == 0)
        if G.prime != 2 or st.min_gens(G) != 2 or abelian_max == 0:
            res.violations.append(f"{name}: p = {G.prime}, d = {st.min_gens(G)}, abelian maximal = {abelian_max}")
            continue
        A = L.subgroups[a1[0]]
        Q = st.quotient(G, st.derived_subgroup(A)).quotient
        ab = sum(1 for M in st.maximal_subgroups(Q) if st.is_abelian(M))
        if ab < 2:
            res.violations.append(f"{name}: G/A' has {ab} abelian maximal subgroups")
    return res


def omega_group(p: int, omega) -> ConcreteGroup:
    """Class-2 group on a1, a2, a3 with x = [a2,a3], y = [a3,a1], z = [a1,a2]
    central of order p and a_i^p = x^w_i1 y^w_i2 z^w_i3."""
    w = np.asarray(omega, dtype=np.int64) % p
    lines = [f"group omega{p}_" + "".join(map(str, w.ravel())), f"p {p}", "gens a1 a2 a3 x y z"]
    lines += ["rel [a2,a3] = x", "rel [a3,a1] = y", "rel [a1,a2] = z"]
    lines += [f"rel {g}^{p} = 1" for g in "xyz"]
    lines += [f"rel [{g},{h}] = 1" for g in "xyz" for h in ("a1", "a2", "a3")]
    lines += ["rel [x,y] = [x,z] = [y,z] = 1"]
    for i in range(3):
        rhs = " ".join(f"{g}^{int(e)}" for g, e in zip("xyz", w[i]) if e) or "1"
        lines.append(f"rel a{i + 1}^{p} = {rhs}")
    return enumerate_group(parse_presentation("\n".join(lines) + "\n"))


OMEGA_SAMPLES = {
    2: [np.zeros((3, 3)), np.eye(3), np.diag([1, 0, 0]), [[0, 1, 0], [0, 0, 0], [0, 0, 1]], [[1, 1, 0], [0, 1, 0], [0, 0, 0]],
        [[0, 1, 0], [1, 0, 0], [0, 0, 1]]],
    3: [np.zeros((3, 3)), np.diag([1, 0, 0]), [[1, 2, 0], [0, 0, 1], [0, 0, 0]], np.eye(3)],
}


def omega_minors_force_two_a2(samples=None) -> SuiteResult:
    res = SuiteResult("3.5", "omega matrix with >= 2 zero principal minors implies alpha_2 >= 2")
    samples = OMEGA_SAMPLES if samples is None else samples
    for p, mats in samples.items():
        for w in mats:
            G = omega_group(p, w)
            try:
                om = at.omega_matrix(G)
            except PreconditionFailed:
                continue
            # the rows must hold verbatim in G
            x, y, z = om.commutators
            for ai, m, row in zip(om.basis, om.exponents, om.entries):
                lhs = G.pow(ai, p**m)
                rhs = G.mul(G.mul(G.pow(x, int(row[0])), G.pow(y, int(row[1]))), G.pow(z, int(row[2])))
                if lhs != rhs:
                    res.violations.append(f"{G.name}: omega row does not hold")
            if om.zero_minors() < 2:
                continue
            res.checked += 1
            a2 = at.alpha_k(G, 2)
            if a2 < 2:
                res.violations.append(f"{G.name}: {om.zero_minors()} zero minors but alpha_2 = {a2}")
    return res


SUITES = ["2.1", "2.2", "2.3", "2.4", "2.5", "3.1", "3.2", "3.3", "3.4", "3.5"]


def run_suite(name: str, groups=None) -> SuiteResult:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITES}")
    if name == "2.2":
        return level_arithmetic()
    if name == "3.1":
        return central_product_family()
    if name == "3.5":
        return omega_minors_force_two_a2()
    groups = corpus() if groups is None else groups
    fn = {
        "2.1": minimal_nonabelian_criteria, "2.3": derived_order_bound, "2.4": normal_without_pp_is_cyclic, "2.5": cyclic_center_is_cyclic,
        "3.2": small_derived_outside_frattini, "3.3": outside_frattini_criterion, "3.4": unique_a1_forces_two_generators,
    }[name]
    return fn(groups)
