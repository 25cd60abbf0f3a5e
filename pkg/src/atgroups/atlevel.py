"""A_t levels, alpha_k counts, the unique A_2-subgroup and the omega matrix.

A non-abelian p-group is A_t when it has a non-abelian subgroup of index
p^(t-1) and every subgroup of index p^t is abelian.  Abelian groups get
level 0.  Over the subgroup lattice this is the recursion

    level(H) = 0                                   if H is abelian
    level(H) = 1 + max(level(M) : M maximal in H)  otherwise

since a non-abelian subgroup of index p^k sits inside non-abelian
subgroups of every smaller index.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import structure as st
from .engine import ConcreteGroup, log_p
from .errors import DegenerateCommutators, InternalInconsistency, PreconditionFailed
from .structure import DEFAULT_LATTICE_CAP, GroupLike, Subgroup


def lattice_levels(G: ConcreteGroup, cap: int = DEFAULT_LATTICE_CAP) -> list[int]:
    """A_t level of every subgroup in ``lattice(G)``, index-aligned. Cached."""
    cached = G.__dict__.get("_levels")
    if cached is not None:
        return cached
    L = st.lattice(G, cap)
    levels = []
    for S, below in zip(L.subgroups, L.maximal_in):
        if st.is_abelian(S):
            levels.append(0)
        else:
            levels.append(1 + max((levels[j] for j in below), default=0))
    G.__dict__["_levels"] = levels
    return levels


def at_level(S: GroupLike, cap: int = DEFAULT_LATTICE_CAP) -> int:
    if isinstance(S, ConcreteGroup):
        return lattice_levels(S, cap)[-1]
    G = S.group
    if G.order <= cap:
        L = st.lattice(G, cap)
        return lattice_levels(G, cap)[L.find(S)]
    K, _ = st.induced_group(S)
    return at_level(K, cap)


def alpha(G: ConcreteGroup, cap: int = DEFAULT_LATTICE_CAP) -> dict[int, int]:
    """``{k: alpha_k(G)}`` for ``1 <= k <= level(G)``."""
    levels = lattice_levels(G, cap)
    top = levels[-1]
    return {k: levels.count(k) for k in range(1, top + 1)}


def alpha_k(G: ConcreteGroup, k: int, cap: int = DEFAULT_LATTICE_CAP) -> int:
    return lattice_levels(G, cap).count(k)


def subgroups_at_level(G: ConcreteGroup, k: int, cap: int = DEFAULT_LATTICE_CAP) -> list[Subgroup]:
    L = st.lattice(G, cap)
    return [S for S, l in zip(L.subgroups, lattice_levels(G, cap)) if l == k]


def unique_a2(G: ConcreteGroup, cap: int = DEFAULT_LATTICE_CAP) -> tuple[Subgroup, bool] | None:
    """The A_2-subgroup when there is exactly one, with whether it lies in Phi(G)."""
    a2 = subgroups_at_level(G, 2, cap)
    if len(a2) != 1:
        return None
    K = a2[0]
    return K, K <= st.frattini(G)


def is_minimal_nonabelian(S: GroupLike) -> bool:
    """Checked three ways; they must agree."""
    G, S = st._ambient(S)
    by_definition = not st.is_abelian(S) and all(st.is_abelian(M) for M in st.maximal_subgroups(S))
    d = st.min_gens(S)
    by_derived = d == 2 and st.derived_subgroup(S).order == G.prime
    by_center = d == 2 and st.center(S) == st.frattini_product(S)
    if not by_definition == by_derived == by_center:
        raise InternalInconsistency(
            f"minimal non-abelian criteria disagree: definition={by_definition}, "
            f"|G'|=p: {by_derived}, Z=Phi: {by_center}"
        )
    return by_definition


@dataclass
class AtReport:
    level: int
    alpha: dict[int, int]
    unique_a2: Subgroup | None = None
    a2_in_frattini: bool | None = None

    @property
    def alpha1(self) -> int:
        return self.alpha.get(1, 0)

    @property
    def alpha2(self) -> int:
        return self.alpha.get(2, 0)


def analyze(G: ConcreteGroup, cap: int = DEFAULT_LATTICE_CAP) -> AtReport:
    levels = lattice_levels(G, cap)
    found = unique_a2(G, cap)
    return AtReport(
        level=levels[-1],
        alpha=alpha(G, cap),
        unique_a2=found[0] if found else None,
        a2_in_frattini=found[1] if found else None,
    )


# ---------------------------------------------------------------------------
# omega matrix


@dataclass
class OmegaMatrix:
    entries: np.ndarray
    basis: tuple[int, int, int]
    exponents: tuple[int, int, int]
    commutators: tuple[int, int, int]
    prime: int = field(default=2)

    def principal_minors(self) -> list[int]:
        """The three 2x2 principal minors mod p, for index pairs (12), (23), (13)."""
        w = self.entries
        out = []
        for i, j in ((0, 1), (1, 2), (0, 2)):
            out.append(int(w[i, i] * w[j, j] - w[i, j] * w[j, i]) % self.prime)
        return out

    def zero_minors(self) -> int:
        return sum(1 for m in self.principal_minors() if m == 0)


def _greedy_basis(G: ConcreteGroup, q: st.QuotientResult) -> list[int]:
    Q = q.quotient
    proj = q.projection
    p = G.prime
    orders = Q.element_orders
    chosen_q: list[int] = []
    chosen: list[int] = []
    B = st.trivial(Q)
    while B.order < Q.order:
        # order of each element modulo B
        mod_order = np.ones(Q.order, dtype=np.int64)
        cur = np.arange(Q.order)
        k = 1
        outside = ~B.mask[cur]
        while outside.any():
            k *= p
            mod_order[outside] = k
            cur = Q._pth_power[cur]
            outside = ~B.mask[cur]
        good = orders == mod_order
        best = int(mod_order[good].max())
        targets = good & (mod_order == best)
        x = int(np.flatnonzero(targets[proj])[0])
        chosen.append(x)
        chosen_q.append(int(proj[x]))
        B = st.closure(Q, chosen_q)
    return chosen


def omega_matrix(G: ConcreteGroup) -> OmegaMatrix:
    p = G.prime
    D = st.derived_subgroup(G)
    phi = st.frattini_product(G)
    if st.min_gens(G) != 3:
        raise PreconditionFailed("d(G) != 3")
    if not phi <= st.center(G):
        raise PreconditionFailed("Phi(G) is not central")
    if D.order != p**3 or st.exponent(D) != p or not st.is_abelian(D):
        raise PreconditionFailed("G' is not elementary abelian of order p^3")
    q = st.quotient(G, D)
    a = _greedy_basis(G, q)
    if len(a) != 3:
        raise PreconditionFailed("G/G' does not have rank 3")
    x = G.commutator(a[1], a[2])
    y = G.commutator(a[2], a[0])
    z = G.commutator(a[0], a[1])
    coords = {}
    for i, j, k in product(range(p), repeat=3):
        e = G.mul(G.mul(G.pow(x, i), G.pow(y, j)), G.pow(z, k))
        coords[e] = (i, j, k)
    if len(coords) != p**3:
        raise DegenerateCommutators("[a2,a3], [a3,a1], [a1,a2] do not span G'")
    Qord = q.quotient.element_orders
    exps = tuple(log_p(int(Qord[q.projection[ai]]), p) for ai in a)
    rows = [coords[G.pow(ai, p**m)] for ai, m in zip(a, exps)]
    return OmegaMatrix(np.array(rows, dtype=np.int64), tuple(a), exps, (x, y, z), prime=p)


def omega1_lift(G: ConcreteGroup) -> Subgroup:
    """The subgroup L with L/G' = Omega_1(G/G')."""
    q = st.quotient(G, st.derived_subgroup(G))
    om = st.omega_s(q.quotient, 1)
    return Subgroup.from_mask(G, om.mask[q.projection])
