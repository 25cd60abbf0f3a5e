"""Isomorphism testing and recognition of small named groups.

Two groups are compared by a cheap invariant fingerprint first, then by
backtracking over images of a minimal generating set.  A candidate map is
extended along a breadth-first spanning tree and checked on every edge of
the Cayley graph at once with numpy.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import catalog
from . import structure as st
from .engine import DEFAULT_MAX_COSETS, ConcreteGroup, enumerate_group, log_p
from .errors import IsoCapExceeded, LatticeCapExceeded
from .structure import DEFAULT_LATTICE_CAP, GroupLike

DEFAULT_ISO_CAP = 4096


def _as_group(G: GroupLike) -> ConcreteGroup:
    if isinstance(G, ConcreteGroup):
        return G
    if G.order == G.group.order:
        return G.group
    return st.induced_group(G)[0]


@dataclass(frozen=True)
class Fingerprint:
    order: int
    exponent: int
    nilpotency_class: int
    min_gens: int
    derived_order: int
    center_order: int
    abelian_invariants: tuple[int, ...]
    order_histogram: tuple[tuple[int, int], ...]
    subgroup_counts: tuple[tuple[int, int], ...] | None = None

    def cheap(self) -> "Fingerprint":
        """The same fingerprint without the lattice part."""
        return Fingerprint(*[getattr(self, f) for f in _CHEAP_FIELDS])


_CHEAP_FIELDS = (
    "order", "exponent", "nilpotency_class", "min_gens", "derived_order",
    "center_order", "abelian_invariants", "order_histogram",
)


def _cheap_fingerprint(G: ConcreteGroup) -> Fingerprint:
    cached = G.__dict__.get("_fp_cheap")
    if cached is not None:
        return cached
    D = st.derived_subgroup(G)
    ab = st.quotient(G, D).quotient
    orders, counts = np.unique(G.element_orders, return_counts=True)
    fp = Fingerprint(
        order=G.order,
        exponent=st.exponent(G),
        nilpotency_class=st.nilpotency_class(G),
        min_gens=st.min_gens(G),
        derived_order=D.order,
        center_order=st.center(G).order,
        abelian_invariants=tuple(st.abelian_invariants(ab)),
        order_histogram=tuple(zip(orders.tolist(), counts.tolist())),
    )
    G.__dict__["_fp_cheap"] = fp
    return fp


def fingerprint(G: GroupLike, lattice_cap: int = DEFAULT_LATTICE_CAP) -> Fingerprint:
    """Invariant vector; subgroup counts per order are included when the lattice fits the cap."""
    G = _as_group(G)
    fp = _cheap_fingerprint(G)
    counts = None
    if G.order <= lattice_cap:
        try:
            sizes = [S.order for S in st.all_subgroups(G, lattice_cap)]
            o, c = np.unique(sizes, return_counts=True)
            counts = tuple(zip(o.tolist(), c.tolist()))
        except LatticeCapExceeded:
            counts = None
    return Fingerprint(*[getattr(fp, f) for f in _CHEAP_FIELDS], subgroup_counts=counts)


# ---------------------------------------------------------------------------
# backtracking


def _burnside_basis(G: ConcreteGroup) -> list[int]:
    """d(G) elements generating G: largest order first, smallest index on ties."""
    phi = st.frattini_product(G)
    orders = G.element_orders
    chosen: list[int] = []
    span = phi
    while span.order < G.order:
        outside = np.flatnonzero(~span.mask)
        best = outside[orders[outside] == orders[outside].max()]
        x = int(best[0])
        chosen.append(x)
        span = st._generate(G, [x], span)
    return chosen


def _signatures(G: ConcreteGroup) -> np.ndarray:
    """Per-element invariants preserved by isomorphisms."""
    T = G.table
    cent = (T == T.T).sum(axis=1)
    Z = st.center(G).mask
    D = st.derived_subgroup(G)
    Phi = st.frattini_product(G)
    q = st.quotient(G, D)
    mod_derived = q.quotient.element_orders[q.projection]
    # order of x^p, a cheap stand-in for the power structure
    pth = G.element_orders[G._pth_power]
    return np.stack(
        [G.element_orders, cent, Z, D.mask, Phi.mask, mod_derived, pth], axis=1
    ).astype(np.int64)


def _spanning(G: ConcreteGroup, gens: list[int]) -> list[tuple[np.ndarray, np.ndarray, np.ndarray]]:
    """BFS levels over ``<gens>`` from 0, each as (nodes, parents, generator index)."""
    T = G.table
    seen = np.zeros(G.order, dtype=bool)
    seen[0] = True
    levels = [(np.array([0]), np.array([0]), np.array([-1]))]
    frontier = np.array([0])
    while len(frontier):
        nodes, parents, via = [], [], []
        for i, s in enumerate(gens):
            img = T[frontier, s].astype(np.int64)
            fresh = ~seen[img]
            # keep the first occurrence of each new element
            img, src = img[fresh], frontier[fresh]
            img, first = np.unique(img, return_index=True)
            seen[img] = True
            nodes.append(img)
            parents.append(src[first])
            via.append(np.full(len(img), i))
        frontier = np.concatenate(nodes)
        if len(frontier):
            levels.append((frontier, np.concatenate(parents), np.concatenate(via)))
    return levels


class _Search:
    def __init__(self, G: ConcreteGroup, H: ConcreteGroup):
        self.G, self.H = G, H
        self.gens = _burnside_basis(G)
        self.TG = G.table.astype(np.int64)
        self.TH = H.table.astype(np.int64)
        sg, sh = _signatures(G), _signatures(H)
        phi_h = st.frattini_product(H)
        self.phi_h = phi_h
        self.cands = []
        for s in self.gens:
            ok = np.all(sh == sg[s], axis=1) & ~phi_h.mask
            self.cands.append(np.flatnonzero(ok))
        self.trees = [_spanning(G, self.gens[: k + 1]) for k in range(len(self.gens))]
        self.members = [np.concatenate([lv[0] for lv in t]) for t in self.trees]

    def _extend(self, k: int, images: list[int]) -> np.ndarray | None:
        """Map on ``<s_1..s_k>`` if the prefix images define an injective homomorphism there."""
        levels = self.trees[k]
        phi = np.full(self.G.order, -1, dtype=np.int64)
        phi[0] = 0
        imgs = np.array(images, dtype=np.int64)
        for nodes, parents, via in levels[1:]:
            phi[nodes] = self.TH[phi[parents], imgs[via]]
        members = self.members[k]
        vals = phi[members]
        if len(np.unique(vals)) != len(members):
            return None
        for i, s in enumerate(self.gens[: k + 1]):
            if not np.array_equal(phi[self.TG[members, s]], self.TH[vals, imgs[i]]):
                return None
        return phi

    def run(self) -> np.ndarray | None:
        d = len(self.gens)
        if d != st.min_gens(self.H):
            return None
        images: list[int] = []
        # images must stay independent modulo Phi(H)
        spans = [self.phi_h]

        def go(k):
            for t in self.cands[k].tolist():
                if spans[-1].mask[t]:
                    continue
                images.append(t)
                phi = self._extend(k, images)
                if phi is not None:
                    if k + 1 == d:
                        return phi
                    spans.append(st._generate(self.H, [t], spans[-1]))
                    found = go(k + 1)
                    spans.pop()
                    if found is not None:
                        return found
                images.pop()
            return None

        return go(0)


def find_isomorphism(G: GroupLike, H: GroupLike, cap: int = DEFAULT_ISO_CAP) -> np.ndarray | None:
    """An isomorphism as an index array ``phi[x]``, or None."""
    G, H = _as_group(G), _as_group(H)
    if G.order != H.order or G.prime != H.prime:
        return None
    if G.order > cap:
        raise IsoCapExceeded(f"order {G.order} exceeds iso cap {cap}")
    if G.order == 1:
        return np.zeros(1, dtype=np.int64)
    if _cheap_fingerprint(G) != _cheap_fingerprint(H):
        return None
    return _Search(G, H).run()


def is_isomorphic(G: GroupLike, H: GroupLike, cap: int = DEFAULT_ISO_CAP) -> bool:
    return find_isomorphism(G, H, cap) is not None


def is_homomorphism(G: ConcreteGroup, H: ConcreteGroup, phi: np.ndarray) -> bool:
    """Exhaustive check of ``phi(xy) = phi(x) phi(y)``."""
    phi = np.asarray(phi, dtype=np.int64)
    return bool(np.array_equal(phi[G.table.astype(np.int64)], H.table.astype(np.int64)[np.ix_(phi, phi)]))


# ---------------------------------------------------------------------------
# recognition


@lru_cache(maxsize=None)
def label_group(label: str, max_cosets: int = DEFAULT_MAX_COSETS) -> ConcreteGroup:
    return enumerate_group(catalog.build_label(label), max_cosets, name=label)


def label_order(label: str) -> int:
    if "." in label:
        base, top = label.split(".", 1)
        return label_order(base) * label_order(top)
    return label_group(label).order


def _matches_extension(G: ConcreteGroup, label: str, cap: int) -> bool:
    """``X.C``: some normal subgroup is isomorphic to X with quotient isomorphic to C."""
    base, top = (label_group(t) for t in label.split(".", 1))
    if base.order * top.order != G.order:
        return False
    for N in st.normal_subgroups(G):
        if N.order != base.order or not is_isomorphic(N, base, cap):
            continue
        if is_isomorphic(st.quotient(G, N).quotient, top, cap):
            return True
    return False


def matches_label(G: GroupLike, label: str, cap: int = DEFAULT_ISO_CAP) -> bool:
    G = _as_group(G)
    if "." in label:
        return _matches_extension(G, label, cap)
    return is_isomorphic(G, label_group(label), cap)


def recognize(G: GroupLike, cap: int = DEFAULT_ISO_CAP) -> str | None:
    """First catalog label of the same order isomorphic to ``G``."""
    G = _as_group(G)
    if G.order > cap:
        raise IsoCapExceeded(f"order {G.order} exceeds iso cap {cap}")
    p = G.prime
    e = log_p(G.order, p)
    if e == 0:
        return "1"
    fp = _cheap_fingerprint(G)
    for label in catalog.candidate_labels(p, e):
        H = label_group(label)
        if _cheap_fingerprint(H) == fp and _Search(G, H).run() is not None:
            return label
    return None
