"""Subgroups of a ConcreteGroup and the structural algorithms built on them.

Every subgroup lives inside an ambient group and is computed with the
ambient Cayley table.  Functions that take ``H`` accept either a
:class:`ConcreteGroup` (meaning the whole group) or a :class:`Subgroup`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence, Union

import numpy as np

from .engine import DEFAULT_MAX_COSETS, ConcreteGroup, enumerate_group, log_p
from .errors import (
    BadIdentification,
    InternalInconsistency,
    LatticeCapExceeded,
    NotAbelian,
    NotNormal,
)
from .presentation import FreeWord, Presentation, commutator

DEFAULT_LATTICE_CAP = 6561


class Subgroup:
    """A subgroup of ``group``, held as the sorted array of its members."""

    def __init__(self, group: ConcreteGroup, members: np.ndarray, gens: Sequence[int] | None = None):
        self.group = group
        self.members = np.asarray(members, dtype=np.int64)
        self.members.setflags(write=False)
        if gens is not None:
            self.__dict__["gens"] = tuple(int(g) for g in gens if g != 0)

    @classmethod
    def from_mask(cls, group, mask, gens=None) -> "Subgroup":
        return cls(group, np.flatnonzero(mask), gens)

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.group.order, dtype=bool)
        m[self.members] = True
        m.setflags(write=False)
        return m

    @cached_property
    def key(self) -> bytes:
        return self.members.tobytes()

    @cached_property
    def gens(self) -> tuple[int, ...]:
        return _small_generating_set(self.group, self.members)

    def __contains__(self, x) -> bool:
        return bool(self.mask[int(x)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.group is other.group and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __le__(self, other: "Subgroup") -> bool:
        return self.order <= other.order and bool(other.mask[self.members].all())

    def __lt__(self, other: "Subgroup") -> bool:
        return self.order < other.order and self <= other

    def __repr__(self):
        return f"<Subgroup of order {self.order} in {self.group.name}>"

    def words(self) -> list[str]:
        return [self.group.element_word(g) for g in self.gens]


GroupLike = Union[ConcreteGroup, Subgroup]


def whole(G: GroupLike) -> Subgroup:
    if isinstance(G, Subgroup):
        return G
    cached = G.__dict__.get("_whole")
    if cached is None:
        cached = Subgroup(G, np.arange(G.order), G.generator_elements())
        G.__dict__["_whole"] = cached
    return cached


def trivial(G: GroupLike) -> Subgroup:
    G = whole(G).group
    return Subgroup(G, np.array([0]), ())


def _ambient(H: GroupLike) -> tuple[ConcreteGroup, Subgroup]:
    H = whole(H)
    return H.group, H


# ---------------------------------------------------------------------------
# closures


def _close(G: ConcreteGroup, gens: Sequence[int], mask: np.ndarray | None = None) -> np.ndarray:
    """Mask of ``<gens>`` (or of ``<start, gens>`` when ``mask`` is a subgroup mask)."""
    T = G.table
    gens = np.asarray(list(gens), dtype=np.int64)
    if mask is None:
        mask = np.zeros(G.order, dtype=bool)
        mask[0] = True
        frontier = np.array([0])
    else:
        mask = mask.copy()
        frontier = np.flatnonzero(mask)
    if len(gens) == 0:
        return mask
    while len(frontier):
        new = T[frontier][:, gens].ravel().astype(np.int64)
        new = np.unique(new[~mask[new]])
        mask[new] = True
        frontier = new
    return mask


def _generate(G: ConcreteGroup, seeds: Iterable[int], base: Subgroup | None = None) -> Subgroup:
    """Subgroup generated by ``base`` and ``seeds``, adding seeds one at a time."""
    if base is None:
        mask = np.zeros(G.order, dtype=bool)
        mask[0] = True
        gens: list[int] = []
    else:
        mask = base.mask.copy()
        gens = list(base.gens)
    for s in seeds:
        s = int(s)
        if not mask[s]:
            gens.append(s)
            mask = _close(G, gens)
    return Subgroup.from_mask(G, mask, gens)


def _small_generating_set(G: ConcreteGroup, members: np.ndarray) -> tuple[int, ...]:
    # greedy by descending element order, lowest index first on ties
    orders = G.element_orders[members]
    ranked = members[np.lexsort((members, -orders))]
    target = len(members)
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    gens: list[int] = []
    size = 1
    for x in ranked:
        if size == target:
            break
        if not mask[x]:
            gens.append(int(x))
            mask = _close(G, gens)
            size = int(mask.sum())
    return tuple(gens)


def closure(G: GroupLike, seed: Iterable[int]) -> Subgroup:
    G, _ = _ambient(G)
    return _generate(G, seed)


def subgroup_from_words(G: ConcreteGroup, words: Sequence[str | FreeWord]) -> Subgroup:
    elems = []
    for w in words:
        if isinstance(w, str):
            from .presentation import parse_word

            w = parse_word(w, G.gen_names)
        elems.append(G.evaluate(w))
    return closure(G, elems)


def join(A: Subgroup, B: Subgroup) -> Subgroup:
    return _generate(A.group, B.gens, base=A)


def intersection(A: Subgroup, B: Subgroup) -> Subgroup:
    return Subgroup.from_mask(A.group, A.mask & B.mask)


# ---------------------------------------------------------------------------
# conjugation-based subgroups


def _conj_all(G: ConcreteGroup, h: int, xs: np.ndarray) -> np.ndarray:
    """``x^-1 h x`` for every ``x`` in ``xs``."""
    T = G.table
    inv = G.inverses
    return T[T[inv[xs], h].astype(np.int64), xs].astype(np.int64)


def normal_closure(H: GroupLike, S: Subgroup) -> Subgroup:
    """Smallest subgroup of ``H`` containing ``S`` and normalised by ``H``."""
    G, H = _ambient(H)
    S = _generate(G, S.gens)
    hg = np.asarray(H.gens, dtype=np.int64)
    while True:
        added = False
        for s in S.gens:
            conj = _conj_all(G, s, hg)
            outside = conj[~S.mask[conj]]
            if len(outside):
                S = _generate(G, outside, base=S)
                added = True
                break
        if not added:
            return S


def commutator_subgroup(A: Subgroup, B: Subgroup, within: GroupLike | None = None) -> Subgroup:
    """``[A, B]``: normal closure of generator commutators in ``<A, B>``."""
    G = A.group
    comms = [G.commutator(a, b) for a in A.gens for b in B.gens]
    seed = _generate(G, comms)
    return normal_closure(within if within is not None else join(A, B), seed)


def derived_subgroup(H: GroupLike) -> Subgroup:
    G, H = _ambient(H)
    gens = H.gens
    comms = [G.commutator(gens[i], gens[j]) for i in range(len(gens)) for j in range(i + 1, len(gens))]
    return normal_closure(H, _generate(G, comms))


def derived_subgroup_all_pairs(H: GroupLike) -> Subgroup:
    """Independent check: closure of every commutator of two members."""
    G, H = _ambient(H)
    T = G.table
    inv = G.inverses
    m = H.members
    comms = T[T[inv[m][:, None], inv[m][None, :]].astype(np.int64), T[m][:, m].astype(np.int64)]
    return _generate(G, np.unique(comms))


def center(H: GroupLike) -> Subgroup:
    return centralizer(H, whole(H))


def centralizer(H: GroupLike, S: Subgroup) -> Subgroup:
    G, H = _ambient(H)
    T = G.table
    m = H.members
    ok = np.ones(len(m), dtype=bool)
    for s in S.gens:
        ok &= T[m, s] == T[s, m]
    return Subgroup(G, m[ok])


def normalizer(H: GroupLike, S: Subgroup) -> Subgroup:
    G, H = _ambient(H)
    m = H.members
    ok = np.ones(len(m), dtype=bool)
    for s in S.gens:
        ok &= S.mask[_conj_all(G, s, m)]
    return Subgroup(G, m[ok])


def is_normal(H: GroupLike, S: Subgroup) -> bool:
    G, H = _ambient(H)
    hg = np.asarray(H.gens, dtype=np.int64)
    if not len(hg):
        return True
    return all(S.mask[_conj_all(G, s, hg)].all() for s in S.gens)


# ---------------------------------------------------------------------------
# power subgroups and Frattini


def omega_s(H: GroupLike, s: int = 1) -> Subgroup:
    G, H = _ambient(H)
    pm = G.power_map(G.prime**s)
    return _generate(G, H.members[pm[H.members] == 0])


def agemo_s(H: GroupLike, s: int = 1) -> Subgroup:
    G, H = _ambient(H)
    pm = G.power_map(G.prime**s)
    return _generate(G, np.unique(pm[H.members]))


def frattini_product(H: GroupLike) -> Subgroup:
    """``H' * agemo_1(H)``."""
    G, H = _ambient(H)
    D = derived_subgroup(H)
    pm = G._pth_power
    return _generate(G, np.unique(pm[H.members]), base=D)


def frattini(H: GroupLike) -> Subgroup:
    """Frattini subgroup, cross-checked against the intersection of maximal subgroups."""
    G, H = _ambient(H)
    phi = frattini_product(H)
    maxes = maximal_subgroups(H)
    mask = H.mask.copy()
    for M in maxes:
        mask &= M.mask
    if not np.array_equal(mask, phi.mask):
        raise InternalInconsistency("G' agemo_1(G) differs from the intersection of maximal subgroups")
    expected = sum(G.prime**i for i in range(log_p(H.order // phi.order, G.prime)))
    if len(maxes) != expected:
        raise InternalInconsistency(f"{len(maxes)} maximal subgroups, expected {expected}")
    return phi


# ---------------------------------------------------------------------------
# GF(p) linear algebra


def gfp_row_reduce(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(p); returns (rref, pivot columns)."""
    A = np.array(A, dtype=np.int64) % p
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if not len(nz):
            continue
        k = r + nz[0]
        A[[r, k]] = A[[k, r]]
        A[r] = (A[r] * pow(int(A[r, c]), -1, p)) % p
        others = np.flatnonzero(A[:, c])
        others = others[others != r]
        if len(others):
            A[others] = (A[others] - np.outer(A[others, c], A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def gfp_nullspace(A: np.ndarray, p: int, ncols: int | None = None) -> np.ndarray:
    """Basis of ``{v : A v = 0}`` over GF(p), one vector per row."""
    A = np.asarray(A, dtype=np.int64)
    ncols = A.shape[1] if ncols is None else ncols
    if A.size == 0:
        return np.eye(ncols, dtype=np.int64)
    R, pivots = gfp_row_reduce(A, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = np.zeros(ncols, dtype=np.int64)
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-R[i, f]) % p
        basis.append(v)
    return np.array(basis, dtype=np.int64).reshape(len(basis), ncols)


def _projective_points(basis: np.ndarray, p: int) -> list[np.ndarray]:
    """Nonzero vectors of the row span, one per line (first nonzero coordinate 1)."""
    d = len(basis)
    out = []
    for coeffs in product(range(p), repeat=d):
        nz = [c for c in coeffs if c]
        if not nz or nz[0] != 1:
            continue
        out.append((np.asarray(coeffs) @ basis) % p)
    return out


def _exponent_sums(G: ConcreteGroup) -> np.ndarray:
    C = np.zeros((G.order, G.ngens), dtype=np.int64)
    for x, w in enumerate(G.repr_word):
        for g, e in w.letters:
            C[x, g] += e
    return C


def hom_kernels_to_cp(G: ConcreteGroup) -> list[Subgroup]:
    """Kernels of the nonzero homomorphisms ``G -> C_p``, one per kernel.

    A map on generators extends to a homomorphism iff it is constant along
    every Cayley-graph edge, which is a linear system over GF(p).
    """
    p = G.prime
    C = _exponent_sums(G) % p
    rows = []
    for g in range(G.ngens):
        e = np.zeros(G.ngens, dtype=np.int64)
        e[g] = 1
        rows.append((C + e - C[G.gen_action[g]]) % p)
    A = np.unique(np.concatenate(rows), axis=0) if rows else np.zeros((0, 0), dtype=np.int64)
    basis = gfp_nullspace(A, p, G.ngens)
    kernels = []
    for v in _projective_points(basis, p):
        kernels.append(Subgroup(G, np.flatnonzero((C @ v) % p == 0)))
    kernels.sort(key=lambda K: K.members.tolist())
    return kernels


def maximal_subgroups(H: GroupLike) -> list[Subgroup]:
    """Index-p subgroups of ``H`` (kernels of homomorphisms onto C_p)."""
    G, H = _ambient(H)
    if H.order == G.order:
        return hom_kernels_to_cp(G)
    K, emb = induced_group(H)
    out = [Subgroup(G, np.sort(emb[M.members])) for M in hom_kernels_to_cp(K)]
    out.sort(key=lambda M: M.members.tolist())
    return out


# ---------------------------------------------------------------------------
# numerical invariants


def is_abelian(H: GroupLike) -> bool:
    G, H = _ambient(H)
    T = G.table
    g = list(H.gens)
    return all(T[g[i], g[j]] == T[g[j], g[i]] for i in range(len(g)) for j in range(i + 1, len(g)))


def is_cyclic(H: GroupLike) -> bool:
    G, H = _ambient(H)
    return int(G.element_orders[H.members].max()) == H.order


def exponent(H: GroupLike) -> int:
    G, H = _ambient(H)
    return int(G.element_orders[H.members].max())


def min_gens(H: GroupLike) -> int:
    """Burnside basis size ``log_p |H : Phi(H)|``."""
    G, H = _ambient(H)
    return log_p(H.order // frattini_product(H).order, G.prime)


def lower_central_series(H: GroupLike) -> list[Subgroup]:
    G, H = _ambient(H)
    series = [H]
    while series[-1].order > 1:
        nxt = commutator_subgroup(series[-1], H, within=H)
        if nxt.order == series[-1].order:
            break
        series.append(nxt)
    return series


def nilpotency_class(H: GroupLike) -> int:
    return len(lower_central_series(H)) - 1


def abelian_invariants(H: GroupLike) -> list[int]:
    """Orders of the cyclic factors, largest first."""
    G, H = _ambient(H)
    if not is_abelian(H):
        raise NotAbelian("abelian_invariants needs an abelian group")
    return _invariants_from_orders(G.element_orders[H.members], G.prime)


def _invariants_from_orders(orders: np.ndarray, p: int) -> list[int]:
    # |Omega_k| = p^{r_k}; factors of order >= p^k number r_k - r_{k-1}
    out = []
    top = log_p(int(orders.max()), p)
    r = [0] + [log_p(int((orders <= p**k).sum()), p) for k in range(1, top + 1)]
    counts = [r[k] - r[k - 1] for k in range(1, top + 1)] + [0]
    for k in range(top, 0, -1):
        out.extend([p**k] * (counts[k - 1] - counts[k]))
    return out


# ---------------------------------------------------------------------------
# materialisation, quotients, products


def induced_group(S: Subgroup, name: str | None = None) -> tuple[ConcreteGroup, np.ndarray]:
    """``S`` as a standalone group; ``embedding[i]`` is the ambient element of ``i``."""
    G = S.group
    m = S.members
    T = G.table
    perms = [np.searchsorted(m, T[m, s].astype(np.int64)) for s in S.gens]
    names = [f"g{i + 1}" for i in range(len(perms))]
    K, labels = ConcreteGroup.from_action(perms, G.prime, names, name=name or f"sub({G.name})")
    if not S.gens:
        return K, np.array([0])
    return K, m[labels]


@dataclass
class QuotientResult:
    quotient: ConcreteGroup
    projection: np.ndarray
    kernel: Subgroup


def quotient(G: ConcreteGroup, N: Subgroup) -> QuotientResult:
    if not is_normal(G, N):
        raise NotNormal("quotient by a non-normal subgroup")
    T = G.table
    # coset label = smallest member of xN
    labels = T[:, N.members].min(axis=1).astype(np.int64)
    reps, dense = np.unique(labels, return_inverse=True)
    perms = [dense[labels[G.gen_action[g][reps]]] for g in range(G.ngens)]
    source = None
    if G.source is not None:
        extra = tuple((G.repr_word[n], FreeWord()) for n in N.gens)
        source = Presentation(G.source.name + "_q", G.prime, G.source.generators, G.source.relations + extra)
    Q, order = ConcreteGroup.from_action(perms, G.prime, G.gen_names, source=source, name=f"{G.name}/N")
    position = np.empty(len(order), dtype=np.int64)
    position[order] = np.arange(len(order))
    return QuotientResult(Q, position[dense], N)


def presentation_of(G: ConcreteGroup) -> Presentation:
    """The source presentation, or one read off the Cayley graph."""
    if G.source is not None:
        return G.source
    rels = []
    for x in range(G.order):
        for g in range(G.ngens):
            y = int(G.gen_action[g][x])
            r = G.repr_word[x] * FreeWord.gen(g) * G.repr_word[y].inverse()
            if r:
                rels.append((r, FreeWord()))
    rels = list(dict.fromkeys(rels))
    return Presentation(G.name, G.prime, G.gen_names, tuple(rels))


def _merge(A: Presentation, B: Presentation, name: str) -> tuple[Presentation, int]:
    a_names = list(A.generators)
    b_names = [n if n not in a_names else n + "_2" for n in B.generators]
    while len(set(a_names + b_names)) != len(a_names) + len(b_names):
        b_names = [n + "_" if n in a_names else n for n in b_names]
    shift = len(a_names)

    def moved(w: FreeWord) -> FreeWord:
        return FreeWord(tuple((g + shift, e) for g, e in w.letters))

    rels = list(A.relations) + [(moved(l), moved(r)) for l, r in B.relations]
    for i in range(len(a_names)):
        for j in range(len(b_names)):
            rels.append((commutator(FreeWord.gen(i), FreeWord.gen(shift + j)), FreeWord()))
    return Presentation(name, A.prime, tuple(a_names + b_names), tuple(rels)), shift


def direct_product(A: ConcreteGroup, B: ConcreteGroup, max_cosets: int = DEFAULT_MAX_COSETS) -> ConcreteGroup:
    return central_product(A, B, (), max_cosets=max_cosets)


def central_product(
    A: ConcreteGroup,
    B: ConcreteGroup,
    identify: Sequence[tuple[int, int]],
    max_cosets: int = DEFAULT_MAX_COSETS,
) -> ConcreteGroup:
    """``A * B`` with ``a = b`` for each identified pair of central elements."""
    if A.prime != B.prime:
        raise BadIdentification("factors have different primes")
    ZA, ZB = center(A), center(B)
    for a, b in identify:
        if a not in ZA or b not in ZB:
            raise BadIdentification(f"identified pair ({a}, {b}) is not central")
    if identify and not _extends_to_isomorphism(A, B, identify):
        raise BadIdentification("identification is not an isomorphism of central subgroups")
    PA, PB = presentation_of(A), presentation_of(B)
    name = f"{A.name}*{B.name}" if identify else f"{A.name}x{B.name}"
    pres, shift = _merge(PA, PB, name)
    extra = []
    for a, b in identify:
        wb = FreeWord(tuple((g + shift, e) for g, e in B.repr_word[b].letters))
        extra.append((A.repr_word[a], wb))
    pres = Presentation(pres.name, pres.prime, pres.generators, pres.relations + tuple(extra))
    return enumerate_group(pres, max_cosets)


def _extends_to_isomorphism(A, B, pairs) -> bool:
    SA = _generate(A, [a for a, _ in pairs])
    SB = _generate(B, [b for _, b in pairs])
    if SA.order != SB.order:
        return False
    # walk <a_i> by right multiplication and map along the b_i
    image = {0: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for a, b in pairs:
                y, fy = A.mul(x, a), B.mul(image[x], b)
                if y in image:
                    if image[y] != fy:
                        return False
                else:
                    image[y] = fy
                    nxt.append(y)
        frontier = nxt
    return len(set(image.values())) == len(image)


# ---------------------------------------------------------------------------
# subgroup lattice


@dataclass
class Lattice:
    """All subgroups of a group, by layer, with the covering relation.

    ``maximal_in[i]`` lists the indices of the maximal subgroups of
    ``subgroups[i]``.
    """

    group: ConcreteGroup
    subgroups: list[Subgroup]
    layer_of: list[int]
    maximal_in: list[list[int]]
    index: dict[bytes, int] = field(repr=False)

    def layer(self, k: int) -> list[Subgroup]:
        return [S for S, l in zip(self.subgroups, self.layer_of) if l == k]

    def find(self, S: Subgroup) -> int:
        return self.index[S.key]

    def subgroups_of(self, i: int) -> list[int]:
        """Indices of all subgroups contained in ``subgroups[i]``."""
        seen = {i}
        stack = [i]
        while stack:
            for j in self.maximal_in[stack.pop()]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        return sorted(seen)


def lattice(G: ConcreteGroup, cap: int = DEFAULT_LATTICE_CAP) -> Lattice:
    """Layered cyclic extension: each subgroup of order p^(k+1) is <H, g> for H
    of order p^k, g in N(H) \\ H with g^p in H.  Cached on the group."""
    cached = G.__dict__.get("_lattice")
    if cached is not None:
        return cached
    if G.order > cap:
        raise LatticeCapExceeded(f"order {G.order} exceeds lattice cap {cap}")
    T = G.table
    p = G.prime
    pth = G._pth_power
    N = G.order
    everything = np.arange(N)
    layers: list[list[Subgroup]] = [[trivial(G)]]
    layer_covers: list[dict[bytes, list[int]]] = [{}]
    for k in range(G.log_order):
        found: dict[bytes, Subgroup] = {}
        covers: dict[bytes, list[int]] = {}
        for mi, M in enumerate(layers[k]):
            ok = ~M.mask
            ok &= M.mask[pth]
            for h in M.gens:
                ok &= M.mask[_conj_all(G, h, everything)]
            covered = np.zeros(N, dtype=bool)
            for g in np.flatnonzero(ok):
                if covered[g]:
                    continue
                parts = [M.members]
                gi = int(g)
                for _ in range(p - 1):
                    parts.append(T[M.members, gi].astype(np.int64))
                    gi = int(T[gi, g])
                members = np.sort(np.concatenate(parts))
                key = members.tobytes()
                H = found.get(key)
                if H is None:
                    H = Subgroup(G, members, M.gens + (int(g),))
                    found[key] = H
                    covers[key] = []
                covers[key].append(mi)
                covered[members] = True
        ordered = sorted(found.values(), key=lambda S: S.members.tolist())
        layers.append(ordered)
        layer_covers.append(covers)

    subgroups: list[Subgroup] = []
    layer_of: list[int] = []
    offsets = []
    for k, layer in enumerate(layers):
        offsets.append(len(subgroups))
        subgroups.extend(layer)
        layer_of.extend([k] * len(layer))
    maximal_in: list[list[int]] = []
    for k, layer in enumerate(layers):
        for S in layer:
            below = layer_covers[k].get(S.key, [])
            maximal_in.append(sorted(offsets[k - 1] + i for i in below))
    index = {S.key: i for i, S in enumerate(subgroups)}
    lat = Lattice(G, subgroups, layer_of, maximal_in, index)
    G.__dict__["_lattice"] = lat
    return lat


def all_subgroups(G: ConcreteGroup, cap: int = DEFAULT_LATTICE_CAP) -> list[Subgroup]:
    return list(lattice(G, cap).subgroups)


def normal_subgroups(G: ConcreteGroup, cap: int = DEFAULT_LATTICE_CAP) -> list[Subgroup]:
    return [S for S in all_subgroups(G, cap) if is_normal(G, S)]
