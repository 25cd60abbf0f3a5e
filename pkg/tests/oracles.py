"""Slow but obviously-correct reference implementations used by the tests.

Nothing here calls into the structure, atlevel or iso modules.  The only
thing taken from the engine is the multiplication table, and that table is
checked on its own (associativity, Latin square, relators) in test_engine.
"""
from __future__ import annotations

from itertools import product

import numpy as np


# ---------------------------------------------------------------------------
# hand-built models of the two non-abelian groups of order 8


def _perm_mul(a, b):
    # apply a, then b
    return tuple(b[a[i]] for i in range(len(a)))


def _perm_table(gens):
    """Multiplication table of the permutation group generated by ``gens``."""
    n = len(gens[0])
    ident = tuple(range(n))
    elems = [ident]
    seen = {ident}
    i = 0
    while i < len(elems):
        for g in gens:
            y = _perm_mul(elems[i], g)
            if y not in seen:
                seen.add(y)
                elems.append(y)
        i += 1
    index = {e: k for k, e in enumerate(elems)}
    T = np.array([[index[_perm_mul(a, b)] for b in elems] for a in elems])
    return T


def dihedral8_table():
    """Symmetries of a square acting on its corners."""
    rot = (1, 2, 3, 0)
    flip = (0, 3, 2, 1)
    return _perm_table([rot, flip])


def quaternion8_table():
    """{±1, ±i, ±j, ±k} as 2x2 complex matrices."""
    one = np.eye(2, dtype=complex)
    i = np.array([[1j, 0], [0, -1j]])
    j = np.array([[0, 1], [-1, 0]], dtype=complex)
    k = i @ j
    elems = [s * m for m in (one, i, j, k) for s in (1, -1)]

    def find(m):
        for idx, e in enumerate(elems):
            if np.allclose(e, m):
                return idx
        raise AssertionError("not closed")

    return np.array([[find(a @ b) for b in elems] for a in elems])


# ---------------------------------------------------------------------------
# brute-force subgroup machinery on a multiplication table


def closure(T, mask):
    """Smallest subset closed under the product that contains ``mask`` (a subgroup, the group being finite)."""
    mask = np.asarray(mask, dtype=bool).copy()
    mask[0] = True
    while True:
        idx = np.flatnonzero(mask)
        new = np.zeros_like(mask)
        new[T[np.ix_(idx, idx)].ravel()] = True
        new |= mask
        if np.array_equal(new, mask):
            return mask
        mask = new


def cyclic_subgroups(T):
    n = len(T)
    out = {}
    for x in range(n):
        m = np.zeros(n, dtype=bool)
        m[x] = True
        c = closure(T, m)
        out[c.tobytes()] = c
    return list(out.values())


def all_subgroups(T):
    """Every subgroup as a boolean mask: joins of cyclic subgroups until nothing new appears."""
    cyc = cyclic_subgroups(T)
    found = {c.tobytes(): c for c in cyc}
    frontier = list(cyc)
    while frontier:
        nxt = []
        for A in frontier:
            for C in cyc:
                if np.all(C <= A):
                    continue
                J = closure(T, A | C)
                key = J.tobytes()
                if key not in found:
                    found[key] = J
                    nxt.append(J)
        frontier = nxt
    return list(found.values())


def is_abelian_set(T, mask):
    idx = np.flatnonzero(mask)
    sub = T[np.ix_(idx, idx)]
    return bool(np.array_equal(sub, sub.T))


def inverses(T):
    inv = np.empty(len(T), dtype=np.int64)
    for x in range(len(T)):
        inv[x] = int(np.flatnonzero(T[x] == 0)[0])
    return inv


def center(T):
    return np.all(T == T.T, axis=1)


def derived(T):
    inv = inverses(T)
    n = len(T)
    m = np.zeros(n, dtype=bool)
    for x, y in product(range(n), repeat=2):
        m[T[T[inv[x], inv[y]], T[x, y]]] = True
    return closure(T, m)


def maximal_from_list(subs, within):
    """Maximal proper subgroups of ``within`` among ``subs``."""
    inside = [S for S in subs if np.all(S <= within) and S.sum() < within.sum()]
    return [S for S in inside if not any(S.sum() < R.sum() and np.all(S <= R) for R in inside)]


def frattini(T, subs=None):
    subs = all_subgroups(T) if subs is None else subs
    full = np.ones(len(T), dtype=bool)
    m = full.copy()
    for M in maximal_from_list(subs, full):
        m &= M
    return m


def levels(T, subs=None):
    """A_t level of every subgroup by the recursive definition, keyed by mask bytes."""
    subs = all_subgroups(T) if subs is None else subs
    subs = sorted(subs, key=lambda s: s.sum())
    lv = {}
    for S in subs:
        if is_abelian_set(T, S):
            lv[S.tobytes()] = 0
        else:
            lv[S.tobytes()] = 1 + max(lv[M.tobytes()] for M in maximal_from_list(subs, S))
    return lv


def find_isomorphism(TA, TB):
    """Brute force: map a generating pair (or triple) of A to all element tuples of B."""
    n = len(TA)
    if n != len(TB):
        return None
    gens = _generators(TA)
    for imgs in product(range(n), repeat=len(gens)):
        phi = _extend(TA, TB, gens, imgs)
        if phi is not None:
            return phi
    return None


def _generators(T):
    n = len(T)
    gens = []
    span = np.zeros(n, dtype=bool)
    span[0] = True
    while not span.all():
        x = int(np.flatnonzero(~span)[0])
        gens.append(x)
        m = span.copy()
        m[x] = True
        span = closure(T, m)
    return gens


def _extend(TA, TB, gens, imgs):
    n = len(TA)
    phi = -np.ones(n, dtype=np.int64)
    phi[0] = 0
    queue = [0]
    while queue:
        x = queue.pop()
        for g, h in zip(gens, imgs):
            y = TA[x, g]
            z = TB[phi[x], h]
            if phi[y] < 0:
                phi[y] = z
                queue.append(y)
            elif phi[y] != z:
                return None
    if len(set(phi.tolist())) != n:
        return None
    if not np.array_equal(phi[TA], TB[np.ix_(phi, phi)]):
        return None
    return phi
