"""Coset enumeration over the trivial subgroup and element arithmetic.

``enumerate_group`` turns a :class:`Presentation` into a :class:`ConcreteGroup`:
elements are ``0..N-1`` with ``0`` the identity, numbered in breadth-first
order over the generators, and each generator acts by right multiplication.
"""
from __future__ import annotations

from collections import deque
from itertools import product
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import CosetLimitExceeded, NotAPGroup
from .presentation import FreeWord, Presentation
from .presentation import commutator as word_commutator

DEFAULT_MAX_COSETS = 500_000
# Full Cayley tables are stored as uint16, so only up to this order.
TABLE_LIMIT = 65_536


def is_power_of(n: int, p: int) -> bool:
    while n % p == 0 and n > 1:
        n //= p
    return n == 1


def log_p(n: int, p: int) -> int:
    k = 0
    while n > 1:
        if n % p:
            raise ValueError(f"{n} is not a power of {p}")
        n //= p
        k += 1
    return k


# ---------------------------------------------------------------------------
# Todd-Coxeter (HLT with a coincidence queue)


class _Compact(Exception):
    pass


class _CosetTable:
    def __init__(self, ngens: int, rels: list[list[int]], max_cosets: int):
        self.ncol = 2 * ngens
        # column 2g is generator g, 2g+1 its inverse
        self.rels = [[2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1 for x in r] for r in rels]
        self.max_cosets = max_cosets
        self.table: list[list[int]] = [[-1] * self.ncol]
        self.parent: list[int] = [0]
        self.live = 1

    def rep(self, c: int) -> int:
        parent = self.parent
        r = c
        while parent[r] != r:
            r = parent[r]
        while parent[c] != r:
            parent[c], c = r, parent[c]
        return r

    def define(self, c: int, x: int) -> int:
        d = len(self.table)
        if d >= self.max_cosets:
            raise _Compact
        row = [-1] * self.ncol
        row[x ^ 1] = c
        self.table.append(row)
        self.parent.append(d)
        self.table[c][x] = d
        self.live += 1
        return d

    def compact(self) -> dict[int, int]:
        alive = [c for c in range(len(self.table)) if self.parent[c] == c]
        new = {c: i for i, c in enumerate(alive)}
        self.table = [[new[v] if v >= 0 else -1 for v in self.table[c]] for c in alive]
        self.parent = list(range(len(alive)))
        return new

    def merge(self, k: int, l: int, queue: list[int]):
        k, l = self.rep(k), self.rep(l)
        if k == l:
            return
        if l < k:
            k, l = l, k
        self.parent[l] = k
        self.live -= 1
        queue.append(l)

    def coincidence(self, a: int, b: int):
        queue: list[int] = []
        self.merge(a, b, queue)
        table = self.table
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            row = table[e]
            for x in range(self.ncol):
                f = row[x]
                if f < 0:
                    continue
                xi = x ^ 1
                table[f][xi] = -1
                e1 = self.rep(e)
                f1 = self.rep(f)
                if table[e1][x] >= 0:
                    self.merge(f1, table[e1][x], queue)
                elif table[f1][xi] >= 0:
                    self.merge(e1, table[f1][xi], queue)
                else:
                    table[e1][x] = f1
                    table[f1][xi] = e1

    def scan_and_fill(self, c: int, w: list[int]):
        table = self.table
        f = b = c
        i, j = 0, len(w) - 1
        while True:
            while i <= j and table[f][w[i]] >= 0:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and table[b][w[j] ^ 1] >= 0:
                b = table[b][w[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                table[f][w[i]] = b
                table[b][w[i] ^ 1] = f
                return
            self.define(f, w[i])

    def process(self, c: int):
        for w in self.rels:
            self.scan_and_fill(c, w)
            if self.parent[c] != c:
                return
        row = self.table[c]
        for x in range(self.ncol):
            if row[x] < 0:
                self.define(c, x)

    def run(self) -> list[int]:
        c = 0
        while c < len(self.table):
            if self.parent[c] != c:
                c += 1
                continue
            try:
                self.process(c)
            except _Compact:
                # no coincidence is pending when define() is called, so
                # dead cosets can be dropped and the scan of c redone
                before = len(self.table)
                remap = self.compact()
                if len(self.table) >= self.max_cosets or len(self.table) == before:
                    raise CosetLimitExceeded(f"more than {self.max_cosets} cosets needed") from None
                c = remap[c]
                continue
            c += 1
        return [c for c in range(len(self.table)) if self.parent[c] == c]


def _hlt_tables(ngens: int, rels: list[list[int]], max_cosets: int) -> np.ndarray:
    ct = _CosetTable(ngens, rels, max_cosets)
    alive = ct.run()
    index = {c: i for i, c in enumerate(alive)}
    return np.array([[index[ct.rep(v)] for v in ct.table[c]] for c in alive], dtype=np.int64)


def _class_relators(ngens: int, weight: int) -> list[list[int]]:
    """Left-normed commutators of the given weight in the generators."""
    gens = [FreeWord.gen(i) for i in range(ngens)]
    out = []
    for t in product(range(ngens), repeat=weight):
        if t[0] == t[1]:
            continue
        w = gens[t[0]]
        for i in t[1:]:
            w = word_commutator(w, gens[i])
        if w:
            out.append(w.expand())
    return out


def _nilpotent_quotient_tables(pres: Presentation, rels: list[list[int]], max_cosets: int) -> np.ndarray | None:
    """Largest nilpotent quotient, found by bounding the class until its order stops growing.

    If ``G/gamma_{c+1}`` and ``G/gamma_{c+2}`` have the same finite order
    then ``gamma_{c+1} = gamma_{c+2}`` and no larger nilpotent quotient
    exists; for a finite p-group this quotient is the group itself.
    """
    prev = None
    c = 1
    while True:
        try:
            tab = _hlt_tables(pres.ngens, rels + _class_relators(pres.ngens, c + 1), max_cosets)
        except CosetLimitExceeded:
            return None
        if not is_power_of(len(tab), pres.prime):
            return None
        if prev is not None and len(tab) == len(prev):
            return prev
        prev = tab
        c += 1


def _enumerate_tables(pres: Presentation, max_cosets: int) -> np.ndarray:
    """Closed coset table (live cosets only, renumbered), shape (ncosets, 2*ngens).

    Relators are scanned shortest first.  When plain scanning runs out of
    room the group is rebuilt as its largest nilpotent quotient, which for
    the p-groups handled here is the same group.
    """
    rels = sorted((r.expand() for r in pres.relators() if r), key=len)
    if not rels:
        if pres.ngens == 0:
            return np.zeros((1, 0), dtype=np.int64)
        raise CosetLimitExceeded("presentation has no relators; group is infinite")
    try:
        return _hlt_tables(pres.ngens, rels, max_cosets)
    except CosetLimitExceeded as exc:
        tab = _nilpotent_quotient_tables(pres, rels, max_cosets)
        if tab is None:
            raise exc
        return tab


# ---------------------------------------------------------------------------
# ConcreteGroup


class ConcreteGroup:
    """A finite group on ``0..N-1`` with generators acting by right multiplication.

    ``gen_action[g][x]`` is ``x * g``; ``repr_word[x]`` is a word in the
    generators that evaluates to ``x`` from the identity ``0``.
    """

    def __init__(
        self,
        gen_action: np.ndarray,
        prime: int,
        gen_names: Sequence[str],
        repr_word: list[FreeWord],
        source: Presentation | None = None,
        name: str | None = None,
        bfs_parent: np.ndarray | None = None,
    ):
        self.order = len(repr_word)
        self.gen_action = np.asarray(gen_action, dtype=np.int64).reshape(len(gen_names), self.order)
        self.gen_action_inv = np.empty_like(self.gen_action)
        for g in range(self.gen_action.shape[0]):
            self.gen_action_inv[g][self.gen_action[g]] = np.arange(self.order)
        self.prime = prime
        self.gen_names = tuple(gen_names)
        self.repr_word = repr_word
        self.source = source
        self.name = name or (source.name if source else "G")
        self.gen_action.setflags(write=False)
        self.gen_action_inv.setflags(write=False)
        if bfs_parent is not None:
            self._parent = np.asarray(bfs_parent, dtype=np.int64)
        if not is_power_of(self.order, prime):
            raise NotAPGroup(f"order {self.order} is not a power of {prime}")

    def __repr__(self):
        return f"<ConcreteGroup {self.name} order={self.order} p={self.prime}>"

    @property
    def ngens(self) -> int:
        return len(self.gen_names)

    @property
    def log_order(self) -> int:
        return log_p(self.order, self.prime)

    @classmethod
    def from_action(
        cls,
        gen_perms: Sequence[np.ndarray],
        prime: int,
        gen_names: Sequence[str],
        start: int = 0,
        source: Presentation | None = None,
        name: str | None = None,
    ) -> tuple["ConcreteGroup", np.ndarray]:
        """Build from right-regular permutations on some labels, relabelled by BFS.

        Returns the group and ``labels``: ``labels[i]`` is the original label
        of new element ``i``.
        """
        perms = [np.asarray(p, dtype=np.int64) for p in gen_perms]
        k = len(perms)
        inv_perms = []
        for p in perms:
            q = np.empty_like(p)
            q[p] = np.arange(len(p))
            inv_perms.append(q)
        labels, words, parents = _bfs(perms, inv_perms, start)
        n = len(labels)
        new_of = {int(old): i for i, old in enumerate(labels)}
        parent_index = np.array([new_of[p] for p in parents], dtype=np.int64)
        if k:
            action = np.array([[new_of[int(p[old])] for old in labels] for p in perms], dtype=np.int64)
        else:
            action = np.zeros((0, n), dtype=np.int64)
        G = cls(action, prime, gen_names, words, source=source, name=name, bfs_parent=parent_index)
        return G, np.asarray(labels, dtype=np.int64)

    # -- arithmetic ---------------------------------------------------------

    def apply_word(self, x: int, w: FreeWord) -> int:
        for g, e in w.letters:
            act = self.gen_action[g] if e > 0 else self.gen_action_inv[g]
            for _ in range(abs(e)):
                x = act[x]
        return int(x)

    def evaluate(self, w: FreeWord) -> int:
        return self.apply_word(0, w)

    def word_permutation(self, w: FreeWord) -> np.ndarray:
        """Right multiplication by ``w`` as a permutation of all elements."""
        perm = np.arange(self.order)
        for g, e in w.letters:
            act = self.gen_action[g] if e > 0 else self.gen_action_inv[g]
            for _ in range(abs(e)):
                perm = act[perm]
        return perm

    @property
    def has_table(self) -> bool:
        return self.order <= TABLE_LIMIT

    @cached_property
    def table(self) -> np.ndarray:
        """Cayley table ``table[x, y] = x * y`` (uint16)."""
        n = self.order
        if n > TABLE_LIMIT:
            raise MemoryError(f"no Cayley table for order {n}")
        cols = np.empty((n, n), dtype=np.int32 if n <= 4096 else np.uint16)
        cols[:, 0] = np.arange(n)
        # column y = right multiplication by y = (parent column) then one letter
        for y in range(1, n):
            g, e = self.repr_word[y].letters[-1]
            parent = self._parent[y]
            act = self.gen_action[g] if e > 0 else self.gen_action_inv[g]
            cols[:, y] = act[cols[:, parent]]
        cols.setflags(write=False)
        return cols

    @cached_property
    def _parent(self) -> np.ndarray:
        par = np.zeros(self.order, dtype=np.int64)
        for y in range(1, self.order):
            w = self.repr_word[y]
            g, e = w.letters[-1]
            prefix = FreeWord(w.letters[:-1] + ((g, e - (1 if e > 0 else -1)),))
            par[y] = self.evaluate(prefix)
        return par

    @cached_property
    def inverses(self) -> np.ndarray:
        if self.has_table:
            inv = np.empty(self.order, dtype=np.int64)
            rows, cols = np.nonzero(self.table == 0)
            inv[rows] = cols
        else:
            inv = np.array([self.evaluate(self.repr_word[x].inverse()) for x in range(self.order)])
        inv.setflags(write=False)
        return inv

    def mul(self, x: int, y: int) -> int:
        if self.has_table:
            return int(self.table[x, y])
        return self.apply_word(x, self.repr_word[y])

    def inv(self, x: int) -> int:
        return int(self.inverses[x])

    def pow(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inv(x), -k
        result = 0
        base = int(x)
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def commutator(self, x: int, y: int) -> int:
        """``x^-1 y^-1 x y``."""
        return self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))

    def conjugate(self, x: int, y: int) -> int:
        """``x^y = y^-1 x y``."""
        return self.mul(self.mul(self.inv(y), x), y)

    # -- vectorised maps over all elements ------------------------------------

    def power_map(self, k: int) -> np.ndarray:
        """``x -> x^k`` for every element at once."""
        T = self.table
        result = np.zeros(self.order, dtype=np.int64)
        base = np.arange(self.order)
        if k < 0:
            base = self.inverses.copy()
            k = -k
        while k:
            if k & 1:
                result = T[result, base].astype(np.int64)
            base = T[base, base].astype(np.int64)
            k >>= 1
        return result

    @cached_property
    def element_orders(self) -> np.ndarray:
        orders = np.ones(self.order, dtype=np.int64)
        cur = np.arange(self.order)
        p = self.prime
        q = 1
        pmap_cur = cur
        while True:
            not_done = pmap_cur != 0
            if not not_done.any():
                break
            q *= p
            orders[not_done] = q
            pmap_cur = self._pth_power[pmap_cur]
        orders.setflags(write=False)
        return orders

    @cached_property
    def _pth_power(self) -> np.ndarray:
        return self.power_map(self.prime)

    def element_order(self, x: int) -> int:
        if self.has_table:
            return int(self.element_orders[x])
        k, y = 1, x
        while y != 0:
            y = self.mul(y, x)
            k += 1
        return k

    def generator_elements(self) -> list[int]:
        return [int(self.gen_action[g][0]) for g in range(self.ngens)]

    def element_word(self, x: int) -> str:
        return self.repr_word[x].format(self.gen_names)


def _bfs(perms, inv_perms, start=0):
    """BFS over the Cayley graph: generators in order, each followed by its inverse."""
    seen = {start: FreeWord()}
    parents = [start]
    order = [start]
    queue = deque([start])
    moves = []
    for g, (p, q) in enumerate(zip(perms, inv_perms)):
        moves.append((p, FreeWord.gen(g, 1)))
        moves.append((q, FreeWord.gen(g, -1)))
    while queue:
        x = queue.popleft()
        wx = seen[x]
        for perm, letter in moves:
            y = int(perm[x])
            if y not in seen:
                seen[y] = wx * letter
                parents.append(x)
                order.append(y)
                queue.append(y)
    return order, [seen[x] for x in order], parents


def enumerate_group(
    pres: Presentation, max_cosets: int = DEFAULT_MAX_COSETS, name: str | None = None
) -> ConcreteGroup:
    """Regular representation of the group presented by ``pres``."""
    tab = _enumerate_tables(pres, max_cosets)
    perms = [tab[:, 2 * g] for g in range(pres.ngens)]
    G, _ = ConcreteGroup.from_action(perms, pres.prime, pres.generators, source=pres, name=name)
    return G


# functional aliases
def mul(G: ConcreteGroup, x: int, y: int) -> int:
    return G.mul(x, y)


def inv(G: ConcreteGroup, x: int) -> int:
    return G.inv(x)


def power(G: ConcreteGroup, x: int, k: int) -> int:
    return G.pow(x, k)


def commutator(G: ConcreteGroup, x: int, y: int) -> int:
    return G.commutator(x, y)


def element_order(G: ConcreteGroup, x: int) -> int:
    return G.element_order(x)
