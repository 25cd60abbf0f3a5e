"""Parameterised group families and the claims made about each of them.

Entry ids:

* ``mp-nm``, ``mp-nm1``: the metacyclic and non-metacyclic minimal
  non-abelian families M_p(n,m) and M_p(n,m,1);
* ``thm3.1``: H * C with H non-abelian of order p^3 and C cyclic;
* ``thm3.6.1`` ... ``thm3.6.28``: the groups with a unique A_2-subgroup K
  outside the Frattini subgroup and |G'| >= p^2;
* ``thm3.7``: the group of order 2^6 whose unique A_2-subgroup is Phi(G).

Presentations are kept as ``.pgp`` text so that they read like the
relations they encode.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Callable

from .engine import is_power_of
from .errors import InvalidParameters
from .presentation import Presentation, is_prime, parse_presentation


def nonresidue(p: int) -> int:
    """Smallest positive quadratic non-residue modulo the odd prime ``p``."""
    if p == 2 or not is_prime(p):
        raise InvalidParameters(f"nonresidue needs an odd prime, got {p}")
    for r in range(2, p):
        if pow(r, (p - 1) // 2, p) == p - 1:
            return r
    raise AssertionError("unreachable")


def is_nonresidue(x: int, p: int) -> bool:
    x %= p
    return x != 0 and pow(x, (p - 1) // 2, p) == p - 1


def _pgp(name: str, p: int, gens: str, *rels: str) -> Presentation:
    lines = [f"group {name}", f"p {p}", f"gens {gens}"] + [f"rel {r}" for r in rels]
    return parse_presentation("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# named families and labels


def cyclic(p: int, n: int, gen: str = "a") -> Presentation:
    return _pgp(f"C{p**n}", p, gen, f"{gen}^{p**n} = 1")


def abelian(p: int, exponents: list[int]) -> Presentation:
    names = [f"e{i + 1}" for i in range(len(exponents))]
    rels = [f"{g}^{p**e} = 1" for g, e in zip(names, exponents)]
    rels += [f"[{names[i]},{names[j]}] = 1" for i in range(len(names)) for j in range(i + 1, len(names))]
    return _pgp("A", p, " ".join(names) or "e1", *(rels or ["e1 = 1"]))


def dihedral8() -> Presentation:
    return _pgp("D8", 2, "a b", "a^4 = b^2 = 1", "[a,b] = a^2")


def quaternion8() -> Presentation:
    return _pgp("Q8", 2, "a b", "a^4 = 1", "b^2 = a^2", "[a,b] = a^2")


def metacyclic(p: int, n: int, m: int) -> Presentation:
    """M_p(n, m) = <a, b | a^{p^n} = b^{p^m} = 1, [a, b] = a^{p^{n-1}}>."""
    if n < 2 or m < 1:
        raise InvalidParameters(f"M_p(n,m) needs n >= 2, m >= 1; got ({n},{m})")
    return _pgp(f"M{p}({n},{m})", p, "a b", f"a^{p**n} = b^{p**m} = 1", f"[a,b] = a^{p**(n - 1)}")


def nonmetacyclic(p: int, n: int, m: int, strict: bool = True) -> Presentation:
    """M_p(n, m, 1) = <a, b, c | a^{p^n} = b^{p^m} = c^p = 1, [a, b] = c, [c, a] = [c, b] = 1>."""
    if not n >= m >= 1:
        raise InvalidParameters(f"M_p(n,m,1) needs n >= m >= 1; got ({n},{m})")
    if strict and p == 2 and n + m < 3:
        raise InvalidParameters("M_2(n,m,1) needs m + n >= 3")
    return _pgp(
        f"M{p}({n},{m},1)", p, "a b c",
        f"a^{p**n} = b^{p**m} = c^{p} = 1", "[a,b] = c", "[c,a] = [c,b] = 1",
    )


@dataclass(frozen=True)
class _Factor:
    pres: Presentation
    derived: str | None  # word generating the derived subgroup, if non-abelian of |G'| = p


_FACTOR = re.compile(
    r"^(?:(?P<dq>[DQ])8|C(?P<cyc>\d+)(?:\^(?P<rank>\d+))?|M(?P<mp>\d+)\((?P<args>\d+(?:,\d+)*)\))$"
)


def _factor(token: str) -> _Factor:
    m = _FACTOR.match(token.replace(" ", ""))
    if not m:
        raise InvalidParameters(f"unknown group label {token!r}")
    if m.group("dq"):
        return _Factor(dihedral8() if m.group("dq") == "D" else quaternion8(), "a^2")
    if m.group("cyc"):
        n = int(m.group("cyc"))
        k = int(m.group("rank") or 1)
        p = _prime_of(n)
        return _Factor(abelian(p, [round(math.log(n, p))] * k), None)
    p = int(m.group("mp"))
    args = [int(x) for x in m.group("args").split(",")]
    if len(args) == 2:
        n, mm = args
        return _Factor(metacyclic(p, n, mm), f"a^{p ** (n - 1)}")
    if len(args) == 3 and args[2] == 1:
        # M_2(1,1,1) is not in the family but its presentation still defines D8
        return _Factor(nonmetacyclic(p, args[0], args[1], strict=False), "c")
    raise InvalidParameters(f"unknown group label {token!r}")


def _prime_of(n: int) -> int:
    for p in range(2, n + 1):
        if n % p == 0:
            q = n
            while q % p == 0:
                q //= p
            if q != 1:
                raise InvalidParameters(f"{n} is not a prime power")
            return p
    raise InvalidParameters(f"{n} is not a prime power")


@lru_cache(maxsize=None)
def build_label(label: str) -> Presentation:
    """Presentation for a label such as ``"D8 x C2"`` or ``"M3(2,1,1) * C9"``.

    ``x`` is the direct product; ``X * C`` amalgamates the derived subgroup
    of ``X`` (order p) with the subgroup of order p of the cyclic group ``C``.
    Extension labels ``X.C`` name no single group and are rejected here.
    """
    if "." in label:
        raise InvalidParameters(f"extension label {label!r} does not determine a presentation")
    tokens = re.split(r"\s+([x*])\s+", label.strip())
    current = _factor(tokens[0])
    pres = current.pres
    derived = current.derived
    for op, tok in zip(tokens[1::2], tokens[2::2]):
        f = _factor(tok)
        shift = len(pres.generators)
        names = list(pres.generators)
        new_names = []
        for g in f.pres.generators:
            n = g
            while n in names or n in new_names:
                n = n + "_"
            new_names.append(n)
        text = pres.to_text().splitlines()
        text[2] = "gens " + " ".join(names + new_names)
        rename = dict(zip(f.pres.generators, new_names))
        ftext = f.pres.to_text().splitlines()[3:]
        ftext = [re.sub(r"[A-Za-z_][A-Za-z0-9_]*", lambda m: rename.get(m.group(0), m.group(0)), l[4:]) for l in ftext]
        text += ["rel " + l for l in ftext]
        text += [f"rel [{a},{b}] = 1" for a in names for b in new_names]
        if op == "*":
            if derived is None or len(f.pres.generators) != 1:
                raise InvalidParameters(f"central product in {label!r} needs X * C with |X'| = p")
            n = f.pres.relations[0][0].letters[0][1]
            p = pres.prime
            if n < p * p:
                raise InvalidParameters(f"cyclic factor of {label!r} is too small to amalgamate")
            text.append(f"rel {derived} = {new_names[0]}^{n // p}")
        elif f.derived is not None:
            derived = None
        text[0] = f"group {label.replace(' ', '')}"
        pres = parse_presentation("\n".join(text) + "\n")
    return pres


def _partitions(n: int, largest: int | None = None):
    if n == 0:
        yield []
        return
    largest = n if largest is None else largest
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield [k] + rest


def abelian_label(p: int, exps: list[int]) -> str:
    parts = []
    for e in sorted(set(exps), reverse=True):
        k = exps.count(e)
        parts.append(f"C{p**e}" + (f"^{k}" if k > 1 else ""))
    return " x ".join(parts)


def _minimal_nonabelian_labels(p: int, e: int) -> list[str]:
    out = []
    if p == 2 and e == 3:
        out += ["D8", "Q8"]
    # M(n,m,1) first, so the central products that coincide (for example
    # M3(1,1,1) * C9 and M3(2,1) * C9) get the non-metacyclic name
    for n in range(1, e):
        m = e - 1 - n
        if n >= m >= 1 and not (p == 2 and n + m < 3):
            out.append(f"M{p}({n},{m},1)")
    for n in range(2, e):
        m = e - n
        if m >= 1 and not (p == 2 and (n, m) == (2, 1)):
            out.append(f"M{p}({n},{m})")
    return out


def candidate_labels(p: int, e: int) -> list[str]:
    """Named groups of order p^e in a fixed order: abelian, minimal
    non-abelian, X x (abelian), X * (cyclic)."""
    out = [abelian_label(p, part) for part in _partitions(e)]
    out += _minimal_nonabelian_labels(p, e)
    for f in range(3, e):
        for X in _minimal_nonabelian_labels(p, f):
            for part in _partitions(e - f):
                out.append(f"{X} x {abelian_label(p, part)}")
    for f in range(3, e):
        k = e - f + 1
        if k >= 2:
            for X in _minimal_nonabelian_labels(p, f):
                out.append(f"{X} * C{p**k}")
    return out


# ---------------------------------------------------------------------------
# catalog entries


@dataclass(frozen=True)
class ExpectedClaims:
    order: int
    at_level: int | None
    unique_a2: bool = True
    k_generators: tuple[str, ...] | None = None
    k_iso_label: str | None = None
    k_in_frattini: bool | None = None


@dataclass(frozen=True)
class Caps:
    primes: tuple[int, ...] = (2, 3, 5)
    max_n: int = 4
    max_order: int = 6561


@dataclass
class CatalogEntry:
    id: str
    param_names: tuple[str, ...]
    builder: Callable[[dict], Presentation]
    claims: Callable[[dict], ExpectedClaims]
    domain: Callable[[Caps], list[dict]]
    condition: Callable[[dict], str | None] = lambda prm: None
    description: str = ""

    def check(self, params: dict):
        extra = set(params) - set(self.param_names)
        missing = set(self.param_names) - set(params)
        if extra or missing:
            raise InvalidParameters(f"{self.id}: expected parameters {self.param_names}, got {sorted(params)}")
        why = self.condition(params)
        if why:
            raise InvalidParameters(f"{self.id}: {why}")


CATALOG: dict[str, CatalogEntry] = {}


def _register(entry: CatalogEntry):
    CATALOG[entry.id] = entry
    return entry


def _fixed(p):
    def domain(caps: Caps):
        return [{}] if p in caps.primes else []
    return domain


def _nrange(lo):
    def domain(caps: Caps):
        return [{"n": n} for n in range(lo, caps.max_n + 1)]
    return domain


def _need(cond: bool, why: str) -> str | None:
    return None if cond else why


def _nu_values(p: int) -> list[int]:
    return [1, nonresidue(p)]


def _odd_primes(caps, lo=3):
    return [p for p in caps.primes if p >= lo and p % 2]


def _p2(i, text_fn, claim_fn, domain=None, condition=None, desc=""):
    """Entries of the 2-group half of the list (p = 2 built in)."""
    def builder(prm):
        return parse_presentation(f"group thm3_6_{i}\np 2\n" + text_fn(**prm))

    _register(CatalogEntry(
        f"thm3.6.{i}", ("n",) if domain else (),
        builder, lambda prm: claim_fn(**prm), domain or _fixed(2),
        condition or (lambda prm: None), desc,
    ))


def _claims(order, level, words, label, in_phi=False):
    return ExpectedClaims(order, level, True, tuple(words), label, in_phi)


# --- p = 2 ------------------------------------------------------------------

_p2(1, lambda: """gens a b c
rel a^4 = b^4 = c^2 = 1
rel [b,c] = 1
rel [c,a] = b^2
rel [a,b] = a^2
""", lambda: _claims(2**5, 3, ["a b", "c", "a^2"], "D8 x C2"))

_p2(2, lambda: """gens a b c x
rel a^4 = b^2 = x^2 = 1
rel [a,b] = x
rel [a,c] = a^2 = c^2
rel [b,c] = [x,a] = [x,b] = [x,c] = 1
""", lambda: _claims(2**5, 3, ["a", "c", "x"], "Q8 x C2"))

_p2(3, lambda: """gens a b c
rel a^8 = c^2 = 1
rel b^2 = a^4
rel [a,b] = c
rel [c,a] = b^2
rel [c,b] = 1
""", lambda: _claims(2**5, 3, ["a^2", "b", "c"], "Q8 x C2"))

_p2(4, lambda: """gens a b c
rel a^8 = c^4 = 1
rel b^2 = a^4
rel [a,b] = c
rel [c,a] = a^4
rel [c,b] = c^2
""", lambda: _claims(2**6, 3, ["a^2", "b", "c"], "M2(2,2,1).C2"))

_p2(5, lambda n: f"""gens a b c
rel a^{2**(n + 1)} = b^2 = c^2 = 1
rel [a,b] = c
rel [c,a] = a^{2**n}
rel [c,b] = 1
""", lambda n: _claims(2**(n + 3), 3, ["a^2", "b", "c"], f"M2({n},1) x C2"),
    _nrange(2), lambda prm: _need(prm["n"] >= 2, "n >= 2"))

_p2(6, lambda n: f"""gens a b c d
rel a^{2**n} = b^2 = c^2 = d^2 = 1
rel [a,b] = c
rel [c,a] = d
rel [c,b] = [d,a] = [d,b] = 1
""", lambda n: _claims(2**(n + 3), 3, ["a^2", "b", "c"], f"M2({n - 1},1,1) x C2"),
    _nrange(2), lambda prm: _need(prm["n"] >= 2, "n >= 2"))

_p2(7, lambda n: f"""gens a b c
rel a^{2**n} = b^4 = c^2 = 1
rel [a,b] = c
rel [c,a] = b^2
rel [c,b] = 1
""", lambda n: _claims(2**(n + 3), 3, ["b", "a^2", "c"], f"M2(2,{n - 1}) x C2"),
    _nrange(3), lambda prm: _need(prm["n"] >= 3, "n >= 3"))

_p2(8, lambda: """gens a b c
rel a^8 = b^4 = c^4 = 1
rel [b,c] = a^4
rel [c,a] = b^2
rel [a,b] = b^2 c^2
""", lambda: _claims(2**7, 3, ["b", "c", "a^2"], "M2(2,2,1) * C4"))

_p2(9, lambda: """gens a b c
rel a^4 = b^4 = c^4 = 1
rel [a,b] = c
rel [c,a] = b^2
rel [c,b] = c^2
""", lambda: _claims(2**6, 4, ["c", "a^2 b", "b^2"], "Q8 x C2"))

_p2(10, lambda n: f"""gens a b c
rel b^2 = c^4 = 1
rel a^{2**n} = c^2
rel [a,b] = c
rel [c,a] = [c,b] = c^2
""", lambda n: _claims(2**(n + 3), n + 1, ["c", "b", f"a^{2**(n - 1)}"], "D8 * C4"),
    _nrange(2), lambda prm: _need(prm["n"] >= 2, "n >= 2"))

_p2(11, lambda n: f"""gens a b c
rel a^{2**n} = b^2 = c^4 = 1
rel [a,b] = c
rel [c,a] = [c,b] = c^2
""", lambda n: _claims(2**(n + 3), n + 1, ["c", "b", f"a^{2**(n - 1)}"], "D8 x C2"),
    _nrange(2), lambda prm: _need(prm["n"] >= 2, "n >= 2"))

_p2(12, lambda n: f"""gens a b c
rel a^{2**n} = c^4 = 1
rel b^2 = c^2
rel [a,b] = c
rel [c,a] = [c,b] = c^2
""", lambda n: _claims(2**(n + 3), n + 1, ["c", "b", f"a^{2**(n - 1)}"], "Q8 x C2"),
    _nrange(2), lambda prm: _need(prm["n"] >= 2, "n >= 2"))

_p2(13, lambda n: f"""gens a b c
rel a^4 = b^{2**(n + 1)} = c^4 = 1
rel [b,c] = 1
rel [c,a] = a^2 = c^2
rel [a,b] = b^{2**n}
""", lambda n: _claims(2**(n + 4), n + 2, ["a", "c", f"b^{2**n}"], "Q8 x C2"),
    _nrange(2), lambda prm: _need(prm["n"] >= 2, "n >= 2"))

_p2(14, lambda n: f"""gens a b c
rel a^{2**(n + 1)} = b^4 = 1
rel c^2 = b^2
rel [a,b] = c
rel [c,a] = a^{2**n}
rel [c,b] = c^2
""", lambda n: _claims(2**(n + 4), n + 2, ["c", "b", f"a^{2**n}"], "Q8 x C2"),
    _nrange(3), lambda prm: _need(prm["n"] >= 3, "n >= 3"))


# --- p odd ------------------------------------------------------------------


def _podd(i, names, text_fn, claim_fn, domain, condition, desc=""):
    def builder(prm):
        return parse_presentation(f"group thm3_6_{i}\np {prm.get('p', 3)}\n" + text_fn(**prm))

    _register(CatalogEntry(f"thm3.6.{i}", names, builder, lambda prm: claim_fn(**prm), domain, condition, desc))


def _p_cond(lo, strict=False):
    def cond(prm):
        p = prm["p"]
        if not is_prime(p):
            return f"p = {p} is not prime"
        if strict and not p > lo:
            return f"p > {lo}"
        if not strict and not p >= lo:
            return f"p >= {lo}"
        return None
    return cond


def _all(*conds):
    def cond(prm):
        for c in conds:
            why = c(prm)
            if why:
                return why
        return None
    return cond


def _nu_cond(key="nu"):
    def cond(prm):
        p = prm["p"]
        if p % 2 == 0:
            return "p odd"
        if prm[key] not in _nu_values(p):
            return f"{key} = 1 or the non-residue {nonresidue(p)} mod {p}"
        return None
    return cond


def _neg_nu_cond(prm):
    if not is_nonresidue(-prm["nu"], prm["p"]):
        return f"-nu = {-prm['nu']} is a quadratic non-residue mod {prm['p']}"
    return None


def _n_cond(lo):
    return lambda prm: _need(prm["n"] >= lo, f"n >= {lo}")


_podd(15, (), lambda: """gens a b c d
rel a^9 = c^3 = d^3 = 1
rel b^3 = a^3
rel [a,b] = c
rel [c,a] = d
rel [c,b] = a^3
rel [d,a] = [d,b] = 1
""", lambda: _claims(3**5, 3, ["b", "c", "d"], "M3(2,1) x C3"), _fixed(3), lambda prm: None)

_podd(16, (), lambda: """gens a b c d
rel a^9 = b^3 = c^3 = d^3 = 1
rel [a,b] = c
rel [c,a] = d
rel [c,b] = a^-3
rel [d,a] = [d,b] = 1
""", lambda: _claims(3**5, 3, ["c", "b", "d"], "M3(1,1,1) x C3"), _fixed(3), lambda prm: None)

_podd(17, ("nu", "p"), lambda p, nu: f"""gens a b c d
rel a^{p} = b^{p*p} = c^{p} = d^{p} = 1
rel [a,b] = c
rel [c,a] = b^{nu * p}
rel [c,b] = d
rel [d,a] = [d,b] = 1
""", lambda p, nu: _claims(p**5, 3, ["a", "c", "d"], f"M{p}(1,1,1) x C{p}"),
    lambda caps: [{"p": p, "nu": nu} for p in _odd_primes(caps, 5) for nu in _nu_values(p)],
    _all(_p_cond(3, strict=True), _nu_cond()))

_podd(18, ("p",), lambda p: f"""gens a b c
rel a^{p} = b^{p*p} = c^{p*p} = 1
rel [b,c] = 1
rel [c,a] = b^{p} c^{p}
rel [a,b] = b^{-p}
""", lambda p: _claims(p**5, 3, ["b", "a", f"c^{p}"], f"M{p}(2,1) x C{p}"),
    lambda caps: [{"p": p} for p in _odd_primes(caps)], _p_cond(3))

_podd(19, ("nu", "p"), lambda p, nu: f"""gens a b c
rel a^{p*p} = b^{p*p} = c^{p} = 1
rel [a,b] = c
rel [c,a] = a^{p} b^{nu * p}
rel [c,b] = b^{p}
""", lambda p, nu: _claims(p**5, 3, ["b", "c", f"a^{p}"], f"M{p}(2,1) x C{p}"),
    lambda caps: [{"p": p, "nu": nu} for p in _odd_primes(caps, 5) for nu in _nu_values(p)],
    _all(_p_cond(3, strict=True), _nu_cond()))

_podd(20, ("nu", "p"), lambda p, nu: f"""gens a b c
rel a^{p} = b^{p**3} = c^{p*p} = 1
rel [b,c] = 1
rel [c,a] = b^{p*p}
rel [a,b] = c^{nu * p}
""", lambda p, nu: _claims(p**6, 3, ["c", "a", f"b^{p}"], f"M{p}(2,1,1) * C{p*p}"),
    lambda caps: [{"p": p, "nu": nu} for p in _odd_primes(caps) for nu in _nu_values(p)],
    _all(_p_cond(3), _nu_cond()))

_podd(21, ("nu1", "nu2", "p"), lambda p, nu1, nu2: f"""gens a b c
rel a^{p**3} = b^{p*p} = c^{p} = 1
rel [a,b] = c
rel [c,a] = b^{nu1 * p}
rel [c,b] = a^{-nu2 * p * p}
""", lambda p, nu1, nu2: _claims(p**6, 3, ["c", "b", f"a^{p}"], f"M{p}(2,1,1) * C{p*p}"),
    lambda caps: [{"p": p, "nu1": a, "nu2": b} for p in _odd_primes(caps) for a in _nu_values(p) for b in _nu_values(p)],
    _all(_p_cond(3), _nu_cond("nu1"), _nu_cond("nu2")))

_podd(22, ("nu", "p"), lambda p, nu: f"""gens a b c
rel a^{p*p} = b^{p*p} = c^{p*p} = 1
rel [b,c] = a^{p}
rel [c,a] = c^{-p}
rel [a,b] = b^{p} c^{nu * p}
""", lambda p, nu: _claims(p**6, 3, ["c", "a", f"b^{p}"], f"M{p}(2,2) x C{p}"),
    lambda caps: [{"p": p, "nu": nu} for p in _odd_primes(caps) for nu in _nu_values(p)
                  if is_nonresidue(-nu, p)],
    _all(_p_cond(3), _nu_cond(), _neg_nu_cond))

_podd(23, ("nu", "p"), lambda p, nu: f"""gens a b c
rel a^{p**3} = b^{p*p} = c^{p*p} = 1
rel [b,c] = a^{p*p}
rel [c,a] = b^{p}
rel [a,b] = c^{nu * p}
""", lambda p, nu: _claims(p**7, 3, ["b", "c", f"a^{p}"], f"M{p}(2,2,1) * C{p*p}"),
    lambda caps: [{"p": p, "nu": nu} for p in _odd_primes(caps) for nu in _nu_values(p)
                  if is_nonresidue(-nu, p)],
    _all(_p_cond(3), _nu_cond(), _neg_nu_cond))


def _r_cond(prm):
    p, r = prm["p"], prm["r"]
    if not 1 <= r <= p - 2:
        return f"r in 1..{p - 2}"
    if not is_nonresidue(-r, p):
        return f"-r = {-r} is a quadratic non-residue mod {p}"
    return None


_podd(24, ("p", "r"), lambda p, r: f"""gens a b c
rel a^{p**3} = b^{p*p} = c^{p*p} = 1
rel [b,c] = a^{p*p}
rel [c,a]^{1 + r} = b^{r * p} c^{-p}
rel [a,b]^{1 + r} = b^{p} c^{p}
""", lambda p, r: _claims(p**7, 3, ["b", "c", f"a^{p}"], f"M{p}(2,2,1) * C{p*p}"),
    lambda caps: [{"p": p, "r": r} for p in _odd_primes(caps) for r in range(1, p - 1)
                  if is_nonresidue(-r, p)],
    _all(_p_cond(3), _r_cond))

_podd(25, ("n", "nu", "p"), lambda p, n, nu: f"""gens a b c
rel a^{p**(n + 1)} = b^{p} = c^{p} = 1
rel [a,b] = c
rel [c,a] = 1
rel [c,b] = a^{nu * p**n}
""", lambda p, n, nu: _claims(p**(n + 3), n + 1, ["c", "b", f"a^{p**(n - 1)}"], f"M{p}(1,1,1) * C{p*p}"),
    lambda caps: [{"p": p, "n": n, "nu": nu} for p in _odd_primes(caps) for n in range(2, caps.max_n + 1)
                  for nu in _nu_values(p)],
    _all(_p_cond(3), _n_cond(2), _nu_cond()))

_podd(26, ("n", "p"), lambda p, n: f"""gens a b c
rel a^{p**n} = b^{p*p} = c^{p} = 1
rel [a,b] = c
rel [c,a] = 1
rel [c,b] = b^{p}
""", lambda p, n: _claims(p**(n + 3), n + 1, ["b", "c", f"a^{p**(n - 1)}"], f"M{p}(2,1) x C{p}"),
    lambda caps: [{"p": p, "n": n} for p in _odd_primes(caps) for n in range(2, caps.max_n + 1)],
    _all(_p_cond(3), _n_cond(2)))

_podd(27, ("n", "p"), lambda p, n: f"""gens a b c d
rel a^{p**n} = b^{p} = c^{p} = d^{p} = 1
rel [a,b] = c
rel [c,a] = 1
rel [c,b] = d
rel [d,a] = [d,b] = 1
""", lambda p, n: _claims(p**(n + 3), n + 1, ["c", "b", f"a^{p**(n - 1)}"], f"M{p}(1,1,1) x C{p}"),
    lambda caps: [{"p": p, "n": n} for p in _odd_primes(caps) for n in range(2, caps.max_n + 1)],
    _all(_p_cond(3), _n_cond(2)))

_podd(28, ("n", "p"), lambda p, n: f"""gens a b c
rel a^{p*p} = b^{p} = c^{p**(n + 1)} = 1
rel [b,c] = 1
rel [c,a] = c^{p**n}
rel [a,b] = a^{p}
""", lambda p, n: _claims(p**(n + 4), n + 2, ["a", "b", f"c^{p**n}"], f"M{p}(2,1) x C{p}"),
    lambda caps: [{"p": p, "n": n} for p in _odd_primes(caps) for n in range(1, caps.max_n + 1)],
    _all(_p_cond(3), _n_cond(1)))


# --- the order-64 group with K = Phi(G) ------------------------------------

_register(CatalogEntry(
    "thm3.7", (),
    lambda prm: parse_presentation("""group thm3_7
p 2
gens a b c d
rel a^4 = b^4 = c^2 = d^2 = 1
rel [b,a] = c
rel [c,a] = d
rel [d,a] = b^2
rel [c,b] = [d,b] = [d,c] = 1
"""),
    lambda prm: _claims(2**6, 4, ["a^2", "c", "d"], "D8 x C2", in_phi=True),
    _fixed(2),
))


# --- central products H * C ------------------------------------------------

_H_WORDS = {
    # name -> (presentation builder, word generating H')
    "D8": (lambda p: dihedral8(), "a^2"),
    "Q8": (lambda p: quaternion8(), "a^2"),
    "M(1,1,1)": (lambda p: nonmetacyclic(p, 1, 1), "c"),
    "M(2,1)": (lambda p: metacyclic(p, 2, 1), "a^{p}"),
}


def _h_choices(p: int) -> list[str]:
    return ["D8", "Q8"] if p == 2 else ["M(1,1,1)", "M(2,1)"]


def _thm31_cond(prm):
    p, H, c, amal = prm["p"], prm["H"], prm["c_order"], prm["amalgamated"]
    if not is_prime(p):
        return f"p = {p} is not prime"
    if H not in _h_choices(p):
        return f"H in {_h_choices(p)} for p = {p}"
    if c < p or not is_power_of(c, p):
        return f"c_order must be a positive power of {p}"
    if amal and c < p * p:
        return "amalgamation over H' needs |C| >= p^2 (otherwise C <= H and G = H)"
    return None


def _thm31_build(prm) -> Presentation:
    p, H, c, amal = prm["p"], prm["H"], prm["c_order"], prm["amalgamated"]
    base, derived = _H_WORDS[H]
    hp = base(p)
    derived = derived.replace("{p}", str(p))
    gens = list(hp.generators)
    lines = hp.to_text().splitlines()
    lines[0] = f"group thm3_1_{H.replace('(', '').replace(')', '').replace(',', '')}_{c}{'_amal' if amal else ''}"
    lines[2] = "gens " + " ".join(gens + ["z"])
    lines.append(f"rel z^{c} = 1")
    lines += [f"rel [{g},z] = 1" for g in gens]
    if amal:
        lines.append(f"rel {derived} = z^{c // p}")
    return parse_presentation("\n".join(lines) + "\n")


def _thm31_claims(prm) -> ExpectedClaims:
    p, c, amal = prm["p"], prm["c_order"], prm["amalgamated"]
    order = p**3 * c // (p if amal else 1)
    return ExpectedClaims(order, None, True, None, None, False)


_register(CatalogEntry(
    "thm3.1", ("H", "amalgamated", "c_order", "p"),
    _thm31_build, _thm31_claims,
    lambda caps: [
        {"p": p, "H": H, "c_order": p**k, "amalgamated": amal}
        for p in caps.primes for H in _h_choices(p) for k in (1, 2, 3) for amal in (False, True)
        if not (amal and k == 1)
    ],
    _thm31_cond,
))


# --- the minimal non-abelian families ------------------------------------------

_register(CatalogEntry(
    "mp-nm", ("m", "n", "p"),
    lambda prm: metacyclic(prm["p"], prm["n"], prm["m"]),
    lambda prm: ExpectedClaims(prm["p"] ** (prm["n"] + prm["m"]), 1, False, None, None, None),
    lambda caps: [{"p": p, "n": n, "m": m} for p in caps.primes for n in range(2, caps.max_n + 1)
                  for m in range(1, caps.max_n + 1)],
    lambda prm: _need(prm["n"] >= 2 and prm["m"] >= 1, "n >= 2, m >= 1"),
))

_register(CatalogEntry(
    "mp-nm1", ("m", "n", "p"),
    lambda prm: nonmetacyclic(prm["p"], prm["n"], prm["m"]),
    lambda prm: ExpectedClaims(prm["p"] ** (prm["n"] + prm["m"] + 1), 1, False, None, None, None),
    lambda caps: [{"p": p, "n": n, "m": m} for p in caps.primes for n in range(1, caps.max_n + 1)
                  for m in range(1, n + 1) if not (p == 2 and n + m < 3)],
    lambda prm: _need(prm["n"] >= prm["m"] >= 1 and not (prm["p"] == 2 and prm["n"] + prm["m"] < 3),
                      "n >= m >= 1, and m + n >= 3 when p = 2"),
))


ENTRY_IDS = [f"thm3.6.{i}" for i in range(1, 29)] + ["thm3.7"]


def entry(id: str) -> CatalogEntry:
    try:
        return CATALOG[id]
    except KeyError:
        raise InvalidParameters(f"unknown catalog id {id!r}") from None


def build(id: str, params: dict | None = None) -> Presentation:
    e = entry(id)
    params = dict(params or {})
    e.check(params)
    return e.builder(params)


def expected(id: str, params: dict | None = None) -> ExpectedClaims:
    e = entry(id)
    params = dict(params or {})
    e.check(params)
    return e.claims(params)


def parameter_grid(id: str, caps: Caps = Caps(), within_order: bool = True) -> list[dict]:
    """Valid parameter tuples within ``caps``, in a fixed order."""
    e = entry(id)
    out = []
    for prm in e.domain(caps):
        if e.condition(prm):
            continue
        if within_order and e.claims(prm).order > caps.max_order:
            continue
        out.append(prm)
    return out
