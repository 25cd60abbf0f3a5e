"""Finite group presentations: free words, the ``.pgp`` text format, relators.

A ``.pgp`` file looks like::

    group d8
    p 2
    gens a b
    rel a^4 = 1
    rel b^2 = 1
    rel [a,b] = a^2

Commutators are ``[x,y] = x^-1 y^-1 x y``.  A relation line may chain several
words, ``rel a^4 = b^4 = c^2 = 1``; every word is then set equal to the last.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    ExponentOverflow,
    NotPrime,
    PresentationSyntaxError,
    UnknownGenerator,
)

EXPONENT_LIMIT = 2**63


@dataclass(frozen=True)
class FreeWord:
    """A freely reduced word, stored as ``(generator index, exponent)`` letters."""

    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _reduce_letters(self.letters))

    @classmethod
    def gen(cls, index: int, exponent: int = 1) -> "FreeWord":
        return cls(((index, exponent),))

    @classmethod
    def identity(cls) -> "FreeWord":
        return cls(())

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return FreeWord(self.letters + other.letters)

    def __pow__(self, k: int) -> "FreeWord":
        if k == 0 or not self.letters:
            return FreeWord()
        base = self if k > 0 else self.inverse()
        k = abs(k)
        if len(base.letters) == 1:
            g, e = base.letters[0]
            return FreeWord(((g, e * k),))
        return FreeWord(base.letters * k)

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def inverse(self) -> "FreeWord":
        return FreeWord(tuple((g, -e) for g, e in reversed(self.letters)))

    def expand(self) -> list[int]:
        """Signed letter list: generator ``i`` is ``i + 1``, its inverse ``-(i + 1)``."""
        out: list[int] = []
        for g, e in self.letters:
            out.extend([g + 1 if e > 0 else -(g + 1)] * abs(e))
        return out

    def format(self, names: Sequence[str]) -> str:
        if not self.letters:
            return "1"
        parts = []
        for g, e in self.letters:
            parts.append(names[g] if e == 1 else f"{names[g]}^{e}")
        return " ".join(parts)


def commutator(u: FreeWord, v: FreeWord) -> FreeWord:
    return u.inverse() * v.inverse() * u * v


def _reduce_letters(letters: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    stack: list[list[int]] = []
    for g, e in letters:
        if e == 0:
            continue
        if stack and stack[-1][0] == g:
            stack[-1][1] += e
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([g, e])
    return tuple((g, e) for g, e in stack)


def free_reduce(w: FreeWord | Iterable[tuple[int, int]]) -> FreeWord:
    if isinstance(w, FreeWord):
        w = w.letters
    return FreeWord(tuple(w))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Presentation:
    name: str
    prime: int
    generators: tuple[str, ...]
    relations: tuple[tuple[FreeWord, FreeWord], ...] = field(default=())

    def __post_init__(self):
        if len(set(self.generators)) != len(self.generators):
            raise PresentationSyntaxError(f"duplicate generator names in {self.generators}")
        if not is_prime(self.prime):
            raise NotPrime(f"{self.prime} is not prime")
        n = len(self.generators)
        for lhs, rhs in self.relations:
            for g, _ in lhs.letters + rhs.letters:
                if not 0 <= g < n:
                    raise UnknownGenerator(f"generator index {g} out of range")

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def relators(self) -> list[FreeWord]:
        return relators(self)

    def word(self, text: str) -> FreeWord:
        """Parse a single word over this presentation's generators."""
        return parse_word(text, self.generators)

    def to_text(self) -> str:
        return serialize(self)


def relators(pres: Presentation) -> list[FreeWord]:
    """Relations ``lhs = rhs`` as reduced relators ``lhs * rhs^-1``, in source order."""
    return [lhs * rhs.inverse() for lhs, rhs in pres.relations]


def serialize(pres: Presentation) -> str:
    names = pres.generators
    lines = [f"group {pres.name}", f"p {pres.prime}", "gens " + " ".join(names)]
    for lhs, rhs in pres.relations:
        lines.append(f"rel {lhs.format(names)} = {rhs.format(names)}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>-?\d+)|(?P<sym>[\^\[\],=*]))")


class _WordParser:
    def __init__(self, text: str, gens: Sequence[str], line: int = 0, offset: int = 0):
        self.tokens = self._tokenize(text, line, offset)
        self.pos = 0
        self.index = {name: i for i, name in enumerate(gens)}
        self.line = line

    @staticmethod
    def _tokenize(text, line, offset):
        tokens = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m:
                col = offset + pos + 1 + (len(text[pos:]) - len(text[pos:].lstrip()))
                raise PresentationSyntaxError(f"unexpected character {text[pos:].strip()[0]!r}", line, col)
            kind = m.lastgroup
            col = offset + m.start(kind) + 1
            tokens.append((kind, m.group(kind), col))
            pos = m.end()
        return tokens

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None, self._end_col())

    def _end_col(self):
        return self.tokens[-1][2] + len(self.tokens[-1][1]) if self.tokens else 1

    def error(self, msg, col=None):
        raise PresentationSyntaxError(msg, self.line, col if col is not None else self.peek()[2])

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None:
            self.error("unexpected end of line" + (f", expected {value!r}" if value else ""))
        if value is not None and tok[1] != value:
            self.error(f"expected {value!r}, found {tok[1]!r}")
        self.pos += 1
        return tok

    def at_end(self) -> bool:
        return self.pos >= len(self.tokens)

    def exponent(self) -> int:
        if self.peek()[1] != "^":
            return 1
        self.take("^")
        kind, value, col = self.take()
        if kind != "int":
            self.error(f"expected integer exponent, found {value!r}", col)
        k = int(value)
        if abs(k) >= EXPONENT_LIMIT:
            raise ExponentOverflow(f"exponent {value} exceeds 2^63", self.line, col)
        return k

    def word(self, stop=("=", ",", "]", None)) -> FreeWord:
        kind, value, col = self.peek()
        if kind == "int" and value == "1":
            self.take()
            return FreeWord()
        w = FreeWord()
        nterms = 0
        while True:
            kind, value, col = self.peek()
            if kind is None or value in stop:
                break
            if value == "*":
                self.take()
                continue
            w = w * self.term()
            nterms += 1
        if nterms == 0:
            self.error("empty word")
        return w

    def term(self) -> FreeWord:
        kind, value, col = self.take()
        if kind == "name":
            if value not in self.index:
                raise UnknownGenerator(f"unknown generator {value!r}", self.line, col)
            base = FreeWord.gen(self.index[value])
        elif value == "[":
            base = self.bracket()
        else:
            self.error(f"unexpected token {value!r}", col)
        return base ** self.exponent()

    def bracket(self) -> FreeWord:
        words = [self.word()]
        while self.peek()[1] == ",":
            self.take(",")
            words.append(self.word())
        self.take("]")
        if len(words) < 2:
            self.error("commutator needs two entries")
        # [x, y, z] is left-normed: [[x, y], z]
        w = words[0]
        for v in words[1:]:
            w = commutator(w, v)
        return w


def parse_word(text: str, gens: Sequence[str]) -> FreeWord:
    p = _WordParser(text, gens)
    w = p.word()
    if not p.at_end():
        p.error(f"trailing input {p.peek()[1]!r}")
    return w


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def parse_presentation(text: str) -> Presentation:
    lines = [(i + 1, _strip_comment(raw)) for i, raw in enumerate(text.splitlines())]
    lines = [(n, l) for n, l in lines if l.strip()]
    header = {}
    for key in ("group", "p", "gens"):
        if not lines:
            raise PresentationSyntaxError(f"missing {key!r} header line", 0, 0)
        n, line = lines.pop(0)
        parts = line.split()
        if parts[0] != key:
            raise PresentationSyntaxError(f"expected {key!r}, found {parts[0]!r}", n, line.find(parts[0]) + 1)
        if len(parts) < 2 or (key != "gens" and len(parts) != 2):
            raise PresentationSyntaxError(f"malformed {key!r} line", n, 1)
        header[key] = (n, parts[1:])
    name = header["group"][1][0]
    n, (ptext,) = header["p"]
    if not re.fullmatch(r"\d+", ptext):
        raise PresentationSyntaxError(f"expected integer prime, found {ptext!r}", n, 3)
    if len(ptext) > 19 or int(ptext) >= EXPONENT_LIMIT:
        raise ExponentOverflow(f"prime {ptext} too large", n, 3)
    prime = int(ptext)
    if not is_prime(prime):
        raise NotPrime(f"{prime} is not prime", n, 3)
    gens = tuple(header["gens"][1])
    for g in gens:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", g):
            raise PresentationSyntaxError(f"bad generator name {g!r}", header["gens"][0], 1)
    if len(set(gens)) != len(gens):
        raise PresentationSyntaxError("duplicate generator names", header["gens"][0], 1)

    relations = []
    for n, line in lines:
        stripped = line.lstrip()
        indent = len(line) - len(stripped)
        if not stripped.startswith("rel") or (len(stripped) > 3 and not stripped[3].isspace()):
            raise PresentationSyntaxError(f"expected 'rel', found {stripped.split()[0]!r}", n, indent + 1)
        body = stripped[3:]
        p = _WordParser(body, gens, line=n, offset=indent + 3)
        words = [p.word()]
        while not p.at_end():
            p.take("=")
            words.append(p.word())
        if len(words) < 2:
            p.error("relation needs '='")
        for w in words[:-1]:
            relations.append((w, words[-1]))
    return Presentation(name=name, prime=prime, generators=gens, relations=tuple(relations))


def load_presentation(path) -> Presentation:
    with open(path) as fh:
        return parse_presentation(fh.read())
