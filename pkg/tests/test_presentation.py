import pytest
from hypothesis import given
from hypothesis import strategies as hs

from atgroups.errors import ExponentOverflow, NotPrime, PresentationSyntaxError, UnknownGenerator
from atgroups.presentation import FreeWord, commutator, parse_presentation, parse_word, serialize

D8 = """\
group d8
p 2
gens a b
rel a^4 = 1
rel b^2 = 1   # trailing comment
rel [a,b] = a^2
"""

letters = hs.lists(hs.tuples(hs.integers(0, 2), hs.integers(-4, 4)), max_size=8)
words = letters.map(lambda ls: FreeWord(tuple(ls)))


def test_parse_basic():
    P = parse_presentation(D8)
    assert P.name == "d8" and P.prime == 2 and P.generators == ("a", "b")
    assert len(P.relations) == 3
    lhs, rhs = P.relations[2]
    assert lhs == commutator(FreeWord.gen(0), FreeWord.gen(1))
    assert rhs == FreeWord.gen(0, 2)


def test_commutator_convention():
    # [x,y] = x^-1 y^-1 x y
    w = parse_word("[a,b]", ["a", "b"])
    assert w.letters == ((0, -1), (1, -1), (0, 1), (1, 1))


def test_left_normed_bracket():
    names = ["a", "b", "c"]
    assert parse_word("[a,b,c]", names) == parse_word("[[a,b],c]", names)


def test_chained_relation_sets_every_word_to_last():
    P = parse_presentation("group g\np 2\ngens a b c\nrel a^2 = b^2 = c^2 = 1\n")
    assert [r.format(P.generators) for r in P.relators()] == ["a^2", "b^2", "c^2"]


def test_identity_and_explicit_star():
    names = ["a", "b"]
    assert parse_word("1", names) == FreeWord()
    assert parse_word("a*b", names) == parse_word("a b", names)


@pytest.mark.parametrize(
    "text, exc, line",
    [
        ("group g\np 4\ngens a\n", NotPrime, 2),
        ("group g\np 2\ngens a\nrel b = 1\n", UnknownGenerator, 4),
        ("group g\np 2\ngens a\nrel a^99999999999999999999 = 1\n", ExponentOverflow, 4),
        ("group g\np 2\ngens a\nrel a^2\n", PresentationSyntaxError, 4),
        ("group g\np 2\ngens a a\n", PresentationSyntaxError, 3),
        ("group g\ngens a\n", PresentationSyntaxError, 2),
        ("group g\np 2\ngens a\nrel [a] = 1\n", PresentationSyntaxError, 4),
        ("group g\np 2\ngens a\nrel a % 2 = 1\n", PresentationSyntaxError, 4),
    ],
)
def test_errors_carry_line(text, exc, line):
    with pytest.raises(exc) as info:
        parse_presentation(text)
    assert info.value.line == line


def test_error_column_points_at_token():
    with pytest.raises(UnknownGenerator) as info:
        parse_presentation("group g\np 2\ngens a\nrel a b = 1\n")
    assert info.value.column == 7


@given(words)
def test_inverse_cancels(w):
    assert w * w.inverse() == FreeWord()
    assert w.inverse().inverse() == w


@given(words, words, words)
def test_concatenation_associative(u, v, w):
    assert (u * v) * w == u * (v * w)


@given(words)
def test_reduced_form_has_no_adjacent_repeats(w):
    gens = [g for g, _ in w.letters]
    assert all(a != b for a, b in zip(gens, gens[1:]))
    assert all(e != 0 for _, e in w.letters)


@given(words)
def test_format_roundtrip(w):
    names = ["a", "b", "c"]
    assert parse_word(w.format(names), names) == w


@given(hs.lists(words, min_size=1, max_size=4).map(lambda ws: [w for w in ws]))
def test_serialize_roundtrip(ws):
    from atgroups.presentation import Presentation

    rels = tuple((w, FreeWord()) for w in ws)
    P = Presentation("g", 3, ("a", "b", "c"), rels)
    assert parse_presentation(serialize(P)) == P
