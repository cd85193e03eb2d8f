"""Words, reduction, repeated letters, and the regex layer."""

import pytest
from hypothesis import given, strategies as st

import oracles
from rpqres import lang
from rpqres.errors import InputError


def w(text):
    return lang.parse_word(text)


# ---------------------------------------------------------------------------
# word parsing and rendering


def test_parse_word_basics():
    assert w("abc") == ("a", "b", "c")
    assert w("~") == ()
    assert w("[load]b") == ("load", "b")
    assert w("[*]") == ("*",)


def test_parse_word_rejects_garbage():
    with pytest.raises(InputError):
        w("")
    with pytest.raises(InputError):
        w("a b")
    with pytest.raises(InputError):
        w("a*b")  # reserved outside brackets
    with pytest.raises(InputError):
        w("[ab")
    with pytest.raises(InputError):
        w("[]")


def test_render_word_brackets_long_letters():
    assert lang.render_word(()) == "~"
    assert lang.render_word(("a", "load", "b")) == "a[load]b"


def test_parse_words_list():
    text = "ab  # a comment\n\n~\n[x]y\n"
    assert lang.parse_words(text) == frozenset({("a", "b"), (), ("x", "y")})


words_st = st.lists(
    st.sampled_from("abcx"), min_size=0, max_size=6
).map(tuple)


@given(words_st)
def test_word_roundtrip(word):
    assert lang.parse_word(lang.render_word(word)) == word


# ---------------------------------------------------------------------------
# infixes and reduction


def test_infix_definitions():
    assert lang.is_infix(w("bc"), w("abcd"))
    assert lang.is_infix(w("abcd"), w("abcd"))
    assert not lang.is_infix(w("ca"), w("abcd"))
    assert lang.is_strict_infix(w("bc"), w("abcd"))
    assert not lang.is_strict_infix(w("abcd"), w("abcd"))
    assert lang.is_infix((), w("a"))


def test_reduce_drops_superwords():
    language = {w("a"), w("aa"), w("ba"), w("cb")}
    assert lang.reduce_finite(language) == {w("a"), w("cb")}


def test_reduce_keeps_incomparable_words():
    language = {w("abc"), w("bcd")}
    assert lang.reduce_finite(language) == frozenset(language)


@given(st.frozensets(words_st, max_size=8))
def test_reduce_is_idempotent(language):
    once = lang.reduce_finite(language)
    assert lang.reduce_finite(once) == once


@given(st.frozensets(words_st, max_size=8))
def test_reduce_matches_bruteforce(language):
    assert lang.reduce_finite(language) == oracles.brute_reduce(language)


@given(st.frozensets(words_st, max_size=8))
def test_mirror_is_an_involution(language):
    assert lang.mirror_finite(lang.mirror_finite(language)) == frozenset(language)


def test_mirror_reverses_each_word():
    assert lang.mirror_finite({w("abc")}) == {w("cba")}


# ---------------------------------------------------------------------------
# repeated letters and maximal gaps


def test_has_repeated_letter():
    hit = lang.has_repeated_letter(w("abca"))
    assert hit.letter == "a"
    assert hit.before == ()
    assert hit.gap == ("b", "c")
    assert hit.after == ()
    assert lang.has_repeated_letter(w("abc")) is None


def test_maximal_gap_prefers_wider_then_longer():
    # gaps: aba -> 1, abca -> 2
    result = lang.maximal_gap_words({w("aba"), w("abca")})
    assert [d.word for d in result] == [w("abca")]
    d = result[0]
    assert d.word == d.before + (d.letter,) + d.gap + (d.letter,) + d.after
    assert len(d.gap) == 2


def test_maximal_gap_needs_a_repeat():
    with pytest.raises(InputError):
        lang.maximal_gap_words({w("abc")})


# ---------------------------------------------------------------------------
# regexes


def test_parse_regex_shapes():
    r = lang.parse_regex("ab|c*")
    assert isinstance(r, lang.RUnion)
    assert lang.regex_alphabet(r) == frozenset("abc")


def test_parse_regex_brackets_and_epsilon():
    r = lang.parse_regex("[go]~")
    assert lang.regex_alphabet(r) == frozenset({"go"})


def test_parse_regex_rejects_garbage():
    for bad in ("", "a|", "(a", "a)", "*a", "[", "a**b("):
        with pytest.raises(InputError):
            lang.parse_regex(bad)


def test_regex_to_string_parses_back():
    for text in ("ab|c", "(a|b)*c", "a(b|~)d", "[load]x*"):
        r = lang.parse_regex(text)
        again = lang.parse_regex(lang.regex_to_string(r))
        assert again == r
