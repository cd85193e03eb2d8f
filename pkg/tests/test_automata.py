"""Automaton algebra: construction, determinization, locality, reduction."""

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from rpqres import automata, lang
from rpqres.automata import (
    accepts,
    automaton_for,
    complement,
    determinize,
    eps_nfa_to_ro,
    is_aperiodic,
    is_equivalent,
    is_finite_language,
    is_letter_cartesian_finite,
    is_local_language,
    is_neutral_letter,
    is_read_once,
    is_subset,
    language_words,
    non_aperiodic_witness,
    parse_automaton,
    reduce_regular,
    regex_to_epsnfa,
    serialize_automaton,
    trim,
    words_to_nfa,
)
from rpqres.errors import InputError, ResourceCapError


def A(text):
    return automaton_for(text)


def wd(text):
    return lang.parse_word(text)


# ---------------------------------------------------------------------------
# acceptance and construction


def test_regex_acceptance():
    ab = A("ax*b")
    assert accepts(ab, wd("ab"))
    assert accepts(ab, wd("axxxb"))
    assert not accepts(ab, wd("a"))
    assert not accepts(ab, wd("axa"))


def test_words_to_nfa_exact():
    m = words_to_nfa({wd("ab"), wd("c")})
    assert accepts(m, wd("ab"))
    assert accepts(m, wd("c"))
    assert not accepts(m, wd("abc"))
    assert not accepts(m, ())


def test_automaton_for_accepts_many_specs():
    r = lang.parse_regex("ab")
    for spec in ("ab", r, regex_to_epsnfa(r), [wd("ab")]):
        assert accepts(automaton_for(spec), wd("ab"))
    with pytest.raises(InputError):
        automaton_for(42)
    with pytest.raises(InputError):
        automaton_for(["ab"])  # strings are not words


# regexes over a tiny alphabet, depth-bounded
regex_st = st.recursive(
    st.sampled_from(["a", "b", "c", "~"]),
    lambda inner: st.one_of(
        st.tuples(inner, inner).map(lambda t: f"({t[0]})({t[1]})"),
        st.tuples(inner, inner).map(lambda t: f"({t[0]})|({t[1]})"),
        inner.map(lambda r: f"({r})*"),
    ),
    max_leaves=6,
)

short_words = [
    tuple(p)
    for n in range(4)
    for p in __import__("itertools").product("abc", repeat=n)
]


@given(regex_st)
@settings(max_examples=60, deadline=None)
def test_determinize_preserves_language(text):
    m = A(text)
    d = determinize(m)
    assert automata.is_deterministic(d)
    for word in short_words:
        assert accepts(m, word) == accepts(d, word)


@given(regex_st)
@settings(max_examples=60, deadline=None)
def test_complement_flips_membership(text):
    m = A(text)
    c = complement(determinize(m), frozenset("abc"))
    for word in short_words:
        assert accepts(m, word) != accepts(c, word)


@given(regex_st)
@settings(max_examples=40, deadline=None)
def test_trim_preserves_language(text):
    m = A(text)
    t = trim(m)
    for word in short_words:
        assert accepts(m, word) == accepts(t, word)
    assert is_equivalent(m, t)


def test_subset_and_equivalence():
    assert is_subset(A("ab"), A("ab|cd"))
    assert not is_subset(A("ab|cd"), A("ab"))
    assert is_equivalent(A("a(b|c)"), A("ab|ac"))


# ---------------------------------------------------------------------------
# finiteness and word enumeration


def test_language_words_sorted():
    assert language_words(A("ba|ab|a")) == [wd("a"), wd("ab"), wd("ba")]


def test_language_words_infinite_needs_cap():
    with pytest.raises(InputError):
        language_words(A("a*"))
    assert language_words(A("a*"), max_len=2) == [(), wd("a"), wd("aa")]


def test_language_words_word_cap():
    with pytest.raises(ResourceCapError):
        language_words(A("a|b|c|ab|ac"), max_words=3)


def test_is_finite_language():
    assert is_finite_language(A("abc|d"))
    assert not is_finite_language(A("ab*"))
    # unreachable loops do not count
    loop = automata.make_nfa(
        {0, 1, 2}, {0}, {1}, {(0, "a", 1), (2, "b", 2)}
    )
    assert is_finite_language(loop)


# ---------------------------------------------------------------------------
# the read-once construction


def test_ro_shape():
    ro = eps_nfa_to_ro(A("ab|bc"))
    assert is_read_once(ro)
    # one letter transition per letter
    labels = [label for _, label, _ in ro.transitions if label is not None]
    assert sorted(labels) == ["a", "b", "c"]


def test_ro_overapproximates():
    m = A("ab|bc")
    ro = eps_nfa_to_ro(m)
    assert is_subset(m, ro)
    # abc takes a's in-out then b's then c's: present in the closure
    assert accepts(ro, wd("abc"))
    assert not accepts(m, wd("abc"))


def test_ro_epsilon_handling():
    assert accepts(eps_nfa_to_ro(A("a*")), ())
    assert not accepts(eps_nfa_to_ro(A("a")), ())


def test_local_language_detection():
    assert is_local_language(A("ax*b"))
    assert not is_local_language(A("ab|bc"))
    assert is_local_language(A("ab|ad|cd"))


def test_letter_cartesian_finite_matches_bruteforce():
    for text in ("ab|bc", "ab|ad|cd", "abc|abd", "a|b", "abca|cab"):
        words = frozenset(language_words(A(text)))
        assert is_letter_cartesian_finite(words) == oracles.brute_letter_cartesian(
            words
        )


# ---------------------------------------------------------------------------
# reduction on automata


def test_reduce_regular_drops_superwords():
    r = reduce_regular(A("a|aa|ba"))
    assert is_equivalent(r, A("a"))


def test_reduce_regular_of_infinite_language():
    # every word of a*b contains b, and b alone is in the language
    assert is_equivalent(reduce_regular(A("a*b")), A("b"))


def test_reduce_regular_fixed_point():
    r = reduce_regular(A("ab|bc"))
    assert is_equivalent(r, A("ab|bc"))
    assert automata.is_reduced_regular(r)


@given(regex_st)
@settings(max_examples=40, deadline=None)
def test_reduce_regular_idempotent(text):
    once = reduce_regular(A(text))
    assert is_equivalent(reduce_regular(once), once)


@given(regex_st)
@settings(max_examples=40, deadline=None)
def test_reduce_regular_matches_finite_reduce(text):
    m = A(text)
    if not is_finite_language(m):
        return
    reduced = lang.reduce_finite(language_words(m))
    assert is_equivalent(reduce_regular(m), words_to_nfa(reduced))


# ---------------------------------------------------------------------------
# neutral letters and aperiodicity


def test_neutral_letter():
    m = A("e*be*ce*|e*de*fe*")
    assert is_neutral_letter(m, "e")
    assert not is_neutral_letter(m, "b")
    assert not is_neutral_letter(A("ab"), "a")


def test_aperiodicity():
    assert is_aperiodic(A("ax*b"))
    assert non_aperiodic_witness(A("ax*b")) is None
    witness = non_aperiodic_witness(A("b(aa)*d"))
    assert witness is not None
    word, period = witness
    assert period >= 2
    # the witness word pumps with the stated period
    m = A("b(aa)*d")
    probe = wd("b") + word * period + wd("d")
    probe2 = wd("b") + word * (2 * period) + wd("d")
    probe1 = wd("b") + word + wd("d")
    assert accepts(m, probe) == accepts(m, probe2)
    assert accepts(m, probe1) != accepts(m, probe) or period == 1


def test_aperiodic_star_of_letter():
    assert is_aperiodic(A("a*"))
    assert is_aperiodic(A("(ab)*"))  # aperiodic despite the star
    assert not is_aperiodic(A("(aa)*"))


# ---------------------------------------------------------------------------
# serialization


def test_serialize_roundtrip():
    m = determinize(A("ab|ax*b"))
    again = parse_automaton(serialize_automaton(m))
    assert is_equivalent(m, again)


def test_serialize_is_stable():
    m = A("ab|cd")
    assert serialize_automaton(m) == serialize_automaton(m)


def test_parse_automaton_rejects_unknown_state():
    text = "states p\ninitial p\nfinal p\np\ta\tq\n"
    with pytest.raises(InputError):
        parse_automaton(text)
