"""Words, finite languages, and the regular-expression dialect.

A letter is a plain string token: usually a single character like ``a``,
but longer names are allowed and render bracketed, like ``[a1]``.  A word
is a tuple of letters; the empty tuple is the empty word and renders as
``~``.  Finite languages are frozensets of words.

Regex dialect: juxtaposition concatenates, ``|`` unions, ``*`` is postfix
star, parentheses group, ``~`` denotes the empty word, ``∅`` (or ``0``)
the empty language, and multi-character letters are written in brackets.

Everything here is immutable and the functions are pure, so values can be
shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional

from .errors import InputError

Word = tuple[str, ...]
FiniteLanguage = frozenset  # of Word

EPSILON: Word = ()

_SPECIAL = frozenset("()|*[]~∅0")


def letters_of(language: Iterable[Word]) -> frozenset[str]:
    """The set of letters mentioned by any word of the language."""
    return frozenset(a for w in language for a in w)


# ---------------------------------------------------------------------------
# rendering and parsing of words


def render_letter(letter: str) -> str:
    if len(letter) == 1 and letter not in _SPECIAL and not letter.isspace():
        return letter
    return f"[{letter}]"


def render_word(word: Word) -> str:
    if not word:
        return "~"
    return "".join(render_letter(a) for a in word)


def parse_word(text: str) -> Word:
    """Parse one word; ``~`` is the empty word, ``[name]`` a long letter."""
    text = text.strip()
    if text == "~":
        return EPSILON
    if not text:
        raise InputError("empty word text (write ~ for the empty word)")
    letters: list[str] = []
    i = 0
    while i < len(text):
        c = text[i]
        if c == "[":
            j = text.find("]", i + 1)
            if j < 0:
                raise InputError(f"unterminated '[' in word {text!r}")
            if j == i + 1:
                raise InputError(f"empty letter name in word {text!r}")
            letters.append(text[i + 1 : j])
            i = j + 1
        elif c.isspace():
            raise InputError(f"whitespace inside word {text!r}")
        elif c in _SPECIAL:
            raise InputError(
                f"character {c!r} in word {text!r} is reserved; bracket it as [{c}]"
            )
        else:
            letters.append(c)
            i += 1
    return tuple(letters)


def parse_words(text: str) -> FiniteLanguage:
    """Parse a newline-separated word list; ``#`` starts a comment."""
    words = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            words.add(parse_word(line))
        except InputError as exc:
            raise InputError(f"line {lineno}: {exc}") from None
    return frozenset(words)


def render_words(language: Iterable[Word]) -> str:
    return "\n".join(render_word(w) for w in sorted(frozenset(language)))


# ---------------------------------------------------------------------------
# infixes, reduction, mirror


def is_infix(alpha: Word, beta: Word) -> bool:
    """True iff beta = delta + alpha + gamma for some (possibly empty) parts."""
    n = len(alpha)
    return any(beta[i : i + n] == alpha for i in range(len(beta) - n + 1))


def is_strict_infix(alpha: Word, beta: Word) -> bool:
    """An infix occurrence that drops at least one letter of beta."""
    return len(alpha) < len(beta) and is_infix(alpha, beta)


def reduce_finite(language: Iterable[Word]) -> FiniteLanguage:
    """Keep the words having no strict infix inside the language.

    The result defines the same path query: any walk labeled by a word of L
    contains a subwalk labeled by a kept word.

    >>> sorted(reduce_finite({("a",), ("a", "a")}))
    [('a',)]
    """
    words = frozenset(language)
    return frozenset(
        w for w in words if not any(is_strict_infix(u, w) for u in words)
    )


def mirror_word(word: Word) -> Word:
    return word[::-1]


def mirror_finite(language: Iterable[Word]) -> FiniteLanguage:
    return frozenset(w[::-1] for w in language)


# ---------------------------------------------------------------------------
# repeated letters and maximal-gap decompositions


class RepeatedLetter(NamedTuple):
    """A decomposition word = before + (letter,) + gap + (letter,) + after."""

    letter: str
    before: Word
    gap: Word
    after: Word


def has_repeated_letter(word: Word) -> Optional[RepeatedLetter]:
    """The leftmost pair of equal letters, or None when all are distinct."""
    for i in range(len(word)):
        for j in range(i + 1, len(word)):
            if word[i] == word[j]:
                return RepeatedLetter(
                    word[i], word[:i], word[i + 1 : j], word[j + 1 :]
                )
    return None


class GapDecomposition(NamedTuple):
    word: Word
    before: Word
    letter: str
    gap: Word
    after: Word


def _widest_split(word: Word) -> Optional[tuple[int, int, int]]:
    # (gap, i, j) for the first repeated pair of maximal gap
    best: Optional[tuple[int, int, int]] = None
    for i in range(len(word)):
        for j in range(i + 1, len(word)):
            if word[i] == word[j] and (best is None or j - i - 1 > best[0]):
                best = (j - i - 1, i, j)
    return best


def maximal_gap_words(language: Iterable[Word]) -> list[GapDecomposition]:
    """Words whose repeated letters are farthest apart.

    Among all decompositions word = before + a + gap + a + after over the
    whole language, keep the words achieving the largest ``gap`` length,
    then the longest words among those.  One witnessing decomposition per
    word, words in lexicographic order.
    """
    found: list[tuple[int, Word, int, int]] = []
    for w in sorted(frozenset(language)):
        split = _widest_split(w)
        if split is not None:
            found.append((split[0], w, split[1], split[2]))
    if not found:
        raise InputError("no word of the language has a repeated letter")
    top_gap = max(gap for gap, _, _, _ in found)
    widest = [entry for entry in found if entry[0] == top_gap]
    top_len = max(len(w) for _, w, _, _ in widest)
    return [
        GapDecomposition(w, w[:i], w[i], w[i + 1 : j], w[j + 1 :])
        for gap, w, i, j in widest
        if len(w) == top_len
    ]


# ---------------------------------------------------------------------------
# regular expressions


@dataclass(frozen=True)
class Regex:
    """Base class for regex syntax-tree nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class REmpty(Regex):
    __slots__ = ()


@dataclass(frozen=True)
class REpsilon(Regex):
    __slots__ = ()


@dataclass(frozen=True)
class RLetter(Regex):
    letter: str


@dataclass(frozen=True)
class RConcat(Regex):
    parts: tuple[Regex, ...]


@dataclass(frozen=True)
class RUnion(Regex):
    parts: tuple[Regex, ...]


@dataclass(frozen=True)
class RStar(Regex):
    inner: Regex


def regex_alphabet(r: Regex) -> frozenset[str]:
    if isinstance(r, RLetter):
        return frozenset((r.letter,))
    if isinstance(r, (RConcat, RUnion)):
        return frozenset(a for p in r.parts for a in regex_alphabet(p))
    if isinstance(r, RStar):
        return regex_alphabet(r.inner)
    return frozenset()


class _Token(NamedTuple):
    kind: str
    value: str
    pos: int


def _tokenize_regex(text: str) -> list[_Token]:
    tokens = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
        elif c == "[":
            j = text.find("]", i + 1)
            if j < 0:
                raise InputError(f"regex: unterminated '[' at position {i}")
            if j == i + 1:
                raise InputError(f"regex: empty letter name at position {i}")
            tokens.append(_Token("letter", text[i + 1 : j], i))
            i = j + 1
        elif c == "]":
            raise InputError(f"regex: unmatched ']' at position {i}")
        elif c in "()|*":
            tokens.append(_Token(c, c, i))
            i += 1
        elif c == "~":
            tokens.append(_Token("epsilon", c, i))
            i += 1
        elif c in "∅0":
            tokens.append(_Token("empty", c, i))
            i += 1
        else:
            tokens.append(_Token("letter", c, i))
            i += 1
    tokens.append(_Token("end", "", len(text)))
    return tokens


_ATOM_STARTERS = frozenset(("letter", "epsilon", "empty", "("))


class _RegexParser:
    def __init__(self, text: str):
        self.tokens = _tokenize_regex(text)
        self.index = 0

    def peek(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def parse_union(self) -> Regex:
        parts = [self.parse_concat()]
        while self.peek().kind == "|":
            self.advance()
            parts.append(self.parse_concat())
        return parts[0] if len(parts) == 1 else RUnion(tuple(parts))

    def parse_concat(self) -> Regex:
        parts = []
        while self.peek().kind in _ATOM_STARTERS:
            parts.append(self.parse_postfix())
        if not parts:
            tok = self.peek()
            raise InputError(f"regex: expected an expression at position {tok.pos}")
        return parts[0] if len(parts) == 1 else RConcat(tuple(parts))

    def parse_postfix(self) -> Regex:
        node = self.parse_atom()
        while self.peek().kind == "*":
            self.advance()
            node = RStar(node)
        return node

    def parse_atom(self) -> Regex:
        tok = self.advance()
        if tok.kind == "letter":
            return RLetter(tok.value)
        if tok.kind == "epsilon":
            return REpsilon()
        if tok.kind == "empty":
            return REmpty()
        if tok.kind == "(":
            inner = self.parse_union()
            closing = self.advance()
            if closing.kind != ")":
                raise InputError(f"regex: expected ')' at position {closing.pos}")
            return inner
        raise InputError(f"regex: unexpected {tok.value!r} at position {tok.pos}")


def parse_regex(text: str) -> Regex:
    """Parse the dialect described in the module docstring.

    >>> parse_regex("ab|c") == RUnion((RConcat((RLetter("a"), RLetter("b"))), RLetter("c")))
    True
    """
    parser = _RegexParser(text)
    node = parser.parse_union()
    trailing = parser.peek()
    if trailing.kind != "end":
        raise InputError(
            f"regex: unexpected {trailing.value!r} at position {trailing.pos}"
        )
    return node


def _regex_precedence(r: Regex) -> int:
    if isinstance(r, RUnion):
        return 0
    if isinstance(r, RConcat):
        return 1
    if isinstance(r, RStar):
        return 2
    return 3


def _print_regex(r: Regex, context: int) -> str:
    if isinstance(r, REmpty):
        body = "∅"
    elif isinstance(r, REpsilon):
        body = "~"
    elif isinstance(r, RLetter):
        body = render_letter(r.letter)
    elif isinstance(r, RUnion):
        body = "|".join(_print_regex(p, 1) for p in r.parts)
    elif isinstance(r, RConcat):
        body = "".join(_print_regex(p, 2) for p in r.parts)
    elif isinstance(r, RStar):
        body = _print_regex(r.inner, 3) + "*"
    else:
        raise TypeError(f"not a regex node: {r!r}")
    if _regex_precedence(r) < context:
        return f"({body})"
    return body


def regex_to_string(r: Regex) -> str:
    """Print a regex; parse_regex(regex_to_string(r)) == r."""
    return _print_regex(r, 0)
