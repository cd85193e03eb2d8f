"""Finite automata with epsilon transitions, and language-level decision
procedures built on them: trimming, product, determinization, complement,
inclusion, the read-once construction, locality, reduction of regular
languages, neutral letters, and aperiodicity.

An EpsNFA is immutable; states are opaque hashable ids.  DFAs are the
deterministic special case of the same type (one initial state, no epsilon
transitions, at most one outgoing transition per state and letter).

Epsilon is represented by the label ``None`` in memory and by the reserved
token ``EPS`` in the text format.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, NamedTuple, Optional

from . import lang
from .errors import InputError, ResourceCapError
from .lang import Word

EPS = None

DEFAULT_STATE_CAP = 100_000
DEFAULT_MONOID_CAP = 100_000

Transition = tuple  # (src, label or None, dst)


@dataclass(frozen=True)
class EpsNFA:
    states: frozenset
    initial: frozenset
    final: frozenset
    transitions: frozenset
    alphabet: frozenset = field(default=frozenset())

    def __post_init__(self):
        if not self.initial <= self.states or not self.final <= self.states:
            raise InputError("initial/final states must belong to the state set")
        used = set()
        for src, label, dst in self.transitions:
            if src not in self.states or dst not in self.states:
                raise InputError(f"transition {(src, label, dst)!r} leaves the state set")
            if label is not None:
                used.add(label)
        if not used <= self.alphabet:
            object.__setattr__(self, "alphabet", self.alphabet | frozenset(used))

    def size(self) -> int:
        return len(self.states) + len(self.transitions)


def make_nfa(states, initial, final, transitions, alphabet=()) -> EpsNFA:
    return EpsNFA(
        frozenset(states),
        frozenset(initial),
        frozenset(final),
        frozenset(tuple(t) for t in transitions),
        frozenset(alphabet),
    )


class _Maps(NamedTuple):
    by_letter: dict  # state -> {letter -> frozenset of targets}
    eps: dict  # state -> frozenset of epsilon targets
    rev: dict  # state -> frozenset of (src, label) entering it


@lru_cache(maxsize=1024)
def _maps(A: EpsNFA) -> _Maps:
    by_letter: dict = {}
    eps: dict = {}
    rev: dict = {}
    for src, label, dst in A.transitions:
        if label is None:
            eps.setdefault(src, set()).add(dst)
        else:
            by_letter.setdefault(src, {}).setdefault(label, set()).add(dst)
        rev.setdefault(dst, set()).add((src, label))
    return _Maps(by_letter, eps, rev)


def eps_closure(A: EpsNFA, states: Iterable) -> frozenset:
    maps = _maps(A)
    seen = set(states)
    stack = list(seen)
    while stack:
        s = stack.pop()
        for t in maps.eps.get(s, ()):
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return frozenset(seen)


def _step(A: EpsNFA, states: frozenset, letter: str) -> frozenset:
    maps = _maps(A)
    out = set()
    for s in states:
        out |= maps.by_letter.get(s, {}).get(letter, frozenset())
    return frozenset(out)


def accepts(A: EpsNFA, word: Word) -> bool:
    current = eps_closure(A, A.initial)
    for letter in word:
        if not current:
            return False
        current = eps_closure(A, _step(A, current, letter))
    return bool(current & A.final)


def is_deterministic(A: EpsNFA) -> bool:
    if len(A.initial) != 1:
        return False
    seen = set()
    for src, label, _ in A.transitions:
        if label is None or (src, label) in seen:
            return False
        seen.add((src, label))
    return True


def is_read_once(A: EpsNFA) -> bool:
    """At most one transition per alphabet letter, over the whole automaton."""
    counts: dict = {}
    for _, label, _ in A.transitions:
        if label is not None:
            counts[label] = counts.get(label, 0) + 1
            if counts[label] > 1:
                return False
    return True


# ---------------------------------------------------------------------------
# structural operations


def trim(A: EpsNFA) -> EpsNFA:
    """Drop states that are unreachable or cannot reach a final state."""
    fwd: dict = {}
    rev: dict = {}
    for src, _, dst in A.transitions:
        fwd.setdefault(src, set()).add(dst)
        rev.setdefault(dst, set()).add(src)

    def reach(seeds, adj):
        seen = set(seeds)
        stack = list(seen)
        while stack:
            s = stack.pop()
            for t in adj.get(s, ()):
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return seen

    useful = reach(A.initial, fwd) & reach(A.final, rev)
    return EpsNFA(
        frozenset(useful),
        A.initial & useful,
        A.final & useful,
        frozenset(t for t in A.transitions if t[0] in useful and t[2] in useful),
        A.alphabet,
    )


def is_empty(A: EpsNFA) -> bool:
    return not trim(A).final


def product(A: EpsNFA, B: EpsNFA) -> EpsNFA:
    """Automaton for the intersection; states are reachable pairs."""
    a_maps = _maps(A)
    b_maps = _maps(B)
    start = frozenset(itertools.product(A.initial, B.initial))
    seen = set(start)
    stack = list(start)
    transitions = set()
    while stack:
        p, q = stack.pop()

        def push(pair, label):
            transitions.add(((p, q), label, pair))
            if pair not in seen:
                seen.add(pair)
                stack.append(pair)

        for t in a_maps.eps.get(p, ()):
            push((t, q), None)
        for t in b_maps.eps.get(q, ()):
            push((p, t), None)
        for letter, a_targets in a_maps.by_letter.get(p, {}).items():
            for t in b_maps.by_letter.get(q, {}).get(letter, ()):
                for s in a_targets:
                    push((s, t), letter)
    final = frozenset(
        (p, q) for (p, q) in seen if p in A.final and q in B.final
    )
    return EpsNFA(frozenset(seen), start, final, frozenset(transitions),
                  A.alphabet & B.alphabet)


def determinize(A: EpsNFA, state_cap: int = DEFAULT_STATE_CAP) -> EpsNFA:
    """Subset construction; the result is a complete DFA over A's alphabet.

    Subset states are relabeled to integers in discovery order, so the
    output is deterministic in both senses.
    """
    letters = sorted(A.alphabet)
    start = eps_closure(A, A.initial)
    ids = {start: 0}
    order = [start]
    transitions = []
    index = 0
    while index < len(order):
        subset = order[index]
        index += 1
        for letter in letters:
            target = eps_closure(A, _step(A, subset, letter))
            if target not in ids:
                if len(ids) >= state_cap:
                    raise ResourceCapError(
                        f"determinization exceeded the {state_cap}-state cap"
                    )
                ids[target] = len(ids)
                order.append(target)
            transitions.append((ids[subset], letter, ids[target]))
    final = frozenset(i for subset, i in ids.items() if subset & A.final)
    return EpsNFA(
        frozenset(range(len(ids))),
        frozenset((0,)),
        final,
        frozenset(transitions),
        A.alphabet,
    )


def _fresh_id(existing, base: str):
    candidate = base
    while candidate in existing:
        candidate = candidate + "'"
    return candidate


def _complete(A: EpsNFA, alphabet: frozenset) -> EpsNFA:
    """Make a DFA total over the given alphabet, adding a sink if needed."""
    if not is_deterministic(A):
        raise InputError("completion requires a deterministic automaton")
    maps = _maps(A)
    missing = [
        (s, a)
        for s in A.states
        for a in alphabet
        if a not in maps.by_letter.get(s, {})
    ]
    if not missing and A.states:
        return EpsNFA(A.states, A.initial, A.final, A.transitions, alphabet)
    sink = _fresh_id(A.states, "sink")
    transitions = set(A.transitions)
    transitions.update((s, a, sink) for s, a in missing)
    transitions.update((sink, a, sink) for a in alphabet)
    states = A.states | {sink}
    initial = A.initial or frozenset((sink,))
    return EpsNFA(states, initial, A.final, frozenset(transitions), alphabet)


def complement(A: EpsNFA, alphabet: Optional[frozenset] = None) -> EpsNFA:
    """Complement of a DFA, over the given (defaulting to its own) alphabet."""
    alphabet = A.alphabet if alphabet is None else frozenset(alphabet) | A.alphabet
    total = _complete(A, alphabet)
    return EpsNFA(
        total.states,
        total.initial,
        total.states - total.final,
        total.transitions,
        alphabet,
    )


def is_subset(A: EpsNFA, B: EpsNFA, state_cap: int = DEFAULT_STATE_CAP) -> bool:
    joint = A.alphabet | B.alphabet
    co_b = complement(determinize(B, state_cap), joint)
    return is_empty(product(A, co_b))


def is_equivalent(A: EpsNFA, B: EpsNFA, state_cap: int = DEFAULT_STATE_CAP) -> bool:
    return is_subset(A, B, state_cap) and is_subset(B, A, state_cap)


def minimize(A: EpsNFA, state_cap: int = DEFAULT_STATE_CAP) -> EpsNFA:
    """Minimal complete DFA, by partition refinement on reachable states."""
    if not is_deterministic(A):
        A = determinize(A, state_cap)
    A = _complete(A, A.alphabet)
    letters = sorted(A.alphabet)
    maps = _maps(A)

    def delta(s, a):
        (target,) = maps.by_letter[s][a]
        return target

    (start,) = A.initial
    order = [start]
    seen = {start}
    for s in order:
        for a in letters:
            t = delta(s, a)
            if t not in seen:
                seen.add(t)
                order.append(t)

    block = {s: (1 if s in A.final else 0) for s in order}
    while True:
        signatures = {}
        new_block = {}
        for s in order:
            sig = (block[s], tuple(block[delta(s, a)] for a in letters))
            if sig not in signatures:
                signatures[sig] = len(signatures)
            new_block[s] = signatures[sig]
        if new_block == block:
            break
        block = new_block

    count = len(set(block.values()))
    transitions = set()
    final = set()
    for s in order:
        for a in letters:
            transitions.add((block[s], a, block[delta(s, a)]))
        if s in A.final:
            final.add(block[s])
    return EpsNFA(
        frozenset(range(count)),
        frozenset((block[start],)),
        frozenset(final),
        frozenset(transitions),
        A.alphabet,
    )


# ---------------------------------------------------------------------------
# combinators


def _tagged(A: EpsNFA, tag) -> EpsNFA:
    relabel = {s: (tag, s) for s in A.states}
    return EpsNFA(
        frozenset(relabel.values()),
        frozenset(relabel[s] for s in A.initial),
        frozenset(relabel[s] for s in A.final),
        frozenset((relabel[s], a, relabel[t]) for s, a, t in A.transitions),
        A.alphabet,
    )


def nfa_union(*parts: EpsNFA) -> EpsNFA:
    tagged = [_tagged(p, i) for i, p in enumerate(parts)]
    return EpsNFA(
        frozenset().union(*(p.states for p in tagged)),
        frozenset().union(*(p.initial for p in tagged)),
        frozenset().union(*(p.final for p in tagged)),
        frozenset().union(*(p.transitions for p in tagged)),
        frozenset().union(*(p.alphabet for p in parts)),
    )


def nfa_concat(*parts: EpsNFA) -> EpsNFA:
    tagged = [_tagged(p, i) for i, p in enumerate(parts)]
    transitions = set().union(*(p.transitions for p in tagged))
    for left, right in zip(tagged, tagged[1:]):
        transitions.update(
            (f, None, i) for f in left.final for i in right.initial
        )
    return EpsNFA(
        frozenset().union(*(p.states for p in tagged)),
        tagged[0].initial,
        tagged[-1].final,
        frozenset(transitions),
        frozenset().union(*(p.alphabet for p in parts)),
    )


def regex_to_epsnfa(r: lang.Regex) -> EpsNFA:
    """Inductive construction; each subexpression gets a fresh start/end."""
    counter = itertools.count()
    transitions = []

    def build(node) -> tuple[int, int]:
        s, t = next(counter), next(counter)
        if isinstance(node, lang.REmpty):
            pass
        elif isinstance(node, lang.REpsilon):
            transitions.append((s, None, t))
        elif isinstance(node, lang.RLetter):
            transitions.append((s, node.letter, t))
        elif isinstance(node, lang.RConcat):
            previous = s
            for part in node.parts:
                ps, pt = build(part)
                transitions.append((previous, None, ps))
                previous = pt
            transitions.append((previous, None, t))
        elif isinstance(node, lang.RUnion):
            for part in node.parts:
                ps, pt = build(part)
                transitions.append((s, None, ps))
                transitions.append((pt, None, t))
        elif isinstance(node, lang.RStar):
            ps, pt = build(node.inner)
            transitions.append((s, None, ps))
            transitions.append((pt, None, s))
            transitions.append((s, None, t))
        else:
            raise TypeError(f"not a regex node: {node!r}")
        return s, t

    start, end = build(r)
    states = set(range(next(counter)))
    return EpsNFA(
        frozenset(states),
        frozenset((start,)),
        frozenset((end,)),
        frozenset(transitions),
        lang.regex_alphabet(r),
    )


def words_to_nfa(words: Iterable[Word]) -> EpsNFA:
    """An automaton accepting exactly the given finite set of words."""
    states = set()
    initial = set()
    final = set()
    transitions = set()
    for w in frozenset(words):
        for k in range(len(w) + 1):
            states.add((w, k))
        initial.add((w, 0))
        final.add((w, len(w)))
        transitions.update(((w, k), w[k], (w, k + 1)) for k in range(len(w)))
    return EpsNFA(
        frozenset(states), frozenset(initial), frozenset(final),
        frozenset(transitions),
    )


def automaton_for(spec) -> EpsNFA:
    """Coerce a language description into an automaton.

    Accepts an EpsNFA (returned as is), a regex string, a parsed Regex,
    or an iterable of words (letter tuples).
    """
    if isinstance(spec, EpsNFA):
        return spec
    if isinstance(spec, str):
        return regex_to_epsnfa(lang.parse_regex(spec))
    if isinstance(spec, lang.Regex):
        return regex_to_epsnfa(spec)
    try:
        words = frozenset(spec)
    except TypeError:
        raise InputError(
            f"cannot interpret {type(spec).__name__} as a language"
        ) from None
    for w in words:
        if not isinstance(w, tuple) or not all(isinstance(a, str) for a in w):
            raise InputError("a word list must contain tuples of letters")
    return words_to_nfa(words)


# ---------------------------------------------------------------------------
# finiteness and word enumeration


def _has_pumping_cycle(A: EpsNFA) -> bool:
    """True iff some cycle through useful states reads at least one letter."""
    T = trim(A)
    index_of: dict = {}
    lowlink: dict = {}
    on_stack: set = set()
    stack: list = []
    sccs = []
    counter = itertools.count()
    adjacency: dict = {}
    for src, label, dst in T.transitions:
        adjacency.setdefault(src, []).append(dst)

    def strongconnect(root):
        work = [(root, iter(adjacency.get(root, ())))]
        index_of[root] = lowlink[root] = next(counter)
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for succ in it:
                if succ not in index_of:
                    index_of[succ] = lowlink[succ] = next(counter)
                    stack.append(succ)
                    on_stack.add(succ)
                    work.append((succ, iter(adjacency.get(succ, ()))))
                    advanced = True
                    break
                if succ in on_stack:
                    lowlink[node] = min(lowlink[node], index_of[succ])
            if advanced:
                continue
            work.pop()
            if lowlink[node] == index_of[node]:
                component = set()
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    component.add(member)
                    if member == node:
                        break
                sccs.append(component)
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[node])

    for state in T.states:
        if state not in index_of:
            strongconnect(state)

    membership = {}
    for i, component in enumerate(sccs):
        for s in component:
            membership[s] = i
    # a letter transition inside a strongly connected component closes a
    # cycle that reads at least one letter; epsilon-only cycles pump nothing
    return any(
        label is not None and membership[src] == membership[dst]
        for src, label, dst in T.transitions
    )


def is_finite_language(A: EpsNFA) -> bool:
    return not _has_pumping_cycle(A)


def language_words(
    A: EpsNFA,
    max_len: Optional[int] = None,
    max_words: Optional[int] = None,
    state_cap: int = DEFAULT_STATE_CAP,
) -> list[Word]:
    """Enumerate accepted words in sorted order.

    With max_len None the language must be finite.  max_words caps the
    count and raises a resource error beyond it.
    """
    D = trim(determinize(A, state_cap))
    if max_len is None:
        if _has_pumping_cycle(D):
            raise InputError("cannot enumerate an infinite language without a length cap")
        max_len = len(D.states)
    maps = _maps(D)
    words = []
    frontier = [((), s) for s in D.initial]
    length = 0
    while frontier and length <= max_len:
        next_frontier = []
        for word, state in frontier:
            if state in D.final:
                words.append(word)
                if max_words is not None and len(words) > max_words:
                    raise ResourceCapError(
                        f"word enumeration exceeded the {max_words}-word cap"
                    )
            if length < max_len:
                for letter, targets in maps.by_letter.get(state, {}).items():
                    for t in targets:
                        next_frontier.append((word + (letter,), t))
        frontier = next_frontier
        length += 1
    return sorted(words)


# ---------------------------------------------------------------------------
# the read-once construction and locality


def eps_nfa_to_ro(A: EpsNFA) -> EpsNFA:
    """Build the read-once envelope of A.

    For each alphabet letter the result has one in-state and one out-state
    joined by the only transition on that letter.  A letter pair (a, b) is
    wired with an epsilon transition when some a-transition of the trimmed
    input can be followed, after epsilon moves, by a b-transition.  Initial
    letters are those readable first; final letters those readable last; an
    isolated initial-final state is added exactly when the input accepts
    the empty word.

    The result accepts every word the input accepts, and accepts exactly
    the same language iff that language is letter-Cartesian.
    """
    T = trim(A)
    maps = _maps(T)
    closure_initial = eps_closure(T, T.initial)

    backward_final = set(T.final)
    stack = list(backward_final)
    while stack:
        s = stack.pop()
        for src, label in maps.rev.get(s, ()):
            if label is None and src not in backward_final:
                backward_final.add(src)
                stack.append(src)

    sigma_start = set()
    sigma_end = set()
    pairs = set()
    for src, label, dst in T.transitions:
        if label is None:
            continue
        if src in closure_initial:
            sigma_start.add(label)
        if dst in backward_final:
            sigma_end.add(label)
        for reached in eps_closure(T, (dst,)):
            for follow_label in maps.by_letter.get(reached, {}):
                pairs.add((label, follow_label))

    accepts_epsilon = bool(closure_initial & T.final)

    states = set()
    transitions = set()
    for a in A.alphabet:
        states.add((a, "in"))
        states.add((a, "out"))
        transitions.add(((a, "in"), a, (a, "out")))
    for a, b in pairs:
        transitions.add(((a, "out"), None, (b, "in")))
    initial = {(a, "in") for a in sigma_start}
    final = {(a, "out") for a in sigma_end}
    if accepts_epsilon:
        states.add("empty-word")
        initial.add("empty-word")
        final.add("empty-word")
    return EpsNFA(
        frozenset(states),
        frozenset(initial),
        frozenset(final),
        frozenset(transitions),
        A.alphabet,
    )


def is_local_dfa(A: EpsNFA) -> bool:
    """Syntactic test: all transitions on a letter share one target state."""
    if not is_deterministic(A):
        raise InputError("is_local_dfa requires a deterministic automaton")
    target: dict = {}
    for _, label, dst in A.transitions:
        if label in target and target[label] != dst:
            return False
        target[label] = dst
    return True


def is_local_language(A: EpsNFA, state_cap: int = DEFAULT_STATE_CAP) -> bool:
    """Whether L(A) is a local language.

    The read-once envelope always accepts a superset, so locality amounts
    to the reverse inclusion.
    """
    return is_subset(eps_nfa_to_ro(A), A, state_cap)


class CartesianCounterexample(NamedTuple):
    """Words before+x+after1 and before2+x+after: the cross recombination
    before+x+after is missing from the language."""

    letter: str
    before: Word
    after1: Word
    before2: Word
    after: Word


def letter_cartesian_counterexample(
    language: Iterable[Word],
) -> Optional[CartesianCounterexample]:
    words = frozenset(language)
    ordered = sorted(words)
    for w1 in ordered:
        for i, x in enumerate(w1):
            for w2 in ordered:
                for j, y in enumerate(w2):
                    if x != y:
                        continue
                    crossed = w1[: i + 1] + w2[j + 1 :]
                    if crossed not in words:
                        return CartesianCounterexample(
                            x, w1[:i], w1[i + 1 :], w2[:j], w2[j + 1 :]
                        )
    return None


def is_letter_cartesian_finite(language: Iterable[Word]) -> bool:
    return letter_cartesian_counterexample(language) is None


# ---------------------------------------------------------------------------
# reduction of regular languages


def _sigma_once(alphabet) -> EpsNFA:
    return make_nfa((0, 1), (0,), (1,), ((0, a, 1) for a in alphabet), alphabet)


def _sigma_star(alphabet) -> EpsNFA:
    return make_nfa((0,), (0,), (0,), ((0, a, 0) for a in alphabet), alphabet)


def _sigma_plus(alphabet) -> EpsNFA:
    return make_nfa(
        (0, 1), (0,), (1,),
        [(0, a, 1) for a in alphabet] + [(1, a, 1) for a in alphabet],
        alphabet,
    )


def _strict_extensions(A: EpsNFA) -> EpsNFA:
    """Automaton for the words containing a word of L as a strict infix."""
    alphabet = A.alphabet
    return nfa_union(
        nfa_concat(_sigma_plus(alphabet), A, _sigma_star(alphabet)),
        nfa_concat(_sigma_star(alphabet), A, _sigma_plus(alphabet)),
    )


def is_reduced_regular(A: EpsNFA) -> bool:
    if not A.alphabet:
        return True
    return is_empty(product(A, _strict_extensions(A)))


def reduce_regular(A: EpsNFA, state_cap: int = DEFAULT_STATE_CAP) -> EpsNFA:
    """DFA for the words of L(A) having no strict infix in L(A)."""
    if not A.alphabet:
        return determinize(trim(A), state_cap)
    co_ext = complement(
        determinize(_strict_extensions(A), state_cap), A.alphabet
    )
    return trim(determinize(product(A, co_ext), state_cap))


# ---------------------------------------------------------------------------
# neutral letters


def _phased(A: EpsNFA, bridges: Iterable[Transition]) -> EpsNFA:
    """Two copies of A (phase 0 and 1) plus the given bridge transitions,
    which must go from phase 0 states to phase 1 states."""
    transitions = set()
    for src, label, dst in A.transitions:
        transitions.add(((src, 0), label, (dst, 0)))
        transitions.add(((src, 1), label, (dst, 1)))
    transitions.update(bridges)
    states = {(s, phase) for s in A.states for phase in (0, 1)}
    return EpsNFA(
        frozenset(states),
        frozenset((s, 0) for s in A.initial),
        frozenset((s, 1) for s in A.final),
        frozenset(transitions),
        A.alphabet,
    )


def is_neutral_letter(
    A: EpsNFA, letter: str, state_cap: int = DEFAULT_STATE_CAP
) -> bool:
    """Whether inserting or deleting one occurrence of the letter anywhere
    never changes membership in L(A)."""
    insert_one = _phased(
        A, (((s, 0), letter, (s, 1)) for s in A.states)
    )
    if not is_subset(insert_one, A, state_cap):
        return False
    delete_one = _phased(
        A,
        (
            ((src, 0), None, (dst, 1))
            for src, label, dst in A.transitions
            if label == letter
        ),
    )
    return is_subset(delete_one, A, state_cap)


# ---------------------------------------------------------------------------
# aperiodicity


def non_aperiodic_witness(
    A: EpsNFA,
    monoid_cap: int = DEFAULT_MONOID_CAP,
    state_cap: int = DEFAULT_STATE_CAP,
) -> Optional[tuple[Word, int]]:
    """A word whose transition map has power period > 1 in the transition
    monoid of the minimal DFA, or None when every element is aperiodic."""
    D = minimize(trim(A), state_cap)
    order = sorted(D.states)
    index = {s: i for i, s in enumerate(order)}
    maps = _maps(D)
    letters = sorted(D.alphabet)

    def letter_map(a):
        out = []
        for s in order:
            (t,) = maps.by_letter[s][a]
            out.append(index[t])
        return tuple(out)

    generators = [(a, letter_map(a)) for a in letters]

    def compose(f, g):
        # first f, then g
        return tuple(g[f[i]] for i in range(len(f)))

    elements: dict[tuple, Word] = {}
    queue = []
    for a, m in generators:
        if m not in elements:
            elements[m] = (a,)
            queue.append(m)
    head = 0
    while head < len(queue):
        m = queue[head]
        head += 1
        for a, g in generators:
            composed = compose(m, g)
            if composed not in elements:
                if len(elements) >= monoid_cap:
                    raise ResourceCapError(
                        f"transition monoid exceeded the {monoid_cap}-element cap"
                    )
                elements[composed] = elements[m] + (a,)
                queue.append(composed)

    for m in queue:
        seen = {}
        power = m
        k = 1
        while power not in seen:
            seen[power] = k
            power = compose(power, m)
            k += 1
        period = k - seen[power]
        if period != 1:
            return elements[m], period
    return None


def is_aperiodic(
    A: EpsNFA,
    monoid_cap: int = DEFAULT_MONOID_CAP,
    state_cap: int = DEFAULT_STATE_CAP,
) -> bool:
    return non_aperiodic_witness(A, monoid_cap, state_cap) is None


# ---------------------------------------------------------------------------
# serialization

_EPS_TOKEN = "EPS"


def serialize_automaton(A: EpsNFA) -> str:
    states = sorted(str(s) for s in A.states)
    if len(set(states)) != len(A.states):
        # distinct ids rendering to the same token cannot round-trip
        raise InputError("state ids must render to distinct tokens")
    for s in A.states:
        token = str(s)
        if not token or any(c.isspace() for c in token):
            raise InputError(f"state id {s!r} does not render to a clean token")
    for _, label, _ in A.transitions:
        if label == _EPS_TOKEN:
            raise InputError("the letter name EPS is reserved in the text format")
    lines = [
        "states " + " ".join(states),
        "initial " + " ".join(sorted(str(s) for s in A.initial)),
        "final " + " ".join(sorted(str(s) for s in A.final)),
    ]
    rendered = sorted(
        (str(src), _EPS_TOKEN if label is None else label, str(dst))
        for src, label, dst in A.transitions
    )
    lines.extend("\t".join(t) for t in rendered)
    return "\n".join(lines) + "\n"


def parse_automaton(text: str) -> EpsNFA:
    states: Optional[set] = None
    initial: Optional[set] = None
    final: Optional[set] = None
    transitions = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        keyword = fields[0]
        if keyword in ("states", "initial", "final"):
            current = {"states": states, "initial": initial, "final": final}[keyword]
            if current is not None:
                raise InputError(f"line {lineno}: duplicate {keyword} header")
            value = set(fields[1:])
            if keyword == "states":
                states = value
            elif keyword == "initial":
                initial = value
            else:
                final = value
            continue
        if len(fields) != 3:
            raise InputError(
                f"line {lineno}: expected 'src label dst', got {line!r}"
            )
        src, label, dst = fields
        transitions.add((src, None if label == _EPS_TOKEN else label, dst))
    if states is None:
        raise InputError("missing 'states' header")
    if initial is None:
        raise InputError("missing 'initial' header")
    if final is None:
        raise InputError("missing 'final' header")
    for group, name in ((initial, "initial"), (final, "final")):
        unknown = group - states
        if unknown:
            raise InputError(f"{name} state {sorted(unknown)[0]!r} not declared")
    for src, label, dst in transitions:
        if src not in states or dst not in states:
            raise InputError(f"transition endpoint not declared: {src} -> {dst}")
    return EpsNFA(
        frozenset(states), frozenset(initial), frozenset(final),
        frozenset(transitions),
    )
