"""Independent brute-force references the tests compare against.

Everything here favors obviousness over speed and only runs on tiny
instances.  None of it calls back into the algorithms under test: query
satisfaction is a hand-rolled product reachability, cuts and covers are
plain subset enumeration.
"""

import itertools
import math


def eps_closure(transitions, states):
    """Forward closure under transitions labeled None."""
    seen = set(states)
    stack = list(states)
    while stack:
        q = stack.pop()
        for src, label, dst in transitions:
            if src == q and label is None and dst not in seen:
                seen.add(dst)
                stack.append(dst)
    return frozenset(seen)


def brute_satisfies(db, A) -> bool:
    """Whether some walk of db spells a word of L(A).

    Product reachability over (database node, automaton state) pairs.
    The empty walk counts, so an automaton accepting the empty word is
    satisfied by every database.
    """
    start_states = eps_closure(A.transitions, A.initial)
    if start_states & A.final:
        return True
    frontier = [(v, q) for v in sorted(db.adom()) for q in start_states]
    seen = set(frontier)
    while frontier:
        node, state = frontier.pop()
        for fact in db.facts():
            if fact.tail != node:
                continue
            for src, label, dst in A.transitions:
                if src != state or label != fact.label:
                    continue
                for q in eps_closure(A.transitions, {dst}):
                    if q in A.final:
                        return True
                    if (fact.head, q) not in seen:
                        seen.add((fact.head, q))
                        frontier.append((fact.head, q))
    return False


def brute_resilience(db, A):
    """Minimum total multiplicity of a fact set whose removal falsifies A.

    math.inf when the empty word is accepted (no removal can help), or
    when the query is not satisfied by any sub-database large enough to
    matter (then the minimum is 0 via the empty set).
    """
    if eps_closure(A.transitions, A.initial) & A.final:
        return math.inf
    facts = db.facts()
    best = None
    for r in range(len(facts) + 1):
        for combo in itertools.combinations(facts, r):
            cost = sum(db.mult(f) for f in combo)
            if best is not None and cost >= best:
                continue
            if not brute_satisfies(db.without(combo), A):
                best = cost
    assert best is not None, "removing every fact must falsify the query"
    return best


def brute_min_cut_value(edges, source, target):
    """Minimum total capacity over finite-edge subsets disconnecting
    source from target; math.inf when no such subset exists.

    edges: list of (tail, head, capacity) with capacity an int or inf.
    """

    def reaches(removed):
        adjacency = {}
        for index, (tail, head, _) in enumerate(edges):
            if index not in removed:
                adjacency.setdefault(tail, []).append(head)
        seen = {source}
        stack = [source]
        while stack:
            v = stack.pop()
            if v == target:
                return True
            for w in adjacency.get(v, ()):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return False

    finite = [i for i, e in enumerate(edges) if not math.isinf(e[2])]
    best = math.inf
    for r in range(len(finite) + 1):
        for combo in itertools.combinations(finite, r):
            cost = sum(edges[i][2] for i in combo)
            if cost < best and not reaches(frozenset(combo)):
                best = cost
    return best


def brute_hitting_set(edges) -> int:
    """Minimum size of a vertex set meeting every hyperedge."""
    edges = [frozenset(e) for e in edges]
    assert all(edges), "hyperedges must be non-empty"
    vertices = sorted(set().union(*edges)) if edges else []
    for k in range(len(vertices) + 1):
        for combo in itertools.combinations(vertices, k):
            chosen = frozenset(combo)
            if all(e & chosen for e in edges):
                return k
    raise AssertionError("the full vertex set hits everything")


def brute_vertex_cover(edges) -> int:
    """Minimum vertex cover of an undirected graph given as vertex pairs."""
    return brute_hitting_set([frozenset(e) for e in edges])


def brute_letter_cartesian(words) -> bool:
    """Direct check of the exchange property: for every letter x and
    factorizations u = a x b, v = c x d in the language, a x d is too."""
    words = frozenset(words)
    for u in words:
        for v in words:
            for i, x in enumerate(u):
                for j, y in enumerate(v):
                    if x == y and u[: i + 1] + v[j + 1 :] not in words:
                        return False
    return True


def brute_reduce(words) -> frozenset:
    """Words having no strict infix in the language."""
    words = frozenset(words)

    def has_strict_infix(w):
        for other in words:
            if other == w:
                continue
            n = len(other)
            for start in range(len(w) - n + 1):
                if w[start : start + n] == other:
                    return True
        return False

    return frozenset(w for w in words if not has_strict_infix(w))
