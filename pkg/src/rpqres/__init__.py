"""Resilience of regular path queries over labeled graph databases.

The package computes how many facts (counted with multiplicity) must be
removed from a database to falsify a regular path query, classifies the
complexity of that problem per regular language, and validates hardness
gadgets mechanically.
"""

from .automata import (
    EpsNFA,
    accepts,
    automaton_for,
    determinize,
    eps_nfa_to_ro,
    is_equivalent,
    is_letter_cartesian_finite,
    is_local_language,
    is_neutral_letter,
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
from .classifier import (
    NP_HARD,
    PTIME,
    UNKNOWN,
    Verdict,
    bcl_analysis,
    classify,
    is_bcl,
    is_chain_language,
    is_four_legged_finite,
    match_known_hard,
    matches_submod_pattern,
)
from .errors import InputError, ResourceCapError, SolverRefusal
from .flow import FlowNetwork, check_cut, min_cut
from .gadgets import (
    GadgetReport,
    MatchHypergraph,
    PreGadget,
    build_match_hypergraph,
    builtin_gadgets,
    completion,
    condense,
    encode_graph,
    hardness_roundtrip,
    load_gadget,
    parse_graph,
    save_gadget,
    subdivide,
    validate_gadget,
    vertex_cover_bruteforce,
)
from .graphdb import (
    Fact,
    GraphDB,
    enumerate_matches,
    mirror_db,
    parse_db,
    serialize_db,
    witness_walk,
)
from .lang import (
    Regex,
    is_infix,
    is_strict_infix,
    mirror_finite,
    parse_regex,
    parse_word,
    parse_words,
    reduce_finite,
    render_word,
    render_words,
)
from .solvers import (
    ResilienceAnswer,
    extract_word_list,
    resilience,
    resilience_bcl,
    resilience_exact,
    resilience_local,
    resilience_submod,
)

__all__ = [
    "EpsNFA",
    "Fact",
    "FlowNetwork",
    "GadgetReport",
    "GraphDB",
    "InputError",
    "MatchHypergraph",
    "NP_HARD",
    "PTIME",
    "PreGadget",
    "Regex",
    "ResilienceAnswer",
    "ResourceCapError",
    "SolverRefusal",
    "UNKNOWN",
    "Verdict",
    "accepts",
    "automaton_for",
    "bcl_analysis",
    "build_match_hypergraph",
    "builtin_gadgets",
    "classify",
    "completion",
    "condense",
    "determinize",
    "encode_graph",
    "enumerate_matches",
    "eps_nfa_to_ro",
    "extract_word_list",
    "hardness_roundtrip",
    "is_bcl",
    "is_chain_language",
    "is_equivalent",
    "is_four_legged_finite",
    "is_infix",
    "is_letter_cartesian_finite",
    "is_local_language",
    "is_neutral_letter",
    "is_strict_infix",
    "is_subset",
    "language_words",
    "load_gadget",
    "match_known_hard",
    "matches_submod_pattern",
    "min_cut",
    "check_cut",
    "mirror_db",
    "mirror_finite",
    "non_aperiodic_witness",
    "parse_automaton",
    "parse_db",
    "parse_graph",
    "parse_regex",
    "parse_word",
    "parse_words",
    "reduce_finite",
    "reduce_regular",
    "regex_to_epsnfa",
    "render_word",
    "render_words",
    "resilience",
    "resilience_bcl",
    "resilience_exact",
    "resilience_local",
    "resilience_submod",
    "save_gadget",
    "serialize_automaton",
    "serialize_db",
    "subdivide",
    "trim",
    "validate_gadget",
    "vertex_cover_bruteforce",
    "witness_walk",
    "words_to_nfa",
]
