"""Sequent calculus for the Tamari order: decision, normalization, lattice operations, interval counts."""

from .term import (
    Atom,
    Formula,
    ParseError,
    Product,
    act,
    frontier,
    mirror,
    parse_context,
    parse_formula,
    phi,
    print_formula,
    psi,
    relabel,
)
from .calculus import Derivation, Rule, Sequent, classify, is_focused, validate
from .focusing import (
    admit_cut,
    admit_times_r,
    count_focused,
    decide,
    focus,
    identity_expansion,
    search_focused,
)
from .lattice import bottom, enumerate_trees, hasse, join_formula, meet_formula, top
from .count import dp_tables, intervals, series_solve, tutte_formula

__version__ = "0.1.0"

__all__ = [
    "Atom", "Formula", "ParseError", "Product", "act", "frontier", "mirror",
    "parse_context", "parse_formula", "phi", "print_formula", "psi", "relabel",
    "Derivation", "Rule", "Sequent", "classify", "is_focused", "validate",
    "admit_cut", "admit_times_r", "count_focused", "decide", "focus",
    "identity_expansion", "search_focused",
    "bottom", "enumerate_trees", "hasse", "join_formula", "meet_formula", "top",
    "dp_tables", "intervals", "series_solve", "tutte_formula",
]
