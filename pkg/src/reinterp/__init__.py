"""Iterated ontology revision by reinterpretation.

Conflicting symbols of the receiving ontology are renamed into an internal
vocabulary and reconnected to their public originals by bridging axioms.
"""

from .operators import (
    FULL_MODE,
    MCS_MODE,
    OPERATORS,
    RevisionError,
    RevisionResult,
    iterate,
    msc_revise_literal,
    operator,
    sel_revise_literal,
    strong_revise,
    weak_revise,
)
from .parser import ParseError, parse_axiom, parse_axioms, parse_concept, parse_ontologies, parse_ontology
from .reasoner import entails, is_consistent
from .syntax import Ontology, render_axioms

__version__ = "0.1.0"

__all__ = [
    "FULL_MODE",
    "MCS_MODE",
    "OPERATORS",
    "Ontology",
    "ParseError",
    "RevisionError",
    "RevisionResult",
    "entails",
    "is_consistent",
    "iterate",
    "msc_revise_literal",
    "operator",
    "parse_axiom",
    "parse_axioms",
    "parse_concept",
    "parse_ontologies",
    "parse_ontology",
    "render_axioms",
    "sel_revise_literal",
    "strong_revise",
    "weak_revise",
]
