"""Bridging axioms relating internalized symbols to their public originals."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .concepts import DEFAULT_DEPTH, InconsistentOntologyError, concept_space, concept_space_over
from .reasoner import entails, is_consistent
from .subst import Substitution, apply_concept, internalize
from .syntax import (
    GCI,
    Atom,
    Axiom,
    ConceptAssert,
    Eq,
    Kind,
    Not,
    Ontology,
    RoleInc,
    Symbol,
    concept_symbols,
    disj,
    signature,
)

SIMPLE, STRONG, OA = "simple", "strong", "oa"


@dataclass(frozen=True)
class BridgingAxiomSet:
    axioms: frozenset[Axiom]
    flavor: str
    origin: Substitution

    def __iter__(self):
        return iter(sorted(self.axioms, key=lambda ax: ax.text))

    def __len__(self) -> int:
        return len(self.axioms)


def _pairs(sigma: Substitution) -> list[tuple[Symbol, Symbol]]:
    # only public symbols get bridged; re-primed internal ones just move aside
    return sorted(sigma.public_part().pairs, key=lambda p: str(p[0]))


def _role_and_individual_bridges(pairs) -> set[Axiom]:
    out: set[Axiom] = set()
    for s, t in pairs:
        if s.kind is Kind.ROLE:
            out.update((RoleInc(s, t), RoleInc(t, s)))
        elif s.kind is Kind.INDIVIDUAL:
            out.add(Eq(s, t))
    return out


def simple_bridging(sigma: Substitution) -> BridgingAxiomSet:
    pairs = _pairs(sigma)
    out = _role_and_individual_bridges(pairs)
    for s, t in pairs:
        if s.kind is Kind.CONCEPT:
            out.update((GCI(Atom(s), Atom(t)), GCI(Atom(t), Atom(s))))
    return BridgingAxiomSet(frozenset(out), SIMPLE, sigma)


def strong_bridging(
    sigma: Substitution, o: Ontology | Iterable[Axiom], depth: int = DEFAULT_DEPTH
) -> BridgingAxiomSet:
    """Concept-level bridges ``C sigma [= s`` and ``s [= C sigma`` read off ``o``.

    ``C`` ranges over the concept space of ``o`` at ``depth``, restricted to
    concepts mentioning a renamed symbol; the others would yield axioms with
    no internal symbol at all.
    """
    axioms = o.axioms if isinstance(o, Ontology) else frozenset(o)
    if not is_consistent(axioms):
        raise InconsistentOntologyError("strong bridging undefined on inconsistent ontology")
    pairs = _pairs(sigma)
    out = _role_and_individual_bridges(pairs)
    concept_pairs = [(s, t) for s, t in pairs if s.kind is Kind.CONCEPT]
    if concept_pairs:
        support = sigma.support
        m = sigma.mapping
        for c in sorted(concept_space(axioms, depth), key=lambda c: c.text):
            if not set(concept_symbols(c)) & support:
                continue
            renamed = apply_concept(c, m)
            for s, _ in concept_pairs:
                if entails(axioms, GCI(c, Atom(s))):
                    out.add(GCI(renamed, Atom(s)))
                if entails(axioms, GCI(Atom(s), c)):
                    out.add(GCI(Atom(s), renamed))
    return BridgingAxiomSet(frozenset(out), STRONG, sigma)


def literal_parts(literal: Axiom) -> tuple[Symbol, Symbol, bool]:
    """Split a signed atomic concept assertion into (concept, individual, positive)."""
    if isinstance(literal, ConceptAssert):
        c = literal.concept
        if isinstance(c, Atom):
            return c.symbol, literal.ind, True
        if isinstance(c, Not) and isinstance(c.operand, Atom):
            return c.operand.symbol, literal.ind, False
    raise ValueError(f"trigger must be a signed atomic concept assertion, got {literal}")


def oa(
    o: Ontology | Iterable[Axiom], literal: Axiom, depth: int = DEFAULT_DEPTH
) -> BridgingAxiomSet:
    """Candidate bridges ``A [= A' | C`` (or ``A' [= A | C``) for a literal trigger.

    ``C`` ranges over concepts without ``A`` that the renamed ontology
    asserts of the trigger's individual.
    """
    axioms = o.axioms if isinstance(o, Ontology) else frozenset(o)
    name, b, positive = literal_parts(literal)
    renamed, sigma = internalize(axioms, {name})
    primed = sigma(name)
    symbols = (signature(renamed) | {primed}) - {name}
    out = set()
    for c in concept_space_over(symbols, depth):
        if name in set(concept_symbols(c)) or not entails(renamed, ConceptAssert(c, b)):
            continue
        if positive:
            out.add(GCI(Atom(name), disj(Atom(primed), c)))
        else:
            out.add(GCI(Atom(primed), disj(Atom(name), c)))
    return BridgingAxiomSet(frozenset(out), OA, sigma)
