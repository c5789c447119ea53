"""Finite concept spaces, most specific concepts and subsumption lattices."""

from __future__ import annotations

from itertools import combinations
from typing import Iterable

from .reasoner import entails, is_consistent
from .syntax import (
    BOT,
    GCI,
    TOP,
    Atom,
    Axiom,
    Concept,
    ConceptAssert,
    Kind,
    Ontology,
    RoleAssert,
    Symbol,
    Top,
    conj,
    concept_size,
    disj,
    neg,
    signature,
    some,
)

DEFAULT_DEPTH = 1


class InconsistentOntologyError(ValueError):
    pass


def concept_space_over(symbols: Iterable[Symbol], depth: int) -> frozenset[Concept]:
    """Concepts over ``symbols`` up to ``depth`` constructor levels.

    Level 0 holds Top, Bot, every atom and its negation.  Each further level
    adds ``exists R.C`` for every role and every concept of the previous
    level, then every pairwise conjunction and disjunction among the
    previous level and those new existentials.
    """
    symbols = list(symbols)
    atoms = sorted((Atom(s) for s in symbols if s.kind is Kind.CONCEPT), key=str)
    roles = sorted((s for s in symbols if s.kind is Kind.ROLE), key=str)
    space: dict[str, Concept] = {c.text: c for c in [TOP, BOT]}
    for a in atoms:
        space[a.text] = a
        space["!" + a.text] = neg(a)
    for _ in range(depth):
        previous = [space[k] for k in sorted(space)]
        level = dict(space)
        for r in roles:
            for c in previous:
                e = some(r, c)
                level[e.text] = e
        pool = [level[k] for k in sorted(level)]
        for c, d in combinations(pool, 2):
            for made in (conj(c, d), disj(c, d)):
                level[made.text] = made
        space = level
    return frozenset(space.values())


def concept_space(o: Ontology | Iterable[Axiom], depth: int = DEFAULT_DEPTH) -> frozenset[Concept]:
    axioms = o.axioms if isinstance(o, Ontology) else frozenset(o)
    return concept_space_over(signature(axioms), depth)


def _named(axioms: frozenset[Axiom], kind: Kind) -> list[Symbol]:
    return sorted((s for s in signature(axioms) if s.kind is kind), key=str)


def msc(axioms: Iterable[Axiom], b: Symbol, depth: int = DEFAULT_DEPTH) -> Concept | None:
    """Depth-bounded most specific concept of ``b``.

    The candidate conjuncts are the entailed concept literals of ``b``,
    ``exists R.M`` for each entailed edge ``R(b, c)`` with ``M`` the msc of
    ``c`` one level down, and every entailed member of the concept space at
    ``depth``.  Conjuncts implied by the remaining ones are then dropped,
    scanning space members first and literals last, so the result is the
    compact conjunction of literals and edges whenever that suffices.
    """
    axioms = frozenset(axioms)
    if not is_consistent(axioms):
        raise InconsistentOntologyError("msc undefined on inconsistent ontology")
    return _msc(axioms, b, depth)


def _msc(axioms: frozenset[Axiom], b: Symbol, depth: int) -> Concept:
    literals = []
    for name in _named(axioms, Kind.CONCEPT):
        for lit in (Atom(name), neg(Atom(name))):
            if entails(axioms, ConceptAssert(lit, b)):
                literals.append(lit)
    edges = []
    if depth > 0:
        for r in _named(axioms, Kind.ROLE):
            for c in _named(axioms, Kind.INDIVIDUAL):
                if entails(axioms, RoleAssert(r, b, c)):
                    edges.append(some(r, _msc(axioms, c, depth - 1)))
    space = [
        c
        for c in sorted(concept_space(axioms, depth), key=lambda c: (-concept_size(c), c.text))
        if not isinstance(c, Top) and entails(axioms, ConceptAssert(c, b))
    ]

    keep: dict[str, Concept] = {}
    for group in (literals, edges, space):
        for c in group:
            keep.setdefault(c.text, c)
    removal_order = [c.text for c in space] + [c.text for c in reversed(edges)] + [c.text for c in reversed(literals)]
    for key in dict.fromkeys(removal_order):
        if key not in keep:
            continue
        rest = conj(*(c for k, c in keep.items() if k != key))
        if entails(axioms, GCI(rest, keep[key])):
            del keep[key]
    return conj(*keep.values())


def subsumption_lattice(
    axioms: Iterable[Axiom], concepts: Iterable[Concept]
) -> frozenset[tuple[Concept, Concept]]:
    """Hasse diagram of entailed subsumption among ``concepts``.

    Mutually subsuming concepts collapse into one representative (smallest
    size, then rendering).  A pair ``(C, D)`` means ``C`` lies directly
    below ``D``.
    """
    axioms = frozenset(axioms)
    nodes = sorted(set(concepts), key=lambda c: (concept_size(c), c.text))
    reps: list[Concept] = []
    for c in nodes:
        if not any(
            entails(axioms, GCI(c, r)) and entails(axioms, GCI(r, c)) for r in reps
        ):
            reps.append(c)
    below = {
        (c, d) for c in reps for d in reps if c != d and entails(axioms, GCI(c, d))
    }
    return frozenset(
        (c, d)
        for c, d in below
        if not any((c, m) in below and (m, d) in below for m in reps if m not in (c, d))
    )


def equivalence_classes(axioms: Iterable[Axiom], concepts: Iterable[Concept]) -> list[list[Concept]]:
    axioms = frozenset(axioms)
    classes: list[list[Concept]] = []
    for c in sorted(set(concepts), key=lambda c: (concept_size(c), c.text)):
        for cls in classes:
            r = cls[0]
            if entails(axioms, GCI(c, r)) and entails(axioms, GCI(r, c)):
                cls.append(c)
                break
        else:
            classes.append([c])
    return classes


def render_lattice(edges: Iterable[tuple[Concept, Concept]]) -> str:
    return "\n".join(sorted(f"{c} < {d}" for c, d in edges))
