"""Seeded random generation of small ontologies and triggers.

Used by the postulate sweeps and by the property tests.  Instances stay at
desk scale: at most three concept names, two roles and three individuals.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .reasoner import entails, is_consistent
from .syntax import (
    GCI,
    Axiom,
    Concept,
    ConceptAssert,
    Eq,
    Neq,
    RoleAssert,
    RoleInc,
    Symbol,
    atom,
    clause,
    conj,
    disj,
    individual,
    neg,
    role_name,
    some,
)


@dataclass(frozen=True)
class Signature:
    concepts: tuple[str, ...] = ("A", "B", "C")
    roles: tuple[str, ...] = ("r", "s")
    individuals: tuple[str, ...] = ("a", "b", "c")

    @property
    def role_symbols(self) -> list[Symbol]:
        return [role_name(r) for r in self.roles]

    @property
    def individual_symbols(self) -> list[Symbol]:
        return [individual(i) for i in self.individuals]


SMALL = Signature()


class Generator:
    def __init__(self, seed: int, sig: Signature = SMALL, exists: bool = True):
        self.rng = random.Random(seed)
        self.sig = sig
        self.exists = exists and bool(sig.roles)

    def literal_concept(self) -> Concept:
        c = atom(self.rng.choice(self.sig.concepts))
        return neg(c) if self.rng.random() < 0.4 else c

    def concept(self, depth: int = 1) -> Concept:
        rng = self.rng
        if depth == 0 or rng.random() < 0.45:
            return self.literal_concept()
        choices = ["and", "or", "not"] + (["some"] if self.exists else [])
        pick = rng.choice(choices)
        if pick == "and":
            return conj(self.concept(depth - 1), self.concept(depth - 1))
        if pick == "or":
            return disj(self.concept(depth - 1), self.concept(depth - 1))
        if pick == "not":
            return neg(self.concept(depth - 1))
        return some(rng.choice(self.sig.role_symbols), self.concept(depth - 1))

    def individual(self) -> Symbol:
        return self.rng.choice(self.sig.individual_symbols)

    def assertion(self) -> Axiom:
        rng = self.rng
        if self.sig.roles and rng.random() < 0.25:
            return RoleAssert(
                rng.choice(self.sig.role_symbols),
                self.individual(),
                self.individual(),
                rng.random() < 0.8,
            )
        c = self.concept(1) if rng.random() < 0.3 else self.literal_concept()
        return ConceptAssert(c, self.individual())

    def axiom(self) -> Axiom:
        rng = self.rng
        x = rng.random()
        if x < 0.45:
            return self.assertion()
        if x < 0.7:
            return GCI(self.concept(1), self.concept(1))
        if x < 0.8:
            lits = [self.assertion() for _ in range(rng.randint(2, 3))]
            return clause(*lits)
        if x < 0.87 and len(self.sig.roles) > 1:
            r, s = rng.sample(self.sig.role_symbols, 2)
            return RoleInc(r, s)
        a, b = self.individual(), self.individual()
        if a == b:
            return self.assertion()
        return Eq(a, b) if rng.random() < 0.3 else Neq(a, b)

    def axioms(self, max_size: int = 6, min_size: int = 1) -> frozenset[Axiom]:
        n = self.rng.randint(min_size, max_size)
        return frozenset(self.axiom() for _ in range(n))

    def consistent_axioms(self, max_size: int = 6, min_size: int = 1) -> frozenset[Axiom]:
        while True:
            axs = self.axioms(max_size, min_size)
            if is_consistent(axs):
                return axs

    def signed_literal(self) -> ConceptAssert:
        c = atom(self.rng.choice(self.sig.concepts))
        if self.rng.random() < 0.5:
            c = neg(c)
        return ConceptAssert(c, self.individual())

    def conflicting_literal(self, axioms: frozenset[Axiom]) -> ConceptAssert | None:
        """A literal whose negation the axioms entail, if one exists."""
        options = []
        for name in self.sig.concepts:
            for ind in self.sig.individual_symbols:
                for c in (atom(name), neg(atom(name))):
                    if entails(axioms, ConceptAssert(neg(c), ind)):
                        options.append(ConceptAssert(c, ind))
        if not options:
            return None
        return self.rng.choice(sorted(options, key=lambda a: a.text))

    def trigger_literal(self, axioms: frozenset[Axiom], conflict_bias: float = 0.6) -> ConceptAssert:
        if self.rng.random() < conflict_bias:
            lit = self.conflicting_literal(axioms)
            if lit is not None:
                return lit
        return self.signed_literal()


def is_exists_free(axioms) -> bool:
    return "exists" not in " ".join(ax.text for ax in axioms)

