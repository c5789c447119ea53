"""Symbol renamings: the priming disambiguation schema and its inverse."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .syntax import (
    BOT,
    GCI,
    And,
    Atom,
    Axiom,
    Clause,
    Concept,
    ConceptAssert,
    Eq,
    Exists,
    Kind,
    Neq,
    Not,
    Or,
    RoleAssert,
    RoleInc,
    Symbol,
    clause,
    conj,
    disj,
    neg,
    signature,
)


@dataclass(frozen=True)
class Substitution:
    """A finite, kind-preserving renaming of symbols.

    Only non-identity pairs are stored, so ``support`` is exactly the set of
    keys.
    """

    pairs: frozenset = frozenset()

    def __post_init__(self) -> None:
        cleaned = frozenset((s, t) for s, t in self.pairs if s != t)
        sources = [s for s, _ in cleaned]
        if len(sources) != len(set(sources)):
            raise ValueError("a symbol is mapped twice")
        for s, t in cleaned:
            if s.kind is not t.kind:
                raise ValueError(f"{s} and {t} differ in kind")
        object.__setattr__(self, "pairs", cleaned)

    @classmethod
    def from_mapping(cls, mapping: Mapping[Symbol, Symbol]) -> "Substitution":
        return cls(frozenset(mapping.items()))

    @property
    def mapping(self) -> dict[Symbol, Symbol]:
        return dict(self.pairs)

    @property
    def support(self) -> frozenset[Symbol]:
        return frozenset(s for s, _ in self.pairs)

    @property
    def support_individuals(self) -> frozenset[Symbol]:
        return frozenset(s for s in self.support if s.kind is Kind.INDIVIDUAL)

    @property
    def support_concepts_roles(self) -> frozenset[Symbol]:
        return frozenset(s for s in self.support if s.kind is not Kind.INDIVIDUAL)

    def public_part(self) -> "Substitution":
        """Restriction to public source symbols (the bridged part)."""
        return Substitution(frozenset((s, t) for s, t in self.pairs if s.public))

    def __call__(self, s: Symbol) -> Symbol:
        for src, tgt in self.pairs:
            if src == s:
                return tgt
        return s

    def then(self, other: "Substitution") -> "Substitution":
        """Composition: apply ``self`` first, then ``other``."""
        mine = self.mapping
        theirs = other.mapping
        out = {s: theirs.get(t, t) for s, t in mine.items()}
        for s, t in theirs.items():
            if s not in mine:
                out[s] = t
        return Substitution.from_mapping(out)

    def __str__(self) -> str:
        if not self.pairs:
            return "{}"
        body = ", ".join(f"{s} -> {t}" for s, t in sorted(self.pairs, key=lambda p: str(p[0])))
        return "{" + body + "}"


IDENTITY = Substitution()


def make_substitution(support: Iterable[Symbol]) -> Substitution:
    """The representative renaming for a support set: prime every symbol once."""
    return Substitution(frozenset((s, s.primed()) for s in support))


def internalization_closure(support: Iterable[Symbol], vocabulary: Iterable[Symbol]) -> frozenset[Symbol]:
    """Extend ``support`` so priming it cannot collide with existing symbols.

    Renaming ``A`` to ``A'`` when ``A'`` already occurs requires moving the
    old ``A'`` to ``A''`` as well, and so on up the priming chain.
    """
    support = set(support)
    vocabulary = set(vocabulary)
    for s in list(support):
        support.update(
            v for v in vocabulary if v.name == s.name and v.kind is s.kind and v.level > s.level
        )
    return frozenset(support)


def apply_concept(c: Concept, sigma: Substitution | Mapping[Symbol, Symbol]) -> Concept:
    m = sigma.mapping if isinstance(sigma, Substitution) else sigma
    return _apply_concept(c, m)


def _apply_concept(c: Concept, m: Mapping[Symbol, Symbol]) -> Concept:
    if isinstance(c, Atom):
        return Atom(m.get(c.symbol, c.symbol))
    if isinstance(c, Not):
        return neg(_apply_concept(c.operand, m))
    if isinstance(c, And):
        return conj(*(_apply_concept(op, m) for op in c.operands))
    if isinstance(c, Or):
        return disj(*(_apply_concept(op, m) for op in c.operands))
    if isinstance(c, Exists):
        return Exists(m.get(c.role, c.role), _apply_concept(c.filler, m))
    return c


def apply_axiom(ax: Axiom, sigma: Substitution | Mapping[Symbol, Symbol]) -> Axiom:
    m = sigma.mapping if isinstance(sigma, Substitution) else sigma
    return _apply_axiom(ax, m)


def _apply_axiom(ax: Axiom, m: Mapping[Symbol, Symbol]) -> Axiom:
    get = lambda s: m.get(s, s)  # noqa: E731
    if isinstance(ax, GCI):
        return GCI(_apply_concept(ax.lhs, m), _apply_concept(ax.rhs, m))
    if isinstance(ax, RoleInc):
        return RoleInc(get(ax.sub), get(ax.sup))
    if isinstance(ax, ConceptAssert):
        return ConceptAssert(_apply_concept(ax.concept, m), get(ax.ind))
    if isinstance(ax, RoleAssert):
        return RoleAssert(get(ax.role), get(ax.source), get(ax.target), ax.positive)
    if isinstance(ax, Eq):
        return Eq(get(ax.left), get(ax.right))
    if isinstance(ax, Neq):
        left, right = get(ax.left), get(ax.right)
        # renaming may identify the two sides; keep the contradiction explicit
        return ConceptAssert(BOT, left) if left == right else Neq(left, right)
    if isinstance(ax, Clause):
        return clause(*(_apply_axiom(lit, m) for lit in ax.literals))
    raise TypeError(f"unknown axiom {ax!r}")


def apply_substitution(axioms: Iterable[Axiom], sigma: Substitution) -> frozenset[Axiom]:
    if not sigma.pairs:
        return frozenset(axioms)
    m = sigma.mapping
    return frozenset(_apply_axiom(ax, m) for ax in axioms)


def support_leq(s1: Substitution, s2: Substitution) -> bool:
    return s1.support <= s2.support


def inverse_renaming(history: Iterable[Substitution]) -> Substitution:
    """Map every symbol primed along ``history`` back to its public ancestor."""
    produced: set[Symbol] = set()
    for sigma in history:
        for s, t in sigma.pairs:
            for sym in (s, t):
                if not sym.public:
                    produced.add(sym)
    return Substitution(frozenset((s, s.base) for s in produced))


def compose(history: Iterable[Substitution]) -> Substitution:
    out = IDENTITY
    for sigma in history:
        out = out.then(sigma)
    return out


def internalize(axioms: Iterable[Axiom], support: Iterable[Symbol]) -> tuple[frozenset[Axiom], Substitution]:
    """Prime ``support`` throughout ``axioms``, bumping older primes out of the way."""
    axioms = frozenset(axioms)
    sigma = make_substitution(internalization_closure(support, signature(axioms)))
    return apply_substitution(axioms, sigma), sigma
