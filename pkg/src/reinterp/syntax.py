"""Abstract syntax for the description logic used throughout the package.

The fragment is ALC with role inclusions, individual (in)equalities,
negative role assertions and disjunctive ABox clauses.  Every value is an
immutable dataclass in canonical form: commutative constructors are
flattened, deduplicated and sorted by their rendering, so structural
equality coincides with syntactic identity up to associativity,
commutativity and idempotence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable, Iterator, Union


class Kind(str, Enum):
    CONCEPT = "concept"
    ROLE = "role"
    INDIVIDUAL = "individual"


@dataclass(frozen=True, order=True)
class Symbol:
    """A non-logical symbol.

    ``level`` counts internalization generations: level 0 symbols belong to
    the public vocabulary, every other level is internal.  ``A`` at level 2
    renders as ``A''``.
    """

    name: str
    kind: Kind
    level: int = 0

    def __post_init__(self) -> None:
        if self.level < 0:
            raise ValueError("prime level must be non-negative")
        if not self.name or "'" in self.name:
            raise ValueError(f"invalid symbol name {self.name!r}")

    @property
    def public(self) -> bool:
        return self.level == 0

    @property
    def base(self) -> "Symbol":
        return Symbol(self.name, self.kind, 0)

    def primed(self, times: int = 1) -> "Symbol":
        return Symbol(self.name, self.kind, self.level + times)

    def __str__(self) -> str:
        return self.name + "'" * self.level


def concept_name(name: str, level: int = 0) -> Symbol:
    return Symbol(name, Kind.CONCEPT, level)


def role_name(name: str, level: int = 0) -> Symbol:
    return Symbol(name, Kind.ROLE, level)


def individual(name: str, level: int = 0) -> Symbol:
    return Symbol(name, Kind.INDIVIDUAL, level)


def _require(sym: Symbol, kind: Kind) -> None:
    if not isinstance(sym, Symbol) or sym.kind is not kind:
        raise TypeError(f"expected a {kind.value} symbol, got {sym!r}")


# --------------------------------------------------------------------------
# Concepts


class Concept:
    __slots__ = ()

    def __str__(self) -> str:
        return self.text

    @property
    def text(self) -> str:  # pragma: no cover - overridden
        raise NotImplementedError


@dataclass(frozen=True)
class Top(Concept):
    @property
    def text(self) -> str:
        return "Top"


@dataclass(frozen=True)
class Bot(Concept):
    @property
    def text(self) -> str:
        return "Bot"


@dataclass(frozen=True)
class Atom(Concept):
    symbol: Symbol

    def __post_init__(self) -> None:
        _require(self.symbol, Kind.CONCEPT)

    @property
    def text(self) -> str:
        return str(self.symbol)


@dataclass(frozen=True)
class Not(Concept):
    operand: Concept

    @property
    def text(self) -> str:
        return "!" + self.operand.text


def _normalize_operands(cls: type, operands: Iterable[Concept]) -> tuple:
    flat: dict[str, Concept] = {}
    for op in operands:
        if isinstance(op, cls):
            for inner in op.operands:
                flat[inner.text] = inner
        else:
            flat[op.text] = op
    return tuple(flat[k] for k in sorted(flat))


@dataclass(frozen=True)
class And(Concept):
    operands: tuple

    def __post_init__(self) -> None:
        ops = _normalize_operands(And, self.operands)
        if len(ops) < 2:
            raise ValueError("a conjunction needs two distinct operands; use conj()")
        object.__setattr__(self, "operands", ops)

    @property
    def text(self) -> str:
        return "(" + " & ".join(op.text for op in self.operands) + ")"


@dataclass(frozen=True)
class Or(Concept):
    operands: tuple

    def __post_init__(self) -> None:
        ops = _normalize_operands(Or, self.operands)
        if len(ops) < 2:
            raise ValueError("a disjunction needs two distinct operands; use disj()")
        object.__setattr__(self, "operands", ops)

    @property
    def text(self) -> str:
        return "(" + " | ".join(op.text for op in self.operands) + ")"


@dataclass(frozen=True)
class Exists(Concept):
    role: Symbol
    filler: Concept

    def __post_init__(self) -> None:
        _require(self.role, Kind.ROLE)

    @property
    def text(self) -> str:
        return f"exists {self.role}.{self.filler.text}"


TOP = Top()
BOT = Bot()


def atom(name: str, level: int = 0) -> Atom:
    return Atom(concept_name(name, level))


def neg(c: Concept) -> Concept:
    """Negation with double negations collapsed."""
    if isinstance(c, Not):
        return c.operand
    return Not(c)


def conj(*cs: Concept) -> Concept:
    """Canonical conjunction; the empty conjunction is Top."""
    ops = _normalize_operands(And, cs)
    if not ops:
        return TOP
    if len(ops) == 1:
        return ops[0]
    return And(ops)


def disj(*cs: Concept) -> Concept:
    ops = _normalize_operands(Or, cs)
    if not ops:
        return BOT
    if len(ops) == 1:
        return ops[0]
    return Or(ops)


def some(role: Symbol, filler: Concept) -> Exists:
    return Exists(role, filler)


def concept_size(c: Concept) -> int:
    if isinstance(c, (Top, Bot, Atom)):
        return 1
    if isinstance(c, Not):
        return 1 + concept_size(c.operand)
    if isinstance(c, (And, Or)):
        return 1 + sum(concept_size(op) for op in c.operands)
    return 1 + concept_size(c.filler)


def concept_symbols(c: Concept) -> Iterator[Symbol]:
    if isinstance(c, Atom):
        yield c.symbol
    elif isinstance(c, Not):
        yield from concept_symbols(c.operand)
    elif isinstance(c, (And, Or)):
        for op in c.operands:
            yield from concept_symbols(op)
    elif isinstance(c, Exists):
        yield c.role
        yield from concept_symbols(c.filler)


# --------------------------------------------------------------------------
# Axioms


class Axiom:
    __slots__ = ()

    def __str__(self) -> str:
        return self.text

    @property
    def text(self) -> str:  # pragma: no cover - overridden
        raise NotImplementedError


@dataclass(frozen=True)
class GCI(Axiom):
    lhs: Concept
    rhs: Concept

    @property
    def text(self) -> str:
        return f"{self.lhs.text} [= {self.rhs.text}"


@dataclass(frozen=True)
class RoleInc(Axiom):
    sub: Symbol
    sup: Symbol

    def __post_init__(self) -> None:
        _require(self.sub, Kind.ROLE)
        _require(self.sup, Kind.ROLE)

    @property
    def text(self) -> str:
        return f"{self.sub} [=r {self.sup}"


@dataclass(frozen=True)
class ConceptAssert(Axiom):
    concept: Concept
    ind: Symbol

    def __post_init__(self) -> None:
        _require(self.ind, Kind.INDIVIDUAL)

    @property
    def text(self) -> str:
        return f"{self.concept.text}({self.ind})"


@dataclass(frozen=True)
class RoleAssert(Axiom):
    role: Symbol
    source: Symbol
    target: Symbol
    positive: bool = True

    def __post_init__(self) -> None:
        _require(self.role, Kind.ROLE)
        _require(self.source, Kind.INDIVIDUAL)
        _require(self.target, Kind.INDIVIDUAL)

    @property
    def text(self) -> str:
        sign = "" if self.positive else "!"
        return f"{sign}{self.role}({self.source}, {self.target})"


def _ordered_pair(a: Symbol, b: Symbol) -> tuple[Symbol, Symbol]:
    return (a, b) if str(a) <= str(b) else (b, a)


@dataclass(frozen=True)
class Eq(Axiom):
    left: Symbol
    right: Symbol

    def __post_init__(self) -> None:
        _require(self.left, Kind.INDIVIDUAL)
        _require(self.right, Kind.INDIVIDUAL)
        left, right = _ordered_pair(self.left, self.right)
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    @property
    def text(self) -> str:
        return f"{self.left} == {self.right}"


@dataclass(frozen=True)
class Neq(Axiom):
    left: Symbol
    right: Symbol

    def __post_init__(self) -> None:
        _require(self.left, Kind.INDIVIDUAL)
        _require(self.right, Kind.INDIVIDUAL)
        if self.left == self.right:
            raise ValueError(f"{self.left} != {self.right} is unsatisfiable; assert Bot instead")
        left, right = _ordered_pair(self.left, self.right)
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    @property
    def text(self) -> str:
        return f"{self.left} != {self.right}"


Literal = Union[ConceptAssert, RoleAssert]


@dataclass(frozen=True)
class Clause(Axiom):
    """Disjunction of ABox assertions (a boolean ABox axiom)."""

    literals: tuple

    def __post_init__(self) -> None:
        lits = tuple(self.literals)
        if not lits:
            raise ValueError("a clause needs at least one literal")
        by_text: dict[str, Axiom] = {}
        for lit in lits:
            if not isinstance(lit, (ConceptAssert, RoleAssert)):
                raise TypeError(f"clause literals must be assertions, got {lit!r}")
            if lit.text in by_text:
                raise ValueError(f"duplicate clause literal {lit.text}")
            by_text[lit.text] = lit
        object.__setattr__(self, "literals", tuple(by_text[k] for k in sorted(by_text)))

    @property
    def text(self) -> str:
        return "clause { " + " | ".join(lit.text for lit in self.literals) + " }"


def clause(*literals: Literal) -> Axiom:
    """Build a clause, deduplicating literals; a unit clause is its literal."""
    unique = {lit.text: lit for lit in literals}
    if len(unique) == 1:
        return next(iter(unique.values()))
    return Clause(tuple(unique.values()))


def axiom_symbols(ax: Axiom) -> Iterator[Symbol]:
    if isinstance(ax, GCI):
        yield from concept_symbols(ax.lhs)
        yield from concept_symbols(ax.rhs)
    elif isinstance(ax, RoleInc):
        yield ax.sub
        yield ax.sup
    elif isinstance(ax, ConceptAssert):
        yield from concept_symbols(ax.concept)
        yield ax.ind
    elif isinstance(ax, RoleAssert):
        yield ax.role
        yield ax.source
        yield ax.target
    elif isinstance(ax, (Eq, Neq)):
        yield ax.left
        yield ax.right
    elif isinstance(ax, Clause):
        for lit in ax.literals:
            yield from axiom_symbols(lit)
    else:  # pragma: no cover
        raise TypeError(f"unknown axiom {ax!r}")


def signature(axioms: Iterable[Axiom]) -> frozenset[Symbol]:
    return frozenset(s for ax in axioms for s in axiom_symbols(ax))


def sorted_axioms(axioms: Iterable[Axiom]) -> list[Axiom]:
    return sorted(axioms, key=lambda ax: ax.text)


def render_axioms(axioms: Iterable[Axiom]) -> str:
    return "\n".join(ax.text for ax in sorted_axioms(axioms))


# --------------------------------------------------------------------------
# Ontologies


@dataclass(frozen=True)
class Ontology:
    """An axiom set together with its public and internal vocabularies."""

    axioms: frozenset
    public: frozenset = field(default_factory=frozenset)
    internal: frozenset = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "axioms", frozenset(self.axioms))
        object.__setattr__(self, "public", frozenset(self.public))
        object.__setattr__(self, "internal", frozenset(self.internal))
        if self.public & self.internal:
            raise ValueError("public and internal vocabularies overlap")
        if any(not s.public for s in self.public):
            raise ValueError("public vocabulary contains a primed symbol")
        if any(s.public for s in self.internal):
            raise ValueError("internal vocabulary contains an unprimed symbol")
        stray = self.signature - self.public - self.internal
        if stray:
            names = ", ".join(sorted(map(str, stray)))
            raise ValueError(f"symbols missing from the vocabulary: {names}")

    @classmethod
    def of(cls, axioms: Iterable[Axiom], public: Iterable[Symbol] = ()) -> "Ontology":
        """Ontology whose vocabulary is inferred from the axioms."""
        axioms = frozenset(axioms)
        sig = signature(axioms) | frozenset(public)
        return cls(
            axioms,
            frozenset(s for s in sig if s.public),
            frozenset(s for s in sig if not s.public),
        )

    @cached_property
    def signature(self) -> frozenset[Symbol]:
        return signature(self.axioms)

    @property
    def vocabulary(self) -> frozenset[Symbol]:
        return self.public | self.internal

    def with_axioms(self, axioms: Iterable[Axiom]) -> "Ontology":
        return Ontology.of(axioms, self.public)

    def render(self, name: str = "O") -> str:
        lines = [f"ontology {name} {{"]
        if self.public:
            lines.append("  public: " + ", ".join(sorted(map(str, self.public))) + ";")
        lines.extend("  " + ax.text for ax in sorted_axioms(self.axioms))
        lines.append("}")
        return "\n".join(lines)

    def __len__(self) -> int:
        return len(self.axioms)

    def __iter__(self):
        return iter(sorted_axioms(self.axioms))
