"""Recursive-descent parser for the line-oriented ontology format.

    ontology O1 {
      public: Article, pr1;
      Article(pr1)
      (Article & !Proceed) [= exists publishedIn.Top
    }

Parenthesized ``&``/``|`` groups may chain more than two operands, which is
what the renderer prints for flattened conjunctions and disjunctions.
Primed names (``A'``) are internal symbols; they are rejected unless the
caller passes ``allow_internal=True``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from .syntax import (
    BOT,
    GCI,
    TOP,
    Atom,
    Axiom,
    Concept,
    ConceptAssert,
    Eq,
    Kind,
    Neq,
    Ontology,
    RoleAssert,
    RoleInc,
    Symbol,
    clause,
    conj,
    disj,
    neg,
    some,
)

KEYWORDS = {"ontology", "public", "clause", "exists", "Top", "Bot"}

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+|\#[^\n]*)
  | (?P<nl>\n)
  | (?P<op>\[=r|\[=|==|!=|[!(){},;.&|:])
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*'*)
    """,
    re.VERBOSE,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int, expected: tuple[str, ...] = ()):
        self.message = message
        self.line = line
        self.column = column
        self.expected = expected
        detail = f" (expected {' or '.join(expected)})" if expected else ""
        super().__init__(f"line {line}, column {column}: {message}{detail}")


@dataclass(frozen=True)
class Token:
    kind: str  # "op", "name" or "eof"
    value: str
    line: int
    column: int

    def describe(self) -> str:
        return "end of input" if self.kind == "eof" else repr(self.value)


def tokenize(text: str) -> list[Token]:
    out: list[Token] = []
    line, start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line, start = line + 1, m.end()
        elif kind != "ws":
            out.append(Token(kind, m.group(), line, pos - start + 1))
        pos = m.end()
    out.append(Token("eof", "", line, pos - start + 1))
    return out


class Parser:
    def __init__(self, text: str, allow_internal: bool = False):
        self.tokens = tokenize(text)
        self.pos = 0
        self.allow_internal = allow_internal
        self.kinds: dict[str, Kind] = {}

    # token helpers

    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def at(self, value: str, offset: int = 0) -> bool:
        tok = self.peek(offset)
        return tok.kind == "op" and tok.value == value

    def fail(self, message: str, expected: tuple[str, ...] = (), tok: Token | None = None):
        tok = tok or self.peek()
        raise ParseError(message, tok.line, tok.column, expected)

    def expect(self, value: str) -> Token:
        tok = self.peek()
        if tok.kind == "op" and tok.value == value:
            self.pos += 1
            return tok
        self.fail(f"unexpected {tok.describe()}", (repr(value),))

    def name(self, what: str = "a name") -> Token:
        tok = self.peek()
        if tok.kind != "name":
            self.fail(f"unexpected {tok.describe()}", (what,))
        self.pos += 1
        return tok

    def symbol(self, tok: Token, kind: Kind) -> Symbol:
        if tok.value in KEYWORDS:
            self.fail(f"keyword {tok.value!r} used as a {kind.value} name", tok=tok)
        base = tok.value.rstrip("'")
        level = len(tok.value) - len(base)
        if level and not self.allow_internal:
            self.fail(f"internal symbol {tok.value} not allowed here", tok=tok)
        seen = self.kinds.setdefault(base, kind)
        if seen is not kind:
            self.fail(f"{base} used both as {seen.value} and as {kind.value}", tok=tok)
        return Symbol(base, kind, level)

    # grammar

    def concept(self) -> Concept:
        tok = self.peek()
        if self.at("!"):
            self.pos += 1
            return neg(self.concept())
        if self.at("("):
            self.pos += 1
            first = self.concept()
            if not (self.at("&") or self.at("|")):
                self.fail(f"unexpected {self.peek().describe()}", ("'&'", "'|'"))
            op = self.peek().value
            parts = [first]
            while self.at(op):
                self.pos += 1
                parts.append(self.concept())
            if self.at("&") or self.at("|"):
                self.fail("mixed '&' and '|' need their own parentheses")
            self.expect(")")
            return conj(*parts) if op == "&" else disj(*parts)
        if tok.kind == "name":
            if tok.value == "Top":
                self.pos += 1
                return TOP
            if tok.value == "Bot":
                self.pos += 1
                return BOT
            if tok.value == "exists":
                self.pos += 1
                role = self.symbol(self.name("a role name"), Kind.ROLE)
                self.expect(".")
                return some(role, self.concept())
            self.pos += 1
            return Atom(self.symbol(tok, Kind.CONCEPT))
        self.fail(f"unexpected {tok.describe()}", ("a concept",))

    def role_assertion(self, positive: bool) -> RoleAssert:
        role = self.symbol(self.name("a role name"), Kind.ROLE)
        self.expect("(")
        a = self.symbol(self.name("an individual"), Kind.INDIVIDUAL)
        self.expect(",")
        b = self.symbol(self.name("an individual"), Kind.INDIVIDUAL)
        self.expect(")")
        return RoleAssert(role, a, b, positive)

    def _role_assertion_ahead(self, offset: int) -> bool:
        tok = self.peek(offset)
        return (
            tok.kind == "name"
            and tok.value not in KEYWORDS
            and self.at("(", offset + 1)
            and self.peek(offset + 2).kind == "name"
            and self.at(",", offset + 3)
        )

    def assertion(self) -> Axiom:
        if self._role_assertion_ahead(0):
            return self.role_assertion(True)
        if self.at("!") and self._role_assertion_ahead(1):
            self.pos += 1
            return self.role_assertion(False)
        c = self.concept()
        self.expect("(")
        ind = self.symbol(self.name("an individual"), Kind.INDIVIDUAL)
        self.expect(")")
        return ConceptAssert(c, ind)

    def axiom(self) -> Axiom:
        tok = self.peek()
        if tok.kind == "name" and tok.value == "clause":
            self.pos += 1
            self.expect("{")
            lits = [self.assertion()]
            while self.at("|"):
                self.pos += 1
                lits.append(self.assertion())
            self.expect("}")
            return clause(*lits)
        if tok.kind == "name" and tok.value not in KEYWORDS:
            if self.at("[=r", 1):
                sub = self.symbol(self.name(), Kind.ROLE)
                self.pos += 1
                return RoleInc(sub, self.symbol(self.name("a role name"), Kind.ROLE))
            if self.at("==", 1) or self.at("!=", 1):
                a = self.symbol(self.name(), Kind.INDIVIDUAL)
                eq = self.peek().value == "=="
                self.pos += 1
                b = self.symbol(self.name("an individual"), Kind.INDIVIDUAL)
                if a == b:
                    self.fail("an (in)equality needs two distinct individuals", tok=tok)
                return Eq(a, b) if eq else Neq(a, b)
        if self._role_assertion_ahead(0) or (self.at("!") and self._role_assertion_ahead(1)):
            return self.assertion()
        c = self.concept()
        if self.at("[="):
            self.pos += 1
            return GCI(c, self.concept())
        if self.at("("):
            self.pos += 1
            ind = self.symbol(self.name("an individual"), Kind.INDIVIDUAL)
            self.expect(")")
            return ConceptAssert(c, ind)
        self.fail(f"unexpected {self.peek().describe()}", ("'[='", "'('"))

    def axioms_until(self, stop: str | None) -> list[Axiom]:
        out = []
        while not (self.at(stop) if stop else self.peek().kind == "eof"):
            if self.peek().kind == "eof":
                self.fail("unexpected end of input", (repr(stop),))
            out.append(self.axiom())
        return out

    def ontology_block(self) -> tuple[str, list[Axiom], list[Token]]:
        kw = self.name("'ontology'")
        if kw.value != "ontology":
            self.fail(f"unexpected {kw.describe()}", ("'ontology'",), tok=kw)
        label = self.name("an ontology name").value
        self.expect("{")
        declared: list[Token] = []
        if self.peek().value == "public" and self.at(":", 1):
            self.pos += 2
            while not self.at(";"):
                declared.append(self.name("a symbol name"))
                if self.at(","):
                    self.pos += 1
                elif not self.at(";"):
                    self.fail(f"unexpected {self.peek().describe()}", ("','", "';'"))
            self.expect(";")
        axioms = self.axioms_until("}")
        self.expect("}")
        return label, axioms, declared

    def resolve(self, declared: list[Token]) -> set[Symbol]:
        out = set()
        for tok in declared:
            base = tok.value.rstrip("'")
            if base != tok.value:
                self.fail(f"internal symbol {tok.value} declared public", tok=tok)
            if base not in self.kinds:
                self.fail(f"cannot infer the kind of {base}: it occurs in no axiom", tok=tok)
            out.add(Symbol(base, self.kinds[base]))
        return out


def parse_ontologies(text: str, allow_internal: bool = False) -> dict[str, Ontology]:
    """Every ``ontology NAME { ... }`` block in ``text``, by name and in order."""
    p = Parser(text, allow_internal)
    blocks = []
    while p.peek().kind != "eof":
        start = p.peek()
        label, axioms, declared = p.ontology_block()
        if label in (b[0] for b in blocks):
            p.fail(f"duplicate ontology name {label}", tok=start)
        blocks.append((label, axioms, declared))
    return {label: Ontology.of(axioms, p.resolve(declared)) for label, axioms, declared in blocks}


def parse_ontology(text: str, allow_internal: bool = False) -> Ontology:
    found = parse_ontologies(text, allow_internal)
    if len(found) != 1:
        raise ParseError(f"expected exactly one ontology block, found {len(found)}", 1, 1)
    return next(iter(found.values()))


def parse_axioms(text: str, allow_internal: bool = False) -> frozenset[Axiom]:
    """A bare sequence of axioms, as used for triggers."""
    p = Parser(text, allow_internal)
    return frozenset(p.axioms_until(None))


def parse_axiom(text: str, allow_internal: bool = False) -> Axiom:
    p = Parser(text, allow_internal)
    ax = p.axiom()
    if p.peek().kind != "eof":
        p.fail(f"unexpected {p.peek().describe()}", ("end of input",))
    return ax


def parse_concept(text: str, allow_internal: bool = False) -> Concept:
    p = Parser(text, allow_internal)
    c = p.concept()
    if p.peek().kind != "eof":
        p.fail(f"unexpected {p.peek().describe()}", ("end of input",))
    return c

