"""Tableau decision procedure for consistency and entailment.

Concepts are translated into negation normal form, represented as nested
tuples for speed:

    ("T",) ("F",) ("a", A) ("n", A) ("and", fs) ("or", fs)
    ("some", R, C) ("all", R, C)

A GCI ``C [= D`` whose clausal form ``!C | D`` has a negated atom ``!A``
among its disjuncts is absorbed into a lazy rule fired by ``A``; any
other GCI is internalized in every node.  Disjunctions with a single open
disjunct are expanded without branching, and clashes carry the branch
points they depend on so that failed branches backjump past irrelevant
choices.
Equalities between named individuals are resolved up front with a
union-find, since no rule of the fragment can derive new equalities.
Generated nodes are subject to anywhere subset blocking; named nodes are
never blocked and never act as blockers.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable

from .syntax import (
    GCI,
    And,
    Atom,
    Axiom,
    Bot,
    Clause,
    Concept,
    ConceptAssert,
    Eq,
    Exists,
    Neq,
    Not,
    Or,
    RoleAssert,
    RoleInc,
    Symbol,
    Top,
    individual,
    neg,
    signature,
)

MAX_NODES = 5000


class ReasonerLimitError(RuntimeError):
    """Raised when a completion graph outgrows ``MAX_NODES``."""


class _Clash(Exception):
    """A contradiction, carrying the branch points it depends on."""

    def __init__(self, deps: frozenset = frozenset()):
        super().__init__()
        self.deps = deps


_NO_DEPS: frozenset = frozenset()


class _Node(tuple):
    """An interned NNF node.  Interning makes identity the right equality."""

    __hash__ = object.__hash__
    __eq__ = object.__eq__
    __ne__ = object.__ne__


_NODES: dict[tuple, _Node] = {}


def _mk(*parts) -> _Node:
    node = _NODES.get(parts)
    if node is None:
        node = _Node(parts)
        _NODES[parts] = node
    return node


_TOP = _mk("T")
_BOT = _mk("F")


@lru_cache(maxsize=None)
def nnf(c: Concept, positive: bool = True) -> tuple:
    if isinstance(c, Top):
        return _TOP if positive else _BOT
    if isinstance(c, Bot):
        return _BOT if positive else _TOP
    if isinstance(c, Atom):
        return _mk("a" if positive else "n", c.symbol)
    if isinstance(c, Not):
        return nnf(c.operand, not positive)
    if isinstance(c, (And, Or)):
        ops = [nnf(op, positive) for op in c.operands]
        if isinstance(c, And) == positive:
            return _mk_and(ops)
        return _mk_or(ops)
    if isinstance(c, Exists):
        return _mk("some" if positive else "all", c.role, nnf(c.filler, positive))
    raise TypeError(f"not a concept: {c!r}")


def _mk_and(ops) -> tuple:
    flat = set()
    for t in ops:
        if t == _BOT:
            return _BOT
        if t[0] == "and":
            flat |= t[1]
        elif t != _TOP:
            flat.add(t)
    if not flat:
        return _TOP
    if len(flat) == 1:
        return next(iter(flat))
    return _mk("and", frozenset(flat))


def _mk_or(ops) -> tuple:
    flat = set()
    for t in ops:
        if t == _TOP:
            return _TOP
        if t[0] == "or":
            flat |= t[1]
        elif t != _BOT:
            flat.add(t)
    if not flat:
        return _BOT
    if len(flat) == 1:
        return next(iter(flat))
    return _mk("or", frozenset(flat))


@lru_cache(maxsize=None)
def _nnf_neg(t: tuple) -> tuple:
    tag = t[0]
    if tag == "T":
        return _BOT
    if tag == "F":
        return _TOP
    if tag == "a":
        return _mk("n", t[1])
    if tag == "n":
        return _mk("a", t[1])
    if tag == "and":
        return _mk_or(_nnf_neg(x) for x in t[1])
    if tag == "or":
        return _mk_and(_nnf_neg(x) for x in t[1])
    if tag == "some":
        return _mk("all", t[1], _nnf_neg(t[2]))
    return _mk("some", t[1], _nnf_neg(t[2]))


class _Tbox:
    """Preprocessed terminology, shared by all branches of one run."""

    def __init__(self, gcis: list[GCI], role_incs: list[RoleInc]):
        self.absorbed: dict[Symbol, list[tuple]] = {}
        universal: list[tuple] = []
        for g in gcis:
            self._absorb(g.lhs, nnf(g.rhs), universal)
        self.universal = tuple(dict.fromkeys(t for t in universal if t != _TOP))
        self._direct: dict[Symbol, set[Symbol]] = {}
        for ri in role_incs:
            self._direct.setdefault(ri.sub, set()).add(ri.sup)
        self._supers: dict[Symbol, frozenset[Symbol]] = {}

    def _absorb(self, lhs: Concept, rhs: tuple, universal: list[tuple]) -> None:
        # a disjunctive left side splits into one rule per disjunct
        if isinstance(lhs, Or):
            for op in lhs.operands:
                self._absorb(op, rhs, universal)
            return
        clause = _mk_or([nnf(lhs, False), rhs])
        if clause == _TOP:
            return
        disjuncts = sorted(clause[1], key=repr) if clause[0] == "or" else [clause]
        for d in disjuncts:
            if d[0] == "n":
                rest = _mk_or([x for x in disjuncts if x != d])
                self.absorbed.setdefault(d[1], []).append(rest)
                return
        universal.append(clause)

    def supers(self, role: Symbol) -> frozenset[Symbol]:
        cached = self._supers.get(role)
        if cached is None:
            seen = {role}
            stack = [role]
            while stack:
                for s in self._direct.get(stack.pop(), ()):
                    if s not in seen:
                        seen.add(s)
                        stack.append(s)
            cached = frozenset(seen)
            self._supers[role] = cached
        return cached


class _Graph:
    """Completion graph for one branch.  Copied on every branching.

    Labels map each concept to the set of branch points it depends on, so
    a clash reports which choices caused it.
    """

    __slots__ = ("tbox", "labels", "succ", "parent", "named", "neg", "queue")

    def __init__(self, tbox: _Tbox):
        self.tbox = tbox
        self.labels: list[dict[tuple, frozenset]] = []
        self.succ: list[dict[int, dict[Symbol, frozenset]]] = []
        self.parent: list[int] = []
        self.named = 0
        self.neg: dict[tuple, frozenset] = {}
        self.queue: list[tuple] = []

    def copy(self) -> "_Graph":
        g = _Graph.__new__(_Graph)
        g.tbox = self.tbox
        g.labels = [dict(lbl) for lbl in self.labels]
        g.succ = [{y: dict(rs) for y, rs in s.items()} for s in self.succ]
        g.parent = list(self.parent)
        g.named = self.named
        g.neg = dict(self.neg)
        g.queue = list(self.queue)
        return g

    def new_node(self, parent: int, deps: frozenset = _NO_DEPS) -> int:
        if len(self.labels) >= MAX_NODES:
            raise ReasonerLimitError("completion graph exceeded node limit")
        self.labels.append({})
        self.succ.append({})
        self.parent.append(parent)
        node = len(self.labels) - 1
        for u in self.tbox.universal:
            self.add(node, u, deps)
        return node

    def add(self, node: int, c: tuple, deps: frozenset) -> None:
        label = self.labels[node]
        if c in label:
            return
        tag = c[0]
        if tag == "F":
            raise _Clash(deps)
        if tag == "T":
            return
        if tag == "a" or tag == "n":
            other = label.get(_mk("n" if tag == "a" else "a", c[1]))
            if other is not None:
                raise _Clash(deps | other)
        label[c] = deps
        self.queue.append((node, c))

    def add_edge(self, x: int, y: int, role: Symbol, deps: frozenset) -> None:
        roles = self.succ[x].setdefault(y, {})
        new = [r for r in self.tbox.supers(role) if r not in roles]
        if not new:
            return
        for r in new:
            roles[r] = deps
            other = self.neg.get((r, x, y))
            if other is not None:
                raise _Clash(deps | other)
        for c, d in list(self.labels[x].items()):
            if c[0] == "all" and c[1] in new:
                self.add(y, c[2], d | deps)

    def add_neg_edge(self, role: Symbol, x: int, y: int, deps: frozenset) -> None:
        other = self.succ[x].get(y, {}).get(role)
        if other is not None:
            raise _Clash(deps | other)
        self.neg.setdefault((role, x, y), deps)

    def saturate(self) -> None:
        absorbed = self.tbox.absorbed
        while self.queue:
            node, c = self.queue.pop()
            d = self.labels[node][c]
            tag = c[0]
            if tag == "and":
                for x in c[1]:
                    self.add(node, x, d)
            elif tag == "a":
                for rhs in absorbed.get(c[1], ()):
                    self.add(node, rhs, d)
            elif tag == "all":
                role = c[1]
                for y, roles in self.succ[node].items():
                    if role in roles:
                        self.add(y, c[2], d | roles[role])

    def blocked(self) -> list[bool]:
        status = [False] * len(self.labels)
        for y in range(self.named, len(self.labels)):
            p = self.parent[y]
            if p >= self.named and status[p]:
                status[y] = True
                continue
            label = self.labels[y].keys()
            for x in range(self.named, y):
                if not status[x] and label <= self.labels[x].keys():
                    status[y] = True
                    break
        return status


# Branching works on literals: ("c", node, concept), ("r", role, x, y) and
# ("nr", role, x, y) for a negated role edge.


def _literal_deps(g: _Graph, lit: tuple) -> frozenset | None:
    """Dependencies of ``lit`` if it already holds in ``g``, else None."""
    kind = lit[0]
    if kind == "c":
        return g.labels[lit[1]].get(lit[2])
    if kind == "r":
        return g.succ[lit[2]].get(lit[3], {}).get(lit[1])
    return g.neg.get((lit[1], lit[2], lit[3]))


def _apply_literal(g: _Graph, lit: tuple, deps: frozenset) -> None:
    kind = lit[0]
    if kind == "c":
        g.add(lit[1], lit[2], deps)
    elif kind == "r":
        g.add_edge(lit[2], lit[3], lit[1], deps)
    else:
        g.add_neg_edge(lit[1], lit[2], lit[3], deps)


def _negate_literal(lit: tuple) -> tuple:
    kind = lit[0]
    if kind == "c":
        return ("c", lit[1], _nnf_neg(lit[2]))
    if kind == "r":
        return ("nr", lit[1], lit[2], lit[3])
    return ("r", lit[1], lit[2], lit[3])


@lru_cache(maxsize=None)
def _options(c: tuple) -> tuple:
    return tuple(sorted(c[1], key=repr))


def _disjunctions(g: _Graph, clauses: tuple):
    """Disjunctions not yet satisfied by one of their disjuncts."""
    for node, label in enumerate(g.labels):
        for c, d in label.items():
            if c[0] == "or" and not any(x in label for x in c[1]):
                yield tuple(("c", node, x) for x in _options(c)), d
    for lits in clauses:
        yield lits, _NO_DEPS


def _propagate(g: _Graph, clauses: tuple):
    """Expand forced disjunctions; return the best open one to branch on.

    A disjunct is closed when its negation is already present.  A
    disjunction with no open disjunct is a clash, one with a single open
    disjunct is expanded on the spot.
    """
    while True:
        g.saturate()
        best = None
        forced = False
        for lits, deps in list(_disjunctions(g, clauses)):
            if any(_literal_deps(g, lit) is not None for lit in lits):
                continue
            why = deps
            open_lits = []
            for lit in lits:
                closed = _literal_deps(g, _negate_literal(lit))
                if closed is None:
                    open_lits.append(lit)
                else:
                    why = why | closed
            if not open_lits:
                raise _Clash(why)
            if len(open_lits) == 1:
                _apply_literal(g, open_lits[0], why)
                forced = True
                continue
            if best is None or len(open_lits) < len(best[0]):
                best = (open_lits, why)
        if not forced:
            return best


def _solve(g: _Graph, clauses: tuple, level: int = 0) -> None:
    """Return if ``g`` can be completed to a model, else raise _Clash."""
    while True:
        pending = _propagate(g, clauses)
        if pending is not None:
            lits, why = pending
            failed: list[frozenset] = []
            for i, choice in enumerate(lits):
                branch = g.copy()
                try:
                    for earlier, reason in zip(lits, failed):
                        _apply_literal(branch, _negate_literal(earlier), why | reason)
                    _apply_literal(branch, choice, why | {level})
                    _solve(branch, clauses, level + 1)
                    return
                except _Clash as clash:
                    if level not in clash.deps:
                        raise
                    failed.append(clash.deps - {level})
            raise _Clash(why.union(*failed))

        blocked = g.blocked()
        expanded = False
        for node in range(len(g.labels)):
            if blocked[node]:
                continue
            for c, d in list(g.labels[node].items()):
                if c[0] != "some":
                    continue
                role, filler = c[1], c[2]
                if any(
                    role in roles and (filler == _TOP or filler in g.labels[y])
                    for y, roles in g.succ[node].items()
                ):
                    continue
                y = g.new_node(node, d)
                g.add(y, filler, d)
                g.add_edge(node, y, role, d)
                expanded = True
        if not expanded:
            return


class _UnionFind:
    def __init__(self) -> None:
        self.parent: dict[Symbol, Symbol] = {}

    def find(self, x: Symbol) -> Symbol:
        root = x
        while self.parent.get(root, root) != root:
            root = self.parent[root]
        while x != root:
            nxt = self.parent.get(x, x)
            self.parent[x] = root
            x = nxt
        return root

    def union(self, a: Symbol, b: Symbol) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


@lru_cache(maxsize=200_000)
def _consistent(axioms: frozenset) -> bool:
    gcis, role_incs, eqs, neqs, asserts, clauses = [], [], [], [], [], []
    for ax in axioms:
        if isinstance(ax, GCI):
            gcis.append(ax)
        elif isinstance(ax, RoleInc):
            role_incs.append(ax)
        elif isinstance(ax, Eq):
            eqs.append(ax)
        elif isinstance(ax, Neq):
            neqs.append(ax)
        elif isinstance(ax, Clause):
            clauses.append(ax)
        else:
            asserts.append(ax)

    uf = _UnionFind()
    for e in eqs:
        uf.union(e.left, e.right)
    for n in neqs:
        if uf.find(n.left) == uf.find(n.right):
            return False

    inds = sorted({uf.find(s) for s in signature(axioms) if s.kind.value == "individual"})
    if not inds:
        # the domain is never empty
        inds = [individual("__anon")]
    index = {s: i for i, s in enumerate(inds)}

    def lit(ax: Axiom) -> tuple:
        if isinstance(ax, ConceptAssert):
            return ("c", index[uf.find(ax.ind)], nnf(ax.concept))
        tag = "r" if ax.positive else "nr"
        return (tag, ax.role, index[uf.find(ax.source)], index[uf.find(ax.target)])

    g = _Graph(_Tbox(gcis, role_incs))
    encoded = tuple(tuple(lit(l) for l in c.literals) for c in sorted(clauses, key=lambda a: a.text))
    try:
        for _ in inds:
            g.new_node(-1)
        g.named = len(inds)
        for ax in sorted(asserts, key=lambda a: a.text):
            _apply_literal(g, lit(ax), _NO_DEPS)
        _solve(g, encoded)
    except _Clash:
        return False
    return True


def is_consistent(axioms: Iterable[Axiom]) -> bool:
    """True iff the axioms have a model."""
    return _consistent(frozenset(axioms))


def _fresh_individuals(axioms: frozenset, n: int) -> list[Symbol]:
    taken = {s.name for s in signature(axioms)}
    out = []
    i = 0
    while len(out) < n:
        name = f"__x{i}"
        if name not in taken:
            out.append(individual(name))
        i += 1
    return out


def refutation(axioms: Iterable[Axiom], goal: Axiom) -> list[Axiom]:
    """Axioms whose addition is inconsistent exactly when ``goal`` follows."""
    axioms = frozenset(axioms)
    if isinstance(goal, GCI):
        (x,) = _fresh_individuals(axioms | {goal}, 1)
        return [ConceptAssert(goal.lhs, x), ConceptAssert(neg(goal.rhs), x)]
    if isinstance(goal, ConceptAssert):
        return [ConceptAssert(neg(goal.concept), goal.ind)]
    if isinstance(goal, RoleInc):
        x, y = _fresh_individuals(axioms | {goal}, 2)
        return [RoleAssert(goal.sub, x, y), RoleAssert(goal.sup, x, y, False)]
    if isinstance(goal, RoleAssert):
        return [RoleAssert(goal.role, goal.source, goal.target, not goal.positive)]
    if isinstance(goal, Eq):
        return [Neq(goal.left, goal.right)]
    if isinstance(goal, Neq):
        return [Eq(goal.left, goal.right)]
    if isinstance(goal, Clause):
        return [refutation(axioms, lit)[0] for lit in goal.literals]
    raise TypeError(f"cannot encode goal {goal!r}")


def entails(axioms: Iterable[Axiom], goal: Axiom) -> bool:
    """True iff every model of ``axioms`` satisfies ``goal``."""
    axioms = frozenset(axioms)
    if goal in axioms:
        return True
    if isinstance(goal, Eq) and goal.left == goal.right:
        return True
    return not _consistent(axioms | frozenset(refutation(axioms, goal)))


def entails_all(axioms: Iterable[Axiom], goals: Iterable[Axiom]) -> bool:
    axioms = frozenset(axioms)
    return all(entails(axioms, g) for g in goals)


def clear_caches() -> None:
    _consistent.cache_clear()
