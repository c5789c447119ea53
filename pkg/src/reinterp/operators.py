"""Reinterpretation operators and the iterated-revision driver."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Callable, Iterable, Sequence

from .bridging import literal_parts, oa, simple_bridging, strong_bridging
from .concepts import DEFAULT_DEPTH, msc
from .conflict import InconsistentInputError, dual_remainders, mcs
from .reasoner import is_consistent
from .selection import canonical_selection, OaSelection, SelectionStrategy, sel_none
from .subst import IDENTITY, Substitution, apply_substitution, compose, internalize, make_substitution
from .syntax import GCI, Atom, Axiom, ConceptAssert, Kind, Ontology, disj, signature

MCS_MODE, FULL_MODE = "mcs", "full"
CR_KINDS = (Kind.CONCEPT, Kind.ROLE)


class RevisionError(ValueError):
    pass


@dataclass(frozen=True)
class Step:
    operator: str
    trigger: frozenset[Axiom]
    sigma: Substitution
    bridges: frozenset[Axiom]
    consistent_case: bool


@dataclass(frozen=True)
class RevisionResult:
    ontology: Ontology
    trace: tuple[Step, ...] = ()
    composed: Substitution = IDENTITY

    @property
    def axioms(self) -> frozenset[Axiom]:
        return self.ontology.axioms

    @property
    def history(self) -> list[Substitution]:
        return [step.sigma for step in self.trace]


def as_ontology(o: Ontology | Iterable[Axiom]) -> Ontology:
    return o if isinstance(o, Ontology) else Ontology.of(frozenset(o))


def _result_ontology(before: Ontology, axioms: frozenset[Axiom], trigger: frozenset[Axiom]) -> Ontology:
    sig = signature(axioms)
    public = set(before.public) | {s for s in sig | signature(trigger) if s.public}
    internal = {s for s in sig if not s.public}
    return Ontology(frozenset(axioms), frozenset(public), frozenset(internal))


def _check_inputs(o: Ontology, trigger: frozenset[Axiom]) -> None:
    if any(not s.public for s in signature(trigger)):
        raise RevisionError("trigger mentions internal symbols")
    if not is_consistent(o.axioms):
        raise InconsistentInputError("input ontology inconsistent")
    if not is_consistent(trigger):
        raise RevisionError("trigger inconsistent")


def _union_step(o: Ontology, trigger: frozenset[Axiom], name: str) -> RevisionResult:
    step = Step(name, trigger, IDENTITY, frozenset(), True)
    return RevisionResult(_result_ontology(o, o.axioms | trigger, trigger), (step,), IDENTITY)


def internalization(
    o: Ontology,
    trigger: frozenset[Axiom],
    mode: str = MCS_MODE,
    gamma1: SelectionStrategy | None = None,
    kinds: Iterable[Kind] | None = CR_KINDS,
) -> tuple[frozenset[Axiom], Substitution]:
    """Rename the receiver's symbols ahead of bridging.

    In full mode every symbol of ``o`` is primed.  In mcs mode the union of
    the minimal conflicting sets chosen by ``gamma1`` is primed; renaming is
    tried over ``kinds`` first and widened to all kinds when that cannot
    remove the conflict.
    """
    if mode == FULL_MODE:
        sigma = make_substitution(signature(o.axioms))
        return apply_substitution(o.axioms, sigma), sigma
    if mode != MCS_MODE:
        raise ValueError(f"unknown mode {mode!r}")
    result = mcs(o.axioms, trigger, kinds=kinds)
    if not result.resolvable and kinds is not None:
        result = mcs(o.axioms, trigger)
    if not result.resolvable:
        raise RevisionError("not reinterpretation compatible")
    gamma1 = gamma1 or canonical_selection()
    picked = gamma1(list(result.families))
    support = frozenset().union(*picked)
    return internalize(o.axioms, support)


def _bridge_revise(
    name: str,
    o: Ontology | Iterable[Axiom],
    trigger: Iterable[Axiom],
    gamma: SelectionStrategy | None,
    mode: str,
    bridge_fn: Callable[[Substitution, frozenset[Axiom]], frozenset[Axiom]],
    gamma1: SelectionStrategy | None = None,
    kinds: Iterable[Kind] | None = CR_KINDS,
) -> RevisionResult:
    o = as_ontology(o)
    trigger = frozenset(trigger)
    _check_inputs(o, trigger)
    if is_consistent(o.axioms | trigger):
        return _union_step(o, trigger, name)
    renamed, sigma = internalization(o, trigger, mode, gamma1, kinds)
    base = renamed | trigger
    bridges = bridge_fn(sigma, o.axioms)
    gamma = gamma or canonical_selection()
    added = gamma.pick(bridges, base)
    if added is None:
        family = dual_remainders(bridges, base)
        if not family:
            raise RevisionError("trigger inconsistent")
        added = reduce(frozenset.intersection, gamma(list(family), bridges))
    step = Step(name, trigger, sigma, added, False)
    return RevisionResult(_result_ontology(o, base | added, trigger), (step,), sigma)


def weak_revise(
    o: Ontology | Iterable[Axiom],
    trigger: Iterable[Axiom],
    gamma: SelectionStrategy | None = None,
    mode: str = MCS_MODE,
    gamma1: SelectionStrategy | None = None,
    kinds: Iterable[Kind] | None = CR_KINDS,
) -> RevisionResult:
    return _bridge_revise(
        "weak", o, trigger, gamma, mode, lambda s, _: simple_bridging(s).axioms, gamma1, kinds
    )


def strong_revise(
    o: Ontology | Iterable[Axiom],
    trigger: Iterable[Axiom],
    gamma: SelectionStrategy | None = None,
    mode: str = MCS_MODE,
    depth: int = DEFAULT_DEPTH,
    gamma1: SelectionStrategy | None = None,
    kinds: Iterable[Kind] | None = CR_KINDS,
) -> RevisionResult:
    return _bridge_revise(
        "strong",
        o,
        trigger,
        gamma,
        mode,
        lambda s, axioms: strong_bridging(s, axioms, depth).axioms,
        gamma1,
        kinds,
    )


def _single_literal(trigger) -> Axiom:
    if isinstance(trigger, ConceptAssert):
        return trigger
    items = list(trigger)
    if len(items) != 1:
        raise RevisionError("literal operators take exactly one signed atomic assertion")
    return items[0]


def msc_revise_literal(
    o: Ontology | Iterable[Axiom], literal, depth: int = DEFAULT_DEPTH
) -> RevisionResult:
    o = as_ontology(o)
    lit = _single_literal(literal)
    name, b, positive = literal_parts(lit)
    trigger = frozenset([lit])
    _check_inputs(o, trigger)
    if is_consistent(o.axioms | trigger):
        return _union_step(o, trigger, "msc-literal")
    renamed, sigma = internalize(o.axioms, {name})
    a, a1 = Atom(name), Atom(sigma(name))
    m = msc(renamed, b, depth)
    if positive:
        bridges = {GCI(a1, a), GCI(a, disj(a1, m))}
    else:
        bridges = {GCI(a, a1), GCI(a1, disj(a, m))}
    bridges = frozenset(bridges)
    step = Step("msc-literal", trigger, sigma, bridges, False)
    return RevisionResult(_result_ontology(o, renamed | trigger | bridges, trigger), (step,), sigma)


def sel_revise_literal(
    o: Ontology | Iterable[Axiom],
    literal,
    sel: OaSelection = sel_none,
    depth: int = DEFAULT_DEPTH,
) -> RevisionResult:
    o = as_ontology(o)
    lit = _single_literal(literal)
    literal_parts(lit)
    trigger = frozenset([lit])
    _check_inputs(o, trigger)
    if is_consistent(o.axioms | trigger):
        return _union_step(o, trigger, "sel-literal")
    weak = weak_revise(o, trigger)
    candidates = oa(o, lit, depth)
    if candidates.origin != weak.composed:
        raise AssertionError("literal renaming disagrees with the conflict resolution")
    extra = frozenset(sel(candidates.axioms))
    if not extra <= candidates.axioms:
        raise AssertionError("sel returned axioms outside its input")
    step = weak.trace[0]
    step = Step("sel-literal", trigger, step.sigma, step.bridges | extra, False)
    axioms = weak.axioms | extra
    return RevisionResult(_result_ontology(o, axioms, trigger), (step,), step.sigma)


Operator = Callable[[Ontology, frozenset[Axiom]], RevisionResult]


@dataclass(frozen=True)
class OperatorConfig:
    """Everything needed to turn an operator name into a callable."""

    name: str
    gamma: SelectionStrategy | None = None
    sel: OaSelection = sel_none
    mode: str = MCS_MODE
    depth_msc: int = DEFAULT_DEPTH
    depth_bridge: int = DEFAULT_DEPTH

    def __call__(self, o: Ontology, trigger: frozenset[Axiom]) -> RevisionResult:
        if self.name == "weak":
            return weak_revise(o, trigger, self.gamma, self.mode)
        if self.name == "strong":
            return strong_revise(o, trigger, self.gamma, self.mode, self.depth_bridge)
        if self.name == "msc-literal":
            return msc_revise_literal(o, trigger, self.depth_msc)
        if self.name == "sel-literal":
            return sel_revise_literal(o, trigger, self.sel, self.depth_bridge)
        raise ValueError(f"unknown operator {self.name!r}")


OPERATORS = ("weak", "strong", "msc-literal", "sel-literal")


def operator(name: str, **kwargs) -> OperatorConfig:
    if name not in OPERATORS:
        raise ValueError(f"unknown operator {name!r}; choose from {', '.join(OPERATORS)}")
    return OperatorConfig(name, **kwargs)


def iterate(
    o: Ontology | Iterable[Axiom], seq: Sequence[Iterable[Axiom]], op: Operator
) -> RevisionResult:
    """Revise ``o`` by each trigger in turn, keeping the full trace."""
    state = RevisionResult(as_ontology(o))
    for index, trigger in enumerate(seq):
        try:
            step = op(state.ontology, frozenset(trigger))
        except (RevisionError, InconsistentInputError) as exc:
            raise RevisionError(f"step {index}: {exc}") from exc
        state = RevisionResult(
            step.ontology, state.trace + step.trace, compose(state.history + step.history)
        )
    return state
