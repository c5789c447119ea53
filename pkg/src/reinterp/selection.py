"""Selection functions over remainder families and over candidate bridge sets.

A remainder selection takes the family of candidate bridge sets together
with the full bridging set it was cut from and returns a non-empty
sub-family; the operator intersects what was chosen.  An ``oa`` selection
takes a plain set of axioms and returns any subset of it.

Maximum-based selections also offer ``pick``, which finds their choice by
greedy growth without enumerating the family.  The argmax of the
power-of-two weights is the lexicographically greatest remainder in
priority order, and that is exactly what greedy growth along the order
produces.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .conflict import family_key, grow
from .reasoner import is_consistent, refutation
from .syntax import Axiom, Eq

Family = Sequence[frozenset[Axiom]]


class SelectionStrategy:
    name = "abstract"

    def __call__(self, family: Family, bridges: frozenset[Axiom] = frozenset()) -> list[frozenset[Axiom]]:
        if not family:
            return []
        chosen = self.choose(sorted(family, key=family_key), frozenset(bridges))
        if not chosen or any(c not in family for c in chosen):
            raise AssertionError(f"{self.name} returned an invalid selection")
        return chosen

    def choose(self, family: list[frozenset[Axiom]], bridges: frozenset[Axiom]) -> list[frozenset[Axiom]]:
        raise NotImplementedError

    def pick(self, bridges: frozenset[Axiom], base: frozenset[Axiom]) -> frozenset[Axiom] | None:
        """The single selected remainder, or None if the family is needed."""
        return None

    def __repr__(self) -> str:
        return f"<{self.name}>"


class SmallestFirst(SelectionStrategy):
    """Pick the first candidate in (size, rendering) order."""

    name = "smallest"

    def choose(self, family, bridges):
        return [family[0]]


class FullMeet(SelectionStrategy):
    """Select every candidate, so only their common part survives."""

    name = "meet"

    def choose(self, family, bridges):
        return list(family)


class MaxBasedSelection(SelectionStrategy):
    """Maximum-based selection from a priority order on bridging axioms.

    Axioms listed in ``priority`` come first, most preferred first; the
    rest follow in rendering order.  Each axiom weighs a distinct power of
    two by rank, and the candidate of largest total weight wins.
    """

    name = "max-based"

    def __init__(self, priority: Iterable[Axiom] = ()):
        self.priority = tuple(priority)
        self._rank = {ax: i for i, ax in enumerate(self.priority)}

    def key(self, ax: Axiom) -> tuple:
        return (self._rank.get(ax, len(self.priority)), str(ax))

    def weights(self, axioms: Iterable[Axiom]) -> dict[Axiom, int]:
        ordered = sorted(set(axioms), key=self.key)
        n = len(ordered)
        return {ax: 1 << (n - 1 - i) for i, ax in enumerate(ordered)}

    def choose(self, family, bridges):
        universe = set(bridges).union(*family)
        w = self.weights(universe)
        return [max(family, key=lambda x: sum(w[ax] for ax in x))]

    def pick(self, bridges, base, seed: frozenset[Axiom] = frozenset()):
        if not is_consistent(base | seed):
            return None
        return grow(seed, sorted(bridges, key=self.key), base)


def canonical_selection() -> MaxBasedSelection:
    """Maximum-based selection over rendering order: the default tie-break."""
    return MaxBasedSelection()


def max_based_selection(priority: Iterable[Axiom] = ()) -> MaxBasedSelection:
    return MaxBasedSelection(priority)


def identities(bridges: Iterable[Axiom]) -> frozenset[Axiom]:
    return frozenset(ax for ax in bridges if isinstance(ax, Eq))


def cr_eligible(family: Family, bridges: frozenset[Axiom]) -> list[frozenset[Axiom]]:
    """Candidates keeping every constant identity, or all if none does."""
    ids = identities(bridges)
    keep = [x for x in family if ids <= x]
    return keep or list(family)


class GammaCR(SelectionStrategy):
    """Prefer candidates that keep all constant identities, then defer to ``tiebreak``."""

    name = "gamma-cr"

    def __init__(self, tiebreak: SelectionStrategy | None = None):
        self.tiebreak = tiebreak or canonical_selection()

    def choose(self, family, bridges):
        return self.tiebreak(cr_eligible(family, bridges), bridges)

    def pick(self, bridges, base):
        if not isinstance(self.tiebreak, MaxBasedSelection):
            return None
        ids = identities(bridges)
        if is_consistent(base | ids):
            return self.tiebreak.pick(bridges, base, ids)
        return self.tiebreak.pick(bridges, base)


def gamma_cr(priority: Iterable[Axiom] | None = None) -> GammaCR:
    return GammaCR(MaxBasedSelection(priority) if priority is not None else None)


class AvoidingSelection(SelectionStrategy):
    """A CR selection that keeps ``goal`` underivable whenever some remainder allows it.

    The remainder is grown against ``base`` plus a refutation of ``goal``
    and accepted only if it is still maximal with respect to ``base`` alone.
    Otherwise, and on the family path, ``fallback`` decides.
    """

    name = "avoiding"

    def __init__(self, goal: Axiom, fallback: SelectionStrategy | None = None):
        self.goal = goal
        self.fallback = fallback or GammaCR()
        self.order = canonical_selection()

    def choose(self, family, bridges):
        return self.fallback(family, bridges)

    def pick(self, bridges, base):
        hyp = base | frozenset(refutation(base, self.goal))
        ids = identities(bridges)
        seed = ids if is_consistent(hyp | ids) else frozenset()
        if is_consistent(hyp | seed):
            ordered = sorted(bridges, key=self.order.key)
            x = grow(seed, ordered, hyp)
            if all(not is_consistent(base | x | {ax}) for ax in bridges - x):
                return x
        return self.fallback.pick(bridges, base)


class PiecewiseSelection(SelectionStrategy):
    """Dispatch per remainder family.

    A family is fixed by its bridging set and the base it must stay
    consistent with, so ``pieces`` maps ``(bridges, base)`` pairs to
    strategies.  The family path only sees the bridges and uses ``default``.
    """

    name = "piecewise"

    def __init__(self, pieces: dict, default: SelectionStrategy | None = None):
        self.pieces = {(frozenset(b), frozenset(x)): v for (b, x), v in pieces.items()}
        self.default = default or GammaCR()

    def choose(self, family, bridges):
        return self.default(family, bridges)

    def pick(self, bridges, base):
        strategy = self.pieces.get((frozenset(bridges), frozenset(base)), self.default)
        return strategy.pick(bridges, base)


@dataclass
class ScriptedSelection(SelectionStrategy):
    """A selection given family by family, used to enumerate behaviours.

    ``script`` maps a family to the chosen sub-family.  Unscripted families
    fall back to ``default`` and are logged in ``open`` together with their
    admissible choices, so a driver can branch on them.
    """

    script: dict = field(default_factory=dict)
    default: SelectionStrategy = field(default_factory=canonical_selection)
    restrict_cr: bool = True
    open: list = field(default_factory=list)
    name: str = "scripted"

    def options(self, family, bridges) -> list[tuple[frozenset[Axiom], ...]]:
        pool = cr_eligible(family, bridges) if self.restrict_cr else list(family)
        return [combo for k in range(1, len(pool) + 1) for combo in combinations(pool, k)]

    def choose(self, family, bridges):
        key = frozenset(family)
        if key in self.script:
            return list(self.script[key])
        opts = self.options(family, bridges)
        if len(opts) > 1:
            self.open.append((key, opts))
        pool = cr_eligible(family, bridges) if self.restrict_cr else list(family)
        return self.default(pool, bridges)

    def __hash__(self) -> int:
        return id(self)


def enumerate_selections(
    run: Callable[[ScriptedSelection], object], restrict_cr: bool = True, limit: int = 4096
):
    """Yield ``(script, outcome)`` for every distinct selection behaviour.

    ``run`` performs a computation with the given strategy.  Whenever it
    meets a family with several admissible choices that is not yet
    scripted, the search branches over all of them.
    """
    stack: list[dict] = [{}]
    seen = 0
    while stack:
        script = stack.pop()
        strategy = ScriptedSelection(dict(script), restrict_cr=restrict_cr)
        outcome = run(strategy)
        seen += 1
        if seen > limit:
            raise RuntimeError("selection enumeration budget exceeded")
        if strategy.open:
            key, opts = strategy.open[0]
            for choice in reversed(opts):
                stack.append({**script, key: choice})
            continue
        yield script, outcome


# Selections over oa candidate sets: plain functions from a set to a subset.

OaSelection = Callable[[frozenset[Axiom]], frozenset[Axiom]]


def sel_none(candidates: frozenset[Axiom]) -> frozenset[Axiom]:
    return frozenset()


def sel_all(candidates: frozenset[Axiom]) -> frozenset[Axiom]:
    return frozenset(candidates)


def sel_fixed(chosen: Iterable[Axiom]) -> OaSelection:
    """Select exactly the given axioms, as far as they are candidates."""
    chosen = frozenset(chosen)
    return lambda candidates: candidates & chosen


def sel_random(seed: int, p: float = 0.5) -> OaSelection:
    """A fixed but arbitrary selection, reproducible from ``seed`` and the input."""

    def select(candidates: frozenset[Axiom]) -> frozenset[Axiom]:
        digest = hashlib.sha256(
            ("\n".join(sorted(ax.text for ax in candidates)) + f"#{seed}").encode()
        ).digest()
        rng = random.Random(digest)
        return frozenset(ax for ax in sorted(candidates, key=lambda a: a.text) if rng.random() < p)

    return select


SELECTIONS: dict[str, Callable[[], SelectionStrategy]] = {
    "canonical": canonical_selection,
    "smallest": SmallestFirst,
    "meet": FullMeet,
    "max-based": MaxBasedSelection,
    "gamma-cr": GammaCR,
}

OA_SELECTIONS: dict[str, OaSelection] = {"none": sel_none, "all": sel_all}
