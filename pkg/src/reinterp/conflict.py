"""Search kernels: minimal conflicting symbol sets and dual remainders."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .reasoner import is_consistent
from .subst import internalize
from .syntax import Axiom, Kind, Ontology, Symbol, signature

DEFAULT_POOL_LIMIT = 14


class SearchBudgetError(RuntimeError):
    pass


class InconsistentInputError(ValueError):
    pass


@dataclass(frozen=True)
class McsResult:
    families: tuple[frozenset[Symbol], ...]
    resolvable: bool


def _axioms(o: Ontology | Iterable[Axiom]) -> frozenset[Axiom]:
    return o.axioms if isinstance(o, Ontology) else frozenset(o)


def _symbol_key(s: Symbol):
    return (s.kind.value, s.name, s.level)


def family_key(items: frozenset) -> tuple:
    """Sort key for sets of symbols or axioms: size, then rendering."""
    return (len(items), sorted(str(x) for x in items))


def mcs(
    o1: Ontology | Iterable[Axiom],
    o2: Ontology | Iterable[Axiom],
    kinds: Iterable[Kind] | None = None,
    limit: int = DEFAULT_POOL_LIMIT,
) -> McsResult:
    """Inclusion-minimal symbol sets whose priming in ``o1`` removes the conflict.

    Only symbols shared by both sides are candidates; ``kinds`` further
    restricts which symbol kinds may be renamed.
    """
    a1, a2 = _axioms(o1), _axioms(o2)
    if not is_consistent(a1) or not is_consistent(a2):
        raise InconsistentInputError("input ontology inconsistent")
    allowed = set(kinds) if kinds is not None else set(Kind)
    pool = sorted(
        (s for s in signature(a1) & signature(a2) if s.kind in allowed), key=_symbol_key
    )
    if len(pool) > limit:
        raise SearchBudgetError("search budget exceeded")

    found: list[frozenset[Symbol]] = []
    for k in range(len(pool) + 1):
        for combo in combinations(pool, k):
            s = frozenset(combo)
            if any(f <= s for f in found):
                continue
            renamed, _ = internalize(a1, s)
            if is_consistent(renamed | a2):
                found.append(s)
        if found and found[0] == frozenset():
            break
    families = tuple(sorted(found, key=family_key))
    return McsResult(families, bool(families))


def grow(seed: frozenset[Axiom], ordered: list[Axiom], base: frozenset[Axiom]) -> frozenset[Axiom]:
    """Extend ``seed`` greedily along ``ordered`` while staying consistent with ``base``."""
    current = set(seed)
    for ax in ordered:
        if ax not in current and is_consistent(base | current | {ax}):
            current.add(ax)
    return frozenset(current)


def dual_remainders(a: Iterable[Axiom], b: Iterable[Axiom]) -> tuple[frozenset[Axiom], ...]:
    """Inclusion-maximal subsets of ``a`` consistent with ``b``.

    Each remainder is found by growing a seed in canonical order.  Seeds are
    the consistent minimal hitting sets of the complements found so far, so
    every new seed escapes all known remainders and the loop ends exactly
    when none are left.
    """
    a, b = frozenset(a), frozenset(b)
    if not is_consistent(b):
        return ()
    ordered = sorted(a, key=lambda ax: ax.text)
    if is_consistent(a | b):
        return (a,)

    found: list[frozenset[Axiom]] = []
    seeds: set[frozenset[Axiom]] = {frozenset()}
    while seeds:
        seed = min(seeds, key=family_key)
        rem = grow(seed, ordered, b)
        found.append(rem)
        complement = a - rem
        updated: set[frozenset[Axiom]] = set()
        for h in seeds:
            if h & complement:
                updated.add(h)
                continue
            for ax in complement:
                cand = h | {ax}
                if is_consistent(b | cand):
                    updated.add(cand)
        seeds = {h for h in updated if not any(g < h for g in updated)}
    return tuple(sorted(found, key=family_key))
