"""Brute-force reference implementations used to cross-check the library.

Nothing here imports the tableau or the search kernels; each oracle works
directly from the model-theoretic or set-theoretic definition.
"""

from __future__ import annotations

from itertools import chain, combinations, product

from reinterp.syntax import (
    GCI,
    And,
    Atom,
    Bot,
    Clause,
    ConceptAssert,
    Eq,
    Exists,
    Kind,
    Neq,
    Not,
    Or,
    RoleAssert,
    RoleInc,
    Top,
    signature,
)


def ext(c, dom, conc, roles):
    if isinstance(c, Top):
        return frozenset(dom)
    if isinstance(c, Bot):
        return frozenset()
    if isinstance(c, Atom):
        return conc.get(c.symbol, frozenset())
    if isinstance(c, Not):
        return frozenset(dom) - ext(c.operand, dom, conc, roles)
    if isinstance(c, And):
        out = frozenset(dom)
        for op in c.operands:
            out &= ext(op, dom, conc, roles)
        return out
    if isinstance(c, Or):
        out = frozenset()
        for op in c.operands:
            out |= ext(op, dom, conc, roles)
        return out
    if isinstance(c, Exists):
        filler = ext(c.filler, dom, conc, roles)
        return frozenset(x for x, y in roles.get(c.role, ()) if y in filler)
    raise TypeError(c)


def holds(ax, dom, inds, conc, roles):
    if isinstance(ax, GCI):
        return ext(ax.lhs, dom, conc, roles) <= ext(ax.rhs, dom, conc, roles)
    if isinstance(ax, RoleInc):
        return roles.get(ax.sub, set()) <= roles.get(ax.sup, set())
    if isinstance(ax, ConceptAssert):
        return inds[ax.ind] in ext(ax.concept, dom, conc, roles)
    if isinstance(ax, RoleAssert):
        present = (inds[ax.source], inds[ax.target]) in roles.get(ax.role, set())
        return present == ax.positive
    if isinstance(ax, Eq):
        return inds[ax.left] == inds[ax.right]
    if isinstance(ax, Neq):
        return inds[ax.left] != inds[ax.right]
    if isinstance(ax, Clause):
        return any(holds(l, dom, inds, conc, roles) for l in ax.literals)
    raise TypeError(ax)


def _growth_strings(n):
    """Assignments of n individuals to domain elements, up to renaming."""
    if n == 0:
        yield ()
        return
    for prev in _growth_strings(n - 1):
        top = max(prev, default=-1)
        for v in range(top + 2):
            yield prev + (v,)


def _subsets(items):
    items = list(items)
    return chain.from_iterable(combinations(items, k) for k in range(len(items) + 1))


def _mentions_role(ax):
    return any(s.kind is Kind.ROLE for s in signature([ax]))


def brute_force_consistent(axioms, max_domain=3):
    """Search every interpretation with at most ``max_domain`` elements.

    Complete for existential-free inputs whose individuals fit the bound:
    such a set has a model iff it has one over the named elements alone.
    """
    axioms = list(axioms)
    sig = signature(axioms)
    inds = sorted(s for s in sig if s.kind is Kind.INDIVIDUAL)
    concepts = sorted(s for s in sig if s.kind is Kind.CONCEPT)
    role_syms = sorted(s for s in sig if s.kind is Kind.ROLE)
    role_free = [ax for ax in axioms if not _mentions_role(ax)]
    role_bound = [ax for ax in axioms if _mentions_role(ax)]
    role_atoms = []
    for ax in role_bound:
        for lit in ax.literals if isinstance(ax, Clause) else [ax]:
            if isinstance(lit, RoleAssert):
                role_atoms.append(lit)

    for assignment in _growth_strings(len(inds)):
        used = max(assignment, default=0) + 1
        for size in range(used, max_domain + 1):
            dom = range(size)
            imap = dict(zip(inds, assignment))
            for exts in product(*[list(_subsets(dom)) for _ in concepts]):
                conc = {c: frozenset(e) for c, e in zip(concepts, exts)}
                if not all(holds(ax, dom, imap, conc, {}) for ax in role_free):
                    continue
                pairs = sorted({(imap[l.source], imap[l.target]) for l in role_atoms})
                for rels in product(*[list(_subsets(pairs)) for _ in role_syms]):
                    roles = {r: set(e) for r, e in zip(role_syms, rels)}
                    if all(holds(ax, dom, imap, conc, roles) for ax in role_bound):
                        return True
    return False


def powerset_remainders(candidates, base, consistent):
    """Maximal subsets of ``candidates`` consistent with ``base`` by full scan."""
    candidates = sorted(candidates, key=lambda ax: ax.text)
    if not consistent(frozenset(base)):
        return set()
    ok = [frozenset(s) for s in _subsets(candidates) if consistent(frozenset(base) | frozenset(s))]
    return {s for s in ok if not any(s < t for t in ok)}


def powerset_mcs(o1, o2, pool, rename, consistent):
    """Inclusion-minimal symbol sets whose renaming restores consistency."""
    good = [frozenset(s) for s in _subsets(sorted(pool)) if consistent(rename(o1, frozenset(s)) | frozenset(o2))]
    return {s for s in good if not any(t < s for t in good)}
