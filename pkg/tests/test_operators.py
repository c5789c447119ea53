import pytest

from reinterp.conflict import InconsistentInputError
from reinterp.generate import Generator
from reinterp.operators import (
    FULL_MODE,
    OPERATORS,
    RevisionError,
    iterate,
    msc_revise_literal,
    operator,
    sel_revise_literal,
    strong_revise,
    weak_revise,
)
from reinterp.parser import parse_axiom, parse_axioms
from reinterp.reasoner import entails_all, is_consistent
from reinterp.selection import GammaCR, MaxBasedSelection, sel_all, sel_random
from reinterp.subst import compose
from reinterp.syntax import render_axioms, signature


def ax(text):
    return parse_axioms(text, allow_internal=True)


O1 = ax("Article(pr1)\nArticle(pr2)\n!Article(bo1)")
O2 = ax("!Article(pr1)")


class FamilyOnly(MaxBasedSelection):
    """Same choice, but forces the operator down the remainder-family path."""

    def pick(self, bridges, base, seed=frozenset()):
        return None


def instances(count, literal=False):
    seed = 0
    while count:
        seed += 1
        g = Generator(seed)
        o = g.consistent_axioms(5)
        trigger = {g.trigger_literal(o)} if literal else g.consistent_axioms(2)
        count -= 1
        yield o, frozenset(trigger)


def test_article_example():
    res = weak_revise(O1, O2)
    assert render_axioms(res.axioms) == "\n".join([
        "!Article'(bo1)",
        "!Article(pr1)",
        "Article [= Article'",
        "Article'(pr1)",
        "Article'(pr2)",
    ])
    (step,) = res.trace
    assert str(step.sigma) == "{Article -> Article'}"
    assert not step.consistent_case


def test_consistent_case_is_union():
    res = weak_revise(O1, ax("Article(pr3)"))
    assert res.axioms == O1 | ax("Article(pr3)")
    assert res.trace[0].consistent_case


@pytest.mark.parametrize("name", OPERATORS)
def test_success_and_consistency(name):
    literal = name.endswith("literal")
    op = operator(name, sel=sel_random(1))
    for o, trigger in instances(60, literal):
        res = op(o, trigger)
        assert is_consistent(res.axioms)
        assert trigger <= res.axioms
        assert all(s.public for s in signature(trigger))
        assert res.ontology.public >= signature(trigger)


def test_pick_and_family_paths_agree():
    for o, trigger in instances(60):
        for mode in ("mcs", FULL_MODE):
            fast = weak_revise(o, trigger, MaxBasedSelection(), mode)
            slow = weak_revise(o, trigger, FamilyOnly(), mode)
            assert fast.axioms == slow.axioms


def test_gamma_cr_keeps_identities_when_possible():
    o = ax("A(a)\nB(a)")
    res = weak_revise(o, ax("!A(a)"), GammaCR(), FULL_MODE)
    assert parse_axiom("a == a'", allow_internal=True) in res.axioms


def test_full_mode_primes_everything():
    res = weak_revise(ax("A(a)\nB(b)"), ax("!A(a)"), mode=FULL_MODE)
    assert {str(s) for s in res.trace[0].sigma.support} == {"A", "B", "a", "b"}


def test_strong_bridges_carry_subsumptions():
    o = ax("A [= B\nA(a)")
    strong = strong_revise(o, ax("!B(a)")).axioms
    weak = weak_revise(o, ax("!B(a)")).axioms
    assert entails_all(strong, weak)
    gained = ax("(!A & B') [= B")
    assert entails_all(strong, gained) and not entails_all(weak, gained)


def test_msc_literal_bridges():
    res = msc_revise_literal(O1, parse_axiom("!Article(pr1)"))
    # msc of pr1 is just Article', so the second bridge is vacuous
    assert res.trace[0].bridges == ax("Article [= Article'\nArticle' [= (Article | Article')")


def test_sel_literal_adds_selected_candidates():
    lit = parse_axiom("A(b)")
    o = ax("!A(b)\nD(b)")
    none = sel_revise_literal(o, lit)
    every = sel_revise_literal(o, lit, sel_all)
    assert none.axioms < every.axioms
    assert parse_axiom("A [= (A' | D)", allow_internal=True) in every.axioms


def test_literal_operators_need_a_literal():
    with pytest.raises(RevisionError):
        msc_revise_literal(O1, ax("A(a)\nB(a)"))
    with pytest.raises(ValueError):
        sel_revise_literal(O1, ax("(A & B)(a)"))


def test_input_validation():
    with pytest.raises(RevisionError, match="internal"):
        weak_revise(O1, ax("Article'(pr1)"))
    with pytest.raises(RevisionError, match="inconsistent"):
        weak_revise(O1, ax("A(a)\n!A(a)"))
    with pytest.raises(InconsistentInputError):
        weak_revise(ax("A(a)\n!A(a)"), ax("B(a)"))


def test_iterate_composes_history():
    seq = [ax("!Article(pr1)"), ax("Article(pr1)"), ax("!Article(pr2)")]
    res = iterate(O1, seq, operator("weak"))
    assert len(res.trace) == 3
    assert res.composed == compose(res.history)
    assert any(s.level == 2 for s in signature(res.axioms))
    assert is_consistent(res.axioms) and seq[-1] <= res.axioms


def test_iterate_reports_failing_step():
    with pytest.raises(RevisionError, match="step 1"):
        iterate(O1, [ax("B(a)"), ax("A(a)\n!A(a)")], operator("weak"))
