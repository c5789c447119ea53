import pytest

from reinterp.bridging import OA, SIMPLE, STRONG, literal_parts, oa, simple_bridging, strong_bridging
from reinterp.concepts import InconsistentOntologyError
from reinterp.parser import parse_axiom, parse_axioms
from reinterp.subst import internalize, make_substitution
from reinterp.reasoner import entails
from reinterp.syntax import ConceptAssert, Kind, disj, concept_name, individual, role_name, signature


def ax(text):
    return parse_axioms(text, allow_internal=True)


def texts(bridges):
    return [b.text for b in bridges]


def test_simple_bridging_per_kind():
    sigma = make_substitution({concept_name("A"), role_name("r"), individual("a")})
    b = simple_bridging(sigma)
    assert b.flavor == SIMPLE
    assert texts(b) == ["A [= A'", "A' [= A", "a == a'", "r [=r r'", "r' [=r r"]


def test_internal_sources_are_not_bridged():
    _, sigma = internalize(ax("A(a)\nA'(b)"), {concept_name("A")})
    assert texts(simple_bridging(sigma)) == ["A [= A'", "A' [= A"]


def test_strong_bridging_reads_subsumptions():
    o = ax("A [= B\nB [= C")
    sigma = make_substitution({concept_name("B")})
    b = strong_bridging(sigma, o, depth=0)
    assert b.flavor == STRONG
    got = set(texts(b))
    assert {"A [= B", "B [= B'", "B' [= B", "B' [= C"} & got >= {"B [= B'", "B' [= B"}
    assert all(any(not s.public for s in signature([x])) for x in b.axioms)


def test_strong_bridging_needs_consistency():
    with pytest.raises(InconsistentOntologyError):
        strong_bridging(make_substitution({concept_name("A")}), ax("A(a)\n!A(a)"))


def test_literal_parts():
    assert literal_parts(parse_axiom("!A(b)")) == (concept_name("A"), individual("b"), False)
    with pytest.raises(ValueError):
        literal_parts(parse_axiom("(A & B)(b)"))


def test_oa_candidates_mention_known_facts_only():
    o = ax("!A(b)\nD(b)")
    cands = oa(o, parse_axiom("A(b)"), depth=0)
    assert cands.flavor == OA
    assert cands.origin.support == {concept_name("A")}
    assert "A [= (A' | D)" in texts(cands)
    renamed, _ = internalize(o, {concept_name("A")})
    for x in cands.axioms:
        # A [= A' | C with the renamed ontology asserting C of b
        c = [d for d in x.rhs.operands if d.text != "A'"]
        assert c and entails(renamed, ConceptAssert(disj(*c), individual("b")))


def test_oa_negative_literal_direction():
    cands = oa(ax("A(b)\nD(b)"), parse_axiom("!A(b)"), depth=0)
    assert "A' [= (A | D)" in texts(cands)


def test_simple_bridges_only_cover_concepts_roles_individuals():
    sigma = make_substitution({concept_name("A")})
    kinds = {s.kind for x in simple_bridging(sigma).axioms for s in signature([x])}
    assert kinds == {Kind.CONCEPT}
