import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reinterp.generate import Generator
from reinterp.parser import (
    ParseError,
    parse_axiom,
    parse_axioms,
    parse_concept,
    parse_ontologies,
    parse_ontology,
    tokenize,
)
from reinterp.syntax import (
    GCI,
    TOP,
    ConceptAssert,
    Eq,
    Neq,
    Ontology,
    RoleAssert,
    RoleInc,
    atom,
    clause,
    conj,
    individual,
    neg,
    role_name,
    some,
)

A, B = atom("A"), atom("B")
a, b = individual("a"), individual("b")
r, s = role_name("r"), role_name("s")


@pytest.mark.parametrize(
    "text, expected",
    [
        ("A [= B", GCI(A, B)),
        ("(A & !B) [= exists r.Top", GCI(conj(A, neg(B)), some(r, TOP))),
        ("A(a)", ConceptAssert(A, a)),
        ("!A(a)", ConceptAssert(neg(A), a)),
        ("r(a, b)", RoleAssert(r, a, b)),
        ("!r(a, b)", RoleAssert(r, a, b, False)),
        ("r [=r s", RoleInc(r, s)),
        ("a == b", Eq(a, b)),
        ("a != b", Neq(a, b)),
        ("clause { A(a) | !r(a, b) }", clause(ConceptAssert(A, a), RoleAssert(r, a, b, False))),
        ("exists r.A(b)", ConceptAssert(some(r, A), b)),
    ],
)
def test_axiom_forms(text, expected):
    assert parse_axiom(text) == expected


def test_nary_groups():
    assert parse_concept("(A & B & C)") == conj(A, B, atom("C"))
    with pytest.raises(ParseError, match="mixed"):
        parse_concept("(A & B | C)")


def test_round_trip_generated_axioms():
    for seed in range(300):
        for ax in Generator(seed).axioms(6):
            assert parse_axiom(ax.text) == ax


def test_round_trip_ontology_with_public_list():
    text = "ontology O {\n  public: A, a, r;\n  A(a)\n  r(a, a)\n}"
    o = parse_ontology(text)
    again = parse_ontology(o.render("O"))
    assert again == o


def test_public_declaration_of_unused_symbol():
    with pytest.raises(ParseError, match="occurs in no axiom"):
        parse_ontology("ontology O { public: Z; A(a) }")


def test_several_blocks_keep_order():
    blocks = parse_ontologies("ontology X { A(a) }\nontology Y { B(b) }")
    assert list(blocks) == ["X", "Y"]
    assert isinstance(blocks["Y"], Ontology)


def test_duplicate_block_name():
    with pytest.raises(ParseError, match="duplicate"):
        parse_ontologies("ontology X { A(a) }\nontology X { B(b) }")


def test_comments_and_blank_lines():
    assert parse_axioms("# a comment\n\nA(a)  # trailing\n") == {ConceptAssert(A, a)}


def test_internal_symbols_need_opt_in():
    with pytest.raises(ParseError, match="internal symbol"):
        parse_axiom("A' [= A")
    assert parse_axiom("A' [= A", allow_internal=True) == GCI(atom("A", 1), A)


def test_kind_clash_is_reported():
    with pytest.raises(ParseError, match="both as"):
        parse_axioms("A(a)\nr(A, a)")


def test_error_positions():
    with pytest.raises(ParseError) as info:
        parse_axioms("A(a)\nB [= \n")
    err = info.value
    assert (err.line, err.column) == (3, 1)
    assert "a concept" in err.expected
    assert str(err).startswith("line 3, column 1:")


def test_bad_character():
    with pytest.raises(ParseError, match="unexpected character"):
        tokenize("A(a) @")


def test_self_equality_rejected():
    with pytest.raises(ParseError, match="distinct"):
        parse_axiom("a == a")


def test_keyword_as_name():
    with pytest.raises(ParseError, match="keyword"):
        parse_axiom("A(exists)")


@settings(max_examples=300, deadline=None)
@given(st.text(alphabet="AB ab r()[=!&|{}.,;:'\nexistsclause", max_size=40))
def test_fuzz_only_parse_errors(text):
    try:
        parse_axioms(text, allow_internal=True)
    except ParseError:
        pass
