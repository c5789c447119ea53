import json

import pytest

from reinterp.operators import operator
from reinterp.parser import parse_axiom, parse_axioms
from reinterp.postulates import (
    EXPECTED,
    ROWS,
    SATISFIED,
    VACUOUS,
    VIOLATED,
    ProbeSet,
    GridReport,
    Verdict,
    check_preservation,
    check_ragm,
    check_rdp,
    check_reconstruction,
    negation_witness,
    pinned_cell,
    probe_difference,
    probe_equiv,
    sweep,
)
from reinterp.reasoner import entails
from reinterp.syntax import concept_name, individual, role_name


def ax(text):
    return parse_axioms(text, allow_internal=True)


V = frozenset({concept_name("A"), concept_name("B"), individual("a")})


def test_contrapositive_is_equivalent():
    assert probe_equiv(ax("A [= B"), ax("!B [= !A"), V)


def test_converse_is_not():
    probe, in_x = probe_difference(ax("A [= B"), ax("B [= A"), V)
    # assertions are probed before subsumptions
    assert probe.text == "(!A | B)(a)" and in_x
    assert entails(ax("A [= B"), probe) and not entails(ax("B [= A"), probe)
    assert not probe_equiv(ax("A [= B"), ax("B [= A"), V)


def test_vocabulary_hides_internal_difference():
    assert probe_equiv(ax("A [= B'\nB' [= B"), ax("A [= B"), V, depth=0)
    assert not probe_equiv(ax("A [= B'\nB' [= B"), ax("A [= B"), V | {concept_name("B", 1)}, depth=0)


def test_one_way_difference():
    assert probe_difference(ax("A(a)"), ax("A(a)\nB(a)"), V, one_way=True) is None
    probe, in_x = probe_difference(ax("A(a)\nB(a)"), ax("A(a)"), V, one_way=True)
    assert in_x and probe.text == "B(a)"


def test_probe_order_and_kinds():
    probes = list(ProbeSet(frozenset({concept_name("A"), role_name("r"), individual("a"), individual("b")}), 0))
    kinds = [type(p).__name__ for p in probes]
    assert kinds[0] == "ConceptAssert" and kinds[-1] == "GCI"
    assert {"RoleAssert", "Eq", "Neq"} <= set(kinds)


def test_verdict_status_and_recheck():
    assert Verdict("RDP1", False, True).status == VACUOUS
    assert Verdict("RDP1", True, True).status == SATISFIED
    w = parse_axiom("B(a)")
    v = Verdict("RDP1", True, False, w, ax("B(a)"), ax("A(a)"))
    assert v.status == VIOLATED and v.recheck()
    assert not Verdict("RDP1", True, False, w, ax("A(a)"), ax("B(a)")).recheck()
    assert json.loads(json.dumps(v.to_json()))["witness"] == "B(a)"


def test_negation_witness():
    assert negation_witness(ax("A(a)\n!r(a, b)")).text == "clause { !A(a) | r(a, b) }"
    assert negation_witness(ax("A [= B")) is None
    assert negation_witness([]) is None


def test_rdp_preconditions():
    op = operator("weak")
    o = ax("A(a)")
    assert check_rdp(1, o, ax("B(a)"), ax("C(a)"), op).status == VACUOUS
    assert check_rdp(2, o, ax("B(a)"), ax("C(a)"), op).status == VACUOUS
    assert check_rdp(1, o, ax("B(a)"), ax("B(a)\nC(a)"), op).status == SATISFIED
    with pytest.raises(ValueError):
        check_rdp(5, o, o, o, op)


def test_ragm_vacuous_on_joint_conflict():
    v = check_ragm(7, ax("A(a)"), ax("B(a)"), ax("!B(a)"), operator("weak"))
    assert v.status == VACUOUS and "joint" in v.note


def test_ragm_on_consistent_input():
    for which in (7, 8):
        assert check_ragm(which, ax("A(a)"), ax("B(a)"), ax("C(a)"), operator("weak")).status == SATISFIED


def test_preservation_and_reconstruction_on_article():
    o = ax("Article(pr1)\nArticle(pr2)\n!Article(bo1)")
    seq = [ax("!Article(pr1)"), ax("Article(pr1)")]
    for name in ("weak", "strong"):
        assert check_preservation(o, seq, operator(name)).status == SATISFIED
        assert check_reconstruction(o, seq, operator(name)).status == SATISFIED


FAST_PINNED = [(row, n) for row, _ in ROWS[3:] for n in range(1, 5) if (row, n) != ("strong-gamma", 3)]


@pytest.mark.parametrize("row, n", FAST_PINNED)
def test_pinned_cells(row, n):
    cell = pinned_cell(row, n)
    assert cell.match, cell.to_json()
    assert cell.verified


def test_pinned_literal_minus_cell():
    cell = pinned_cell("weak-literal", 2)
    assert cell.status == "-" and cell.verified


def test_small_sweep_finds_no_violation():
    cell = sweep("weak-literal", 1, instances=30, seed=7)
    assert cell.status == "+" and cell.instances == 30
    assert 0 < cell.non_vacuous <= 30


def test_report_grid_layout():
    cells = []
    for row, _ in ROWS:
        for n in range(1, 5):
            c = pinned_cell("weak-literal", 2)
            c.row, c.postulate, c.expected, c.status = row, n, EXPECTED[row][n - 1], EXPECTED[row][n - 1]
            cells.append(c)
    report = GridReport(cells, 0, 10)
    lines = report.grid().splitlines()
    assert lines[0].split() == ["operator", "RDP1", "RDP2", "RDP3", "RDP4"]
    assert lines[2].split() == ["⊕sel", "+", "-(∀sel)", "+", "+"]
    assert report.match and report.to_json()["match"]
