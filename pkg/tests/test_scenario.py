from pathlib import Path

import pytest

from reinterp.scenario import (
    Scenario,
    ScenarioError,
    build_operator,
    load_scenario,
    make_sel,
    make_strategy,
    parse_scenario,
    run_scenario,
)
from reinterp.selection import GammaCR, MaxBasedSelection, sel_all

CORPUS = Path(__file__).parent.parent / "src" / "reinterp" / "corpus"


def test_article_scenario_reproduces_pinned_output():
    report, code = run_scenario(load_scenario(CORPUS / "example1.scn"))
    assert code == 0
    assert report["output_matches"]
    assert [c["status"] for c in report["checks"]] == ["satisfied", "satisfied"]
    assert report["steps"][0]["sigma"] == "{Article -> Article'}"


def test_article_msc_scenario():
    report, code = run_scenario(load_scenario(CORPUS / "example2.scn"))
    assert code == 0 and report["output_matches"]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_rdp_scenarios_show_violations(n):
    report, code = run_scenario(load_scenario(CORPUS / f"rdp{n}.scn"))
    (check,) = report["checks"]
    assert check["status"] == "violated" and check["ok"]
    assert code == 0  # a violation that was expected is not a failure


def test_unexpected_violation_fails():
    sc = load_scenario(CORPUS / "rdp1.scn")
    sc.expect = {"rdp1": "satisfied"}
    _, code = run_scenario(sc)
    assert code == 1


def test_parse_errors():
    with pytest.raises(ScenarioError, match="known key"):
        parse_scenario("colour: blue")
    with pytest.raises(ScenarioError, match="duplicate"):
        parse_scenario("operator: weak\noperator: strong")
    with pytest.raises(ScenarioError, match="unknown operator"):
        parse_scenario("operator: gentle")
    with pytest.raises(ScenarioError, match="unknown check"):
        parse_scenario("checks: rdp9")
    with pytest.raises(ScenarioError, match="no ontology block"):
        parse_scenario("ontologies: example1.ont\nreceiver: Nope", CORPUS)


def test_two_triggers_needed_for_rdp():
    sc = load_scenario(CORPUS / "example1.scn")
    sc.checks = ["rdp1"]
    with pytest.raises(ScenarioError, match="two triggers"):
        run_scenario(sc)


def test_strategy_and_sel_factories():
    assert isinstance(make_strategy("gamma-cr"), GammaCR)
    assert isinstance(make_strategy("max-based"), MaxBasedSelection)
    with pytest.raises(ScenarioError):
        make_strategy("meet", ["x"])
    assert make_sel("all") is sel_all
    assert make_sel("random:3")(frozenset()) == frozenset()
    with pytest.raises(ScenarioError):
        make_sel("some")


def test_build_operator_uses_fields():
    op = build_operator(Scenario("x", operator="strong", mode="full", depth_bridge=0))
    assert (op.name, op.mode, op.depth_bridge) == ("strong", "full", 0)
