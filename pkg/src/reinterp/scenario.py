"""Scenario files: a receiver, a trigger sequence, an operator and the checks to run.

The format is flat ``key: value`` lines with ``#`` comments::

    ontologies: example1.ont
    receiver: O1
    triggers: O2
    operator: weak
    strategy: canonical
    checks: preservation, reconstruction
    expect: preservation=satisfied

Ontology blocks are looked up by name in the ``ontologies`` file, which is
resolved relative to the scenario file.  ``suite: table1`` turns the
scenario into a run of the whole postulate grid.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .concepts import DEFAULT_DEPTH
from .operators import MCS_MODE, OPERATORS, OperatorConfig, iterate, operator
from .parser import parse_axiom, parse_ontologies
from .postulates import (
    DEFAULT_INSTANCES,
    DEFAULT_PROBE_DEPTH,
    SATISFIED,
    VIOLATED,
    check_preservation,
    check_ragm,
    check_reconstruction,
    check_rdp,
    table1_suite,
)
from .selection import (
    OA_SELECTIONS,
    SELECTIONS,
    GammaCR,
    MaxBasedSelection,
    SelectionStrategy,
    sel_fixed,
    sel_random,
)
from .syntax import Axiom, Ontology, axiom_symbols

REPORT_SCHEMA = 1
CHECKS = ("rdp1", "rdp2", "rdp3", "rdp4", "ragm7", "ragm8", "preservation", "reconstruction")
KEYS = {
    "name", "ontologies", "receiver", "triggers", "operator", "strategy", "priority", "sel",
    "mode", "depth-msc", "depth-bridge", "depth-probe", "checks", "expect", "expected-output",
    "suite", "instances", "seed", "expected-grid",
}


class ScenarioError(ValueError):
    pass


@dataclass
class Scenario:
    name: str
    receiver: Ontology = field(default_factory=lambda: Ontology(frozenset()))
    triggers: list[frozenset[Axiom]] = field(default_factory=list)
    operator: str = "weak"
    strategy: str = "canonical"
    priority: list[Axiom] = field(default_factory=list)
    sel: str = "none"
    mode: str = MCS_MODE
    depth_msc: int = DEFAULT_DEPTH
    depth_bridge: int = DEFAULT_DEPTH
    depth_probe: int = DEFAULT_PROBE_DEPTH
    checks: list[str] = field(default_factory=list)
    expect: dict[str, str] = field(default_factory=dict)
    expected_output: str | None = None
    suite: str | None = None
    instances: int = DEFAULT_INSTANCES
    seed: int = 0
    expected_grid: str | None = None

    def __post_init__(self) -> None:
        if self.operator not in OPERATORS:
            raise ScenarioError(f"unknown operator {self.operator!r}")
        if self.strategy not in SELECTIONS:
            raise ScenarioError(f"unknown strategy {self.strategy!r}")
        make_sel(self.sel)
        for c in self.checks + list(self.expect):
            if c not in CHECKS:
                raise ScenarioError(f"unknown check {c!r}")
        for t in self.triggers:
            if any(not s.public for ax in t for s in axiom_symbols(ax)):
                raise ScenarioError("triggers must use public symbols only")


def make_strategy(name: str, priority=()) -> SelectionStrategy:
    if name == "max-based":
        return MaxBasedSelection(priority)
    if name == "gamma-cr":
        return GammaCR(MaxBasedSelection(priority))
    if priority:
        raise ScenarioError(f"strategy {name!r} takes no priority")
    return SELECTIONS[name]()


def make_sel(spec: str, seed: int = 0):
    """``none``, ``all``, ``random[:SEED]`` or ``fixed:AXIOM;AXIOM``."""
    if spec in OA_SELECTIONS:
        return OA_SELECTIONS[spec]
    if spec == "random" or spec.startswith("random:"):
        _, _, s = spec.partition(":")
        return sel_random(int(s) if s else seed)
    if spec.startswith("fixed:"):
        return sel_fixed(parse_axiom(x, allow_internal=True) for x in _split(spec[6:], ";"))
    raise ScenarioError(f"unknown sel {spec!r}")


def build_operator(sc: Scenario) -> OperatorConfig:
    return operator(
        sc.operator,
        gamma=make_strategy(sc.strategy, sc.priority),
        sel=make_sel(sc.sel, sc.seed),
        mode=sc.mode,
        depth_msc=sc.depth_msc,
        depth_bridge=sc.depth_bridge,
    )


def _split(value: str, sep: str = ",") -> list[str]:
    return [x.strip() for x in value.split(sep) if x.strip()]


def parse_scenario(text: str, base: Path | None = None) -> Scenario:
    base = base or Path(".")
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        key = key.strip()
        if not sep or key not in KEYS:
            raise ScenarioError(f"line {lineno}: expected 'key: value' with a known key")
        if key in raw:
            raise ScenarioError(f"line {lineno}: duplicate key {key!r}")
        raw[key] = value.strip()

    kw: dict = {"name": raw.get("name", "scenario")}
    blocks: dict[str, Ontology] = {}
    if "ontologies" in raw:
        blocks = parse_ontologies((base / raw["ontologies"]).read_text())

    def block(label: str) -> Ontology:
        if label not in blocks:
            raise ScenarioError(f"no ontology block named {label!r}")
        return blocks[label]

    if "receiver" in raw:
        kw["receiver"] = block(raw["receiver"])
    if "triggers" in raw:
        kw["triggers"] = [block(t).axioms for t in _split(raw["triggers"])]
    for key in ("operator", "strategy", "sel", "mode", "suite"):
        if key in raw:
            kw[key] = raw[key]
    for key in ("depth-msc", "depth-bridge", "depth-probe", "instances", "seed"):
        if key in raw:
            kw[key.replace("-", "_")] = int(raw[key])
    if "priority" in raw:
        kw["priority"] = [parse_axiom(x, allow_internal=True) for x in _split(raw["priority"], ";")]
    if "checks" in raw:
        kw["checks"] = [c.lower() for c in _split(raw["checks"])]
    if "expect" in raw:
        pairs = [x.partition("=") for x in _split(raw["expect"])]
        kw["expect"] = {k.strip().lower(): v.strip() for k, _, v in pairs}
    for key in ("expected-output", "expected-grid"):
        if key in raw:
            kw[key.replace("-", "_")] = (base / raw[key]).read_text()
    return Scenario(**kw)


def load_scenario(path: str | Path) -> Scenario:
    path = Path(path)
    return parse_scenario(path.read_text(), path.parent)


def _run_check(sc: Scenario, op, check: str):
    seq = sc.triggers
    if check in ("preservation", "reconstruction"):
        fn = check_preservation if check == "preservation" else check_reconstruction
        return fn(sc.receiver, seq, op)
    if len(seq) < 2:
        raise ScenarioError(f"{check} needs two triggers")
    o1, o2 = seq[0], seq[1]
    if check.startswith("rdp"):
        return check_rdp(int(check[3:]), sc.receiver, o1, o2, op, sc.depth_probe)
    return check_ragm(int(check[4:]), sc.receiver, o1, o2, op, sc.depth_probe)


def run_scenario(sc: Scenario, workers: int = 1) -> tuple[dict, int]:
    """Execute a scenario; returns the JSON report and the exit code."""
    if sc.suite == "table1":
        report = table1_suite(sc.instances, sc.seed, sc.depth_probe, workers)
        out = report.to_json()
        out["scenario"] = sc.name
        if sc.expected_grid is not None:
            out["grid_matches"] = report.grid() == sc.expected_grid
        ok = report.match and out.get("grid_matches", True)
        return out, 0 if ok else 1
    if sc.suite is not None:
        raise ScenarioError(f"unknown suite {sc.suite!r}")

    op = build_operator(sc)
    result = iterate(sc.receiver, sc.triggers, op)
    rendered = result.ontology.render("result") + "\n"
    report: dict = {
        "schema": REPORT_SCHEMA,
        "scenario": sc.name,
        "operator": sc.operator,
        "strategy": sc.strategy,
        "mode": sc.mode,
        "depths": {"msc": sc.depth_msc, "bridge": sc.depth_bridge, "probe": sc.depth_probe},
        "steps": [
            {
                "index": i,
                "trigger": sorted(ax.text for ax in step.trigger),
                "sigma": str(step.sigma),
                "bridges": sorted(ax.text for ax in step.bridges),
                "consistent_case": step.consistent_case,
            }
            for i, step in enumerate(result.trace)
        ],
        "result": rendered,
    }
    if sc.expected_output is not None:
        report["output_matches"] = rendered == sc.expected_output
    code = 0
    checks = []
    for name in sc.checks:
        v = _run_check(sc, op, name)
        entry = v.to_json()
        want = sc.expect.get(name)
        if want is not None:
            entry["expected"] = want
            entry["ok"] = v.status == want
        if v.status == VIOLATED and want == SATISFIED:
            code = 1
        checks.append(entry)
    report["checks"] = checks
    return report, code

