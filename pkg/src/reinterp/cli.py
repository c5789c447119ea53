"""Command-line driver: ``reinterp {parse,revise,iterate,check,table1,lattice}``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .concepts import DEFAULT_DEPTH, concept_space, render_lattice, subsumption_lattice
from .conflict import InconsistentInputError, SearchBudgetError
from .operators import FULL_MODE, MCS_MODE, OPERATORS, RevisionError, iterate
from .parser import ParseError, parse_axiom, parse_axioms, parse_concept, parse_ontologies
from .postulates import DEFAULT_INSTANCES, DEFAULT_PROBE_DEPTH, table1_suite
from .reasoner import ReasonerLimitError
from .scenario import CHECKS, Scenario, ScenarioError, build_operator, load_scenario, run_scenario
from .selection import SELECTIONS

CORPUS = Path(__file__).parent / "corpus"

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _seed(args) -> int:
    env = os.environ.get("REINTERP_SEED")
    return int(env) if env not in (None, "") else args.seed


def _resolve(path: str, suffixes=(".ont", ".scn")) -> Path:
    """A path as given, else the file of that name in the bundled corpus."""
    p = Path(path)
    if p.exists() or p.is_absolute():
        return p
    for cand in [CORPUS / path] + [CORPUS / f"{path}{s}" for s in suffixes]:
        if cand.exists():
            return cand
    return p


def _operator(args, seed: int):
    priority = [parse_axiom(x, allow_internal=True) for x in (args.priority or "").split(";") if x.strip()]
    sc = Scenario("cli", operator=args.operator, strategy=args.strategy, priority=priority,
                  sel=args.sel, mode=args.mode, depth_msc=args.depth_msc,
                  depth_bridge=args.depth_bridge, seed=seed)
    return build_operator(sc)


def _emit(report: dict, args) -> None:
    if args.json:
        text = json.dumps(report, indent=2, ensure_ascii=False) + "\n"
        if args.json == "-":
            sys.stdout.write(text)
        else:
            Path(args.json).write_text(text)


def _blocks(path: str):
    blocks = parse_ontologies(_resolve(path).read_text(), allow_internal=True)
    if not blocks:
        raise ScenarioError(f"{path}: no ontology blocks")
    return blocks


def _pick(blocks, name: str | None, default_index: int):
    names = list(blocks)
    if name is None:
        if default_index >= len(names):
            raise ScenarioError("not enough ontology blocks")
        name = names[default_index]
    if name not in blocks:
        raise ScenarioError(f"no ontology block named {name!r}")
    return blocks[name]


def _trace_report(result) -> dict:
    return {
        "steps": [
            {
                "index": i,
                "operator": step.operator,
                "trigger": sorted(ax.text for ax in step.trigger),
                "sigma": str(step.sigma),
                "bridges": sorted(ax.text for ax in step.bridges),
                "consistent_case": step.consistent_case,
            }
            for i, step in enumerate(result.trace)
        ],
        "composed": str(result.composed),
        "result": result.ontology.render("result") + "\n",
    }


def cmd_parse(args) -> int:
    blocks = parse_ontologies(_resolve(args.file).read_text(), allow_internal=args.internal)
    out = "\n\n".join(o.render(name) for name, o in blocks.items())
    print(out)
    _emit({"ontologies": {n: o.render(n) + "\n" for n, o in blocks.items()}}, args)
    return EXIT_OK


def _triggers(args, blocks) -> list:
    if args.axioms:
        return [parse_axioms(a) for a in args.axioms]
    names = args.triggers.split(",") if args.triggers else list(blocks)[1:]
    out = []
    for n in names:
        o = _pick(blocks, n.strip(), 0)
        if o.internal:
            raise ScenarioError(f"trigger {n.strip()} mentions internal symbols")
        out.append(o.axioms)
    return out


def cmd_revise(args) -> int:
    blocks = _blocks(args.file)
    receiver = _pick(blocks, args.receiver, 0)
    seq = _triggers(args, blocks)
    if args.command == "revise":
        seq = seq[:1]
        if not seq:
            raise ScenarioError("revise needs a trigger")
    result = iterate(receiver, seq, _operator(args, _seed(args)))
    report = _trace_report(result)
    sys.stdout.write(report["result"])
    _emit(report, args)
    return EXIT_OK


def cmd_check(args) -> int:
    path = _resolve(args.target, (".scn", ".ont"))
    if path.suffix == ".scn":
        sc = load_scenario(path)
        if args.seed_given or os.environ.get("REINTERP_SEED"):
            sc.seed = _seed(args)
    else:
        blocks = _blocks(args.target)
        checks = [c.strip().lower() for c in (args.postulates or "").split(",") if c.strip()]
        sc = Scenario("cli", receiver=_pick(blocks, args.receiver, 0),
                      triggers=_triggers(args, blocks), operator=args.operator,
                      strategy=args.strategy, mode=args.mode, depth_msc=args.depth_msc,
                      depth_bridge=args.depth_bridge, depth_probe=args.depth_probe,
                      checks=checks or list(CHECKS[-2:]), sel=args.sel, seed=_seed(args))
        if args.priority:
            sc.priority = [parse_axiom(x, allow_internal=True) for x in args.priority.split(";") if x.strip()]
    report, code = run_scenario(sc, args.workers)
    if "grid" in report:
        sys.stdout.write(report["grid"])
    else:
        for c in report.get("checks", []):
            line = f"{c['postulate']}: {c['status']}"
            if "witness" in c:
                line += f"  witness {c['witness']}"
            if "expected" in c:
                line += f"  (expected {c['expected']})"
            print(line)
    _emit(report, args)
    return code


def cmd_table1(args) -> int:
    def progress(cell):
        if args.verbose:
            print(f"{cell.row} RDP{cell.postulate}: {cell.status}", file=sys.stderr)

    report = table1_suite(args.instances, _seed(args), args.depth_probe, args.workers, progress)
    sys.stdout.write(report.grid())
    _emit(report.to_json(), args)
    return EXIT_OK if report.match else EXIT_FAIL


def cmd_lattice(args) -> int:
    blocks = _blocks(args.file)
    o = _pick(blocks, args.receiver, 0)
    axioms = o.axioms
    if args.triggers or args.axioms:
        axioms = iterate(o, _triggers(args, blocks), _operator(args, _seed(args))).axioms
    if args.concepts:
        concepts = [parse_concept(c, allow_internal=True) for c in args.concepts.split(";") if c.strip()]
    else:
        concepts = concept_space(axioms, args.depth)
    edges = subsumption_lattice(axioms, concepts)
    text = render_lattice(edges)
    print(text)
    _emit({"edges": [[c.text, d.text] for c, d in sorted(edges, key=lambda e: (e[0].text, e[1].text))]}, args)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--operator", choices=OPERATORS, default="weak")
    common.add_argument("--strategy", choices=sorted(SELECTIONS), default="canonical")
    common.add_argument("--priority", help="preferred bridging axioms, ';'-separated")
    common.add_argument("--sel", default="none", help="none, all, random[:SEED] or fixed:AX;AX")
    common.add_argument("--mode", choices=(MCS_MODE, FULL_MODE), default=MCS_MODE)
    common.add_argument("--depth-msc", type=int, default=DEFAULT_DEPTH)
    common.add_argument("--depth-bridge", type=int, default=DEFAULT_DEPTH)
    common.add_argument("--depth-probe", type=int, default=DEFAULT_PROBE_DEPTH)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--json", metavar="OUT", help="write the JSON report ('-' for stdout)")

    sources = argparse.ArgumentParser(add_help=False)
    sources.add_argument("--receiver", help="receiver block (default: the first)")
    sources.add_argument("--triggers", help="comma-separated trigger blocks (default: the rest)")
    sources.add_argument("--axioms", action="append", help="trigger given inline; repeatable")

    parser = argparse.ArgumentParser(prog="reinterp", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", parents=[common], help="parse and print canonically")
    p.add_argument("file")
    p.add_argument("--internal", action="store_true", help="accept primed symbols")
    p.set_defaults(func=cmd_parse)

    for name, text in (("revise", "revise the receiver by one trigger"),
                       ("iterate", "revise by a sequence of triggers")):
        p = sub.add_parser(name, parents=[common, sources], help=text)
        p.add_argument("file")
        p.set_defaults(func=cmd_revise)

    p = sub.add_parser("check", parents=[common, sources], help="run a scenario or postulate checks")
    p.add_argument("target", help="a .scn scenario, or an ontology file")
    p.add_argument("--postulates", help=f"comma-separated, from {', '.join(CHECKS)}")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("table1", parents=[common], help="reproduce the postulate table")
    p.add_argument("--instances", type=int, default=DEFAULT_INSTANCES)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("lattice", parents=[common, sources], help="print a subsumption Hasse diagram")
    p.add_argument("file")
    p.add_argument("--concepts", help="';'-separated concepts (default: the concept space)")
    p.add_argument("--depth", type=int, default=0, help="concept space depth when --concepts is absent")
    p.set_defaults(func=cmd_lattice)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    args.seed_given = args.seed is not None
    if args.seed is None:
        args.seed = 0
    try:
        return args.func(args)
    except (ParseError, ScenarioError, RevisionError, InconsistentInputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (SearchBudgetError, ReasonerLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
