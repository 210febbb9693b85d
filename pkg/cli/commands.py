""" The `mixtool` command line: construct, verify, analyze, search, rep-mix, sample, table
    and status.

    Every command prints one JSON report to stdout (the table command prints a markdown
    table). Exit status 0 means the requested property was constructed or verified, 1
    means the command ran but the property does not hold, and 2 means bad input.
"""

from __future__ import annotations
from pathlib import Path
from typing import Any, Callable, Dict, List, NamedTuple, Optional, Sequence
import argparse
import json
import logging

from groups import GroupError, load_group, set_enumeration_bound
from mixing import (DEFAULT_TOLERANCE, ArithmeticMode, CertificationFailed, ClaimKind, MixingError, MixingSequence,
                    construct, construct_2group_chain, digest, sample, set_progress, verify)
from reps import MatrixRep, NoWitness, RepError, mix_rep, construct_dihedral_from_irreps
from search import SearchConfig, SearchError, SequenceFound, certify_no_mixing, parse_grid, search_min_length
from structure import analyze_structure, matrix_family_status

from .table import length_table, parse_range, render_table

log = logging.getLogger("cli.commands")

DEFAULT_SEED = 2022
DEFAULT_TRIALS = 10_000

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2

PACKAGE_LOGGERS = ["groups", "mixing", "structure", "reps", "search", "cli"]

# --family/--method -> constructor family; None marks the routes handled in cmd_construct
METHODS: Dict[str, Dict[str, Optional[str]]] = {
    "sym": {"fast": "sym-fast", "adjacent": "sym-adjacent", "action": "sym-action"},
    "alt": {"full": "alt-full", "action": "alt-action"},
    "dihedral": {"formula": "dihedral", "irreps": None},
    "cyclic": {"default": "cyclic-2group"},
    "two-group": {"chain": None},
    "coxeter-b": {"default": "coxeter-b"},
    "coxeter-d": {"default": "coxeter-d"},
    "psl2": {"default": "psl2"},
}


class CommandReport(NamedTuple):
    command: str
    inputs: Dict[str, str]
    result: Any
    status: int

    def to_document(self) -> Dict[str, Any]:
        return {"command": self.command, "inputs": self.inputs, "result": self.result, "status": self.status}


def _digests(*paths: Optional[Path]) -> Dict[str, str]:
    return {str(p): digest(p) for p in paths if p is not None}


def _mode(args: argparse.Namespace) -> Optional[ArithmeticMode]:
    return None if args.mode is None else ArithmeticMode[args.mode]


def cmd_construct(args: argparse.Namespace) -> CommandReport:
    methods = METHODS[args.family]
    method = args.method or next(iter(methods))
    if method not in methods:
        raise ValueError(f"Family {args.family} has methods {sorted(methods)}, got {method!r}")
    family = methods[method]
    inputs: Dict[str, str] = {}
    try:
        if args.family == "two-group":
            if args.group is None:
                raise ValueError("The two-group family needs --group")
            group = load_group(args.group)
            inputs = _digests(args.group)
            seq = construct_2group_chain(group)
            result: Dict[str, Any] = {"family": "two-group", "length": seq.length,
                                      "verification": verify(seq, tolerance=args.tol).to_document()}
        elif family is None:
            if args.n is None:
                raise ValueError("The irreducible route needs --n")
            seq = construct_dihedral_from_irreps(args.n, args.tol)
            result = {"family": "dihedral-irreps", "length": seq.length,
                      "verification": verify(seq, tolerance=args.tol).to_document()}
        else:
            params = {k: v for k, v in (("n", args.n), ("d", args.d), ("e", args.e)) if v is not None}
            report = construct(family, tolerance=args.tol, **params)
            seq = report.sequence
            result = report.to_document()
    except CertificationFailed as err:
        log.error(f"construction failed its own certification: {err}")
        return CommandReport("construct", inputs, {"error": str(err)}, EXIT_FAILED)
    if args.output is not None:
        seq.to_file(args.output)
        log.info(f"wrote {seq.length} steps to {args.output}")
    else:
        result["sequence"] = seq.to_document()
    return CommandReport("construct", inputs, result, EXIT_OK)


def cmd_verify(args: argparse.Namespace) -> CommandReport:
    group = load_group(args.group) if args.group is not None else None
    seq = MixingSequence.from_file(args.sequence, group)
    report = verify(seq, _mode(args), args.tol)
    return CommandReport("verify", _digests(args.group, args.sequence), report.to_document(),
                         EXIT_OK if report.uniform else EXIT_FAILED)


def cmd_analyze(args: argparse.Namespace) -> CommandReport:
    report = analyze_structure(load_group(args.group))
    return CommandReport("analyze", _digests(args.group), report.to_document(), EXIT_OK)


def cmd_search(args: argparse.Namespace) -> CommandReport:
    group = load_group(args.group)
    config = SearchConfig(grid=parse_grid(args.p_grid), max_length=args.max_len,
                          first_step_classes=args.first_step_classes, threads=args.threads,
                          endpoint_rule=args.endpoint_rule, structural_pruning=args.structural_pruning)
    inputs = _digests(args.group)
    if args.expect_none:
        try:
            certificate = certify_no_mixing(group, config)
        except SequenceFound as err:
            return CommandReport("search", inputs, {"outcome": "found", "sequence": err.sequence.to_document()},
                                 EXIT_FAILED)
        return CommandReport("search", inputs, certificate.to_document(), EXIT_OK)
    result = search_min_length(group, config)
    return CommandReport("search", inputs, result.to_document(), EXIT_FAILED if result.exhausted else EXIT_OK)


def cmd_rep_mix(args: argparse.Namespace) -> CommandReport:
    rep = MatrixRep.from_file(args.rep)
    inputs = _digests(args.rep)
    try:
        mixed = mix_rep(rep, args.tol)
    except NoWitness as err:
        log.error(f"representation is not potentially mixable: {err}")
        return CommandReport("rep-mix", inputs, {"error": str(err)}, EXIT_FAILED)
    doc = mixed.to_document(rep)
    if args.output is not None:
        MixingSequence(rep.group, mixed.steps).to_file(args.output)
    return CommandReport("rep-mix", inputs, doc, EXIT_OK)


def cmd_sample(args: argparse.Namespace) -> CommandReport:
    seq = MixingSequence.from_file(args.sequence)
    report = sample(seq, args.trials, args.seed)
    claim = seq.claim
    encode: Callable[[Any], Any] = seq.group.encode
    if claim.kind == ClaimKind.action and claim.action is not None:
        encode = claim.action.encode_point
    doc = report.to_document(encode)
    doc["seed"] = args.seed
    return CommandReport("sample", _digests(args.sequence), doc, EXIT_OK)


def cmd_table(args: argparse.Namespace) -> CommandReport:
    first, last = parse_range(args.range)
    df = length_table(args.family, first, last, args.tol)
    status = EXIT_OK if df["bound_ok"].all() else EXIT_FAILED
    return CommandReport("table", {}, render_table(df), status)


def cmd_status(args: argparse.Namespace) -> CommandReport:
    return CommandReport("status", {}, matrix_family_status(args.q, args.d).to_document(), EXIT_OK)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mixtool", description="Mixing sequences for finite groups")
    parser.add_argument("--mode", choices=[m.name for m in ArithmeticMode], default=None,
                        help="Arithmetic of verification folds, defaults to the sequence's own")
    parser.add_argument("--tol", type=float, default=DEFAULT_TOLERANCE, help="Tolerance of numeric checks")
    parser.add_argument("--threads", type=int, default=1, help="Root branches searched concurrently")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED, help="Seed of the sampler")
    parser.add_argument("--enum-bound", type=int, default=None, help="Largest group order to enumerate")
    parser.add_argument("-v", "--verbose", action="store_true")
    parser.add_argument("-q", "--quiet", action="store_true")
    parser.add_argument("--progress", action="store_true", help="Show progress bars")
    parser.add_argument("-o", "--output", type=Path, default=None, help="Write the produced document here")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="Build and certify a mixing sequence of a family")
    p.add_argument("--family", choices=sorted(METHODS), required=True)
    p.add_argument("--method", default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--e", type=int, default=None)
    p.add_argument("--group", type=Path, default=None)
    p.set_defaults(handler=cmd_construct)

    p = sub.add_parser("verify", help="Verify a sequence document")
    p.add_argument("--sequence", type=Path, required=True)
    p.add_argument("--group", type=Path, default=None)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("analyze", help="Structural obstructions of a group")
    p.add_argument("--group", type=Path, required=True)
    p.set_defaults(handler=cmd_analyze)

    p = sub.add_parser("search", help="Grid-restricted search for a shortest mixing sequence")
    p.add_argument("--group", type=Path, required=True)
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--p-grid", default="1/2")
    p.add_argument("--first-step-classes", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--endpoint-rule", action="store_true")
    p.add_argument("--structural-pruning", action=argparse.BooleanOptionalAction, default=True,
                   help="Settle groups through singular steps and quotients before the walk")
    p.add_argument("--expect-none", action="store_true", help="Certify that no sequence exists on the grid")
    p.set_defaults(handler=cmd_search)

    p = sub.add_parser("rep-mix", help="Mix an explicit matrix representation")
    p.add_argument("--rep", type=Path, required=True)
    p.set_defaults(handler=cmd_rep_mix)

    p = sub.add_parser("sample", help="Monte Carlo sampling of a sequence")
    p.add_argument("--sequence", type=Path, required=True)
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.set_defaults(handler=cmd_sample)

    p = sub.add_parser("table", help="Constructed lengths against the bounds")
    p.add_argument("--family", required=True)
    p.add_argument("--range", required=True, help="A..B")
    p.set_defaults(handler=cmd_table)

    p = sub.add_parser("status", help="Mixability statements for matrix groups over F_q")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(handler=cmd_status)
    return parser


def configure_logging(args: argparse.Namespace):
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    for name in PACKAGE_LOGGERS:
        logging.getLogger(name).setLevel(level)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args)
    set_progress(args.progress)
    try:
        if args.enum_bound is not None:
            set_enumeration_bound(args.enum_bound)
        report = args.handler(args)
    except (GroupError, MixingError, RepError, SearchError, ValueError, OSError) as err:
        log.error(f"{args.command}: {err}")
        return EXIT_ERROR
    if args.command == "table":
        print(report.result)
        if args.output is not None:
            args.output.write_text(report.result + "\n", encoding="utf-8")
    else:
        print(json.dumps(report.to_document(), indent=1, sort_keys=True))
        if args.output is not None and args.command not in ("construct", "rep-mix"):
            args.output.write_text(json.dumps(report.to_document(), indent=1, sort_keys=True), encoding="utf-8")
    return report.status
