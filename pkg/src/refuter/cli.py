"""
Command-line interface for the refuter toolkit.

Exit codes: 0 refutation found (or all checks passed), 1 no refutation,
2 proof rejected by the checker, 64 usage error, 65 domain error.
"""

import argparse
import logging
import random
import sys
from pathlib import Path
from typing import Optional, Sequence

from .coherent.history import refine
from .coherent.sketch import sketch
from .coherent.validator import validate_configuration, validate_layers
from .config import get_settings
from .derive.deriver import Position
from .derive.oracle import derivable_closure_oracle
from .dwl.models import DwlTrace, Outcome, load_trace
from .dwl.operations import run_trace
from .errors import RefuterError
from .pipeline.refute import refute
from .pipeline.report import RefutationOutcome, RefutationReport
from .polysys.piso import piso
from .prooflog.checker import check
from .prooflog.models import ProofMode
from .prooflog.serialization import read_proof
from .structures.cfi import cfi_pair
from .structures.parser import load_structure, save_structure, serialize_structure
from .structures.union import disjoint_union

logger = logging.getLogger(__name__)

EXIT_USAGE = 64
EXIT_DOMAIN = 65


class _Parser(argparse.ArgumentParser):
    """ArgumentParser reporting usage errors with exit code 64"""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="refuter",
        description="Compile Deep Weisfeiler Leman traces into checked EPC refutations",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Print the algebraic sketch of a graph
  refuter refine prism.graph

  # Refute isomorphism with an empty trace
  refuter refute prism.graph k33.graph empty.trace -o prism.epcproof --report prism.yaml

  # Re-check the proof independently
  refuter check prism.epcproof --axioms prism.graph k33.graph --mode mc3
        """,
    )
    parser.add_argument("--seed", type=int, default=0, help="Seed for randomised relabelling")
    parser.add_argument("--budget-vertices", type=int, help="Override the cloud vertex budget")
    parser.add_argument("--budget-steps", type=int, help="Override the operation budget")
    parser.add_argument("--jobs", type=int, help="Worker threads for refinement")
    parser.add_argument("--verbose", "-v", action="store_true", help="Debug logging")

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    refine_parser = subparsers.add_parser("refine", help="Print the algebraic sketch of a graph")
    refine_parser.add_argument("graph", help="Graph file")

    piso_parser = subparsers.add_parser("piso", help="Print the isomorphism axioms of G ⊎ H")
    piso_parser.add_argument("g", help="Left graph file")
    piso_parser.add_argument("h", help="Right graph file")

    dwl_parser = subparsers.add_parser("dwl", help="Run a trace and print every state's sketches")
    dwl_parser.add_argument("g", help="Left graph file")
    dwl_parser.add_argument("h", help="Right graph file")
    dwl_parser.add_argument("trace", help="Trace file")

    refute_parser = subparsers.add_parser("refute", help="Emit a checked refutation")
    refute_parser.add_argument("g", help="Left graph file")
    refute_parser.add_argument("h", help="Right graph file")
    refute_parser.add_argument("trace", help="Trace file")
    refute_parser.add_argument("-o", "--output", required=True, help="Proof file to write")
    refute_parser.add_argument("--report", help="Write the YAML report here")

    check_parser = subparsers.add_parser("check", help="Check a proof file")
    check_parser.add_argument("proof", help="Proof file")
    check_parser.add_argument(
        "--axioms", nargs=2, required=True, metavar=("G", "H"), help="Graphs whose P_iso the proof uses"
    )
    check_parser.add_argument("--mode", choices=[m.value for m in ProofMode], help="Override the proof's mode")
    check_parser.add_argument("--restricted", action="store_true", help="Require restricted extension forms")

    cfi_parser = subparsers.add_parser("cfi", help="Build CFI companions of a base graph")
    cfi_parser.add_argument("base", help="Base graph file")
    cfi_parser.add_argument("--twist", action="store_true", help="Make the second companion twisted")
    cfi_parser.add_argument("--ordered", action="store_true", help="Add the base vertex preorder")
    cfi_parser.add_argument("--shuffle", action="store_true", help="Relabel the second companion randomly")
    cfi_parser.add_argument("--out", help="Write <out>.left.graph and <out>.right.graph")

    oracle_parser = subparsers.add_parser("oracle", help="Dump the derivable-position closure")
    oracle_parser.add_argument("g", help="Left graph file")
    oracle_parser.add_argument("h", help="Right graph file")

    validate_parser = subparsers.add_parser("validate", help="Validate the stable colouring of a graph")
    validate_parser.add_argument("graph", help="Graph file")
    validate_parser.add_argument("--layers", action="store_true", help="Also check every layer")

    return parser


def _apply_overrides(args: argparse.Namespace) -> None:
    settings = get_settings()
    if args.budget_vertices is not None:
        settings.budget_vertices = args.budget_vertices
    if args.budget_steps is not None:
        settings.budget_steps = args.budget_steps
    if args.jobs is not None:
        settings.jobs = args.jobs
    random.seed(args.seed)


def _load_trace(args: argparse.Namespace) -> DwlTrace:
    trace = load_trace(args.trace)
    update = {}
    if args.budget_vertices is not None:
        update["budget_vertices"] = args.budget_vertices
    if args.budget_steps is not None:
        update["budget_steps"] = args.budget_steps
    return trace.model_copy(update=update) if update else trace


def _format_position(position: Position) -> str:
    if not position:
        return "{}"
    return " ".join(f"({v},{w})" for v, w in sorted(position))


def cmd_refine(args: argparse.Namespace) -> int:
    h = refine(load_structure(args.graph), jobs=get_settings().jobs)
    print(sketch(h).to_text(), end="")
    return 0


def cmd_piso(args: argparse.Namespace) -> int:
    axioms = piso(disjoint_union(load_structure(args.g), load_structure(args.h)))
    for line in axioms.canonical_lines():
        print(line)
    for warning in axioms.warnings:
        logger.warning(warning)
    return 0


def cmd_dwl(args: argparse.Namespace) -> int:
    run = run_trace(load_structure(args.g), load_structure(args.h), _load_trace(args))
    for state in run.states:
        op = state.op.to_text() if state.op is not None else "initial"
        print(f"# state {state.step_count} ({op}) vertices={state.union.size}")
        print("## left")
        print(state.sketch_left.to_text(), end="")
        print("## right")
        print(state.sketch_right.to_text(), end="")
    print(run.outcome.value)
    return 0 if run.outcome == Outcome.DISTINGUISHED else 1


def cmd_refute(args: argparse.Namespace) -> int:
    try:
        result = refute(
            load_structure(args.g),
            load_structure(args.h),
            _load_trace(args),
            proof_path=args.output,
        )
        report = result.report
    except RefuterError as e:
        report = RefutationReport(outcome=RefutationOutcome.ERROR, error_code=e.code, error_message=e.message)
    if args.report:
        report.save(args.report)
    print(report.summary())
    return report.exit_code


def cmd_check(args: argparse.Namespace) -> int:
    proof = read_proof(args.proof)
    if args.mode:
        proof.mode = ProofMode(args.mode)
    if args.restricted:
        proof.restricted_ext = True
    g, h = args.axioms
    axioms = piso(disjoint_union(load_structure(g), load_structure(h)))
    verdict = check(proof, axioms.polynomials())
    print(verdict.summary())
    return verdict.exit_code


def cmd_cfi(args: argparse.Namespace) -> int:
    left, right = cfi_pair(load_structure(args.base), twisted=args.twist, ordered=args.ordered)
    if args.shuffle:
        permutation = list(right.vertices)
        random.shuffle(permutation)
        right = right.relabel(permutation)
    if args.out:
        save_structure(left, Path(f"{args.out}.left.graph"))
        save_structure(right, Path(f"{args.out}.right.graph"))
        print(f"{args.out}.left.graph {args.out}.right.graph")
        return 0
    print("# left")
    print(serialize_structure(left), end="")
    print("# right")
    print(serialize_structure(right), end="")
    return 0


def cmd_oracle(args: argparse.Namespace) -> int:
    union = disjoint_union(load_structure(args.g), load_structure(args.h))
    closure = derivable_closure_oracle(union)
    for position in sorted(closure, key=lambda p: (len(p), sorted(p))):
        print(_format_position(position))
    empty_derivable = frozenset() in closure
    print(f"# {len(closure)} derivable positions; 1 derivable: {'yes' if empty_derivable else 'no'}")
    return 0 if empty_derivable else 1


def cmd_validate(args: argparse.Namespace) -> int:
    h = refine(load_structure(args.graph), jobs=get_settings().jobs)
    report = validate_configuration(h)
    if args.layers:
        report.checks.extend(validate_layers(h).checks)
    print(report.to_text(), end="")
    return 0 if report.all_passed else 1


COMMANDS = {
    "refine": cmd_refine,
    "piso": cmd_piso,
    "dwl": cmd_dwl,
    "refute": cmd_refute,
    "check": cmd_check,
    "cfi": cmd_cfi,
    "oracle": cmd_oracle,
    "validate": cmd_validate,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main CLI entry point"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    if not args.command:
        parser.print_help()
        return EXIT_USAGE

    get_settings().configure_logging(args.verbose)
    _apply_overrides(args)
    try:
        return COMMANDS[args.command](args)
    except RefuterError as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
