"""
Command line entry point.
Every subcommand prints one JSON document on stdout; diagnostics go to stderr.

Exit status: 0 on success, 1 when the engine reports a failure (failing
bracket pairs, inconsistent tables, uncertified decompositions), 2 on
usage or parse errors.
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from app.algebra.parser import parse_polynomial
from app.config import DEFAULT_JOBS
from app.errors import AlgebraError, DegenerateSplit
from app.lie.sl import SlAlgebra
from app.modules.classification import action_classifier, load_tables
from app.modules.representation import representation_builder
from app.modules.structure import structure_analyzer
from app.modules.verification import representation_verifier
from app.reports import ActResult, ClebschGordanReport
from app.tensor.decomposition import split_tensor_L1, tensor_decomposer
from app.tensor.finite import clebsch_gordan_components
from app.utils import dump_json, system_logger

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def emit(payload, pretty: bool) -> None:
    print(dump_json(payload, pretty=pretty))


def verify_cmd(args) -> int:
    """Build M(p) and certify every bracket."""
    p = parse_polynomial(args.p, args.n)
    rep = representation_builder.build_rep(args.n, p)
    report = representation_verifier.verify(rep, jobs=args.jobs)
    emit(report.model_dump(), args.pretty)
    return EXIT_OK if report.passed else EXIT_FAILURE


def act_cmd(args) -> int:
    """Apply one basis element of sl(n+1) to a polynomial."""
    p = parse_polynomial(args.p, args.n)
    f = parse_polynomial(args.on, args.n)
    element = SlAlgebra(args.n).parse_element(args.element)
    rep = representation_builder.build_rep(args.n, p)
    result = ActResult(element=str(element), p=str(p), on=str(f), result=str(rep.act(element, f)))
    emit(result.model_dump(), args.pretty)
    return EXIT_OK


def simplicity_cmd(args) -> int:
    """Closed-form prediction against the invariant-degree oracle."""
    p = parse_polynomial(args.p, args.n)
    rep = representation_builder.build_rep(args.n, p)
    report = structure_analyzer.analyze(rep, bound=args.bound)
    emit(report.model_dump(), args.pretty)
    return EXIT_OK


def classify_cmd(args) -> int:
    """Recover p from a JSON table of generator values on 1."""
    n, pij, qi = load_tables(Path(args.input))
    result = action_classifier.classify_report(n, pij, qi)
    emit(result.model_dump(), args.pretty)
    return EXIT_OK if result.consistent else EXIT_FAILURE


def sl2_sequence_cmd(args) -> int:
    p = parse_polynomial(args.p, 1)
    witness = structure_analyzer.sl2_exact_sequence_witness(p)
    emit(witness.model_dump(), args.pretty)
    if witness.applicable and not all(witness.intertwiner.values()):
        return EXIT_FAILURE
    return EXIT_OK


def tensor_split_cmd(args) -> int:
    p = parse_polynomial(args.p, 1)
    try:
        report = split_tensor_L1(p)
    except DegenerateSplit as e:
        system_logger.warning(f"Degenerate split: {e}")
        emit({"p": str(p), "error": "DegenerateSplit", "detail": str(e), "rank_data": e.rank_data}, args.pretty)
        return EXIT_FAILURE
    emit(report.model_dump(), args.pretty)
    return EXIT_OK if report.certified else EXIT_FAILURE


def tensor_decompose_cmd(args) -> int:
    p = parse_polynomial(args.p, 1)
    report = tensor_decomposer.decompose(p, args.k, args.degree)
    emit(report.model_dump(), args.pretty)
    return EXIT_OK if report.certified else EXIT_FAILURE


def cg_cmd(args) -> int:
    report = ClebschGordanReport(k=args.k, m=args.m, components=clebsch_gordan_components(args.k, args.m))
    emit({"components": report.components}, args.pretty)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Free rank-one sl(n+1)-modules on polynomial rings")
    parser.add_argument("--pretty", action="store_true", help="Indent JSON output")
    subparsers = parser.add_subparsers(dest="command", help="Command to run")

    # verify command
    verify_parser = subparsers.add_parser("verify", help="Certify the representation M(p)")
    verify_parser.add_argument("--n", type=int, required=True)
    verify_parser.add_argument("--p", required=True)
    verify_parser.add_argument("--jobs", type=int, default=DEFAULT_JOBS)
    verify_parser.set_defaults(func=verify_cmd)

    # act command
    act_parser = subparsers.add_parser("act", help="Apply e(i,j) or h(i) to a polynomial")
    act_parser.add_argument("--n", type=int, required=True)
    act_parser.add_argument("--p", required=True)
    act_parser.add_argument("--element", required=True)
    act_parser.add_argument("--on", required=True)
    act_parser.set_defaults(func=act_cmd)

    # simplicity command
    simplicity_parser = subparsers.add_parser("simplicity", help="Submodule analysis of M(p)")
    simplicity_parser.add_argument("--n", type=int, required=True)
    simplicity_parser.add_argument("--p", required=True)
    simplicity_parser.add_argument("--bound", type=int, default=None)
    simplicity_parser.set_defaults(func=simplicity_cmd)

    # classify command
    classify_parser = subparsers.add_parser("classify", help="Recover p from generator tables")
    classify_parser.add_argument("--input", required=True)
    classify_parser.set_defaults(func=classify_cmd)

    # sl2-sequence command
    sequence_parser = subparsers.add_parser("sl2-sequence", help="Exact sequence witness for V(p)")
    sequence_parser.add_argument("--p", required=True)
    sequence_parser.set_defaults(func=sl2_sequence_cmd)

    # tensor-split command
    split_parser = subparsers.add_parser("tensor-split", help="Split V(p) x L(1)")
    split_parser.add_argument("--p", required=True)
    split_parser.set_defaults(func=tensor_split_cmd)

    # tensor-decompose command
    decompose_parser = subparsers.add_parser("tensor-decompose", help="Decompose V(p) x L(k)")
    decompose_parser.add_argument("--p", required=True)
    decompose_parser.add_argument("--k", type=int, required=True)
    decompose_parser.add_argument("--degree", type=int, default=None)
    decompose_parser.set_defaults(func=tensor_decompose_cmd)

    # cg command
    cg_parser = subparsers.add_parser("cg", help="Clebsch-Gordan components of L(k) x L(m)")
    cg_parser.add_argument("--k", type=int, required=True)
    cg_parser.add_argument("--m", type=int, required=True)
    cg_parser.set_defaults(func=cg_cmd)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the application."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    if not args.command:
        parser.print_help(sys.stderr)
        return EXIT_USAGE

    try:
        return args.func(args)
    except (AlgebraError, ValueError, KeyError, OSError) as e:
        system_logger.error(f"{args.command}: {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
