"""
Max-Min Eigenproblem Solver
Command line front end: star, bellman, cover, eigen, verify, plot-data and validate
"""

import argparse
import logging
import sys
from typing import Callable, Dict, List, Optional, Tuple

from pydantic import ValidationError

from src.algebra import IndexSet, MaxMinMatrix, Scalar, index_set, parse_rendered, scalar_render
from src.bellman import bellman_solution_set, least_solution
from src.closure import kleene_star, metric_matrix
from src.config import SolverSettings
from src.cover_solver import build_cover_problem, minimal_coverings, minimal_solution, solution_set_for_covering
from src.eigenspace import (
    BACKGROUND,
    PURE,
    EigenspaceDescription,
    EigenspacePiece,
    Partition,
    background_eigenvectors,
    componentwise_system,
    full_eigenspace,
    kl_eigenvectors,
    pure_eigenvectors,
)
from src.exceptions import GridSizeError, MaxMinError, ProblemFileError, ScalarParseError, ShapeError
from src.oracle import check_eigen, cross_validate
from src.plot_data import plot_tables, require_plottable, write_plot_data
from src.problem_io import (
    BellmanResult,
    CoverResult,
    CoveringBlock,
    Problem,
    StarResult,
    VerifyResult,
    VerifyRow,
    dump_json,
    load_description,
    load_problem,
    render_matrix,
    render_set,
    render_vector,
    serialize_description,
)

logger = logging.getLogger(__name__)

# -------------------------------------------------------------------
# Exit statuses
# -------------------------------------------------------------------
EXIT_OK = 0
EXIT_FALSE = 1
EXIT_INPUT_ERROR = 2
EXIT_SIZE_CAP = 3

CommandResult = Tuple[int, str]


# -------------------------------------------------------------------
# Argument parsing
# -------------------------------------------------------------------
def _scalar_argument(text: str) -> Scalar:
    try:
        return parse_rendered(text)
    except ScalarParseError as e:
        raise argparse.ArgumentTypeError(str(e))


def _partition_argument(text: str) -> List[int]:
    """Comma-separated 1-based indices of K; an empty string means K is empty"""
    try:
        return [int(token) - 1 for token in text.split(",") if token.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"partition must be a comma-separated list of indices, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", help="Problem file (JSON); '-' reads standard input")
    common.add_argument("--out", help="Write the result here instead of standard output")
    common.add_argument("--lambda", dest="lam", type=_scalar_argument, help="Eigenvalue / level; overrides the file")
    common.add_argument("--grid-cap", type=int, help="Largest grid enumeration (default from MAXMIN_GRID_CAP)")
    common.add_argument("--seed", type=int, help="Sampling seed (default from MAXMIN_SEED)")
    common.add_argument("--samples", type=int, help="Samples per piece (default from MAXMIN_SAMPLE_COUNT)")
    common.add_argument("--log-level", help="Logging level (default from MAXMIN_LOG_LEVEL)")

    parser = argparse.ArgumentParser(
        prog="python -m src.main",
        description="Eigenproblems and related equations in max-min algebra",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    subparsers.add_parser("star", parents=[common], help="Metric matrix A+ and Kleene star A*")
    subparsers.add_parser("bellman", parents=[common], help="Solutions of x = A x + b")
    subparsers.add_parser("cover", parents=[common], help="Solutions of A z + b = lambda 1 by minimal coverings")

    eigen = subparsers.add_parser("eigen", parents=[common], help="Lambda-eigenvectors as parametric pieces")
    which = eigen.add_mutually_exclusive_group()
    which.add_argument("--all", action="store_true", help="Full eigenspace (default)")
    which.add_argument("--pure", action="store_true", help="Pure eigenvectors only")
    which.add_argument("--background", action="store_true", help="Background eigenvectors only")
    which.add_argument("--partition", type=_partition_argument, help="(K,L)-eigenvectors for K given as 1-based list")
    eigen.add_argument("--explain", action="store_true", help="Print the componentwise system to standard error")

    subparsers.add_parser("verify", parents=[common], help="Check A x = lambda x for the file's x")
    subparsers.add_parser("plot-data", parents=[common], help="Box and point tables for n = 2 or 3")

    validate = subparsers.add_parser("validate", parents=[common], help="Cross-validate the eigenspace on a grid")
    validate.add_argument("--description", help="Validate this description file instead of computing one")
    return parser


# -------------------------------------------------------------------
# Helpers
# -------------------------------------------------------------------
def _require_lambda(problem: Problem, args: argparse.Namespace) -> Scalar:
    lam = args.lam if args.lam is not None else problem.lam
    if lam is None:
        raise ProblemFileError(problem.source, "lambda", "missing; give it in the file or with --lambda")
    return lam


def _require_b(problem: Problem):
    if problem.b is None:
        raise ProblemFileError(problem.source, "b", "missing")
    return problem.b


def _require_square(problem: Problem) -> MaxMinMatrix:
    if not problem.matrix.is_square():
        raise ShapeError(f"{problem.source}: matrix must be square, got {problem.matrix.shape}", problem.matrix.shape)
    return problem.matrix


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
        logger.info(f"Result written to {out}")
    else:
        sys.stdout.write(text)


# -------------------------------------------------------------------
# Commands
# -------------------------------------------------------------------
def cmd_star(problem: Problem, args: argparse.Namespace, settings: SolverSettings) -> CommandResult:
    a = _require_square(problem)
    result = StarResult(metric=render_matrix(metric_matrix(a)), star=render_matrix(kleene_star(a)))
    return EXIT_OK, dump_json(result)


def cmd_bellman(problem: Problem, args: argparse.Namespace, settings: SolverSettings) -> CommandResult:
    a = _require_square(problem)
    b = _require_b(problem)
    result = BellmanResult(
        least_solution=render_vector(least_solution(a, b)),
        solution_set=render_set(bellman_solution_set(a, b)),
    )
    return EXIT_OK, dump_json(result)


def cmd_cover(problem: Problem, args: argparse.Namespace, settings: SolverSettings) -> CommandResult:
    a = problem.matrix
    b = _require_b(problem)
    lam = _require_lambda(problem, args)
    cover_problem = build_cover_problem(a, b, lam)
    coverings = minimal_coverings(cover_problem)

    blocks = [
        CoveringBlock(
            w=[j + 1 for j in covering.w],
            z=render_vector(minimal_solution(covering, lam, a.cols)),
            solution_set=render_set(solution_set_for_covering(covering, lam, a.cols)),
        )
        for covering in coverings
    ]
    result = CoverResult(
        status="SOLVED" if blocks else "UNSOLVABLE",
        lambda_=scalar_render(lam),
        i0=[i + 1 for i in cover_problem.i0],
        c=[[i + 1 for i in rows] for rows in cover_problem.cj],
        coverings=blocks,
    )
    return EXIT_OK, dump_json(result)


def _partition_pieces(a: MaxMinMatrix, lam: Scalar, k: IndexSet) -> List[EigenspacePiece]:
    n = a.rows
    partition = Partition.from_k(k, n)
    if not partition.l:
        return [EigenspacePiece(partition=partition, solution_set=pure_eigenvectors(a, lam), kind=PURE)]
    if not partition.k:
        background = background_eigenvectors(a, lam)
        if background is None:
            return []
        return [EigenspacePiece(partition=partition, solution_set=background, kind=BACKGROUND)]
    return kl_eigenvectors(a, partition, lam)


def cmd_eigen(problem: Problem, args: argparse.Namespace, settings: SolverSettings) -> CommandResult:
    a = _require_square(problem)
    lam = _require_lambda(problem, args)
    if args.explain:
        for line in componentwise_system(a, lam):
            print(line, file=sys.stderr)

    n = a.rows
    if args.pure:
        pieces = _partition_pieces(a, lam, tuple(range(n)))
    elif args.background:
        pieces = _partition_pieces(a, lam, ())
    elif args.partition is not None:
        pieces = _partition_pieces(a, lam, index_set(args.partition, n))
    else:
        pieces = list(full_eigenspace(a, lam).pieces)

    description = EigenspaceDescription(matrix=a, lam=lam, pieces=tuple(pieces))
    return EXIT_OK, dump_json(serialize_description(description))


def cmd_verify(problem: Problem, args: argparse.Namespace, settings: SolverSettings) -> CommandResult:
    a = _require_square(problem)
    lam = _require_lambda(problem, args)
    if problem.x is None:
        raise ProblemFileError(problem.source, "x", "missing")
    x = problem.x

    lhs, rhs = a @ x, x.scale(lam)
    rows = [
        VerifyRow(row=i + 1, lhs=scalar_render(lhs[i]), rhs=scalar_render(rhs[i]), equal=lhs[i] == rhs[i])
        for i in range(a.rows)
    ]
    verified = check_eigen(a, lam, x)
    result = VerifyResult(eigenvector=verified, lambda_=scalar_render(lam), rows=rows)
    return (EXIT_OK if verified else EXIT_FALSE), dump_json(result)


def cmd_plot_data(problem: Problem, args: argparse.Namespace, settings: SolverSettings) -> CommandResult:
    a = _require_square(problem)
    lam = _require_lambda(problem, args)
    require_plottable(a.rows)
    description = full_eigenspace(a, lam)
    if args.out:
        write_plot_data(description, args.out, settings.sample_count, settings.seed, settings.grid_cap)
        return EXIT_OK, ""
    boxes, points = plot_tables(description, settings.sample_count, settings.seed, settings.grid_cap)
    return EXIT_OK, boxes + "\n" + points


def cmd_validate(problem: Problem, args: argparse.Namespace, settings: SolverSettings) -> CommandResult:
    a = _require_square(problem)
    lam = _require_lambda(problem, args)
    if args.description:
        description = load_description(args.description)
        if description.matrix != a or description.lam != lam:
            raise ProblemFileError(args.description, "top level", "description was built for another matrix or lambda")
    else:
        description = full_eigenspace(a, lam)

    report = cross_validate(
        a,
        lam,
        description,
        sample_count=settings.sample_count,
        seed=settings.seed,
        cap=settings.grid_cap,
    )
    return (EXIT_OK if report.passed else EXIT_FALSE), "\n".join(report.to_lines()) + "\n"


COMMANDS: Dict[str, Callable[[Problem, argparse.Namespace, SolverSettings], CommandResult]] = {
    "star": cmd_star,
    "bellman": cmd_bellman,
    "cover": cmd_cover,
    "eigen": cmd_eigen,
    "verify": cmd_verify,
    "plot-data": cmd_plot_data,
    "validate": cmd_validate,
}


# -------------------------------------------------------------------
# Entry point
# -------------------------------------------------------------------
def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = SolverSettings.from_env().with_overrides(
            grid_cap=args.grid_cap,
            seed=args.seed,
            sample_count=args.samples,
            log_level=args.log_level,
        )
    except ValidationError as e:
        print(f"error: invalid settings: {e.errors()[0]['msg']}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    logging.basicConfig(level=settings.log_level)

    try:
        problem = load_problem(args.input)
        status, text = COMMANDS[args.command](problem, args, settings)
    except GridSizeError as e:
        logger.error(f"Grid size cap exceeded: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_SIZE_CAP
    except MaxMinError as e:
        logger.error(f"Input error: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    _emit(text, args.out if args.command != "plot-data" else None)
    return status


if __name__ == "__main__":
    sys.exit(main())
