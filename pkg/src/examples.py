"""
Example Usage - Max-Min Eigenproblems
Run this to see the solvers on the worked instances: python -m src.examples
"""
from dataclasses import dataclass
from typing import List, Optional

from src.algebra import MaxMinMatrix, MaxMinVector, Scalar, scalar_parse, scalar_render
from src.closure import kleene_star, principal_generators
from src.cover_solver import build_cover_problem, minimal_coverings, minimal_solution
from src.eigenspace import box_bounds, full_eigenspace
from src.exceptions import MaxMinError
from src.oracle import cross_validate
from src.validation_metrics import ValidationTracker


@dataclass(frozen=True)
class Instance:
    name: str
    matrix: MaxMinMatrix
    lam: Scalar
    b: Optional[MaxMinVector] = None


COVERING_EXAMPLE = Instance(
    name="covering",
    matrix=MaxMinMatrix.from_rows([[".3", ".5", ".3"], [".6", ".6", ".2"], [".6", ".3", ".6"]]),
    lam=scalar_parse(".6"),
    b=MaxMinMatrix.vector([".6", ".3", ".2"]),
)

TWO_BY_TWO = Instance(
    name="two-by-two",
    matrix=MaxMinMatrix.from_rows([[".7", ".3"], [".2", ".5"]]),
    lam=scalar_parse(".5"),
)

TWO_BY_TWO_NO_INTERIOR = Instance(
    name="two-by-two-no-interior",
    matrix=MaxMinMatrix.from_rows([[".4", ".5"], [".2", ".5"]]),
    lam=scalar_parse(".5"),
)

THREE_BY_THREE = Instance(
    name="three-by-three",
    matrix=MaxMinMatrix.from_rows([[".1", ".5", ".7"], ["0", ".4", ".8"], [".1", ".1", ".5"]]),
    lam=scalar_parse(".5"),
)

EIGEN_INSTANCES: List[Instance] = [TWO_BY_TWO, TWO_BY_TWO_NO_INTERIOR, THREE_BY_THREE]


def _vector_text(x: MaxMinVector) -> str:
    return "(" + ", ".join(scalar_render(v) for v in x.values()) + ")"


def _interval_text(lower: MaxMinVector, upper: MaxMinVector) -> str:
    parts = []
    for lo, hi in zip(lower.values(), upper.values()):
        parts.append(scalar_render(lo) if lo == hi else f"[{scalar_render(lo)},{scalar_render(hi)}]")
    return "(" + ", ".join(parts) + ")"


def example_1_coverings():
    """Minimal coverings of A z + b = lambda 1"""
    print("\n" + "=" * 80)
    print("EXAMPLE 1: Minimal coverings")
    print("=" * 80)

    instance = COVERING_EXAMPLE
    problem = build_cover_problem(instance.matrix, instance.b, instance.lam)
    print(f"I0 = {[i + 1 for i in problem.i0]}")
    for j, rows in enumerate(problem.cj):
        print(f"C{j + 1} = {[i + 1 for i in rows]}")

    for covering in minimal_coverings(problem):
        z = minimal_solution(covering, instance.lam, instance.matrix.cols)
        print(f"  W = {[j + 1 for j in covering.w]}  ->  z^W = {_vector_text(z)}")


def example_2_closure():
    """Kleene star and principal generators of the 3x3 instance"""
    print("\n" + "=" * 80)
    print("EXAMPLE 2: Kleene star and principal generators")
    print("=" * 80)

    a = THREE_BY_THREE.matrix
    for row in kleene_star(a).to_rows():
        print("  " + "  ".join(scalar_render(v).rjust(4) for v in row))
    for generator in principal_generators(a):
        print(f"  generator {_vector_text(generator)}")


def example_3_eigenspaces():
    """Full eigenspace of every instance, shown as coordinate intervals, then validated"""
    print("\n" + "=" * 80)
    print("EXAMPLE 3: Eigenspaces and grid validation")
    print("=" * 80)

    tracker = ValidationTracker()
    for instance in EIGEN_INSTANCES:
        description = full_eigenspace(instance.matrix, instance.lam)
        print(f"\n{instance.name}, lambda = {scalar_render(instance.lam)}: {len(description.pieces)} pieces")
        for piece in description.pieces:
            lower, upper = box_bounds(piece.solution_set)
            print(f"  {piece.kind:<10} {str(piece.partition):<16} box {_interval_text(lower, upper)}")

        try:
            report = cross_validate(instance.matrix, instance.lam, description)
        except MaxMinError as e:
            tracker.track_error(instance.name, e)
            print(f"  validation: ERROR ({e})")
            continue
        tracker.track_report(instance.name, report)
        print(f"  validation: {'PASS' if report.passed else 'FAIL'} "
              f"({report.eigenvector_count} grid eigenvectors, {report.elapsed_ms:.1f} ms)")

    summary = tracker.get_metrics()['summary']
    print(f"\n{'✓' if tracker.all_passed() else '✗'} {summary['passed']}/{summary['total_runs']} instances validated")
    return tracker


if __name__ == "__main__":
    example_1_coverings()
    example_2_closure()
    example_3_eigenspaces()
