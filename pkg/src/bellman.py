"""
Bellman Module
Least solution and full solution set of x = A⊗x ⊕ b
"""
import logging

from src.algebra import MaxMinMatrix, MaxMinVector, ONE
from src.closure import kleene_star, star_lambda
from src.exceptions import ContractViolation, ShapeError
from src.parametric_set import ParametricSet

logger = logging.getLogger(__name__)


def _require_system(a: MaxMinMatrix, b: MaxMinVector):
    if not a.is_square():
        raise ShapeError(f"Bellman equation needs a square matrix, got {a.shape}", a.shape)
    if b.shape != (a.rows, 1):
        raise ShapeError(f"Right-hand side {b.shape} does not fit matrix {a.shape}", a.shape, b.shape)


def least_solution(a: MaxMinMatrix, b: MaxMinVector) -> MaxMinVector:
    """A*⊗b, the smallest x with x = A⊗x ⊕ b"""
    _require_system(a, b)
    return kleene_star(a) @ b


def bellman_solution_set(a: MaxMinMatrix, b: MaxMinVector) -> ParametricSet:
    """
    All solutions of x = A⊗x ⊕ b

    Every solution is A*⊗b ⊕ v for a principal eigenvector v, and the principal
    eigenvectors are the max-min combinations of the principal generators.

    Args:
        a: Square n x n matrix
        b: Column vector of length n

    Returns:
        ParametricSet with offset A*⊗b and the principal generators as columns
    """
    _require_system(a, b)
    solution_set = ParametricSet(offset=least_solution(a, b), generators=star_lambda(a, ONE))
    logger.debug(f"Bellman solution set: offset={solution_set.offset.values()}, {solution_set.parameter_count} generators")
    return solution_set


def is_bellman_solution(a: MaxMinMatrix, b: MaxMinVector, x: MaxMinVector) -> bool:
    _require_system(a, b)
    if x.shape != b.shape:
        raise ShapeError(f"Vector {x.shape} does not fit matrix {a.shape}", a.shape, x.shape)
    return ((a @ x) | b) == x


def bellman_orbit_limit(a: MaxMinMatrix, x: MaxMinVector) -> MaxMinVector:
    """
    Limit of the decreasing orbit x ≥ A⊗x ≥ A²⊗x ≥ ...

    The orbit stabilises after finitely many steps because every entry of A^k⊗x is an
    entry of A or x. The limit v satisfies A⊗v = v, and a Bellman solution x equals
    least_solution(A, b) ⊕ v.
    """
    _require_system(a, x)
    current = a @ x
    if not current.leq(x):
        raise ContractViolation(f"Orbit limit needs A⊗x ≤ x, which fails for x={x.values()}")

    previous = x
    while current != previous:
        previous, current = current, a @ current
    return current
