"""
Cover Solver Module
Solves A⊗z ⊕ b = λ1 under the condition that no entry of A or b exceeds λ.

Rows with b_i < λ (the set I₀) must each be reached by some column j with a_ij = λ
and z_j ≥ λ. The solution set is therefore a union of boxes, one per minimal covering
of I₀ by the column sets C_j.
"""
import logging
from dataclasses import dataclass
from typing import FrozenSet, List, Set, Tuple

from src.algebra import (
    IndexSet,
    MaxMinMatrix,
    MaxMinVector,
    Scalar,
    ZERO,
    index_set,
    lambda_w_matrix,
)
from src.exceptions import ConditionViolation, ShapeError
from src.parametric_set import ParametricSet

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoveringProblem:
    """I₀ and the column sets C_j = {i ∈ I₀ : a_ij = λ}"""
    m: int
    n: int
    lam: Scalar
    i0: IndexSet
    cj: Tuple[IndexSet, ...]

    def union(self, w: IndexSet) -> FrozenSet[int]:
        return frozenset(i for j in w for i in self.cj[j])

    def covers(self, w: IndexSet) -> bool:
        return self.union(w) == frozenset(self.i0)

    def is_irredundant(self, w: IndexSet) -> bool:
        """Every member of w covers some row no other member covers"""
        for j in w:
            others = self.union(tuple(k for k in w if k != j))
            if set(self.cj[j]) <= others:
                return False
        return True


@dataclass(frozen=True)
class Covering:
    w: IndexSet
    minimal: bool = True


def build_cover_problem(a: MaxMinMatrix, b: MaxMinVector, lam: Scalar) -> CoveringProblem:
    """
    Build I₀ and C_j for A⊗z ⊕ b = λ1

    Args:
        a: m x n coefficient matrix
        b: Column vector of length m
        lam: Right-hand side level

    Returns:
        CoveringProblem; raises ConditionViolation on the first entry exceeding lam
    """
    if b.shape != (a.rows, 1):
        raise ShapeError(f"Right-hand side {b.shape} does not fit matrix {a.shape}", a.shape, b.shape)
    for i in range(a.rows):
        for j in range(a.cols):
            if a[i, j] > lam:
                raise ConditionViolation(i, j, a[i, j], lam)
    for i in range(b.rows):
        if b[i] > lam:
            raise ConditionViolation(i, None, b[i], lam)

    i0 = tuple(i for i in range(a.rows) if b[i] < lam)
    cj = tuple(tuple(i for i in i0 if a[i, j] == lam) for j in range(a.cols))
    return CoveringProblem(m=a.rows, n=a.cols, lam=lam, i0=i0, cj=cj)


def minimal_coverings(problem: CoveringProblem) -> List[Covering]:
    """
    All irredundant coverings of I₀, sorted lexicographically

    Depth-first over the smallest uncovered row, branching on every column that covers
    it. A partial selection with a redundant member is abandoned since adding columns
    never restores irredundancy.
    """
    if not problem.i0:
        return [Covering(w=())]

    found: Set[IndexSet] = set()
    target = frozenset(problem.i0)

    def extend(w: IndexSet, covered: FrozenSet[int]):
        if covered == target:
            found.add(w)
            return
        row = min(target - covered)
        for j in range(problem.n):
            if j in w or row not in problem.cj[j]:
                continue
            candidate = tuple(sorted(w + (j,)))
            if problem.is_irredundant(candidate):
                extend(candidate, covered | frozenset(problem.cj[j]))

    extend((), frozenset())
    coverings = [Covering(w=w) for w in sorted(found) if problem.is_irredundant(w)]
    if not coverings:
        logger.warning(f"No covering of I₀={list(problem.i0)} exists; the equation is unsolvable")
    else:
        logger.debug(f"Found {len(coverings)} minimal coverings of I₀={list(problem.i0)}")
    return coverings


def minimal_solution(covering: Covering, lam: Scalar, n: int) -> MaxMinVector:
    """z^W: lambda on W, 0 elsewhere"""
    members = set(index_set(covering.w, n))
    return MaxMinMatrix.vector([lam if j in members else ZERO for j in range(n)])


def solution_set_for_covering(covering: Covering, lam: Scalar, n: int) -> ParametricSet:
    """{z : z^W ≤ z ≤ 1} as z^W ⊕ Λ^W⊗v"""
    z_w = minimal_solution(covering, lam, n)
    return ParametricSet(offset=z_w, generators=lambda_w_matrix(z_w))


def solve_special(a: MaxMinMatrix, b: MaxMinVector, lam: Scalar) -> List[ParametricSet]:
    """One box per minimal covering; an empty list means A⊗z ⊕ b = λ1 has no solution"""
    problem = build_cover_problem(a, b, lam)
    coverings = minimal_coverings(problem)
    logger.info(f"A⊗z ⊕ b = {lam}·1: {len(coverings)} minimal coverings")
    return [solution_set_for_covering(covering, lam, a.cols) for covering in coverings]
