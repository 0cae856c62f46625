"""
Parametric Set Module
The {offset ⊕ G⊗z : z ∈ [0,1]^k} encoding shared by every solution set, with exact
membership via residuation, seeded sampling and per-coordinate box bounds
"""
import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from src.algebra import MaxMinMatrix, MaxMinVector, ONE, Scalar, ZERO
from src.exceptions import ShapeError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ParametricSet:
    """
    Set of vectors offset ⊕ generators ⊗ z for z ranging over [0,1]^k

    The offset is itself a member (z = 0).
    """
    offset: MaxMinVector
    generators: MaxMinMatrix

    def __post_init__(self):
        if self.offset.cols != 1:
            raise ShapeError(f"Offset must be a column vector, got {self.offset.shape}", self.offset.shape)
        if self.generators.rows != self.offset.rows:
            raise ShapeError(
                f"Generators {self.generators.shape} do not match offset dimension {self.offset.rows}",
                self.generators.shape,
                self.offset.shape,
            )

    @classmethod
    def full_box(cls, n: int) -> "ParametricSet":
        return cls(MaxMinMatrix.zeros(n), MaxMinMatrix.identity(n))

    @property
    def dim(self) -> int:
        return self.offset.rows

    @property
    def parameter_count(self) -> int:
        return self.generators.cols

    def evaluate(self, z: MaxMinVector) -> MaxMinVector:
        if z.shape != (self.parameter_count, 1):
            raise ShapeError(f"Parameter of shape {z.shape} does not fit {self.parameter_count} generators", z.shape)
        return self.offset | (self.generators @ z)

    def breakpoints(self) -> List[Scalar]:
        """0, 1, every offset and generator entry, and the midpoints between consecutive values"""
        values = sorted({ZERO, ONE, *self.offset.values(), *self.generators.values()})
        midpoints = [(low + high) / 2 for low, high in zip(values, values[1:])]
        return sorted(values + midpoints)


def principal_solution(generators: MaxMinMatrix, x: MaxMinVector) -> MaxMinVector:
    """
    Greatest z with G⊗z ≤ x

    z_j is the minimum of x_i over rows with g_ij > x_i, or 1 when no row constrains it.
    """
    if generators.rows != x.rows or x.cols != 1:
        raise ShapeError(f"Vector {x.shape} does not fit generators {generators.shape}", x.shape, generators.shape)
    values = x.values()
    bounds = []
    for j in range(generators.cols):
        column = generators.array[:, j]
        bounds.append(min((values[i] for i in range(generators.rows) if column[i] > values[i]), default=ONE))
    return MaxMinMatrix.vector(bounds)


def membership(parametric_set: ParametricSet, x: MaxMinVector) -> bool:
    """True iff x = offset ⊕ G⊗z for some z"""
    if x.shape != (parametric_set.dim, 1):
        raise ShapeError(f"Vector {x.shape} does not fit set of dimension {parametric_set.dim}", x.shape)
    if not parametric_set.offset.leq(x):
        return False
    z_hat = principal_solution(parametric_set.generators, x)
    return parametric_set.evaluate(z_hat) == x


def sample(parametric_set: ParametricSet, count: int, seed: int = 0) -> List[MaxMinVector]:
    """
    Deterministic pseudo-random members of the set

    Args:
        parametric_set: Set to draw from
        count: Number of members
        seed: Seed for numpy's default generator

    Returns:
        Members offset ⊕ G⊗z with every z_j drawn from the set's breakpoints
    """
    if count < 0:
        raise ValueError(f"Sample count must be nonnegative, got {count}")
    rng = np.random.default_rng(seed)
    values = parametric_set.breakpoints()
    members = []
    for _ in range(count):
        picks = rng.integers(0, len(values), size=parametric_set.parameter_count)
        z = MaxMinMatrix.vector([values[p] for p in picks])
        members.append(parametric_set.evaluate(z))
    return members


def box_bounds(parametric_set: ParametricSet) -> Tuple[MaxMinVector, MaxMinVector]:
    """
    Per-coordinate bounds of the set

    Lower bound is the offset; upper bound in row i is offset_i ⊕ max_j g_ij, reached with z = 1.
    """
    upper = parametric_set.offset | (parametric_set.generators @ MaxMinMatrix.filled(parametric_set.parameter_count, 1, ONE))
    return parametric_set.offset, upper
