"""
Oracle Module
Brute-force ground truth over a finite breakpoint grid.

Max and min commute with any order-preserving relabelling of values, so every
Fraction is replaced by its rank among the values involved and enumeration runs on
integer numpy arrays. The answers are exact on the grid.
"""
import logging
import time
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from src.algebra import MaxMinMatrix, MaxMinVector, ONE, Scalar, ZERO, scalar_render
from src.eigenspace import EigenspaceDescription, check_partition
from src.exceptions import GridSizeError, ShapeError
from src.parametric_set import ParametricSet, sample

logger = logging.getLogger(__name__)

DEFAULT_GRID_CAP = 1_000_000
CHUNK_SIZE = 65_536
EVIDENCE_NOTE = (
    "Agreement on the breakpoint grid (breakpoints plus midpoints) is strong evidence "
    "that the description is complete and sound, not a proof."
)


@dataclass(frozen=True)
class ValueGrid:
    """Sorted, duplicate-free candidate values for every coordinate"""
    values: Tuple[Scalar, ...]

    def __post_init__(self):
        if not self.values:
            raise ValueError("Value grid must not be empty")
        if list(self.values) != sorted(set(self.values)):
            raise ValueError("Value grid must be sorted and duplicate-free")

    def __len__(self) -> int:
        return len(self.values)

    def point_count(self, n: int) -> int:
        return len(self.values) ** n


def breakpoints(a: MaxMinMatrix, lam: Scalar, extra: Iterable[Scalar] = ()) -> ValueGrid:
    """
    Entries of A together with 0, lambda, 1 and any extra values, plus every midpoint
    between consecutive values
    """
    base = sorted({ZERO, ONE, lam, *a.values(), *extra})
    midpoints = [(low + high) / 2 for low, high in zip(base, base[1:])]
    return ValueGrid(values=tuple(sorted(base + midpoints)))


class _RankCodec:
    """Order-preserving map between Scalars and integer ranks"""

    def __init__(self, values: Iterable[Scalar]):
        self.values: List[Scalar] = sorted({ZERO, ONE, *values})
        self._ranks: Dict[Scalar, int] = {value: rank for rank, value in enumerate(self.values)}

    @property
    def top(self) -> int:
        return len(self.values) - 1

    def rank(self, value: Scalar) -> int:
        return self._ranks[value]

    def encode(self, matrix: MaxMinMatrix) -> np.ndarray:
        ranks = [self._ranks[value] for value in matrix.values()]
        return np.array(ranks, dtype=np.int64).reshape(matrix.shape)

    def decode(self, ranks: np.ndarray) -> MaxMinVector:
        return MaxMinMatrix.vector([self.values[int(r)] for r in ranks])


def _grid_chunks(grid_ranks: np.ndarray, n: int, cap: int) -> Iterator[np.ndarray]:
    """All points of grid^n in lexicographic order, as (count, n) rank arrays"""
    total = len(grid_ranks) ** n
    if total > cap:
        raise GridSizeError(total, cap)
    if total > cap // 2:
        logger.warning(f"Grid enumeration of {total} points is close to the cap {cap}")
    if n == 0:
        yield np.zeros((1, 0), dtype=np.int64)
        return
    shape = (len(grid_ranks),) * n
    for start in range(0, total, CHUNK_SIZE):
        flat = np.arange(start, min(start + CHUNK_SIZE, total))
        digits = np.stack(np.unravel_index(flat, shape), axis=1)
        yield grid_ranks[digits]


def _product(a_ranks: np.ndarray, points: np.ndarray) -> np.ndarray:
    """A⊗x for every row x of points"""
    if a_ranks.shape[1] == 0:
        return np.zeros((points.shape[0], a_ranks.shape[0]), dtype=np.int64)
    return np.minimum(a_ranks[None, :, :], points[:, None, :]).max(axis=2)


def _member_mask(codec: _RankCodec, parametric_set: ParametricSet, points: np.ndarray) -> np.ndarray:
    """Residuation membership test for every row of points"""
    offset = codec.encode(parametric_set.offset).ravel()
    above_offset = (points >= offset[None, :]).all(axis=1)
    if parametric_set.parameter_count == 0:
        return above_offset & (points == offset[None, :]).all(axis=1)

    generators = codec.encode(parametric_set.generators)
    exceeds = generators[None, :, :] > points[:, :, None]
    z_hat = np.where(exceeds, points[:, :, None], codec.top).min(axis=1)
    rebuilt = np.maximum(offset[None, :], _product(generators, z_hat))
    return above_offset & (rebuilt == points).all(axis=1)


def _codec_for(a: MaxMinMatrix, grid: ValueGrid, *scalars: Iterable[Scalar]) -> _RankCodec:
    values = set(grid.values) | set(a.values())
    for group in scalars:
        values.update(group)
    return _RankCodec(values)


def _piece_values(sets: Sequence[ParametricSet]) -> List[Scalar]:
    return [value for s in sets for value in s.offset.values() + s.generators.values()]


def check_eigen(a: MaxMinMatrix, lam: Scalar, x: MaxMinVector) -> bool:
    """True iff A⊗x = λ⊗x exactly"""
    if not a.is_square() or x.shape != (a.rows, 1):
        raise ShapeError(f"Vector {x.shape} does not fit matrix {a.shape}", a.shape, x.shape)
    return a @ x == x.scale(lam)


def _eigen_ranks(codec: _RankCodec, a: MaxMinMatrix, lam: Scalar, grid: ValueGrid, cap: int) -> np.ndarray:
    a_ranks = codec.encode(a)
    lam_rank = codec.rank(lam)
    grid_ranks = np.array([codec.rank(v) for v in grid.values], dtype=np.int64)
    found = [
        points[(_product(a_ranks, points) == np.minimum(points, lam_rank)).all(axis=1)]
        for points in _grid_chunks(grid_ranks, a.rows, cap)
    ]
    return np.concatenate(found, axis=0)


def grid_eigenvectors(
    a: MaxMinMatrix,
    lam: Scalar,
    grid: Optional[ValueGrid] = None,
    cap: int = DEFAULT_GRID_CAP,
) -> List[MaxMinVector]:
    """
    Every x in grid^n with A⊗x = λ⊗x, in lexicographic order

    Args:
        a: Square matrix
        lam: Eigenvalue
        grid: Candidate values; breakpoints(a, lam) when omitted
        cap: Largest number of grid points to enumerate

    Returns:
        Eigenvectors on the grid; raises GridSizeError above the cap
    """
    if not a.is_square():
        raise ShapeError(f"Eigenproblem needs a square matrix, got {a.shape}", a.shape)
    grid = grid or breakpoints(a, lam)
    codec = _codec_for(a, grid, [lam])
    return [codec.decode(row) for row in _eigen_ranks(codec, a, lam, grid, cap)]


def grid_bellman_solutions(
    a: MaxMinMatrix,
    b: MaxMinVector,
    grid: Optional[ValueGrid] = None,
    cap: int = DEFAULT_GRID_CAP,
) -> List[MaxMinVector]:
    """Every x in grid^n with x = A⊗x ⊕ b"""
    if not a.is_square() or b.shape != (a.rows, 1):
        raise ShapeError(f"Right-hand side {b.shape} does not fit matrix {a.shape}", a.shape, b.shape)
    grid = grid or breakpoints(a, ZERO, b.values())
    codec = _codec_for(a, grid, b.values())
    a_ranks, b_ranks = codec.encode(a), codec.encode(b).ravel()
    grid_ranks = np.array([codec.rank(v) for v in grid.values], dtype=np.int64)

    solutions = []
    for points in _grid_chunks(grid_ranks, a.rows, cap):
        mask = (np.maximum(_product(a_ranks, points), b_ranks[None, :]) == points).all(axis=1)
        solutions.extend(codec.decode(row) for row in points[mask])
    return solutions


def grid_cover_solutions(
    a: MaxMinMatrix,
    b: MaxMinVector,
    lam: Scalar,
    grid: Optional[ValueGrid] = None,
    cap: int = DEFAULT_GRID_CAP,
) -> List[MaxMinVector]:
    """Every z in grid^n with A⊗z ⊕ b = λ1, for an m x n matrix A"""
    if b.shape != (a.rows, 1):
        raise ShapeError(f"Right-hand side {b.shape} does not fit matrix {a.shape}", a.shape, b.shape)
    grid = grid or breakpoints(a, lam, b.values())
    codec = _codec_for(a, grid, b.values(), [lam])
    a_ranks, b_ranks = codec.encode(a), codec.encode(b).ravel()
    lam_rank = codec.rank(lam)
    grid_ranks = np.array([codec.rank(v) for v in grid.values], dtype=np.int64)

    solutions = []
    for points in _grid_chunks(grid_ranks, a.cols, cap):
        mask = (np.maximum(_product(a_ranks, points), b_ranks[None, :]) == lam_rank).all(axis=1)
        solutions.extend(codec.decode(row) for row in points[mask])
    return solutions


def grid_members(
    sets: Sequence[ParametricSet],
    grid: ValueGrid,
    cap: int = DEFAULT_GRID_CAP,
) -> List[MaxMinVector]:
    """Every grid point that belongs to at least one of the sets"""
    if not sets:
        return []
    n = sets[0].dim
    if any(s.dim != n for s in sets):
        raise ShapeError("Parametric sets have different dimensions", *((s.dim,) for s in sets))
    codec = _RankCodec(set(grid.values) | set(_piece_values(sets)))
    grid_ranks = np.array([codec.rank(v) for v in grid.values], dtype=np.int64)

    members = []
    for points in _grid_chunks(grid_ranks, n, cap):
        mask = np.zeros(points.shape[0], dtype=bool)
        for s in sets:
            mask |= _member_mask(codec, s, points)
        members.extend(codec.decode(row) for row in points[mask])
    return members


@dataclass
class ValidationReport:
    """Outcome of comparing a symbolic eigenspace description with the grid"""
    n: int
    lam: Scalar
    grid_values: int
    grid_points: int
    eigenvector_count: int
    piece_count: int
    samples_checked: int
    uncovered: List[MaxMinVector] = field(default_factory=list)
    failing_samples: List[Tuple[int, MaxMinVector]] = field(default_factory=list)
    elapsed_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.uncovered and not self.failing_samples

    def to_lines(self) -> List[str]:
        def render(x: MaxMinVector) -> str:
            return "(" + ", ".join(scalar_render(v) for v in x.values()) + ")"

        lines = [
            f"RESULT: {'PASS' if self.passed else 'FAIL'}",
            f"dimension: {self.n}",
            f"lambda: {scalar_render(self.lam)}",
            f"grid: {self.grid_values} values, {self.grid_points} points",
            f"grid eigenvectors: {self.eigenvector_count}",
            f"pieces: {self.piece_count}",
            f"samples checked: {self.samples_checked}",
            f"uncovered grid eigenvectors: {len(self.uncovered)}",
        ]
        lines.extend(f"  {render(x)}" for x in self.uncovered)
        lines.append(f"failing samples: {len(self.failing_samples)}")
        lines.extend(f"  piece {index + 1}: {render(x)}" for index, x in self.failing_samples)
        lines.append(f"runtime: {self.elapsed_ms:.1f} ms")
        lines.append(f"note: {EVIDENCE_NOTE}")
        return lines


def cross_validate(
    a: MaxMinMatrix,
    lam: Scalar,
    description: EigenspaceDescription,
    grid: Optional[ValueGrid] = None,
    sample_count: int = 25,
    seed: int = 0,
    cap: int = DEFAULT_GRID_CAP,
) -> ValidationReport:
    """
    Compare a description with brute force

    Every grid eigenvector must belong to some piece, and every sampled member of every
    piece must be an eigenvector obeying the piece's K/L sign constraints.
    """
    start = time.time()
    grid = grid or breakpoints(a, lam)
    sets = [piece.solution_set for piece in description.pieces]
    codec = _codec_for(a, grid, [lam], _piece_values(sets))

    eigen = _eigen_ranks(codec, a, lam, grid, cap)
    covered = np.zeros(eigen.shape[0], dtype=bool)
    for s in sets:
        covered |= _member_mask(codec, s, eigen)
    uncovered = [codec.decode(row) for row in eigen[~covered]]

    failing = []
    for index, piece in enumerate(description.pieces):
        for x in sample(piece.solution_set, sample_count, seed + index):
            if not check_partition(a, lam, piece.partition, x):
                failing.append((index, x))

    report = ValidationReport(
        n=a.rows,
        lam=lam,
        grid_values=len(grid),
        grid_points=grid.point_count(a.rows),
        eigenvector_count=int(eigen.shape[0]),
        piece_count=len(description.pieces),
        samples_checked=sample_count * len(description.pieces),
        uncovered=uncovered,
        failing_samples=failing,
        elapsed_ms=(time.time() - start) * 1000,
    )
    if report.passed:
        logger.info(f"Validation passed: {report.eigenvector_count} grid eigenvectors covered by {report.piece_count} pieces")
    else:
        logger.warning(f"Validation failed: {len(uncovered)} uncovered points, {len(failing)} failing samples")
    return report
