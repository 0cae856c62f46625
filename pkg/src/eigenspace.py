"""
Eigenspace Module
Background, pure and (K,L) λ-eigenvectors of a max-min matrix, and the full eigenspace
as a union of parametric pieces.

A (K,L)-eigenvector satisfies A⊗x = λ⊗x with x_i ≤ λ on K and x_i ≥ λ on L. Pure
eigenvectors are the K = N case, background eigenvectors the L = N case.
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import List, Optional, Tuple

from src.algebra import (
    IndexSet,
    MaxMinMatrix,
    MaxMinVector,
    ONE,
    Scalar,
    ZERO,
    complement,
    index_set,
    lambda_matrix,
    lambda_w_matrix,
    scalar_render,
)
from src.closure import kleene_star, star_lambda
from src.cover_solver import (
    Covering,
    build_cover_problem,
    minimal_coverings,
    minimal_solution,
)
from src.exceptions import ContractViolation, ShapeError
from src.parametric_set import ParametricSet, box_bounds, membership, sample

logger = logging.getLogger(__name__)

__all__ = [
    "Partition",
    "KLContext",
    "EigenspacePiece",
    "EigenspaceDescription",
    "n_split",
    "background_eigenvectors",
    "pure_eigenvectors",
    "kl_context",
    "sl_set",
    "sk_set",
    "kl_eigenvectors",
    "full_eigenspace",
    "check_partition",
    "classify_point",
    "componentwise_system",
    "membership",
    "sample",
    "box_bounds",
]

PURE = "pure"
BACKGROUND = "background"
KL = "kl"
PIECE_KINDS = (PURE, BACKGROUND, KL)


@dataclass(frozen=True)
class Partition:
    """Split of {0..n-1} into K (entries ≤ λ) and L (entries ≥ λ)"""
    k: IndexSet
    l: IndexSet
    n: int

    def __post_init__(self):
        index_set(self.k + self.l, self.n)
        for part in (self.k, self.l):
            if any(left >= right for left, right in zip(part, part[1:])):
                raise ShapeError(f"indices {[i + 1 for i in part]} are not strictly increasing", (self.n,))
        if tuple(sorted(self.k + self.l)) != tuple(range(self.n)):
            raise ShapeError(f"K={list(self.k)} and L={list(self.l)} do not partition {self.n} indices", (self.n,))

    @classmethod
    def from_k(cls, k, n: int) -> "Partition":
        members = index_set(k, n)
        return cls(k=members, l=complement(members, n), n=n)

    def is_proper(self) -> bool:
        return bool(self.k) and bool(self.l)

    def __str__(self) -> str:
        return f"K={{{','.join(str(i + 1) for i in self.k)}}} L={{{','.join(str(i + 1) for i in self.l)}}}"


@dataclass(frozen=True)
class KLContext:
    """Index sets and reduced system of one (K,L) partition"""
    partition: Partition
    lam: Scalar
    l1: IndexSet
    l2: IndexSet
    l_gt_l1: IndexSet
    l_gt_k: IndexSet
    l_prime: IndexSet
    l_tilde: IndexSet
    n_tilde: IndexSet
    a_prime: MaxMinMatrix
    b_prime: MaxMinVector
    # (A_KK)*, (A_KK)*⊗A_KL and (A_KK)*_λ
    star_kk: MaxMinMatrix = field(repr=False)
    m_kl: MaxMinMatrix = field(repr=False)
    star_kk_lambda: MaxMinMatrix = field(repr=False)


@dataclass(frozen=True)
class EigenspacePiece:
    partition: Partition
    solution_set: ParametricSet
    kind: str
    covering: Optional[Covering] = None

    def __post_init__(self):
        if self.kind not in PIECE_KINDS:
            raise ValueError(f"Unknown piece kind {self.kind!r}")

    def sort_key(self) -> Tuple:
        w = self.covering.w if self.covering is not None else ()
        return PIECE_KINDS.index(self.kind), len(self.partition.k), self.partition.k, w


@dataclass(frozen=True)
class EigenspaceDescription:
    """λ-eigenspace of a matrix as a (possibly redundant) union of pieces"""
    matrix: MaxMinMatrix
    lam: Scalar
    pieces: Tuple[EigenspacePiece, ...]

    def contains(self, x: MaxMinVector) -> bool:
        return any(membership(piece.solution_set, x) for piece in self.pieces)

    def pieces_of_kind(self, kind: str) -> List[EigenspacePiece]:
        return [piece for piece in self.pieces if piece.kind == kind]


def _require_square(a: MaxMinMatrix):
    if not a.is_square():
        raise ShapeError(f"Eigenproblem needs a square matrix, got {a.shape}", a.shape)


def n_split(a: MaxMinMatrix, lam: Scalar) -> Tuple[IndexSet, IndexSet]:
    """Columns whose maximum exceeds lambda, and the remaining columns"""
    _require_square(a)
    above = tuple(j for j in range(a.cols) if max(a.array[:, j]) > lam)
    return above, complement(above, a.cols)


def background_eigenvectors(a: MaxMinMatrix, lam: Scalar) -> Optional[ParametricSet]:
    """
    Vectors x ≥ λ1 with A⊗x = λ1

    Returns None when some row maximum is below lambda. Otherwise x_j = λ on columns
    with an entry above lambda and x_j ranges over [λ,1] on the rest.
    """
    _require_square(a)
    for i in range(a.rows):
        if max(a.array[i, :]) < lam:
            logger.debug(f"No background eigenvectors: row {i + 1} maximum is below {lam}")
            return None
    _, free = n_split(a, lam)
    return ParametricSet(offset=MaxMinMatrix.filled(a.rows, 1, lam), generators=lambda_matrix(lam, a.rows, free))


def pure_eigenvectors(a: MaxMinMatrix, lam: Scalar) -> ParametricSet:
    """Column space of A*_λ: principal eigenvectors bounded by lambda"""
    _require_square(a)
    return ParametricSet(offset=MaxMinMatrix.zeros(a.rows), generators=star_lambda(a, lam))


def kl_context(a: MaxMinMatrix, partition: Partition, lam: Scalar) -> KLContext:
    """
    Index sets L₁, L₂, L', L̃, Ñ and the reduced system A'⊗z' ⊕ b' = λ1 of a partition

    Args:
        a: Square matrix
        partition: K/L split of its indices
        lam: Eigenvalue

    Returns:
        KLContext; the columns of A' follow Ñ = L̃ ∪ K in increasing index order
    """
    _require_square(a)
    if partition.n != a.rows:
        raise ShapeError(f"Partition of {partition.n} indices does not fit matrix {a.shape}", a.shape)
    k, l = partition.k, partition.l

    l1 = tuple(i for i in l if max(a[i, j] for j in l) >= lam)
    l2 = tuple(i for i in l if i not in l1)

    star_kk = kleene_star(a.submatrix(k, k))
    m_kl = star_kk @ a.submatrix(k, l)
    star_kk_lambda = star_lambda(a.submatrix(k, k), lam)

    l_gt_l1 = tuple(c for c in l if any(a[i, c] > lam for i in l1))
    l_gt_k = tuple(c for position, c in enumerate(l) if any(m_kl[r, position] > lam for r in range(len(k))))
    l_prime = tuple(sorted(set(l_gt_l1) | set(l_gt_k)))
    l_tilde = tuple(c for c in l if c not in l_prime)
    n_tilde = tuple(sorted(l_tilde + k))

    a_l2k = a.submatrix(l2, k)
    tilde_positions = [l.index(c) for c in l_tilde]
    m_k_tilde = m_kl.submatrix(range(len(k)), tilde_positions)
    lambda_tilde = lambda_matrix(lam, len(l_tilde), range(len(l_tilde)))
    blocks = MaxMinMatrix.hstack([a_l2k @ m_k_tilde @ lambda_tilde, a_l2k @ star_kk_lambda], len(l2))
    a_prime = blocks.submatrix(range(len(l2)), _column_order(l_tilde + k, n_tilde))
    b_prime = (a_l2k @ m_kl @ MaxMinMatrix.filled(len(l), 1, ONE)).scale(lam)

    if a_prime.max_entry() > lam or b_prime.max_entry() > lam:
        raise ContractViolation(f"Reduced system of {partition} has an entry above lambda={lam}")

    context = KLContext(
        partition=partition,
        lam=lam,
        l1=l1,
        l2=l2,
        l_gt_l1=l_gt_l1,
        l_gt_k=l_gt_k,
        l_prime=l_prime,
        l_tilde=l_tilde,
        n_tilde=n_tilde,
        a_prime=a_prime,
        b_prime=b_prime,
        star_kk=star_kk,
        m_kl=m_kl,
        star_kk_lambda=star_kk_lambda,
    )
    logger.debug(
        f"{partition}: L1={list(l1)} L2={list(l2)} L'={list(l_prime)} L~={list(l_tilde)}"
    )
    return context


def _column_order(labels: Tuple[int, ...], order: Tuple[int, ...]) -> List[int]:
    """Positions of the labels in the requested order"""
    return [labels.index(label) for label in order]


def sl_set(ctx: KLContext) -> ParametricSet:
    """x_L = λ on L', x_L ∈ [λ,1] on L̃"""
    l = ctx.partition.l
    return ParametricSet(
        offset=MaxMinMatrix.filled(len(l), 1, ctx.lam),
        generators=lambda_matrix(ctx.lam, len(l), [l.index(c) for c in ctx.l_tilde]),
    )


def sk_set(ctx: KLContext, x_l: MaxMinVector) -> Optional[ParametricSet]:
    """
    Solutions x_K ≤ λ1 of A_KK⊗x_K ⊕ A_KL⊗x_L = x_K for a fixed x_L

    None when (A_KK)*⊗A_KL⊗x_L exceeds lambda somewhere.
    """
    if x_l.shape != (len(ctx.partition.l), 1):
        raise ShapeError(f"x_L of shape {x_l.shape} does not fit L={list(ctx.partition.l)}", x_l.shape)
    offset = ctx.m_kl @ x_l
    if offset.max_entry() > ctx.lam:
        return None
    return ParametricSet(offset=offset, generators=ctx.star_kk_lambda)


def _affine_map(ctx: KLContext) -> Tuple[MaxMinVector, MaxMinMatrix]:
    """
    x = c ⊕ F⊗z' over the parameters z' indexed by Ñ

    x_L = λ1 ⊕ Λ_{L,L̃}⊗z_L̃ and
    x_K = λ⊗(A_KK)*⊗A_KL⊗1 ⊕ (A_KK)*⊗A_KL̃⊗Λ_L̃L̃⊗z_L̃ ⊕ (A_KK)*_λ⊗z_K
    """
    k, l = ctx.partition.k, ctx.partition.l
    n = ctx.partition.n
    width = len(ctx.n_tilde)
    tilde_positions = [l.index(c) for c in ctx.l_tilde]
    labels = ctx.l_tilde + k
    columns = _column_order(labels, ctx.n_tilde)

    lambda_tilde = lambda_matrix(ctx.lam, len(ctx.l_tilde), range(len(ctx.l_tilde)))
    f_l = MaxMinMatrix.hstack(
        [sl_set(ctx).generators, MaxMinMatrix.zeros(len(l), len(k))], len(l)
    ).submatrix(range(len(l)), columns)
    f_k = MaxMinMatrix.hstack(
        [ctx.m_kl.submatrix(range(len(k)), tilde_positions) @ lambda_tilde, ctx.star_kk_lambda], len(k)
    ).submatrix(range(len(k)), columns)

    c_l = MaxMinMatrix.filled(len(l), 1, ctx.lam)
    c_k = (ctx.m_kl @ MaxMinMatrix.filled(len(l), 1, ONE)).scale(ctx.lam)

    rows = l + k
    order = _column_order(rows, tuple(range(n)))
    c = MaxMinMatrix.vstack([c_l, c_k], 1).submatrix(order, [0])
    f = MaxMinMatrix.vstack([f_l, f_k], width).submatrix(order, range(width))
    return c, f


def kl_eigenvectors(a: MaxMinMatrix, partition: Partition, lam: Scalar) -> List[EigenspacePiece]:
    """
    All (K,L)-eigenvectors of one partition, one piece per minimal covering

    Each piece substitutes z' = z^W ⊕ Λ^W⊗v into the affine map x = c ⊕ F⊗z', giving
    offset c ⊕ F⊗z^W and generators F⊗Λ^W over the shared parameter v. With L₂ empty
    the reduced system is void and z' is free.
    """
    ctx = kl_context(a, partition, lam)
    c, f = _affine_map(ctx)
    width = len(ctx.n_tilde)

    if not ctx.l2:
        solution_set = ParametricSet(offset=c, generators=f)
        return [EigenspacePiece(partition=partition, solution_set=solution_set, kind=KL)]

    problem = build_cover_problem(ctx.a_prime, ctx.b_prime, lam)
    pieces = []
    for covering in minimal_coverings(problem):
        z_w = minimal_solution(covering, lam, width)
        solution_set = ParametricSet(offset=c | (f @ z_w), generators=f @ lambda_w_matrix(z_w))
        w = tuple(ctx.n_tilde[j] for j in covering.w)
        pieces.append(EigenspacePiece(
            partition=partition,
            solution_set=solution_set,
            kind=KL,
            covering=Covering(w=w, minimal=covering.minimal),
        ))
    if not pieces:
        logger.debug(f"{partition}: reduced system unsolvable, no (K,L)-eigenvectors")
    return pieces


def full_eigenspace(a: MaxMinMatrix, lam: Scalar) -> EigenspaceDescription:
    """
    The λ-eigenspace as pure, background and (K,L) pieces

    Args:
        a: Square matrix
        lam: Eigenvalue in [0,1]

    Returns:
        EigenspaceDescription with pieces sorted by kind, partition and covering
    """
    _require_square(a)
    n = a.rows
    everything = tuple(range(n))
    pieces: List[EigenspacePiece] = []

    background = background_eigenvectors(a, lam)
    if background is not None:
        pieces.append(EigenspacePiece(partition=Partition(k=(), l=everything, n=n), solution_set=background, kind=BACKGROUND))
    else:
        logger.warning(f"Background set is empty for lambda={lam}")

    if lam == ZERO:
        # min(0, x) = 0 makes every eigenvector a background eigenvector
        logger.info(f"lambda=0: eigenspace is the background set ({len(pieces)} piece)")
        return EigenspaceDescription(matrix=a, lam=lam, pieces=tuple(pieces))

    pieces.append(EigenspacePiece(partition=Partition(k=everything, l=(), n=n), solution_set=pure_eigenvectors(a, lam), kind=PURE))
    for size in range(1, n):
        for k in combinations(everything, size):
            pieces.extend(kl_eigenvectors(a, Partition.from_k(k, n), lam))

    pieces.sort(key=EigenspacePiece.sort_key)
    logger.info(f"Eigenspace for lambda={lam} assembled from {len(pieces)} pieces")
    return EigenspaceDescription(matrix=a, lam=lam, pieces=tuple(pieces))


def check_partition(a: MaxMinMatrix, lam: Scalar, partition: Partition, x: MaxMinVector) -> bool:
    """True iff A⊗x = λ⊗x, x ≤ λ on K and x ≥ λ on L"""
    _require_square(a)
    if x.shape != (a.rows, 1):
        raise ShapeError(f"Vector {x.shape} does not fit matrix {a.shape}", a.shape, x.shape)
    if a @ x != x.scale(lam):
        return False
    return all(x[i] <= lam for i in partition.k) and all(x[i] >= lam for i in partition.l)


def classify_point(x: MaxMinVector, lam: Scalar) -> str:
    values = x.values()
    if all(v >= lam for v in values):
        return BACKGROUND
    if all(v <= lam for v in values):
        return PURE
    return KL


def componentwise_system(a: MaxMinMatrix, lam: Scalar) -> List[str]:
    """A⊗x = λ⊗x written row by row with 1-based variable names"""
    _require_square(a)
    equations = []
    for i in range(a.rows):
        terms = ", ".join(f"min({scalar_render(a[i, j])}, x{j + 1})" for j in range(a.cols))
        equations.append(f"max({terms}) = min({scalar_render(lam)}, x{i + 1})")
    return equations
