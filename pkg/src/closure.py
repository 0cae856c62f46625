"""
Closure Module
Metric matrix, Kleene star, principal eigenvector generators and saturation graphs
"""
import logging
from dataclasses import dataclass
from typing import Callable, FrozenSet, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from src.algebra import (
    IndexSet,
    MaxMinMatrix,
    MaxMinVector,
    ONE,
    Scalar,
    ZERO,
    otimes,
)
from src.exceptions import ContractViolation, ShapeError

logger = logging.getLogger(__name__)


def _require_square(a: MaxMinMatrix, operation: str):
    if not a.is_square():
        raise ShapeError(f"{operation} needs a square matrix, got {a.shape}", a.shape)


def _require_principal(a: MaxMinMatrix, x: MaxMinVector):
    _require_square(a, "Principal eigenvector check")
    if x.shape != (a.rows, 1):
        raise ShapeError(f"Vector of shape {x.shape} does not fit matrix {a.shape}", a.shape, x.shape)
    if a @ x != x:
        raise ContractViolation(f"Vector {x.values()} is not a principal eigenvector (A⊗x ≠ x)")


def metric_matrix(a: MaxMinMatrix) -> MaxMinMatrix:
    """
    A⁺ = A ⊕ A² ⊕ ... ⊕ Aⁿ, the best max-min walk weight between every pair of nodes

    Computed with a Floyd-Warshall sweep over intermediate nodes; in max-min algebra the
    sweep needs no diagonal star because every cycle weight is at most 1.
    """
    _require_square(a, "Metric matrix")
    best = a.array.copy()
    for k in range(a.rows):
        best = np.maximum(best, np.minimum(best[:, [k]], best[[k], :]))
    return MaxMinMatrix._wrap(best)


def kleene_star(a: MaxMinMatrix) -> MaxMinMatrix:
    """A* = I ⊕ A⁺"""
    _require_square(a, "Kleene star")
    if a.rows == 0:
        return a
    return MaxMinMatrix.identity(a.rows) | metric_matrix(a)


def star_lambda(a: MaxMinMatrix, lam: Scalar) -> MaxMinMatrix:
    """
    Matrix whose i-th column is lambda ⊗ a⁺_ii ⊗ (A*)_{·i}

    With lambda = 1 the columns are the principal eigenvector generators.
    """
    _require_square(a, "Star generator matrix")
    if a.rows == 0:
        return a
    plus = metric_matrix(a)
    star = MaxMinMatrix.identity(a.rows) | plus
    weights = np.array([otimes(lam, plus[i, i]) for i in range(a.rows)], dtype=object)
    return MaxMinMatrix._wrap(np.minimum(star.array, weights[None, :]))


def principal_generators(a: MaxMinMatrix) -> List[MaxMinVector]:
    """Vectors a⁺_ii ⊗ (A*)_{·i}, each satisfying A⊗v = v"""
    return star_lambda(a, ONE).columns()


@dataclass(frozen=True)
class SaturationGraph:
    """Edges (i, j) with a_ij ⊗ x_j = x_i, together with their endpoints"""
    n: int
    edges: FrozenSet[Tuple[int, int]]

    @property
    def nodes(self) -> IndexSet:
        return tuple(sorted({node for edge in self.edges for node in edge}))

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.nodes)
        graph.add_edges_from(self.edges)
        return graph

    def has_outgoing_edge(self, node: int) -> bool:
        return any(i == node for i, _ in self.edges)


def saturation_graph(a: MaxMinMatrix, x: MaxMinVector) -> SaturationGraph:
    _require_principal(a, x)
    edges = frozenset(
        (i, j)
        for i in range(a.rows)
        for j in range(a.cols)
        if otimes(a[i, j], x[j]) == x[i]
    )
    logger.debug(f"Saturation graph of x={x.values()} has {len(edges)} edges")
    return SaturationGraph(n=a.rows, edges=edges)


def cyclic_components(graph: SaturationGraph) -> List[IndexSet]:
    """Strongly connected components that carry a cycle, ordered by their smallest node"""
    digraph = graph.to_networkx()
    components = []
    for component in nx.strongly_connected_components(digraph):
        members = tuple(sorted(component))
        if len(members) > 1 or digraph.has_edge(members[0], members[0]):
            components.append(members)
    return sorted(components)


def cycle_representatives(
    graph: SaturationGraph,
    choose: Callable[[IndexSet], int] = min,
) -> IndexSet:
    """
    C(A,x): one node from each cyclic strongly connected component of Sat(A,x)

    Args:
        graph: Saturation graph of a principal eigenvector
        choose: Picks the representative of a component; smallest index by default

    Returns:
        Sorted representatives
    """
    return tuple(sorted(choose(component) for component in cyclic_components(graph)))


def reconstruct_principal(
    a: MaxMinMatrix,
    x: MaxMinVector,
    representatives: Optional[Sequence[int]] = None,
) -> MaxMinVector:
    """⊕ over i in C(A,x) of x_i ⊗ a⁺_ii ⊗ (A*)_{·i}; equals x for every principal eigenvector"""
    _require_principal(a, x)
    if representatives is None:
        representatives = cycle_representatives(saturation_graph(a, x))

    plus = metric_matrix(a)
    star = MaxMinMatrix.identity(a.rows) | plus
    result = MaxMinMatrix.zeros(a.rows)
    for i in representatives:
        result = result | star.column(i).scale(otimes(x[i], plus[i, i]))
    return result


def associated_digraph(a: MaxMinMatrix) -> nx.DiGraph:
    """Digraph with an edge (i, j) of weight a_ij for every positive entry"""
    graph = nx.DiGraph()
    graph.add_nodes_from(range(a.rows))
    for i in range(a.rows):
        for j in range(a.cols):
            if a[i, j] > ZERO:
                graph.add_edge(i, j, weight=a[i, j])
    return graph
