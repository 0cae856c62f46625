"""
Plot Data Module
Tab-separated box and point tables describing an eigenspace in two or three dimensions
"""
import csv
import io
import logging
from typing import List, Optional, Sequence, Tuple

from src.algebra import scalar_render
from src.eigenspace import EigenspaceDescription, box_bounds, classify_point, sample
from src.exceptions import ShapeError
from src.oracle import DEFAULT_GRID_CAP, grid_eigenvectors

logger = logging.getLogger(__name__)

MAX_PLOT_DIMENSION = 3
BOX_HEADER = ("piece", "kind", "partition", "coordinate", "lo", "hi")


def require_plottable(n: int):
    if n < 2 or n > MAX_PLOT_DIMENSION:
        raise ShapeError(f"Plot data needs dimension 2 or 3, got {n}", (n, n))


def _point_header(n: int) -> Tuple[str, ...]:
    return ("source", "piece", "label") + tuple(f"x{i + 1}" for i in range(n))


def box_rows(description: EigenspaceDescription) -> List[Tuple[str, ...]]:
    """One row per piece and coordinate with the coordinate's [lo, hi] range"""
    require_plottable(description.matrix.rows)
    rows = []
    for index, piece in enumerate(description.pieces):
        lower, upper = box_bounds(piece.solution_set)
        for i in range(lower.rows):
            rows.append((
                str(index + 1),
                piece.kind,
                str(piece.partition),
                str(i + 1),
                scalar_render(lower[i]),
                scalar_render(upper[i]),
            ))
    return rows


def point_rows(
    description: EigenspaceDescription,
    count: int,
    seed: int = 0,
    grid_cap: Optional[int] = DEFAULT_GRID_CAP,
) -> List[Tuple[str, ...]]:
    """
    Sampled members of every piece, followed by the grid eigenvectors when grid_cap is set

    Each point is labelled pure, background or kl by the position of its coordinates
    relative to lambda.
    """
    require_plottable(description.matrix.rows)
    lam = description.lam
    rows = []
    for index, piece in enumerate(description.pieces):
        for x in sample(piece.solution_set, count, seed + index):
            rows.append(("sample", str(index + 1), classify_point(x, lam)) + tuple(scalar_render(v) for v in x.values()))

    if grid_cap is not None:
        for x in grid_eigenvectors(description.matrix, lam, cap=grid_cap):
            rows.append(("grid", "", classify_point(x, lam)) + tuple(scalar_render(v) for v in x.values()))
    logger.debug(f"Plot data: {len(rows)} points")
    return rows


def to_tsv(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, delimiter="\t", lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def plot_tables(
    description: EigenspaceDescription,
    count: int,
    seed: int = 0,
    grid_cap: Optional[int] = DEFAULT_GRID_CAP,
) -> Tuple[str, str]:
    """Box table and point table as TSV text"""
    boxes = to_tsv(BOX_HEADER, box_rows(description))
    points = to_tsv(_point_header(description.matrix.rows), point_rows(description, count, seed, grid_cap))
    return boxes, points


def write_plot_data(
    description: EigenspaceDescription,
    out_prefix: str,
    count: int,
    seed: int = 0,
    grid_cap: Optional[int] = DEFAULT_GRID_CAP,
) -> Tuple[str, str]:
    """Write <out_prefix>.boxes.tsv and <out_prefix>.points.tsv and return their paths"""
    boxes, points = plot_tables(description, count, seed, grid_cap)
    paths = (f"{out_prefix}.boxes.tsv", f"{out_prefix}.points.tsv")
    for path, text in zip(paths, (boxes, points)):
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    logger.info(f"Plot data written to {paths[0]} and {paths[1]}")
    return paths
