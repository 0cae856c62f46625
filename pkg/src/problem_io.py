"""
Problem I/O Module
Reads problem files and writes result and description files.

Files are JSON. Scalars are decimal strings ("0.35") or exact fractions ("1/3");
JSON numbers are read from their source text, never through binary floats. Indices
are 1-based and generator matrices are stored column by column.
"""
import json
import logging
import sys
from dataclasses import dataclass
from typing import List, Literal, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from src.algebra import MaxMinMatrix, MaxMinVector, Scalar, parse_rendered, scalar_render
from src.cover_solver import Covering
from src.eigenspace import EigenspaceDescription, EigenspacePiece, Partition
from src.exceptions import MaxMinError, ProblemFileError, ScalarParseError
from src.parametric_set import ParametricSet

logger = logging.getLogger(__name__)

STDIN = "-"


# -------------------------------------------------------------------
# File models
# -------------------------------------------------------------------
class ProblemFile(BaseModel):
    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    matrix: List[List[str]]
    b: Optional[List[str]] = None
    lambda_: Optional[str] = Field(default=None, alias="lambda")
    x: Optional[List[str]] = None

    @field_validator("matrix")
    @classmethod
    def rectangular(cls, v: List[List[str]]) -> List[List[str]]:
        if not v or not v[0]:
            raise ValueError("matrix must have at least one row and one column")
        if any(len(row) != len(v[0]) for row in v):
            raise ValueError("matrix rows must have equal length")
        return v


class ParametricSetModel(BaseModel):
    offset: List[str]
    generators: List[List[str]]


class PieceModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    kind: Literal["pure", "background", "kl"]
    k: List[int] = Field(alias="K")
    l: List[int] = Field(alias="L")
    w: Optional[List[int]] = Field(default=None, alias="W")
    offset: List[str]
    generators: List[List[str]]

    @field_validator("k", "l", "w")
    @classmethod
    def one_based(cls, v: Optional[List[int]]) -> Optional[List[int]]:
        if v is not None and any(i < 1 for i in v):
            raise ValueError("indices are 1-based")
        return v


class DescriptionFile(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    lambda_: str = Field(alias="lambda")
    matrix: List[List[str]]
    pieces: List[PieceModel]


class StarResult(BaseModel):
    metric: List[List[str]]
    star: List[List[str]]


class BellmanResult(BaseModel):
    least_solution: List[str]
    solution_set: ParametricSetModel


class CoveringBlock(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    w: List[int] = Field(alias="W")
    z: List[str]
    solution_set: ParametricSetModel


class CoverResult(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    status: Literal["SOLVED", "UNSOLVABLE"]
    lambda_: str = Field(alias="lambda")
    i0: List[int] = Field(alias="I0")
    c: List[List[int]] = Field(alias="C")
    coverings: List[CoveringBlock]


class VerifyRow(BaseModel):
    row: int
    lhs: str
    rhs: str
    equal: bool


class VerifyResult(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    eigenvector: bool
    lambda_: str = Field(alias="lambda")
    rows: List[VerifyRow]


# -------------------------------------------------------------------
# Parsed problem
# -------------------------------------------------------------------
@dataclass(frozen=True)
class Problem:
    matrix: MaxMinMatrix
    b: Optional[MaxMinVector] = None
    lam: Optional[Scalar] = None
    x: Optional[MaxMinVector] = None
    source: str = STDIN


def read_text(path: str) -> str:
    """Read a file (or standard input for "-"), falling back to latin-1 for non-UTF-8 bytes"""
    try:
        if path == STDIN:
            content = sys.stdin.buffer.read()
        else:
            with open(path, "rb") as handle:
                content = handle.read()
    except OSError as e:
        raise ProblemFileError(path, "file", e.strerror or str(e))

    try:
        return content.decode("utf-8")
    except UnicodeDecodeError:
        return content.decode("latin-1")


def _load_json(text: str, path: str) -> dict:
    try:
        # numbers keep their source text so 0.1 stays exactly 1/10
        data = json.loads(text, parse_float=str, parse_int=str)
    except json.JSONDecodeError as e:
        raise ProblemFileError(path, f"line {e.lineno} column {e.colno}", e.msg)
    if not isinstance(data, dict):
        raise ProblemFileError(path, "top level", "expected a JSON object")
    return data


def _validation_position(error: ValidationError) -> str:
    first = error.errors()[0]
    return ".".join(str(part) for part in first["loc"]) or "top level"


def _scalar(text: str, path: str, position: str) -> Scalar:
    try:
        return parse_rendered(text)
    except ScalarParseError as e:
        raise ProblemFileError(path, position, e.reason)


def _vector(values: Sequence[str], path: str, name: str) -> MaxMinVector:
    return MaxMinMatrix.vector([_scalar(v, path, f"{name}[{i + 1}]") for i, v in enumerate(values)])


def _matrix(rows: Sequence[Sequence[str]], path: str, name: str) -> MaxMinMatrix:
    return MaxMinMatrix.from_rows([
        [_scalar(v, path, f"{name}[{i + 1}][{j + 1}]") for j, v in enumerate(row)]
        for i, row in enumerate(rows)
    ])


def _columns(columns: Sequence[Sequence[str]], rows: int, path: str, name: str) -> MaxMinMatrix:
    blocks = []
    for j, column in enumerate(columns):
        if len(column) != rows:
            raise ProblemFileError(path, f"{name}[{j + 1}]", f"generator has {len(column)} entries, expected {rows}")
        blocks.append(_vector(column, path, f"{name}[{j + 1}]"))
    return MaxMinMatrix.hstack(blocks, rows)


def parse_problem(text: str, path: str = STDIN) -> Problem:
    """
    Parse a problem file

    Args:
        text: JSON text with "matrix" and optional "b", "lambda" and "x"
        path: Name used in error messages

    Returns:
        Problem with exact Scalars
    """
    data = _load_json(text, path)
    try:
        model = ProblemFile.model_validate(data)
    except ValidationError as e:
        raise ProblemFileError(path, _validation_position(e), e.errors()[0]["msg"])

    problem = Problem(
        matrix=_matrix(model.matrix, path, "matrix"),
        b=_vector(model.b, path, "b") if model.b is not None else None,
        lam=_scalar(model.lambda_, path, "lambda") if model.lambda_ is not None else None,
        x=_vector(model.x, path, "x") if model.x is not None else None,
        source=path,
    )
    logger.debug(f"Parsed {path}: matrix {problem.matrix.shape}")
    return problem


def load_problem(path: str) -> Problem:
    return parse_problem(read_text(path), path)


def serialize_problem(problem: Problem) -> dict:
    model = ProblemFile(
        matrix=render_matrix(problem.matrix),
        b=render_vector(problem.b) if problem.b is not None else None,
        lambda_=scalar_render(problem.lam) if problem.lam is not None else None,
        x=render_vector(problem.x) if problem.x is not None else None,
    )
    return model.model_dump(by_alias=True, exclude_none=True)


# -------------------------------------------------------------------
# Rendering
# -------------------------------------------------------------------
def render_vector(x: MaxMinVector) -> List[str]:
    return [scalar_render(v) for v in x.values()]


def render_matrix(a: MaxMinMatrix) -> List[List[str]]:
    return [[scalar_render(v) for v in row] for row in a.to_rows()]


def render_set(parametric_set: ParametricSet) -> ParametricSetModel:
    return ParametricSetModel(
        offset=render_vector(parametric_set.offset),
        generators=[render_vector(column) for column in parametric_set.generators.columns()],
    )


def _one_based(indices: Sequence[int]) -> List[int]:
    return [i + 1 for i in indices]


def serialize_description(description: EigenspaceDescription) -> DescriptionFile:
    pieces = []
    for piece in description.pieces:
        rendered = render_set(piece.solution_set)
        pieces.append(PieceModel(
            kind=piece.kind,
            k=_one_based(piece.partition.k),
            l=_one_based(piece.partition.l),
            w=_one_based(piece.covering.w) if piece.covering is not None else None,
            offset=rendered.offset,
            generators=rendered.generators,
        ))
    return DescriptionFile(
        lambda_=scalar_render(description.lam),
        matrix=render_matrix(description.matrix),
        pieces=pieces,
    )


def parse_description(data: dict, path: str = STDIN) -> EigenspaceDescription:
    """Rebuild an EigenspaceDescription from a decoded description file"""
    try:
        model = DescriptionFile.model_validate(data)
    except ValidationError as e:
        raise ProblemFileError(path, _validation_position(e), e.errors()[0]["msg"])

    matrix = _matrix(model.matrix, path, "matrix")
    n = matrix.rows
    pieces = []
    for index, piece in enumerate(model.pieces):
        position = f"pieces[{index + 1}]"
        try:
            partition = Partition(k=tuple(i - 1 for i in piece.k), l=tuple(i - 1 for i in piece.l), n=n)
            offset = _vector(piece.offset, path, f"{position}.offset")
            solution_set = ParametricSet(offset=offset, generators=_columns(piece.generators, n, path, f"{position}.generators"))
        except ProblemFileError:
            raise
        except MaxMinError as e:
            raise ProblemFileError(path, position, str(e))
        covering = Covering(w=tuple(i - 1 for i in piece.w)) if piece.w is not None else None
        pieces.append(EigenspacePiece(partition=partition, solution_set=solution_set, kind=piece.kind, covering=covering))

    return EigenspaceDescription(
        matrix=matrix,
        lam=_scalar(model.lambda_, path, "lambda"),
        pieces=tuple(pieces),
    )


def load_description(path: str) -> EigenspaceDescription:
    return parse_description(_load_json(read_text(path), path), path)


def dump_json(model) -> str:
    data = model.model_dump(by_alias=True, exclude_none=True) if isinstance(model, BaseModel) else model
    return json.dumps(data, indent=2) + "\n"
