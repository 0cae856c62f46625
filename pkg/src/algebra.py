"""
Max-Min Algebra Module
Exact scalar arithmetic on [0,1] and the max-min matrix operations every solver builds on.

Scalars are Fractions: the solvers test exact equalities such as a_ij = lambda, so no
floating point value ever enters a matrix. Indices are 0-based here; rendering for users
is 1-based and lives in the I/O layer.
"""
import re
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np

from src.exceptions import IndexRangeError, ScalarParseError, ShapeError

Scalar = Fraction
IndexSet = Tuple[int, ...]
ScalarLike = Union[Fraction, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)

_DECIMAL_PATTERN = re.compile(r"^(\d*)(?:\.(\d*))?$")


def scalar_parse(text: str) -> Scalar:
    """
    Parse a finite decimal such as ".7", "0.35" or "1" into an exact Scalar

    Args:
        text: Decimal text

    Returns:
        Reduced Fraction in [0,1]
    """
    token = text.strip()
    match = _DECIMAL_PATTERN.match(token)
    if match is None or not (match.group(1) or match.group(2)):
        raise ScalarParseError(text)

    digits = match.group(2) or ""
    value = Fraction(int((match.group(1) or "0") + digits), 10 ** len(digits))
    if value > ONE:
        raise ScalarParseError(text, "outside [0,1]")
    return value


def to_scalar(value: ScalarLike) -> Scalar:
    """Coerce a Fraction, int or decimal string into a Scalar, rejecting binary floats"""
    if isinstance(value, str):
        return scalar_parse(value)
    if isinstance(value, bool) or isinstance(value, float):
        raise ScalarParseError(repr(value), "binary floats are not exact; pass a string")
    if isinstance(value, (Fraction, int)):
        result = Fraction(value)
        if not ZERO <= result <= ONE:
            raise ScalarParseError(str(value), "outside [0,1]")
        return result
    raise ScalarParseError(repr(value), f"unsupported type {type(value).__name__}")


def scalar_render(value: Scalar) -> str:
    """
    Exact text for a Scalar: a decimal when the denominator divides a power of ten
    ("0", "0.35", "1"), otherwise "p/q"
    """
    value = Fraction(value)
    remainder = value.denominator
    exponents = {}
    for prime in (2, 5):
        exponents[prime] = 0
        while remainder % prime == 0:
            remainder //= prime
            exponents[prime] += 1
    if remainder != 1:
        return f"{value.numerator}/{value.denominator}"

    digits = max(exponents.values())
    if digits == 0:
        return str(value.numerator)
    scaled = value.numerator * (10 ** digits) // value.denominator
    whole, fraction = divmod(scaled, 10 ** digits)
    return f"{whole}.{str(fraction).rjust(digits, '0')}"


def parse_rendered(text: str) -> Scalar:
    """Inverse of scalar_render: decimals as in scalar_parse plus "p/q" fractions in [0,1]"""
    token = text.strip()
    if "/" not in token:
        return scalar_parse(token)

    numerator, _, denominator = token.partition("/")
    if not (numerator.isdigit() and denominator.isdigit()) or int(denominator) == 0:
        raise ScalarParseError(text, "not a fraction p/q")
    value = Fraction(int(numerator), int(denominator))
    if value > ONE:
        raise ScalarParseError(text, "outside [0,1]")
    return value


def oplus(a: Scalar, b: Scalar) -> Scalar:
    return a if a >= b else b


def otimes(a: Scalar, b: Scalar) -> Scalar:
    return a if a <= b else b


def index_set(indices: Iterable[int], dimension: int) -> IndexSet:
    """Normalize indices into a sorted duplicate-free tuple inside range(dimension)"""
    result = tuple(sorted(set(int(i) for i in indices)))
    if result and (result[0] < 0 or result[-1] >= dimension):
        raise IndexRangeError(result, dimension)
    return result


def complement(indices: IndexSet, dimension: int) -> IndexSet:
    members = set(indices)
    return tuple(i for i in range(dimension) if i not in members)


class MaxMinMatrix:
    """
    Immutable dense matrix over the max-min semiring

    Vectors are n x 1 matrices. Operators: ``A @ B`` is the max-min product,
    ``A | B`` the entrywise maximum.
    """

    __slots__ = ("_data",)

    def __init__(self, data):
        array = np.array(data, dtype=object)
        if array.ndim != 2:
            raise ShapeError(f"Matrix data must be two-dimensional, got {array.ndim} dimensions", array.shape)
        if array.size:
            array = np.vectorize(to_scalar, otypes=[object])(array)
        array.flags.writeable = False
        self._data = array

    @classmethod
    def _wrap(cls, array: np.ndarray) -> "MaxMinMatrix":
        # Trusted constructor for arrays already holding Scalars
        matrix = cls.__new__(cls)
        array = np.asarray(array, dtype=object)
        array.flags.writeable = False
        matrix._data = array
        return matrix

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[ScalarLike]]) -> "MaxMinMatrix":
        rows = [list(row) for row in rows]
        if not rows:
            raise ShapeError("Matrix needs at least one row", (0,))
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise ShapeError("Matrix rows have different lengths", tuple(len(r) for r in rows))
        array = np.empty((len(rows), width), dtype=object)
        for i, row in enumerate(rows):
            for j, value in enumerate(row):
                array[i, j] = to_scalar(value)
        return cls._wrap(array)

    @classmethod
    def vector(cls, values: Sequence[ScalarLike]) -> "MaxMinMatrix":
        array = np.empty((len(values), 1), dtype=object)
        for i, value in enumerate(values):
            array[i, 0] = to_scalar(value)
        return cls._wrap(array)

    @classmethod
    def filled(cls, rows: int, cols: int, value: ScalarLike) -> "MaxMinMatrix":
        array = np.empty((rows, cols), dtype=object)
        array.fill(to_scalar(value))
        return cls._wrap(array)

    @classmethod
    def zeros(cls, rows: int, cols: int = 1) -> "MaxMinMatrix":
        return cls.filled(rows, cols, ZERO)

    @classmethod
    def identity(cls, n: int) -> "MaxMinMatrix":
        array = np.empty((n, n), dtype=object)
        array.fill(ZERO)
        for i in range(n):
            array[i, i] = ONE
        return cls._wrap(array)

    @classmethod
    def hstack(cls, blocks: Sequence["MaxMinMatrix"], rows: int) -> "MaxMinMatrix":
        if any(block.rows != rows for block in blocks):
            raise ShapeError("hstack blocks must share the row count", *(b.shape for b in blocks))
        if not blocks:
            return cls.zeros(rows, 0)
        return cls._wrap(np.concatenate([block._data for block in blocks], axis=1))

    @classmethod
    def vstack(cls, blocks: Sequence["MaxMinMatrix"], cols: int) -> "MaxMinMatrix":
        if any(block.cols != cols for block in blocks):
            raise ShapeError("vstack blocks must share the column count", *(b.shape for b in blocks))
        if not blocks:
            return cls.zeros(0, cols)
        return cls._wrap(np.concatenate([block._data for block in blocks], axis=0))

    # ------------------------------------------------------------------
    # Shape and access
    # ------------------------------------------------------------------
    @property
    def rows(self) -> int:
        return self._data.shape[0]

    @property
    def cols(self) -> int:
        return self._data.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self._data.shape

    @property
    def array(self) -> np.ndarray:
        """Read-only object array of Fractions"""
        return self._data

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, key) -> Scalar:
        if isinstance(key, tuple):
            return self._data[key]
        return self._data[key, 0]

    def to_rows(self) -> List[List[Scalar]]:
        return [list(row) for row in self._data]

    def values(self) -> List[Scalar]:
        """Row-major flattening; for a column vector, its entries in order"""
        return list(self._data.ravel())

    def column(self, j: int) -> "MaxMinMatrix":
        return MaxMinMatrix._wrap(self._data[:, [j]])

    def columns(self) -> List["MaxMinMatrix"]:
        return [self.column(j) for j in range(self.cols)]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "MaxMinMatrix":
        row_index = np.asarray(list(rows), dtype=int)
        col_index = np.asarray(list(cols), dtype=int)
        if row_index.size and (row_index.min() < 0 or row_index.max() >= self.rows):
            raise IndexRangeError(list(rows), self.rows)
        if col_index.size and (col_index.min() < 0 or col_index.max() >= self.cols):
            raise IndexRangeError(list(cols), self.cols)
        return MaxMinMatrix._wrap(self._data[np.ix_(row_index, col_index)])

    # ------------------------------------------------------------------
    # Algebra
    # ------------------------------------------------------------------
    def __matmul__(self, other: "MaxMinMatrix") -> "MaxMinMatrix":
        return mat_mul(self, other)

    def __or__(self, other: "MaxMinMatrix") -> "MaxMinMatrix":
        return mat_oplus(self, other)

    def scale(self, s: Scalar) -> "MaxMinMatrix":
        """s ⊗ A, the entrywise minimum with s"""
        if not self._data.size:
            return self
        return MaxMinMatrix._wrap(np.minimum(self._data, s))

    def leq(self, other: "MaxMinMatrix") -> bool:
        _require_same_shape(self, other, "comparison")
        return bool(np.all(self._data <= other._data)) if self._data.size else True

    def max_entry(self) -> Scalar:
        return max(self._data.ravel(), default=ZERO)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MaxMinMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        return bool(np.all(self._data == other._data)) if self._data.size else True

    def __hash__(self) -> int:
        return hash((self.shape, tuple(self._data.ravel())))

    def __repr__(self) -> str:
        rows = "; ".join(", ".join(str(v) for v in row) for row in self._data)
        return f"MaxMinMatrix([{rows}])"


MaxMinVector = MaxMinMatrix


def _require_same_shape(a: MaxMinMatrix, b: MaxMinMatrix, operation: str):
    if a.shape != b.shape:
        raise ShapeError(f"Shape mismatch in {operation}: {a.shape} vs {b.shape}", a.shape, b.shape)


def mat_mul(a: MaxMinMatrix, b: MaxMinMatrix) -> MaxMinMatrix:
    """(A ⊗ B)_ij = max_k min(a_ik, b_kj)"""
    if a.cols != b.rows:
        raise ShapeError(f"Cannot multiply {a.shape} by {b.shape}", a.shape, b.shape)
    if a.cols == 0 or a.rows == 0 or b.cols == 0:
        return MaxMinMatrix.zeros(a.rows, b.cols)
    products = np.minimum(a.array[:, :, None], b.array[None, :, :])
    return MaxMinMatrix._wrap(products.max(axis=1))


def mat_oplus(a: MaxMinMatrix, b: MaxMinMatrix) -> MaxMinMatrix:
    _require_same_shape(a, b, "oplus")
    if not a.array.size:
        return a
    return MaxMinMatrix._wrap(np.maximum(a.array, b.array))


def mat_power(a: MaxMinMatrix, k: int) -> MaxMinMatrix:
    if not a.is_square():
        raise ShapeError(f"Matrix power needs a square matrix, got {a.shape}", a.shape)
    if k < 0:
        raise ValueError(f"Power must be nonnegative, got {k}")
    result = MaxMinMatrix.identity(a.rows)
    for _ in range(k):
        result = mat_mul(result, a)
    return result


def lambda_matrix(lam: Scalar, n: int, columns: Sequence[int]) -> MaxMinMatrix:
    """
    Column selection of the matrix with unit diagonal and lambda elsewhere

    Args:
        lam: Off-diagonal value
        n: Row count
        columns: Selected column indices (0-based)

    Returns:
        n x |columns| matrix; entry (i, c) is 1 when i == columns[c], lambda otherwise
    """
    columns = list(columns)
    if any(c < 0 or c >= n for c in columns):
        raise IndexRangeError(columns, n)
    array = np.empty((n, len(columns)), dtype=object)
    array.fill(lam)
    for position, c in enumerate(columns):
        array[c, position] = ONE
    return MaxMinMatrix._wrap(array)


def lambda_w_matrix(z_w: MaxMinVector) -> MaxMinMatrix:
    """Square matrix with unit diagonal whose off-diagonal entries in row i equal z_w[i]"""
    n = z_w.rows
    array = np.empty((n, n), dtype=object)
    for i in range(n):
        array[i, :] = z_w[i]
        array[i, i] = ONE
    return MaxMinMatrix._wrap(array)
