"""
Exceptions Module
Error hierarchy shared by the max-min library and its command line front end
"""
from typing import Optional, Sequence, Tuple


class MaxMinError(Exception):
    """Base class for every error raised by the package"""


class ScalarParseError(MaxMinError, ValueError):
    """A decimal token is malformed or lies outside [0,1]"""

    def __init__(self, token: str, reason: str = "not a decimal in [0,1]"):
        self.token = token
        self.reason = reason
        super().__init__(f"Cannot parse scalar {token!r}: {reason}")


class ShapeError(MaxMinError, ValueError):
    """Operands have incompatible dimensions"""

    def __init__(self, message: str, *shapes: Tuple[int, ...]):
        self.shapes = shapes
        super().__init__(message)


class IndexRangeError(MaxMinError, IndexError):
    """An index lies outside the ambient dimension"""

    def __init__(self, indices: Sequence[int], dimension: int):
        self.indices = tuple(indices)
        self.dimension = dimension
        super().__init__(f"Indices {list(indices)} out of range for dimension {dimension}")


class ContractViolation(MaxMinError, ValueError):
    """A documented precondition on an input value does not hold"""


class ConditionViolation(ContractViolation):
    """An entry of A or b exceeds lambda"""

    def __init__(self, row: int, column: Optional[int], value, lam):
        self.row = row
        self.column = column
        self.value = value
        self.lam = lam
        # 1-based in messages
        where = f"a[{row + 1},{column + 1}]" if column is not None else f"b[{row + 1}]"
        super().__init__(f"Entry {where}={value} exceeds lambda={lam}")


class GridSizeError(MaxMinError):
    """Brute-force enumeration would exceed the configured cap"""

    def __init__(self, requested: int, cap: int):
        self.requested = requested
        self.cap = cap
        super().__init__(f"Grid enumeration of {requested} points exceeds cap {cap}")


class ProblemFileError(MaxMinError, ValueError):
    """An input or description file cannot be read or validated"""

    def __init__(self, path: str, position: str, message: str):
        self.path = path
        self.position = position
        super().__init__(f"{path}: {position}: {message}")
