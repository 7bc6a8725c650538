"""Error taxonomy shared across the toolkit.

Three families map onto the CLI exit codes: invalid input (1), resource
ceilings (2), and internal consistency failures (3). A code-3 error means a
structural fact the machinery relies on failed to hold; it signals a bug,
never bad user input.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any


def _jsonable(value: Any) -> Any:
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, (int, float, str)):
        return value
    return str(value)


class OverlapKitError(Exception):
    """Base class; ``details`` carries structured context for error reports."""

    exit_code = 1

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.details = details

    def to_json(self) -> dict:
        return {
            "error": type(self).__name__,
            "message": str(self),
            "details": _jsonable(self.details),
        }


class InputError(OverlapKitError):
    exit_code = 1


class ResourceLimitError(OverlapKitError):
    exit_code = 2


class ConsistencyError(OverlapKitError):
    exit_code = 3


class InvalidArgument(InputError):
    pass


class NonPositiveDiscriminant(InputError):
    pass


class FactorizationUnknown(ResourceLimitError):
    """An integer resisted the factoring budget; no guess is returned."""


class PolySyntaxError(InputError):
    def __init__(self, message: str, position: int, **details: Any):
        super().__init__(message, position=position, **details)
        self.position = position


class UnsupportedExponent(PolySyntaxError):
    pass


class DivisorZero(InputError):
    pass


class SearchSpaceTooLarge(ResourceLimitError):
    pass


class TooManyModularFactors(ResourceLimitError):
    pass


class NotMonotone(InputError):
    pass


class BadBoundary(InputError):
    pass


class InvalidStep(InputError):
    def __init__(self, message: str, index: int, **details: Any):
        super().__init__(message, index=index, **details)
        self.index = index


class NotInClass(InputError):
    pass


class Infeasible(InputError):
    pass


class OutOfClass(InputError):
    pass


class UnexpectedChildGap(ConsistencyError):
    """A child gap fell outside the three admissible classes."""


class VertexExplosion(ResourceLimitError):
    pass


class NoConvergence(ConsistencyError):
    pass


class TooDeep(ResourceLimitError):
    pass


class DegenerateFit(InputError):
    pass
