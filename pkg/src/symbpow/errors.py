"""Exception hierarchy shared across the package.

Two families matter for the command line front end: input problems
(malformed files, unknown catalog names, bad polynomial text) exit with
code 2, while internal consistency violations (engine disagreement,
unverified generating sets) exit with code 3.
"""


class SymbpowError(Exception):
    """Base class for all package errors."""


class InputDataError(SymbpowError):
    """User-supplied data is malformed or inconsistent (CLI exit code 2)."""


class InternalCheckError(SymbpowError):
    """An internal invariant or cross-check failed (CLI exit code 3)."""


class DimensionMismatchError(InputDataError):
    """Vectors of unequal length were combined."""


class ZeroTripleError(InputDataError):
    """A projective point or line was built from (0, 0, 0)."""


class IdenticalLinesError(InputDataError):
    """Two equal lines were intersected."""


class DuplicateLineError(InputDataError):
    """An arrangement contained the same line twice."""


class PencilError(InputDataError):
    """All lines of an arrangement pass through one common point."""


class PolyParseError(InputDataError):
    """Polynomial text could not be parsed.

    ``position`` is the 0-based offset of the offending character.
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class NonHomogeneousError(InputDataError):
    """Parsed polynomial mixes two different degrees."""

    def __init__(self, degree_a: int, degree_b: int):
        super().__init__(
            f"polynomial is not homogeneous: mixes degrees {degree_a} and {degree_b}"
        )
        self.degrees = (degree_a, degree_b)


class UnknownEntryError(InputDataError):
    """Requested builtin catalog entry does not exist."""


class ArrangementFileError(InputDataError):
    """An arrangement file failed to parse; carries the 1-based line number."""

    def __init__(self, message: str, line_number: int | None = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class GeneratorSetUnverifiedError(InternalCheckError):
    """A containment check was attempted with a generating set that was not
    verified to generate the ideal degree-wise up to the requested cap."""


class EngineDisagreementError(InternalCheckError):
    """Two linear-algebra engines returned different answers for one matrix."""


class WitnessRejection(SymbpowError):
    """A candidate witness failed certification.

    Not an input error: the command completes and reports the failing
    condition. ``reason`` is one of ``not-homogeneous``, ``zero-polynomial``,
    ``insufficient-order``, ``in-power-span``.
    """

    def __init__(self, reason: str, message: str, details: dict | None = None):
        super().__init__(message)
        self.reason = reason
        self.details = details or {}
