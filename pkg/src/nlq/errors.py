"""Shared exception types.

The CLI maps these onto its exit-code contract (parse -> 2, resource -> 3,
contract -> 4); library callers can catch them individually.
"""


class DimacsParseError(ValueError):
    """Malformed DIMACS input. Carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ResourceLimitError(RuntimeError):
    """A size cap (brute-force or statevector) would be exceeded."""


class PromiseError(RuntimeError):
    """A solver contract was violated or not acknowledged."""


class GenerationError(RuntimeError):
    """Instance generation failed to meet its target after bounded retries."""


class TangencyError(ValueError):
    """A field that must be tangential to the sphere is not."""


class UnsupportedModelError(ValueError):
    """The requested diagnostic is undefined for this model (e.g. no conserved energy)."""


class SolverInternalError(RuntimeError):
    """An internal solver invariant broke (e.g. an empty search interval)."""
