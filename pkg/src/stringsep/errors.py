"""Shared exception types."""


class ContractViolation(ValueError):
    """An operation was called with inputs breaking its stated precondition."""


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class GenerationError(RuntimeError):
    """A randomized generator exhausted its retry budget."""


class SizeCapExceeded(ValueError):
    """Input exceeds the enumeration / solver size cap for this operation."""


class NoVertexCut(ValueError):
    """The graph admits no vertex cut (it is complete)."""


class StandardnessError(ValueError):
    """A curve collection violates standardness (overlap or triple point)."""
