"""Exception types shared across the package."""


class TriexError(Exception):
    """Base class for all errors raised by this package."""


class InvalidArgument(TriexError):
    """An identifier or structure does not belong to the context it is used with."""


class FormatError(TriexError):
    """A file or payload does not parse as the expected format."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class PreconditionViolation(TriexError):
    """Background knowledge handed to an operation does not hold in its context."""


class RejectedAnswer(TriexError):
    """An expert answer failed validation.

    ``reason`` is one of the stable codes: no-violation, contradicts-claim,
    unknown-attribute, missing-counterexample.
    """

    def __init__(self, reason, detail):
        super().__init__(f"{reason}: {detail}")
        self.reason = reason
        self.detail = detail


class InconsistentAnswer(TriexError):
    """A counterexample contradicts knowledge the expert asserted earlier."""

    def __init__(self, report):
        super().__init__(report.get("detail", "inconsistent answer"))
        self.report = report


class TranscriptDivergence(TriexError):
    """A replayed session asked a question the recorded transcript does not contain."""
