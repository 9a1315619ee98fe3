"""Exception hierarchy.  Each class maps to one CLI exit code."""


class ConeGreenError(Exception):
    """Base class for all engine errors."""

    exit_code = 1
    kind = "error"

    def record(self):
        """Machine-readable form used by the CLI."""
        return {"kind": self.kind, "message": str(self)}


class ParseError(ConeGreenError):
    exit_code = 2
    kind = "parse_error"

    def __init__(self, message, line=1, column=1):
        super().__init__("%s (line %d, column %d)" % (message, line, column))
        self.line = line
        self.column = column

    def record(self):
        rec = super().record()
        rec.update(line=self.line, column=self.column)
        return rec


class UnboundParameter(ParseError):
    kind = "unbound_parameter"

    def __init__(self, name, line=1, column=1):
        super().__init__("unbound parameter %r" % name, line, column)
        self.name = name


class NotFuchsType(ConeGreenError):
    exit_code = 2
    kind = "not_fuchs_type"

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = "%s (line %d, column %d)" % (message, line, column)
        super().__init__(message)
        self.line = line
        self.column = column

    def record(self):
        rec = super().record()
        if self.line is not None:
            rec.update(line=self.line, column=self.column)
        return rec


class PreconditionViolation(ConeGreenError):
    exit_code = 3
    kind = "precondition_violation"


class SingularSymbol(PreconditionViolation):
    kind = "singular_symbol"


class UnsupportedExponentField(ConeGreenError):
    exit_code = 4
    kind = "unsupported_exponent_field"


class VerificationFailure(ConeGreenError):
    exit_code = 5
    kind = "verification_failure"


class DegenerateBasis(VerificationFailure):
    kind = "degenerate_basis"


class TruncationError(ConeGreenError, IndexError):
    """Access beyond the recorded truncation order of an expansion."""

    kind = "truncation_error"
