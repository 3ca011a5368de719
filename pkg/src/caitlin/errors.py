"""Error types shared across the toolkit."""


class CaitlinError(Exception):
    """Base class for all errors raised by this package."""


class SourceError(CaitlinError):
    """A problem in the Pascal source, located by line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column


class LexicalError(SourceError):
    """Illegal character, unterminated string or comment."""


class ParseError(SourceError):
    """Token stream does not match the grammar."""


class SemanticError(SourceError):
    """Grammatically valid source that breaks a static rule."""


class PascalRuntimeError(CaitlinError):
    """Raised during execution; recorded in the trace status."""


class TraceFormatError(CaitlinError):
    """A trace file line violates the JSON-lines schema."""

    def __init__(self, message: str, line: int):
        super().__init__(f"{message} (trace line {line})")
        self.message = message
        self.line = line


class InvalidTraceError(CaitlinError):
    """Trace events break a structural invariant (e.g. unbalanced enter/exit)."""


class ConfigError(CaitlinError):
    """Bad configuration file or out-of-range setting."""
