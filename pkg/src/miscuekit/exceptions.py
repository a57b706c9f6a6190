"""Exception types raised across the toolkit.

Everything inherits from MiscueKitError so the CLI can map any data or
resource problem to a single exit code.
"""

from __future__ import annotations


class MiscueKitError(Exception):
    """Base class for all toolkit errors."""


class UnknownSymbol(MiscueKitError):
    """A phoneme symbol has no entry in the active mapping table."""

    def __init__(self, symbol: str, position: int):
        super().__init__(f"no mapping entry for symbol {symbol!r} at position {position}")
        self.symbol = symbol
        self.position = position


class EmptyReference(MiscueKitError):
    """Edit rate requested against a zero-length reference."""


class NoTrueErrors(MiscueKitError):
    """Error ratio requested with zero ground-truth errors."""


class EmptyWord(MiscueKitError):
    """String similarity requested for an empty word."""


class LabelCountMismatch(MiscueKitError):
    """Attempt annotations do not cover the reference token sequence."""


class ParseError(MiscueKitError):
    """Corpus or resource file violates its schema."""

    def __init__(self, message: str, *, record: str | None = None, field: str | None = None):
        where = "".join(
            f" ({name}={value})"
            for name, value in (("record", record), ("field", field))
            if value is not None
        )
        super().__init__(message + where)
        self.record = record
        self.field = field


class DuplicateId(MiscueKitError):
    """Two corpus records share an id."""


class SchemaVersionMismatch(MiscueKitError):
    """Corpus file declares an unsupported schema version."""


class DimensionMismatch(MiscueKitError):
    """Embedding vector length disagrees with the declared dimension."""


class MalformedLine(MiscueKitError):
    """A resource file line cannot be parsed."""

    def __init__(self, message: str, lineno: int):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class NotFound(MiscueKitError):
    """No hypothesis transcript available for the requested record."""

    def __init__(self, record_id: str, detail: str = ""):
        suffix = f": {detail}" if detail else ""
        super().__init__(f"no transcript for record {record_id!r}{suffix}")
        self.record_id = record_id


class TransportError(MiscueKitError):
    """The remote transcription service could not be reached."""


class RemoteError(MiscueKitError):
    """The remote transcription service answered with a non-2xx status."""

    def __init__(self, status: int, message: str):
        super().__init__(f"remote service returned {status}: {message}")
        self.status = status
        self.message = message


class MissingResource(MiscueKitError):
    """A required resource (embeddings, phoneme tier, annotations) is absent."""


class InsufficientPrompt(MiscueKitError):
    """The prompt cannot host the requested injections without overlap."""


class NoCandidateWord(MiscueKitError):
    """No replacement word satisfies the constraints of a miscue category."""

    def __init__(self, category: str, detail: str = ""):
        suffix = f" ({detail})" if detail else ""
        super().__init__(f"no candidate word for category {category}{suffix}")
        self.category = category
