"""Exception taxonomy shared across the package."""


class AqgrError(Exception):
    """Base class for all package errors."""


class InvalidConfigError(AqgrError):
    pass


class NotAnObjectError(AqgrError):
    """Raw summary input is not a JSON object."""


class UnrecoverableShapeError(AqgrError):
    """A summary field is present but cannot be coerced to its schema type."""


class NotFoundError(AqgrError):
    pass


class DimensionMismatchError(AqgrError):
    pass


class InvalidVectorError(AqgrError):
    """Vector cannot be stored (non-finite values or zero norm)."""


class UnknownDocError(AqgrError):
    pass


class MissingBindingError(AqgrError):
    """A prompt template placeholder was left unbound."""


class ContextOverflowError(AqgrError):
    """Estimated prompt tokens exceed the input budget; request never sent."""


class ProviderError(AqgrError):
    """Generation or embedding provider failed after retries."""


class MalformedOutputError(AqgrError):
    """Model output did not contain a parseable payload.

    Carries the raw text so callers can drive a single repair retry.
    """

    def __init__(self, message: str, raw_text: str = ""):
        super().__init__(message)
        self.raw_text = raw_text


class MalformedAfterRetryError(AqgrError):
    """Model output stayed unparseable after the one repair retry."""

    def __init__(self, message: str, raw_text: str = ""):
        super().__init__(message)
        self.raw_text = raw_text


class SafetyBlockedError(AqgrError):
    """Provider refused to generate for this content."""


class SafetyBlockedDocError(SafetyBlockedError):
    """Summarization of a judgment was safety-blocked; nothing persisted."""


class SafetyBlockedQueryError(SafetyBlockedError):
    """A retrieval query was safety-blocked; excluded from evaluation."""


class EmptyCorpusError(AqgrError):
    pass


class EmptyRelevantSetError(AqgrError):
    pass


class AllExcludedError(AqgrError):
    pass


class ParseError(AqgrError):
    """Input file could not be parsed; carries a 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line
