"""Exception hierarchy. The CLI maps these onto exit codes."""


class AdviceLensError(Exception):
    """Base class for all package errors."""


class CorpusError(AdviceLensError):
    """Bad input data: unreadable file, malformed line, invariant violation."""


class LexiconError(AdviceLensError):
    """Bad or missing word-list resource."""


class AnalyticsError(AdviceLensError):
    """Statistic undefined for the given data (zero variance, empty input)."""


class EmbeddingError(AdviceLensError):
    """Training preconditions not met (corpus too small, empty vocabulary)."""


class NumericalError(AdviceLensError):
    """Non-finite values encountered during optimization."""
