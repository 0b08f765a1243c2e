"""Exception hierarchy shared by the library and the CLI."""


class TriageTreeError(Exception):
    """Base class for all library errors."""


class DataError(TriageTreeError):
    """Malformed input data or model files (CLI exit code 1)."""


class UsageError(TriageTreeError, ValueError):
    """Invalid arguments or parameters (CLI exit code 2)."""
