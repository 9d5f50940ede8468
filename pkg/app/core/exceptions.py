"""Domain exceptions raised by the namespace, quota and persistence services."""


class QuotaServiceError(Exception):
    """Base class for every error the service raises on purpose."""

    default_message = "Quota service error"

    def __init__(self, message: str | None = None) -> None:
        super().__init__(message or self.default_message)
        self.message = message or self.default_message


class QuotaExceeded(QuotaServiceError):
    """Create denied because cached usage met or passed a limit."""

    default_message = "Quota exceeded"

    def __init__(self, message: str | None = None) -> None:
        # The wire message is fixed; callers cannot override it.
        super().__init__(self.default_message)


class NotFound(QuotaServiceError):
    default_message = "Not found"


class AlreadyExists(QuotaServiceError):
    default_message = "Already exists"


class NotAFile(QuotaServiceError):
    default_message = "Not a file"


class DirectoryNotEmpty(QuotaServiceError):
    default_message = "Directory not empty"


class InvalidPath(QuotaServiceError):
    default_message = "Invalid path"


class Unauthenticated(QuotaServiceError):
    default_message = "User must be authenticated."


class Forbidden(QuotaServiceError):
    default_message = "Requires admin privileges."


class InvalidLimit(QuotaServiceError):
    default_message = "Quota limits must be non-negative"


class StaleReport(QuotaServiceError):
    default_message = "Scan report is older than the current cache generation"


class ScanInProgress(QuotaServiceError):
    default_message = "A quota scan is already running"


class InvalidInterval(QuotaServiceError):
    default_message = "Scan interval must be positive"


class CorruptRecord(QuotaServiceError):
    default_message = "Corrupt journal record"


class StoreFull(QuotaServiceError):
    default_message = "Journal store is full"


class ConfigError(QuotaServiceError):
    default_message = "Invalid configuration"
