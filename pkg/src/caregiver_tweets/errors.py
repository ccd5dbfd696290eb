"""Exception hierarchy shared across the harness."""


class HarnessError(Exception):
    pass


class SchemaError(HarnessError):
    def __init__(self, column: str, path=None):
        self.column = column
        where = f" in {path}" if path is not None else ""
        super().__init__(f"missing required column {column!r}{where}")


class DatasetValidationError(HarnessError):
    def __init__(self, message: str, row: int | None = None):
        self.row = row
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)


class UnbalanceableError(HarnessError):
    pass


class RenderError(HarnessError):
    pass


class BackendError(HarnessError):
    def __init__(self, message: str, status: int | None = None, attempt_count: int = 1):
        self.status = status
        self.attempt_count = attempt_count
        super().__init__(message)


class BackendUnavailableError(BackendError):
    """Retries exhausted; ``status`` is the last HTTP status seen (None for transport errors)."""


class BackendRequestError(BackendError):
    """Non-retryable rejection (malformed request, unknown model, ...)."""


class BackendAuthError(BackendRequestError):
    pass


class StubError(HarnessError):
    pass


class UnparseableLabelError(HarnessError):
    def __init__(self, completion: str):
        self.completion = completion
        super().__init__(f"no binary label found in completion: {completion!r}")


class UnparseableAnswerError(HarnessError):
    def __init__(self, completion: str):
        self.completion = completion
        super().__init__(f"no Yes/No answer found in completion: {completion!r}")


class CascadeParseError(HarnessError):
    def __init__(self, raw: str, step: int, session=None):
        self.raw = raw
        self.step = step
        self.session = session
        super().__init__(f"cascade step {step}: could not parse Yes/No from {raw!r}")


class EmptyEvaluationError(HarnessError):
    pass


class ConfigError(HarnessError):
    pass


class RunIncompleteError(HarnessError):
    """Raised when a run aborts; ``record`` holds what was persisted before the failure."""

    def __init__(self, record, cause: Exception):
        self.record = record
        self.cause = cause
        super().__init__(f"run {record.run_id} aborted after {len(record.predictions)} predictions: {cause}")
