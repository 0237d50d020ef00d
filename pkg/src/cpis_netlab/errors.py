"""Exception hierarchy shared by every module."""


class NetlabError(Exception):
    """Base class for all errors raised by cpis_netlab."""


class ValidationError(NetlabError, ValueError):
    """Input data violates a documented contract."""


class SelfLoopError(ValidationError):
    def __init__(self, source: str, target: str):
        super().__init__(f"self-loop record {source}->{target} is not allowed")
        self.pair = (source, target)


class UnknownNodeError(ValidationError, KeyError):
    def __init__(self, code: str):
        super().__init__(f"unknown country code {code!r}")
        self.code = code

    def __str__(self) -> str:  # KeyError would otherwise repr() the message
        return self.args[0]


class UndefinedMetricError(ValidationError):
    """A graph-level quantity has no defined value for this input."""


class InsufficientOverlapError(ValidationError):
    def __init__(self, common: int):
        super().__init__(f"series share {common} common year(s); at least 2 required")
        self.common = common


class DatasetFormatError(ValidationError):
    """A persisted dataset directory is corrupt or inconsistent."""
