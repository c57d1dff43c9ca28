"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Invalid or inconsistent configuration parameters."""


class GraphUpdateError(ValueError):
    """An update that the current graph state rejects."""


class DuplicateEdgeError(GraphUpdateError):
    """Insertion of a simple edge that is already present."""


class MissingEdgeError(GraphUpdateError):
    """Deletion of a simple edge that is not present."""


class CorruptionError(RuntimeError):
    """Internal structure inconsistency; signals an engine bug, not bad input."""


class OracleLimitError(ValueError):
    """Exact oracle invoked on an instance above its configured size limit."""


class WorkloadError(ValueError):
    """Malformed workload file; carries the offending line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no
