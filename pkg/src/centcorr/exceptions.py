class CentcorrError(Exception):
    """Base class for all errors raised by centcorr."""


class EdgeListError(CentcorrError, ValueError):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class GraphError(CentcorrError, ValueError):
    pass


class PartitionError(CentcorrError, ValueError):
    pass


class CentralityError(CentcorrError, ValueError):
    pass


class StatsError(CentcorrError, ValueError):
    pass


class DroppedRecordsWarning(UserWarning):
    """Emitted when an edge list contains self-loops, duplicates or extra columns."""
