"""Exception hierarchy shared by the pipeline stages.

The CLI maps ``DataError`` to exit status 2 and ``InfeasibleError`` to 3.
"""


class ArtmapError(Exception):
    pass


class DataError(ArtmapError, ValueError):
    """Input data is malformed or inconsistent."""


class CorpusParseError(DataError):
    def __init__(self, path, line, message):
        self.path = path
        self.line = line
        super().__init__(f"{path}: record on line {line}: {message}")


class DuplicateDocumentError(DataError):
    pass


class DegenerateDocumentError(DataError):
    """A document has no terms left after tokenization."""


class EmptyCorpusError(DataError):
    pass


class UnknownTermError(DataError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class ConsistencyError(DataError):
    pass


class EmptyGraphError(DataError):
    pass


class UndefinedLiftError(DataError):
    pass


class ConfigError(ArtmapError, ValueError):
    """A configuration field is out of range or unknown."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")


class InfeasibleError(ArtmapError):
    """No solution satisfies the constraints."""


class NoFeasibleMapError(InfeasibleError):
    pass


class MissingCheckpointError(ArtmapError):
    def __init__(self, path, stage):
        self.path = path
        self.stage = stage
        super().__init__(f"missing checkpoint {path}: run stage '{stage}' first")
