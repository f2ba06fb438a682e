"""Exception hierarchy shared by every phoeg module."""


class PhoegError(Exception):
    """Base class for domain errors (the CLI maps these to exit code 1)."""


class Graph6Error(PhoegError, ValueError):
    pass


class Graph6HeaderError(Graph6Error):
    pass


class Graph6LengthError(Graph6Error):
    pass


class Graph6CharacterError(Graph6Error):
    pass


class Graph6PaddingError(Graph6Error):
    pass


class OrderError(PhoegError, ValueError):
    """Graph order outside the supported range."""


class UndefinedInvariantError(PhoegError):
    """The invariant has no finite value on this graph (e.g. eccentricity of a disconnected graph)."""


class UnknownInvariantError(PhoegError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class UnknownClassError(PhoegError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class MissingColumnError(PhoegError):
    pass


class StoreFormatError(PhoegError):
    pass


class ParameterError(PhoegError, ValueError):
    """A transformation was applied with parameters violating its preconditions."""


class ClosureError(PhoegError):
    """A class is not closed under the substructure relation within the search bound."""

    def __init__(self, message: str, member=None, substructure=None):
        super().__init__(message)
        self.member = member
        self.substructure = substructure


class UnknownSignatureError(PhoegError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class DiskSpaceError(PhoegError):
    pass
