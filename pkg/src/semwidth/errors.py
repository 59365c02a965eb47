"""Exception types shared across the package."""


class SemwidthError(Exception):
    """Base class for all errors raised by semwidth."""


class ParseError(SemwidthError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ArityMismatch(SemwidthError):
    def __init__(self, relation, expected, got):
        self.relation = relation
        super().__init__(
            f"relation {relation!r} used with arity {got}, expected {expected}")


class SignatureMismatch(SemwidthError):
    pass


class UnknownVertex(SemwidthError):
    pass


class UncoverableVertex(SemwidthError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"vertex {vertex!r} lies in no edge")


class NotAHomomorphism(SemwidthError):
    pass


class NotReduced(SemwidthError):
    pass


class EmptyEdge(SemwidthError):
    pass


class InvalidGHD(SemwidthError):
    pass


class SizeLimitExceeded(SemwidthError):
    pass


class NameCollision(SemwidthError):
    pass


class HypergraphMismatch(SemwidthError):
    pass


class NotAnEdge(SemwidthError):
    pass
