"""Exception hierarchy.

``DomainError`` subclasses signal mathematical infeasibility of the input
(the CLI maps them to exit code 2); ``ConfigError`` subclasses signal bad
problem descriptions.
"""


class ZlocError(Exception):
    pass


class DivisionByZero(ZlocError, ZeroDivisionError):
    pass


class DomainError(ZlocError):
    pass


class PolytopeError(DomainError):
    pass


class NotDelzant(PolytopeError):
    def __init__(self, vertex, determinant, message=None):
        self.vertex = vertex
        self.determinant = determinant
        if message is None:
            pt = ", ".join(str(c) for c in vertex)
            message = f"Delzant condition fails at vertex ({pt}): |det| = {abs(determinant)}"
        super().__init__(message)


class Unbounded(PolytopeError):
    pass


class EmptyPolytope(PolytopeError):
    pass


class NonGenericParameter(DomainError):
    def __init__(self, vertex, edge):
        self.vertex = vertex
        self.edge = edge
        super().__init__(
            f"parameter pairs to zero with edge {tuple(edge)} at vertex "
            f"{tuple(str(c) for c in vertex)}"
        )


class MissingFibreData(DomainError):
    pass


class LengthMismatch(DomainError):
    pass


class NormalisationViolation(DomainError):
    pass


class NonPositiveHeight(DomainError):
    def __init__(self, vertex, height):
        self.vertex = vertex
        self.height = height
        super().__init__(
            f"height function is {height} <= 0 at vertex {tuple(str(c) for c in vertex)}"
        )


class ZeroCentralCharge(DomainError):
    pass


class ZeroVolume(DomainError):
    pass


class ConfigError(ZlocError):
    pass


class ParseError(ConfigError):
    def __init__(self, message, field=None, line=None):
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)


class SchemaError(ConfigError):
    def __init__(self, key, message=None):
        self.key = key
        super().__init__(message or f"missing or invalid key {key!r}")
