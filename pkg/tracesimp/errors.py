"""
Errors raised by the trace simplification library.

Everything derives from ValueError so callers that only care about "bad input"
can catch a single type.
"""


class TraceError(ValueError):
    """Base class for structural and semantic trace errors."""


class MalformedStatement(TraceError):
    pass


class MalformedProgram(TraceError):
    pass


class LengthMismatch(TraceError):
    def __init__(self, expected: int, actual: int):
        super().__init__(f"Trace has {actual} positions but the program has {expected} statements.")
        self.expected = expected
        self.actual = actual


class DuplicateStatement(TraceError):
    def __init__(self, ref, first: int, second: int):
        super().__init__(f"Statement t{ref[0]}#{ref[1]} appears at positions {first} and {second}.")
        self.ref = ref
        self.first = first
        self.second = second


class MissingStatement(TraceError):
    def __init__(self, ref):
        super().__init__(f"Statement t{ref[0]}#{ref[1]} never appears in the trace.")
        self.ref = ref


class OrderViolation(TraceError):
    def __init__(self, u: int, v: int):
        super().__init__(f"Positions {u} and {v} invert the order of their thread.")
        self.u = u
        self.v = v


class PositionOutOfRange(TraceError):
    def __init__(self, position: int, length: int):
        super().__init__(f"Position {position} is outside 1..{length}.")
        self.position = position
        self.length = length


class ForeignStatement(TraceError):
    pass


class RangeOverlap(TraceError):
    pass


class RangeOutOfOrder(TraceError):
    pass


class AnnotationMismatch(TraceError):
    pass


class InstanceTooLarge(TraceError):
    def __init__(self, size: int, limit: int):
        super().__init__(f"Exhaustive search refused: {size} statements exceeds the limit of {limit}.")
        self.size = size
        self.limit = limit


class DerivationMismatch(TraceError):
    pass


class UnboundVariable(TraceError):
    def __init__(self, key):
        super().__init__(f"Variable {key!r} is read before it is bound.")
        self.key = key


class InvalidState(TraceError):
    pass


class InvalidSpec(TraceError):
    pass


class DocumentError(ValueError):
    """Base class for trace document parse failures."""


class TraceSyntaxError(DocumentError):
    def __init__(self, line: int, col: int, expected: str):
        super().__init__(f"line {line}, col {col}: expected {expected}")
        self.line = line
        self.col = col
        self.expected = expected


class SemanticError(DocumentError):
    pass


class VersionUnsupported(DocumentError):
    pass


class OracleRefused(ValueError):
    pass
