"""Exception hierarchy.

Domain failures derive from :class:`UsoError`; malformed inputs raise
:class:`ValueError` subclasses so callers (and the CLI exit codes) can tell
the two apart.
"""


class UsoError(Exception):
    """Base class for domain failures."""


class NotUnique(UsoError):
    """A subcube has zero or several sinks (or sources)."""

    def __init__(self, count, kind="sink"):
        self.count = count
        self.kind = kind
        super().__init__(f"expected exactly one {kind}, found {count}")


class NotUso(UsoError):
    """The orientation is not a unique-sink orientation."""


class NotPMatrix(UsoError):
    """The matrix is not a P-matrix."""


class Singular(UsoError, ArithmeticError):
    """The matrix is singular."""


class Degenerate(UsoError):
    """Some entry of ``A_B^{-1} q`` vanishes; ``vertex`` and 1-based ``coord`` name it."""

    def __init__(self, vertex, coord, n=None):
        self.vertex = vertex
        self.coord = coord
        self.n = n
        where = vertex if n is None else format_bits(vertex, n)
        super().__init__(f"degenerate right-hand side at vertex {where}, coordinate {coord}")


class StepLimitExceeded(UsoError):
    """A pivot walk did not reach the sink within its step budget."""


class InvalidOrientation(ValueError):
    """Outmap data violates antisymmetry or has the wrong shape."""


class NotMonotone(ValueError):
    """A Boolean function table is not monotone."""


def format_bits(v, n):
    return "".join("1" if v >> i & 1 else "0" for i in range(n))
