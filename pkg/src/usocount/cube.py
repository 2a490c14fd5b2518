"""Cube vertices, subcubes and orientations.

Vertices are plain ints: coordinate ``i`` (1-based) is bit ``i - 1``.
Coordinate sets are bitmasks in the same encoding, so ``v ^ I`` is the
vertex ``v`` with the coordinates in ``I`` complemented.  Bit strings are
written coordinate 1 first, e.g. ``"100"`` is the vertex ``e_1`` of the
3-cube (integer 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from .errors import InvalidOrientation, format_bits


def mask_of(coords: Iterable[int], n: int | None = None) -> int:
    """Bitmask of a collection of 1-based coordinates."""
    m = 0
    for i in coords:
        if i < 1 or (n is not None and i > n):
            raise ValueError(f"coordinate {i} out of range")
        m |= 1 << (i - 1)
    return m


def coords_of(mask: int) -> list[int]:
    """1-based coordinates set in ``mask``, increasing."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def bits(v: int, n: int) -> str:
    return format_bits(v, n)


def parse_bits(s: str) -> int:
    if not s or set(s) - {"0", "1"}:
        raise ValueError(f"not a bit string: {s!r}")
    return sum(1 << i for i, c in enumerate(s) if c == "1")


def popcount(v: int) -> int:
    return bin(v).count("1")


def flip(v: int, coords: int, n: int) -> int:
    """``v`` with the coordinates in the mask ``coords`` complemented."""
    full = (1 << n) - 1
    if coords & ~full or v & ~full:
        raise ValueError(f"vertex or coordinate set outside the {n}-cube")
    return v ^ coords


def scatter(w: int, coords: int) -> int:
    """Deposit the low bits of ``w`` onto the set bits of ``coords``, in order."""
    out = 0
    k = 0
    i = 0
    while coords >> i:
        if coords >> i & 1:
            if w >> k & 1:
                out |= 1 << i
            k += 1
        i += 1
    return out


def gather(v: int, coords: int) -> int:
    """Inverse of :func:`scatter`: pack the bits of ``v`` at ``coords``."""
    out = 0
    k = 0
    i = 0
    while coords >> i:
        if coords >> i & 1:
            if v >> i & 1:
                out |= 1 << k
            k += 1
        i += 1
    return out


@dataclass(frozen=True)
class Subcube:
    """The vertex set ``{base ^ I : I subset of coords}``."""

    base: int
    coords: int

    @property
    def dimension(self) -> int:
        return popcount(self.coords)

    @property
    def anchor(self) -> int:
        """The member vertex with all free coordinates zero."""
        return self.base & ~self.coords

    def vertices(self) -> list[int]:
        a = self.anchor
        return [a | scatter(w, self.coords) for w in range(1 << self.dimension)]

    def __contains__(self, v: int) -> bool:
        return (v & ~self.coords) == self.anchor


def subcubes(n: int, dimension: int | None = None) -> Iterator[Subcube]:
    """All ``3**n`` subcubes: by coordinate mask ascending, then anchor ascending."""
    full = (1 << n) - 1
    for c in range(1 << n):
        if dimension is not None and popcount(c) != dimension:
            continue
        rest = full & ~c
        for w in range(1 << (n - popcount(c))):
            yield Subcube(scatter(w, rest), c)


@dataclass(frozen=True)
class Orientation:
    """An orientation of the ``n``-cube stored as its outmap.

    ``out[v]`` is the mask of coordinates ``i`` with ``v -> v ^ i``.
    """

    n: int
    out: tuple[int, ...]

    def __post_init__(self):
        n = self.n
        if n < 0:
            raise InvalidOrientation("negative dimension")
        out = tuple(int(x) for x in self.out)
        object.__setattr__(self, "out", out)
        if len(out) != 1 << n:
            raise InvalidOrientation(f"expected {1 << n} outmap entries, got {len(out)}")
        full = (1 << n) - 1
        for v, s in enumerate(out):
            if s & ~full or s < 0:
                raise InvalidOrientation(f"outmap of {bits(v, n)} has bits outside [n]")
            for i in range(n):
                b = 1 << i
                if not v & b and bool(s & b) == bool(out[v ^ b] & b):
                    raise InvalidOrientation(
                        f"edge {bits(v, n)}-{bits(v ^ b, n)} is not oriented exactly one way"
                    )

    @classmethod
    def from_rule(cls, n: int, rule: Callable[[int, int], bool]) -> "Orientation":
        """Build from ``rule(v, i)`` deciding ``v -> v ^ i`` for 1-based ``i``.

        The rule is only consulted at the 0-side of each edge.
        """
        out = [0] * (1 << n)
        for v in range(1 << n):
            for i in range(n):
                b = 1 << i
                if v & b:
                    continue
                if rule(v, i + 1):
                    out[v] |= b
                else:
                    out[v ^ b] |= b
        return cls(n, tuple(out))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Orientation":
        """Build from directed edges ``(u, v)``; every cube edge must appear once."""
        out = [0] * (1 << n)
        for u, v in edges:
            d = u ^ v
            if popcount(d) != 1 or d >> n:
                raise InvalidOrientation(f"({u}, {v}) is not a cube edge")
            out[u] |= d
        return cls(n, tuple(out))

    def has_edge(self, v: int, i: int) -> bool:
        """Whether ``v -> v ^ i`` for the 1-based coordinate ``i``."""
        return bool(self.out[v] >> (i - 1) & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        for v, s in enumerate(self.out):
            for i in range(self.n):
                if s >> i & 1:
                    yield v, v ^ (1 << i)

    def sinks(self) -> list[int]:
        return [v for v, s in enumerate(self.out) if s == 0]

    def to_dot(self, name: str = "uso") -> str:
        n = self.n
        lines = [f"digraph {name} {{"]
        for v in range(1 << n):
            lines.append(f'  v{v} [label="{bits(v, n)}"];')
        for u, v in self.edges():
            lines.append(f"  v{u} -> v{v};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def uniform_orientation(n: int) -> Orientation:
    """All edges point from the 0-side to the 1-side; the sink is ``1...1``."""
    if n < 1:
        raise ValueError("dimension must be at least 1")
    full = (1 << n) - 1
    return Orientation(n, tuple(full & ~v for v in range(1 << n)))


def reverse(phi: Orientation, coords: int) -> Orientation:
    """Reverse every edge in the coordinates of the mask ``coords``."""
    if coords >> phi.n:
        raise ValueError("coordinate set outside [n]")
    return Orientation(phi.n, tuple(s ^ coords for s in phi.out))


def subcube_restriction(phi: Orientation, sub: Subcube) -> Orientation:
    """The orientation induced on ``sub``, coordinates relabelled 1..d in order."""
    if (sub.base | sub.coords) >> phi.n:
        raise ValueError("subcube outside the cube")
    a = sub.anchor
    c = sub.coords
    return Orientation(
        sub.dimension,
        tuple(gather(phi.out[a | scatter(w, c)], c) for w in range(1 << sub.dimension)),
    )
