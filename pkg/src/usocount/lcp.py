"""Linear complementarity problems and the orientations they induce.

A basis ``B`` is identified with the vertex ``v`` whose set bits are ``B``
(bit ``i - 1`` for index ``i``).  ``A_B`` takes column ``i`` from ``-M`` when
``i`` is in ``B`` and from the identity otherwise; a nondegenerate P-LCP
orients ``v -> v ^ i`` exactly when ``(A_B^{-1} q)_i < 0``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cube import Orientation, popcount
from .errors import Degenerate, NotPMatrix, StepLimitExceeded
from .linalg import (
    Matrix,
    Vector,
    determinant,
    matvec,
    principal_minors,
    sign,
    solve,
    vector,
)


def vertex_of(basis) -> int:
    """Vertex of a basis given as an iterable of 1-based indices."""
    v = 0
    for i in basis:
        v |= 1 << (i - 1)
    return v


def basis_of(v: int) -> frozenset[int]:
    return frozenset(i + 1 for i in range(v.bit_length()) if v >> i & 1)


def is_p_matrix(M: Matrix) -> bool:
    return all(minor > 0 for _, minor in principal_minors(M))


def is_z_matrix(M: Matrix) -> bool:
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("matrix is not square")
    return all(M[i][j] <= 0 for i in range(n) for j in range(n) if i != j)


def is_k_matrix(M: Matrix) -> bool:
    return is_z_matrix(M) and is_p_matrix(M)


def basis_matrix(M: Matrix, B: int) -> Matrix:
    """``A_B`` for the basis mask ``B``."""
    n = len(M)
    one, zero = Fraction(1), Fraction(0)
    return tuple(
        tuple(-M[r][c] if B >> c & 1 else (one if r == c else zero) for c in range(n))
        for r in range(n)
    )


def _require_p(M):
    if not is_p_matrix(M):
        raise NotPMatrix("matrix is not a P-matrix")


def basis_solutions(M: Matrix, q: Sequence, check_p: bool = True) -> list[Vector]:
    """``A_B^{-1} q`` for every basis, indexed by vertex."""
    if check_p:
        _require_p(M)
    q = vector(q)
    if len(q) != len(M):
        raise ValueError("q has the wrong length")
    return [solve(basis_matrix(M, v), q) for v in range(1 << len(M))]


def first_degeneracy(sols: Sequence[Vector]) -> tuple[int, int] | None:
    """The first ``(vertex, 1-based coordinate)`` with a zero entry, if any."""
    for v, x in enumerate(sols):
        for i, xi in enumerate(x):
            if xi == 0:
                return v, i + 1
    return None


def is_nondegenerate(M: Matrix, q: Sequence) -> bool:
    return first_degeneracy(basis_solutions(M, q, check_p=False)) is None


def _orientation_from(sols, n):
    out = []
    for v, x in enumerate(sols):
        s = 0
        for i, xi in enumerate(x):
            if xi < 0:
                s |= 1 << i
            elif xi == 0:
                raise Degenerate(v, i + 1, n)
        out.append(s)
    return Orientation(n, tuple(out))


def induced_orientation(M: Matrix, q: Sequence) -> Orientation:
    """The USO induced by a nondegenerate P-LCP."""
    return _orientation_from(basis_solutions(M, q), len(M))


def sign_vector(M: Matrix, q: Sequence) -> tuple[tuple[int, ...], ...]:
    """Signs of ``A_B^{-1} q`` per vertex; also checks ``sgn det A_B = (-1)^|B|``."""
    sols = basis_solutions(M, q)
    n = len(M)
    out = []
    for v, x in enumerate(sols):
        d = determinant(basis_matrix(M, v))
        if sign(d) != (-1) ** popcount(v):
            raise AssertionError(f"determinant sign identity fails at basis {sorted(basis_of(v))}")
        row = tuple(sign(xi) for xi in x)
        if 0 in row:
            raise Degenerate(v, row.index(0) + 1, n)
        out.append(row)
    return tuple(out)


def orientation_from_signs(signs) -> Orientation:
    n = len(signs[0])
    return Orientation(n, tuple(sum(1 << i for i, s in enumerate(row) if s < 0) for row in signs))


@dataclass(frozen=True)
class LcpSolution:
    w: Vector
    z: Vector
    basis: frozenset[int]

    @property
    def vertex(self) -> int:
        return vertex_of(self.basis)


def solve_lcp(M: Matrix, q: Sequence) -> LcpSolution:
    """Solve a P-LCP by finding the basis with ``A_B^{-1} q >= 0``."""
    sols = basis_solutions(M, q)
    n = len(M)
    zero = Fraction(0)
    for v, x in enumerate(sols):
        if all(xi >= 0 for xi in x):
            w = tuple(zero if v >> i & 1 else x[i] for i in range(n))
            z = tuple(x[i] if v >> i & 1 else zero for i in range(n))
            return LcpSolution(w, z, basis_of(v))
    raise AssertionError("no complementary basis found for a P-matrix")


def check_lcp_solution(M: Matrix, q: Sequence, sol: LcpSolution) -> bool:
    """``w - M z = q``, ``w, z >= 0``, ``w_i z_i = 0``, all exactly."""
    Mz = matvec(M, sol.z)
    q = vector(q)
    return (
        all(wi - mzi == qi for wi, mzi, qi in zip(sol.w, Mz, q))
        and all(x >= 0 for x in sol.w + sol.z)
        and all(wi * zi == 0 for wi, zi in zip(sol.w, sol.z))
    )


def pivot_walk(
    M: Matrix,
    q: Sequence,
    start: int = 0,
    rule: str = "least-index",
    seed: int | None = None,
) -> list[int]:
    """Follow outgoing edges of the induced USO from ``start`` to the sink.

    ``rule`` is ``"least-index"`` (smallest improving coordinate) or
    ``"random"`` (uniform among improving coordinates, seeded).
    """
    n = len(M)
    phi = induced_orientation(M, q)
    if rule == "random":
        if seed is None:
            raise ValueError("the random rule needs an explicit seed")
        rng = random.Random(seed)
    elif rule != "least-index":
        raise ValueError(f"unknown pivot rule {rule!r}")
    if not 0 <= start < 1 << n:
        raise ValueError("start vertex outside the cube")
    path = [start]
    v = start
    limit = n << n
    while phi.out[v]:
        if len(path) > limit:
            raise StepLimitExceeded(f"no sink after {limit} steps")
        s = phi.out[v]
        if rule == "least-index":
            b = s & -s
        else:
            choices = [1 << i for i in range(n) if s >> i & 1]
            b = rng.choice(choices)
        v ^= b
        path.append(v)
    return path


def perturb(
    M: Matrix,
    q: Sequence,
    eps: Fraction = Fraction(1, 4),
    accept=None,
    max_halvings: int = 200,
) -> Vector:
    """Nondegenerate ``q + (e, e^2, ..., e^n)`` for the first suitable ``e``.

    Starts at ``eps`` and halves until the instance is nondegenerate and the
    optional predicate ``accept(q_new)`` holds.  The unperturbed ``q`` is
    returned unchanged when it already qualifies.
    """
    q = vector(q)
    n = len(q)
    if first_degeneracy(basis_solutions(M, q, check_p=False)) is None and (
        accept is None or accept(q)
    ):
        return q
    e = Fraction(eps)
    witness = (0, 1)
    for _ in range(max_halvings):
        cand = tuple(q[i] + e ** (i + 1) for i in range(n))
        bad = first_degeneracy(basis_solutions(M, cand, check_p=False))
        if bad is None and (accept is None or accept(cand)):
            return cand
        witness = bad or witness
        e /= 2
    raise Degenerate(*witness, n)


# random instances ---------------------------------------------------------

def _rand_frac(rng, lo, hi, den):
    return Fraction(rng.randint(lo * den, hi * den), den)


def random_p_matrix(rng: random.Random, n: int, den: int = 4, spread: int = 2) -> Matrix:
    """Rejection-sample a P-matrix with small rational entries."""
    while True:
        M = tuple(
            tuple(
                _rand_frac(rng, 1, 1 + spread, den) if i == j else _rand_frac(rng, -spread, spread, den)
                for j in range(n)
            )
            for i in range(n)
        )
        if is_p_matrix(M):
            return M


def random_k_matrix(rng: random.Random, n: int, den: int = 4) -> Matrix:
    while True:
        M = tuple(
            tuple(
                _rand_frac(rng, 1, 3, den) if i == j else _rand_frac(rng, -1, 0, den)
                for j in range(n)
            )
            for i in range(n)
        )
        if is_p_matrix(M):
            return M


def random_p_not_z_matrix(rng: random.Random, n: int, den: int = 4) -> Matrix:
    if n < 2:
        raise ValueError("a 1x1 matrix is always a Z-matrix")
    while True:
        M = random_p_matrix(rng, n, den)
        if not is_z_matrix(M):
            return M


def random_rhs(rng: random.Random, n: int, den: int = 64) -> Vector:
    return tuple(Fraction(rng.choice([-1, 1]) * rng.randint(1, 2 * den), den) for _ in range(n))


def random_nondegenerate_rhs(rng: random.Random, M: Matrix, den: int = 64) -> Vector:
    while True:
        q = random_rhs(rng, len(M), den)
        if is_nondegenerate(M, q):
            return q
