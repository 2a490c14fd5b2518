"""Explicit USO families.

* Orientations built from monotone Boolean functions: uniform in the first
  ``n - 1`` coordinates, with the last coordinate steered by ``f``.
* The upper unit-triangular K-matrix family ``M(beta)`` with right-hand side
  ``(-1, 1, -1, ...)``, its inverse-entry structure and random sampling.
* A right-hand side exposing a local-uniformity violation for any P-matrix
  that is not a K-matrix.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping

from .checks import is_locally_uniform
from .cube import Orientation, popcount, reverse
from .errors import NotMonotone, NotPMatrix, UsoError
from .lcp import (
    basis_matrix,
    basis_solutions,
    first_degeneracy,
    induced_orientation,
    is_k_matrix,
    is_p_matrix,
    is_z_matrix,
    perturb,
)
from .linalg import Matrix, Vector, inverse, solve

# monotone Boolean functions -------------------------------------------------


@dataclass(frozen=True)
class MonotoneFunction:
    """Truth table of a monotone function on ``k`` variables; ``table[x] = f(x)``."""

    k: int
    table: tuple[int, ...]

    def __post_init__(self):
        t = tuple(int(b) for b in self.table)
        object.__setattr__(self, "table", t)
        if len(t) != 1 << self.k or set(t) - {0, 1}:
            raise ValueError(f"table must hold {1 << self.k} bits")
        for x in range(1 << self.k):
            for i in range(self.k):
                if not x >> i & 1 and t[x] > t[x | 1 << i]:
                    raise NotMonotone(f"f({x:b}) > f({x | 1 << i:b})")

    def __call__(self, x: int) -> int:
        return self.table[x]


@lru_cache(maxsize=None)
def _monotone_tables(k):
    if k == 0:
        return ((0,), (1,))
    smaller = _monotone_tables(k - 1)
    # split on the last variable: f = (g, h) with g <= h pointwise
    return tuple(
        g + h
        for g in smaller
        for h in smaller
        if all(a <= b for a, b in zip(g, h))
    )


def monotone_functions(k: int) -> list[MonotoneFunction]:
    """All monotone Boolean functions of arity ``k`` (2, 3, 6, 20, 168, ...)."""
    if k > 5:
        raise ValueError("enumeration beyond 5 variables is not supported")
    return [MonotoneFunction(k, t) for t in _monotone_tables(k)]


def middle_layer(k: int) -> list[int]:
    """Vertices of ``{0,1}^k`` with exactly ``k // 2`` ones."""
    return [x for x in range(1 << k) if popcount(x) == k // 2]


def antichain_function(A: Iterable[int], k: int) -> MonotoneFunction:
    """``f_A(x) = 1`` iff some ``y`` in ``A`` lies below ``x``."""
    A = list(A)
    for y in A:
        if not 0 <= y < 1 << k or popcount(y) != k // 2:
            raise ValueError(f"{y:b} is not in the middle layer of the {k}-cube")
    return MonotoneFunction(k, tuple(int(any(y & x == y for y in A)) for x in range(1 << k)))


def antichain_functions(k: int) -> list[MonotoneFunction]:
    """``f_A`` for every subset ``A`` of the middle layer."""
    layer = middle_layer(k)
    return [
        antichain_function(A, k)
        for r in range(len(layer) + 1)
        for A in combinations(layer, r)
    ]


def monotone_uso(f: MonotoneFunction, swapped: bool = False) -> Orientation:
    """The ``(k+1)``-cube USO steered by ``f``.

    ``v -> v ^ i`` for ``i <= k`` iff ``v_i = 0``; ``v -> v ^ (k+1)`` iff
    ``v_{k+1} + f(v') = 1`` with ``v'`` the first ``k`` bits.  With
    ``swapped`` the last coordinate has the roles of 0 and 1 exchanged,
    which equals reversing that coordinate.
    """
    k = f.k
    low = (1 << k) - 1
    top = 1 << k
    out = []
    for v in range(1 << (k + 1)):
        s = ~v & low
        if (v >> k) + f.table[v & low] == 1:
            s |= top
        out.append(s)
    phi = Orientation(k + 1, tuple(out))
    return reverse(phi, top) if swapped else phi


# the K-matrix family ---------------------------------------------------------


def prec_key(pair: tuple[int, int]) -> tuple[int, int]:
    """Sort key of the pair order: by column, then by decreasing row."""
    i, j = pair
    return (j, -i)


def precedes(a: tuple[int, int], b: tuple[int, int]) -> bool:
    return prec_key(a) < prec_key(b)


def ordered_pairs(n: int) -> list[tuple[int, int]]:
    """All ``(i, j)`` with ``1 <= i < j <= n`` in increasing pair order."""
    return sorted(((i, j) for j in range(2, n + 1) for i in range(1, j)), key=prec_key)


def successor(pair: tuple[int, int], n: int) -> tuple[int, int] | None:
    r, m = pair
    if r > 1:
        return (r - 1, m)
    return (m, m + 1) if m < n else None


@dataclass(frozen=True)
class BetaAssignment:
    """Parameters ``beta[(i, j)]`` for ``1 <= i < j <= n``; missing pairs are 0."""

    n: int
    values: Mapping[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        vals = {}
        for (i, j), b in dict(self.values).items():
            if not 1 <= i < j <= self.n:
                raise ValueError(f"beta index ({i}, {j}) out of range")
            if isinstance(b, float):
                raise TypeError("beta values must be exact")
            vals[(i, j)] = Fraction(b)
        object.__setattr__(self, "values", vals)

    def __getitem__(self, pair) -> Fraction:
        return self.values.get(pair, Fraction(0))

    @property
    def in_k_range(self) -> bool:
        """All ``|beta| < 1``, which makes ``M(beta)`` a K-matrix."""
        return all(abs(b) < 1 for b in self.values.values())

    def max_abs(self, pairs=None) -> Fraction:
        pairs = self.values if pairs is None else pairs
        return max((abs(self[p]) for p in pairs), default=Fraction(0))

    def with_value(self, pair, value) -> "BetaAssignment":
        vals = dict(self.values)
        vals[pair] = Fraction(value)
        return BetaAssignment(self.n, vals)


def k_family_matrix(beta: BetaAssignment) -> Matrix:
    """Unit upper-triangular, entry ``(i, j) = -1 - beta_{i,j}`` above the diagonal."""
    n = beta.n
    one, zero = Fraction(1), Fraction(0)
    return tuple(
        tuple(one if i == j else (-1 - beta[(i, j)] if i < j else zero) for j in range(1, n + 1))
        for i in range(1, n + 1)
    )


def k_family_rhs(n: int) -> Vector:
    """``q = (-1, 1, -1, ..., (-1)^n)``."""
    return tuple(Fraction((-1) ** i) for i in range(1, n + 1))


@dataclass
class InverseEntryReport:
    basis: frozenset[int]
    n: int
    residuals: dict = field(default_factory=dict)
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def _signed_inverse(beta, B):
    inv = inverse(basis_matrix(k_family_matrix(beta), B))
    n = beta.n
    return [[(-1 if B >> r & 1 else 1) * inv[r][s] for s in range(n)] for r in range(n)]


def inverse_entry_check(B: Iterable[int], beta: BetaAssignment) -> InverseEntryReport:
    """Check the entry pattern of ``sigma_r * (A_B(beta)^{-1})_{r,s}``.

    At ``beta`` itself: 1 on the diagonal, 0 below it and in columns outside
    ``B``; the remaining entries minus ``2^p(B,r,s)`` are stored as
    ``residuals[(r, s)]``.  At ``beta = 0`` those entries must equal
    ``2^p(B,r,s)`` exactly, and moving only ``beta_{r,s}`` must shift them
    with slope exactly 1.
    """
    n = beta.n
    Bset = frozenset(B)
    if any(not 1 <= b <= n for b in Bset):
        raise ValueError("basis outside [n]")
    Bmask = sum(1 << (b - 1) for b in Bset)
    rep = InverseEntryReport(Bset, n)
    zero_beta = BetaAssignment(n)
    cur = _signed_inverse(beta, Bmask)
    base = _signed_inverse(zero_beta, Bmask)

    def p(r, s):
        return sum(1 for j in Bset if r < j < s)

    for r in range(1, n + 1):
        for s in range(1, n + 1):
            val = cur[r - 1][s - 1]
            if r == s:
                if val != 1:
                    rep.mismatches.append(("diagonal", r, s, val))
            elif r > s or s not in Bset:
                if val != 0:
                    rep.mismatches.append(("zero", r, s, val))
            else:
                power = Fraction(2 ** p(r, s))
                rep.residuals[(r, s)] = val - power
                if base[r - 1][s - 1] != power:
                    rep.mismatches.append(("power", r, s, base[r - 1][s - 1]))
                for h in (Fraction(1, 3), Fraction(-1, 2)):
                    moved = _signed_inverse(zero_beta.with_value((r, s), h), Bmask)[r - 1][s - 1]
                    if moved - power != h:
                        rep.mismatches.append(("slope", r, s, (moved - power) / h))
    return rep


def product_lower_bound(n: int) -> int:
    """Number of K-USOs guaranteed by the sequential parameter choice."""
    total = 1
    for m in range(1, n + 1):
        for r in range(1, m):
            if (r - m - 1) % 2 == 0:
                total *= 2 ** ((m - r - 1) // 2) + 1
    return total


def product_lower_bound_alt(n: int) -> int:
    """The same count regrouped as ``prod_m prod_{i < floor(m/2)} (2^i + 1)``."""
    total = 1
    for m in range(1, n + 1):
        for i in range(m // 2):
            total *= 2 ** i + 1
    return total


@dataclass(frozen=True)
class ResidualRecord:
    """``|t'|`` for one admissible basis and row, against its bound."""

    basis: frozenset[int]
    r: int
    m: int
    residual: Fraction
    beta_bar: Fraction
    beta_max: Fraction

    @property
    def bound(self) -> Fraction:
        return 9 ** (self.m - self.r + 1) * self.beta_bar

    @property
    def within_bound(self) -> bool:
        return self.residual <= self.bound

    @property
    def within_global_bound(self) -> bool:
        return self.residual <= 9 ** (self.m - self.r + 1) * self.beta_max


def admissible_bases(n: int, m: int) -> list[frozenset[int]]:
    """Bases with maximum ``m`` whose other members have parity opposite to ``m``."""
    others = [i for i in range(1, m) if (i - m) % 2 == 1]
    return [frozenset(c) | {m} for k in range(len(others) + 1) for c in combinations(others, k)]


def residual_records(beta: BetaAssignment, sols: list | None = None) -> list[ResidualRecord]:
    """``t' = beta_{r,m} - sigma_r (-1)^m (A_B^{-1} q)_r`` over admissible ``B, r``.

    ``beta_bar`` is the largest ``|beta_{i,j}|`` with ``j`` in ``B`` and
    ``(i, j)`` before ``(r, m)``; ``beta_max`` is the overall maximum.
    """
    n = beta.n
    M = k_family_matrix(beta)
    q = k_family_rhs(n)
    beta_max = beta.max_abs(ordered_pairs(n))
    out = []
    for m in range(2, n + 1):
        for B in admissible_bases(n, m):
            Bmask = sum(1 << (b - 1) for b in B)
            x = sols[Bmask] if sols is not None else solve(basis_matrix(M, Bmask), q)
            for r in range(1, m):
                if (r - m) % 2 != 1:
                    continue
                sigma = -1 if r in B else 1
                t = beta[(r, m)] - sigma * (-1) ** m * x[r - 1]
                pairs = [
                    (i, j) for j in B for i in range(1, j) if precedes((i, j), (r, m))
                ]
                out.append(ResidualRecord(B, r, m, abs(t), beta.max_abs(pairs), beta_max))
    return out


def random_beta(rng: random.Random, n: int, den: int = 64) -> BetaAssignment:
    """``beta`` drawn uniformly from the grid ``(1/den) Z`` inside ``(-1, 1)``."""
    return BetaAssignment(
        n, {pair: Fraction(rng.randint(-(den - 1), den - 1), den) for pair in ordered_pairs(n)}
    )


@dataclass
class KSample:
    n: int
    trials: int
    seed: int
    usos: dict = field(default_factory=dict)
    betas: list = field(default_factory=list)
    degenerate: int = 0

    @property
    def distinct(self) -> int:
        return len(self.usos)


def _k_trial(n, seed, t, den):
    rng = random.Random(f"{seed}:{t}")
    beta = random_beta(rng, n, den)
    M = k_family_matrix(beta)
    if not is_k_matrix(M):
        raise AssertionError(f"M(beta) is not a K-matrix for {beta.values}")
    sols = basis_solutions(M, k_family_rhs(n), check_p=False)
    if first_degeneracy(sols) is not None:
        return beta, None
    out = tuple(sum(1 << i for i, xi in enumerate(x) if xi < 0) for x in sols)
    return beta, out


def _k_chunk(args):
    n, seed, lo, hi, den = args
    return [_k_trial(n, seed, t, den) for t in range(lo, hi)]


def sample_k_usos(n: int, trials: int, seed: int, den: int = 64, workers: int = 1) -> KSample:
    """Induce USOs from ``M(beta)`` for seeded random ``beta`` and deduplicate.

    Trial ``t`` uses its own generator seeded from ``(seed, t)``, so the result
    does not depend on ``workers``.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    if workers > 1:
        step = -(-trials // workers)
        chunks = [(n, seed, lo, min(lo + step, trials), den) for lo in range(0, trials, step)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = [r for part in ex.map(_k_chunk, chunks) for r in part]
    else:
        results = _k_chunk((n, seed, 0, trials, den))
    sample = KSample(n, trials, seed)
    for beta, out in results:
        if out is None:
            sample.degenerate += 1
            continue
        sample.betas.append(beta)
        if out not in sample.usos:
            phi = Orientation(n, out)
            if not is_locally_uniform(phi):
                raise AssertionError("K-USO is not locally uniform")
            sample.usos[out] = phi
    return sample


# local uniformity witness ------------------------------------------------------


@dataclass(frozen=True)
class UniformityWitness:
    """A right-hand side whose induced USO breaks the two-outgoing-edges rule.

    At vertex 0 both coordinates ``i`` and ``j`` are outgoing, but at
    ``e_i + e_j`` the edge in coordinate ``violated`` is outgoing as well.
    """

    q: Vector
    i: int
    j: int
    violated: int
    orientation: Orientation

    @property
    def far_vertex(self) -> int:
        return (1 << (self.i - 1)) | (1 << (self.j - 1))

    def holds(self) -> bool:
        phi = self.orientation
        return (
            phi.has_edge(0, self.i)
            and phi.has_edge(0, self.j)
            and phi.has_edge(self.far_vertex, self.violated)
        )


def local_uniformity_witness(M: Matrix) -> UniformityWitness | None:
    """``None`` for K-matrices; otherwise a nondegenerate ``q`` with a violation."""
    if not is_p_matrix(M):
        raise NotPMatrix("matrix is not a P-matrix")
    if is_z_matrix(M):
        return None
    n = len(M)
    i, j = next((a, b) for a in range(n) for b in range(n) if a != b and M[a][b] > 0)
    lo, hi = min(i, j), max(i, j)
    perm = [lo, hi] + [k for k in range(n) if k not in (lo, hi)]
    Mp = tuple(tuple(M[perm[a]][perm[b]] for b in range(n)) for a in range(n))
    m11, m12, m21, m22 = Mp[0][0], Mp[0][1], Mp[1][0], Mp[1][1]
    zeros = [Fraction(0)] * (n - 2)
    if m12 > 0:
        q0 = [-m12, -(m22 + 1)] + zeros
        coord = 1
    else:
        q0 = [-(m11 + 1), -m21] + zeros
        coord = 2

    def violation(q):
        sols = basis_solutions(Mp, q, check_p=False)
        return sols[0][0] < 0 and sols[0][1] < 0 and sols[3][coord - 1] < 0

    qp = perturb(Mp, q0, accept=violation)
    q = [Fraction(0)] * n
    for a in range(n):
        q[perm[a]] = qp[a]
    q = tuple(q)
    phi = induced_orientation(M, q)
    w = UniformityWitness(q, lo + 1, hi + 1, perm[coord - 1] + 1, phi)
    if not w.holds():
        raise UsoError("witness failed to reproduce in the original coordinates")
    return w
