"""Counting: all USOs of small cubes, class tallies, and USOs of a fixed matrix."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key

from .checks import ClassProfile, classify, is_uso, is_uso_pairwise
from .cube import Orientation
from .errors import NotPMatrix
from .lcp import (
    basis_matrix,
    basis_solutions,
    first_degeneracy,
    induced_orientation,
    is_p_matrix,
    random_nondegenerate_rhs,
    random_p_matrix,
)
from .linalg import Matrix, format_fraction, inverse

FLAGS = tuple(ClassProfile.__dataclass_fields__)


@dataclass
class CensusReport:
    n: int
    source: str
    total: int = 0
    counts: dict = field(default_factory=lambda: dict.fromkeys(FLAGS, 0))
    exemplars: list = field(default_factory=list)
    note: str = "derived by exhaustive or seeded computation"

    def add(self, profile: ClassProfile):
        self.total += 1
        for k, v in profile.as_dict().items():
            self.counts[k] += bool(v)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "source": self.source,
            "total": self.total,
            "counts": dict(self.counts),
            "exemplars": [list(e) for e in self.exemplars],
            "note": self.note,
        }


def all_orientations(n: int):
    """Every orientation of the ``n``-cube, one bit per edge."""
    edges = [(v, 1 << i) for i in range(n) for v in range(1 << n) if not v >> i & 1]
    for code in range(1 << len(edges)):
        out = [0] * (1 << n)
        for e, (v, b) in enumerate(edges):
            if code >> e & 1:
                out[v] |= b
            else:
                out[v ^ b] |= b
        yield tuple(out)


def _extend(n):
    """USO outmaps by extending one vertex at a time under the pairwise screen."""
    N = 1 << n
    full = N - 1
    out = [0] * N

    def rec(v):
        if v == N:
            yield tuple(out)
            return
        fixed = 0
        for i in range(n):
            b = 1 << i
            if v & b and not out[v ^ b] & b:
                fixed |= b
        free = full & ~v
        sub = free
        while True:
            s = fixed | sub
            if all((u ^ v) & (out[u] ^ s) for u in range(v)):
                out[v] = s
                yield from rec(v + 1)
            if sub == 0:
                break
            sub = (sub - 1) & free
    yield from rec(0)


def enumerate_usos(n: int, strategy: str = "brute", profile: bool = True, keep: bool = False) -> CensusReport:
    """Count USOs of the ``n``-cube (and tally their classes).

    ``"brute"`` sweeps all ``2^(n 2^(n-1))`` orientations (n <= 3) and
    cross-checks the subcube definition against the pairwise screen;
    ``"incremental"`` extends outmaps vertex by vertex (n <= 4).
    """
    if n < 1:
        raise ValueError("dimension must be at least 1")
    if strategy == "brute":
        if n > 3:
            raise ValueError("brute-force enumeration is limited to n <= 3")
        report = CensusReport(n, "enumerate")
        for out in all_orientations(n):
            phi = Orientation(n, out)
            prof = classify(phi) if profile else None
            uso = prof.is_uso if prof else is_uso(phi)
            if uso != is_uso_pairwise(phi):
                raise AssertionError(f"USO tests disagree on {out}")
            if prof:
                report.add(prof)
            else:
                report.total += 1
                report.counts["is_uso"] += uso
            if keep and uso:
                report.exemplars.append(out)
        return report
    if strategy == "incremental":
        if n > 4:
            raise ValueError("incremental enumeration is limited to n <= 4")
        report = CensusReport(n, "enumerate-incremental")
        for out in _extend(n):
            phi = Orientation(n, out)
            if profile:
                report.add(classify(phi))
            else:
                report.total += 1
                report.counts["is_uso"] += 1
            if keep:
                report.exemplars.append(out)
        return report
    raise ValueError(f"unknown strategy {strategy!r}")


def census_classes(n: int, source: str = "enumerate", trials: int = 0, seed: int | None = None) -> CensusReport:
    """Class tallies over all orientations or over random P-LCP orientations.

    With ``source="sample-p"`` every induced USO must be strongly Holt-Klee;
    a counterexample raises instead of being tallied.
    """
    if source == "enumerate":
        return enumerate_usos(n)
    if source != "sample-p":
        raise ValueError(f"unknown source {source!r}")
    if seed is None:
        raise ValueError("sampling needs an explicit seed")
    rng = random.Random(seed)
    report = CensusReport(n, "sample-p")
    for _ in range(trials):
        M = random_p_matrix(rng, n)
        q = random_nondegenerate_rhs(rng, M)
        phi = induced_orientation(M, q)
        prof = classify(phi)
        if not (prof.is_uso and prof.is_strongly_holt_klee):
            raise AssertionError(f"P-USO fails strong Holt-Klee: M={M}, q={q}")
        report.add(prof)
    return report


@dataclass
class FixedMatrixCount:
    matrix: Matrix
    samples: int
    distinct: int = 0
    degenerate: int = 0
    history: list = field(default_factory=list)
    usos: dict = field(default_factory=dict)
    exact: int | None = None
    sectors: int | None = None

    def to_json(self) -> dict:
        return {
            "matrix": [[format_fraction(x) for x in row] for row in self.matrix],
            "samples": self.samples,
            "distinct": self.distinct,
            "degenerate": self.degenerate,
            "exact": self.exact,
            "sectors": self.sectors,
        }


def random_surface_point(rng: random.Random, n: int, den: int = 1024) -> tuple[Fraction, ...]:
    """A grid point on the boundary of ``[-1, 1]^n`` with no zero coordinate."""
    q = [Fraction(rng.choice([-1, 1]) * rng.randint(1, den - 1), den) for _ in range(n)]
    q[rng.randrange(n)] = Fraction(rng.choice([-1, 1]))
    return tuple(q)


def count_fixed_matrix_usos(M: Matrix, samples: int, seed: int, exact_n2: bool = False) -> FixedMatrixCount:
    """Lower bound on the number of USOs ``LCP(M, q)`` induces as ``q`` varies."""
    if not is_p_matrix(M):
        raise NotPMatrix("matrix is not a P-matrix")
    n = len(M)
    rng = random.Random(seed)
    res = FixedMatrixCount(M, samples)
    for _ in range(samples):
        q = random_surface_point(rng, n)
        sols = basis_solutions(M, q, check_p=False)
        if first_degeneracy(sols) is not None:
            res.degenerate += 1
        else:
            out = tuple(sum(1 << i for i, x in enumerate(s) if x < 0) for s in sols)
            res.usos.setdefault(out, q)
        res.history.append(len(res.usos))
    res.distinct = len(res.usos)
    if exact_n2:
        res.exact, res.sectors = exact_count_n2(M)
    return res


def _half(d):
    x, y = d
    return 0 if (y > 0 or (y == 0 and x > 0)) else 1


def _angle_cmp(a, b):
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return ha - hb
    cross = a[0] * b[1] - a[1] * b[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def sector_directions(M: Matrix) -> list[tuple[Fraction, Fraction]]:
    """One interior direction per open sector of the line arrangement of ``M`` (n = 2)."""
    if len(M) != 2:
        raise ValueError("sector enumeration needs a 2x2 matrix")
    rays = []
    for v in range(4):
        for a, b in inverse(basis_matrix(M, v)):
            # the line a x + b y = 0 contributes the rays +-(-b, a)
            for d in ((-b, a), (b, -a)):
                if not any(_angle_cmp(d, r) == 0 for r in rays):
                    rays.append(d)
    rays.sort(key=cmp_to_key(_angle_cmp))
    # adjacent rays are less than pi apart (two coordinate axes are always present),
    # so their sum points strictly inside the sector between them
    return [
        (rays[k][0] + rays[(k + 1) % len(rays)][0], rays[k][1] + rays[(k + 1) % len(rays)][1])
        for k in range(len(rays))
    ]


def exact_count_n2(M: Matrix) -> tuple[int, int]:
    """``(distinct USOs, open sectors)`` over all nondegenerate ``q`` for a 2x2 P-matrix."""
    if not is_p_matrix(M):
        raise NotPMatrix("matrix is not a P-matrix")
    seen = set()
    dirs = sector_directions(M)
    for q in dirs:
        seen.add(induced_orientation(M, q).out)
    return len(seen), len(dirs)


def block_matrix(Mp: Matrix, b) -> Matrix:
    """``[[M', b], [0, 1]]``."""
    n = len(Mp) + 1
    rows = [tuple(Mp[i]) + (Fraction(b[i]),) for i in range(n - 1)]
    rows.append(tuple(Fraction(0) for _ in range(n - 1)) + (Fraction(1),))
    return tuple(rows)
