"""USO and subclass decisions: unique sink, acyclic, locally uniform, Holt-Klee.

Path-based properties are decided with unit vertex-capacity maximum flow
(each internal vertex split into an in/out pair), which by Menger's theorem
counts internally vertex-disjoint source-to-sink paths.
"""

from __future__ import annotations

from collections import deque
from dataclasses import asdict, dataclass

from .cube import Orientation, Subcube, popcount
from .errors import NotUnique, NotUso


def is_uso(phi: Orientation) -> bool:
    """Every one of the ``3**n`` subcubes has exactly one sink."""
    n = phi.n
    out = phi.out
    for c in range(1 << n):
        expected = 1 << (n - popcount(c))
        seen = set()
        for v, s in enumerate(out):
            if not s & c:
                a = v & ~c
                if a in seen:
                    return False
                seen.add(a)
        if len(seen) != expected:
            return False
    return True


def is_uso_pairwise(phi: Orientation) -> bool:
    """Pairwise outmap screen: ``(u ^ v) & (s(u) ^ s(v)) != 0`` for all ``u != v``."""
    out = phi.out
    N = len(out)
    for u in range(N):
        su = out[u]
        for v in range(u + 1, N):
            if not (u ^ v) & (su ^ out[v]):
                return False
    return True


def _unique(phi, sub, want_sink):
    c = sub.coords
    found = [
        v for v in sub.vertices()
        if (phi.out[v] & c == 0 if want_sink else phi.out[v] & c == c)
    ]
    if len(found) != 1:
        raise NotUnique(len(found), "sink" if want_sink else "source")
    return found[0]


def unique_sink(phi: Orientation, sub: Subcube | None = None) -> int:
    """The vertex of ``sub`` with no outgoing edge inside ``sub``."""
    if sub is None:
        sub = Subcube(0, (1 << phi.n) - 1)
    return _unique(phi, sub, True)


def unique_source(phi: Orientation, sub: Subcube | None = None) -> int:
    if sub is None:
        sub = Subcube(0, (1 << phi.n) - 1)
    return _unique(phi, sub, False)


def is_acyclic(phi: Orientation) -> bool:
    out = phi.out
    N = len(out)
    indeg = [phi.n - popcount(s) for s in out]
    queue = deque(v for v in range(N) if indeg[v] == 0)
    removed = 0
    while queue:
        v = queue.popleft()
        removed += 1
        s = out[v]
        while s:
            b = s & -s
            s ^= b
            w = v ^ b
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return removed == N


def is_locally_uniform(phi: Orientation) -> bool:
    """Both local-uniformity implications, at every ``u`` and ``i < j`` with ``u_i = u_j = 0``."""
    out = phi.out
    n = phi.n
    for u in range(1 << n):
        for i in range(n):
            bi = 1 << i
            if u & bi:
                continue
            for j in range(i + 1, n):
                bj = 1 << j
                if u & bj:
                    continue
                ui, uj, uij = u ^ bi, u ^ bj, u ^ bi ^ bj
                # two outgoing edges at u
                if out[u] & bi and out[u] & bj:
                    if not (out[ui] & bj and out[uj] & bi):
                        return False
                # two incoming edges at u
                if out[ui] & bi and out[uj] & bj:
                    if not (out[uij] & bj and out[uij] & bi):
                        return False
    return True


def _max_flow_paths(phi, sub, source, sink, want_paths=False):
    """Maximum number of internally vertex-disjoint directed paths in ``sub``."""
    if source == sink:
        return (0, []) if want_paths else 0
    c = sub.coords
    d = popcount(c)
    verts = sub.vertices()
    # node 2v = v_in, 2v+1 = v_out
    cap = {}
    adj = {}

    def add(a, b, k):
        if (a, b) not in cap:
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
            cap[(b, a)] = cap.get((b, a), 0)
        cap[(a, b)] = cap.get((a, b), 0) + k

    out = phi.out
    for v in verts:
        add(2 * v, 2 * v + 1, d if v in (source, sink) else 1)
        s = out[v] & c
        while s:
            b = s & -s
            s ^= b
            add(2 * v + 1, 2 * (v ^ b), 1)

    src, dst = 2 * source + 1, 2 * sink
    flow = 0
    while True:
        parent = {src: None}
        queue = deque([src])
        while queue and dst not in parent:
            a = queue.popleft()
            for b in adj.get(a, ()):
                if b not in parent and cap[(a, b)] > 0:
                    parent[b] = a
                    queue.append(b)
        if dst not in parent:
            break
        b = dst
        while parent[b] is not None:
            a = parent[b]
            cap[(a, b)] -= 1
            cap[(b, a)] += 1
            b = a
        flow += 1

    if not want_paths:
        return flow
    # arcs v_out -> w_in carrying flow have zero residual forward capacity
    used = {}
    for v in verts:
        s = out[v] & c
        while s:
            b = s & -s
            s ^= b
            if cap[(2 * v + 1, 2 * (v ^ b))] == 0:
                used.setdefault(v, []).append(v ^ b)
    paths = []
    for _ in range(flow):
        path = [source]
        v = source
        while v != sink:
            v = used[v].pop()
            path.append(v)
        paths.append(path)
    return flow, paths


def disjoint_paths(phi: Orientation, sub: Subcube | None = None) -> list[list[int]]:
    """A maximum family of vertex-disjoint source-to-sink paths in ``sub``."""
    if sub is None:
        sub = Subcube(0, (1 << phi.n) - 1)
    s = unique_source(phi, sub)
    t = unique_sink(phi, sub)
    return _max_flow_paths(phi, sub, s, t, want_paths=True)[1]


def max_disjoint_paths(phi: Orientation, sub: Subcube) -> int:
    return _max_flow_paths(phi, sub, unique_source(phi, sub), unique_sink(phi, sub))


def _source_sink_table(phi, c):
    """Map anchor -> (source, sink) for every subcube with coordinate mask ``c``."""
    table = {}
    for v, s in enumerate(phi.out):
        t = s & c
        if t == 0 or t == c:
            entry = table.setdefault(v & ~c, [None, None])
            entry[1 if t == 0 else 0] = v
    return table


def _holt_klee(phi):
    n = phi.n
    for c in range(1 << n):
        d = popcount(c)
        if d < 2:
            continue
        for anchor, (s, t) in _source_sink_table(phi, c).items():
            if _max_flow_paths(phi, Subcube(anchor, c), s, t) != d:
                return False
    return True


def is_holt_klee(phi: Orientation) -> bool:
    """Every ``d``-dimensional subcube has ``d`` disjoint source-to-sink paths."""
    if not is_uso(phi):
        raise NotUso("Holt-Klee property is defined for USOs only")
    return _holt_klee(phi)


def is_strongly_holt_klee(phi: Orientation) -> bool:
    """Holt-Klee after reversing every coordinate set ``F``."""
    if not is_uso(phi):
        raise NotUso("strong Holt-Klee property is defined for USOs only")
    n = phi.n
    for f in range(1 << n):
        rev = Orientation(n, tuple(s ^ f for s in phi.out))
        if not is_uso(rev):
            raise NotUso(f"reversal by {f:#x} is not a USO")
        if not _holt_klee(rev):
            return False
    return True


@dataclass(frozen=True)
class ClassProfile:
    is_uso: bool
    is_acyclic: bool
    is_locally_uniform: bool
    is_holt_klee: bool
    is_strongly_holt_klee: bool

    def as_dict(self):
        return asdict(self)


def classify(phi: Orientation) -> ClassProfile:
    uso = is_uso(phi)
    hk = uso and _holt_klee(phi)
    return ClassProfile(
        is_uso=uso,
        is_acyclic=is_acyclic(phi),
        is_locally_uniform=is_locally_uniform(phi),
        is_holt_klee=hk,
        is_strongly_holt_klee=hk and is_strongly_holt_klee(phi),
    )


PROPERTIES = {
    "uso": is_uso,
    "acyclic": is_acyclic,
    "locally-uniform": is_locally_uniform,
    "holt-klee": is_holt_klee,
    "strong-holt-klee": is_strongly_holt_klee,
}
