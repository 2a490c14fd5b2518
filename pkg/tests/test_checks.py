import random

import pytest

from usocount.census import all_orientations
from usocount.checks import (
    classify,
    disjoint_paths,
    is_acyclic,
    is_holt_klee,
    is_locally_uniform,
    is_strongly_holt_klee,
    is_uso,
    is_uso_pairwise,
    max_disjoint_paths,
    unique_sink,
    unique_source,
)
from usocount.constructions import monotone_functions, monotone_uso
from usocount.cube import Orientation, Subcube, mask_of, parse_bits, reverse, subcubes, uniform_orientation
from usocount.errors import NotUnique, NotUso
from usocount.lcp import induced_orientation, random_nondegenerate_rhs, random_p_matrix

import oracles
from test_cube import all_three_usos, all_two_usos


def b(s):
    return parse_bits(s)


# 00 -> 10 -> 11 -> 01 -> 00
CYCLE = Orientation.from_edges(2, [(b("00"), b("10")), (b("10"), b("11")), (b("11"), b("01")), (b("01"), b("00"))])


def test_uso_basic():
    assert is_uso(uniform_orientation(3))
    assert not is_uso(CYCLE)
    assert sum(is_uso(Orientation(2, o)) for o in all_orientations(2)) == 12


def test_uso_tests_agree_with_definition_oracle():
    for n in (1, 2, 3):
        for out in all_orientations(n):
            phi = Orientation(n, out)
            expected = oracles.is_uso_oracle(oracles.edge_set(phi), n)
            assert is_uso(phi) == expected
            assert is_uso_pairwise(phi) == expected


def _random_orientation(rng, n):
    return Orientation.from_rule(n, lambda v, i: rng.random() < 0.5)


def _single_edge_flip(phi, rng):
    v = rng.randrange(1 << phi.n)
    bit = 1 << rng.randrange(phi.n)
    out = list(phi.out)
    out[v] ^= bit
    out[v ^ bit] ^= bit
    return Orientation(phi.n, tuple(out))


@pytest.mark.parametrize("n", [4, 5])
def test_uso_tests_agree_on_random_orientations(n):
    rng = random.Random(n)
    for _ in range(10_000):
        phi = _random_orientation(rng, n)
        assert is_uso(phi) == is_uso_pairwise(phi)
    # positive and near-miss cases too
    for _ in range(30):
        M = random_p_matrix(rng, n)
        phi = induced_orientation(M, random_nondegenerate_rhs(rng, M))
        assert is_uso(phi) and is_uso_pairwise(phi)
        psi = _single_edge_flip(phi, rng)
        assert is_uso(psi) == is_uso_pairwise(psi)


def test_reversal_preserves_uso():
    for phi in all_three_usos():
        for F in range(8):
            assert is_uso(reverse(phi, F))
    rng = random.Random(4)
    for _ in range(20):
        M = random_p_matrix(rng, 4)
        phi = induced_orientation(M, random_nondegenerate_rhs(rng, M))
        for F in range(16):
            assert is_uso(reverse(phi, F))


def test_unique_sink_and_source():
    for n in range(1, 5):
        assert unique_sink(uniform_orientation(n)) == (1 << n) - 1
        assert unique_source(uniform_orientation(n)) == 0
    s = Subcube(b("010"), mask_of({1, 3}))
    assert unique_sink(uniform_orientation(3), s) == b("111")
    with pytest.raises(NotUnique):
        unique_sink(CYCLE)
    with pytest.raises(NotUnique):
        unique_source(CYCLE)


def test_acyclic():
    for n in range(1, 6):
        assert is_acyclic(uniform_orientation(n))
    assert not is_acyclic(CYCLE)


def test_acyclic_count_matches_dfs_oracle():
    usos = all_three_usos()
    ours = sum(is_acyclic(phi) for phi in usos)
    dfs = sum(not oracles.has_cycle_oracle(oracles.edge_set(phi), 3) for phi in usos)
    assert ours == dfs == 728


def test_locally_uniform_examples():
    for n in range(1, 6):
        assert is_locally_uniform(uniform_orientation(n))
    phi = Orientation.from_edges(
        2, [(b("00"), b("10")), (b("00"), b("01")), (b("10"), b("11")), (b("11"), b("01"))]
    )
    assert is_uso(phi)
    assert not is_locally_uniform(phi)


def test_locally_uniform_counts_match_literal_oracle():
    two = all_two_usos()
    assert sum(map(is_locally_uniform, two)) == sum(
        oracles.locally_uniform_oracle(oracles.edge_set(p), 2) for p in two
    ) == 8
    three = all_three_usos()
    assert sum(map(is_locally_uniform, three)) == sum(
        oracles.locally_uniform_oracle(oracles.edge_set(p), 3) for p in three
    ) == 98


def test_locally_uniform_usos_are_acyclic():
    for phi in all_two_usos() + all_three_usos():
        if is_locally_uniform(phi):
            assert is_acyclic(phi)


def test_holt_klee_basics():
    for n in range(1, 5):
        assert is_holt_klee(uniform_orientation(n))
    assert all(is_holt_klee(p) for p in all_two_usos())
    with pytest.raises(NotUso):
        is_holt_klee(CYCLE)
    with pytest.raises(NotUso):
        is_strongly_holt_klee(CYCLE)


def test_holt_klee_count_matches_path_oracle():
    three = all_three_usos()
    ours = [is_holt_klee(p) for p in three]
    oracle = [oracles.holt_klee_oracle(oracles.edge_set(p), 3) for p in three]
    assert ours == oracle
    assert len(three) - sum(ours) == 72


def test_flow_never_exceeds_dimension_and_paths_are_valid():
    for phi in all_three_usos()[::7]:
        for s in subcubes(3):
            k = max_disjoint_paths(phi, s)
            assert k <= s.dimension
            paths = disjoint_paths(phi, s)
            assert len(paths) == k
            inner = [v for p in paths for v in p[1:-1]]
            assert len(inner) == len(set(inner))
            for p in paths:
                assert all(p[t + 1] in s and phi.out[p[t]] & (p[t] ^ p[t + 1]) for t in range(len(p) - 1))


def test_strong_holt_klee():
    for n in range(1, 5):
        assert is_strongly_holt_klee(uniform_orientation(n))
    for f in monotone_functions(2):
        assert is_strongly_holt_klee(monotone_uso(f))
    for phi in all_three_usos():
        if not is_holt_klee(phi):
            assert not is_strongly_holt_klee(phi)
        if is_strongly_holt_klee(phi):
            assert is_holt_klee(phi)


def test_classify():
    assert all(classify(uniform_orientation(3)).as_dict().values())
    prof = classify(CYCLE)
    assert not prof.is_uso and not prof.is_acyclic
    assert not prof.is_holt_klee and not prof.is_strongly_holt_klee
    # vacuous: no vertex of the cycle has two outgoing (or two incoming) edges at u = 00
    assert prof.is_locally_uniform == oracles.locally_uniform_oracle(oracles.edge_set(CYCLE), 2)


def test_classify_tallies_consistent_with_checkers():
    three = all_three_usos()
    profiles = [classify(p) for p in three]
    assert sum(p.is_uso for p in profiles) == 744
    assert sum(p.is_acyclic for p in profiles) == sum(map(is_acyclic, three))
    assert sum(p.is_locally_uniform for p in profiles) == sum(map(is_locally_uniform, three))
    assert sum(p.is_holt_klee for p in profiles) == sum(map(is_holt_klee, three))
    for p in profiles:
        assert not p.is_strongly_holt_klee or p.is_holt_klee
        assert not (p.is_locally_uniform and p.is_uso) or p.is_acyclic
