import random
from fractions import Fraction as F

import pytest

from usocount.census import (
    all_orientations,
    block_matrix,
    census_classes,
    count_fixed_matrix_usos,
    enumerate_usos,
    exact_count_n2,
    sector_directions,
)
from usocount.checks import is_uso
from usocount.cube import Orientation, Subcube, subcube_restriction
from usocount.errors import NotPMatrix
from usocount.lcp import induced_orientation, is_nondegenerate, random_nondegenerate_rhs, random_p_matrix
from usocount.linalg import identity, matrix

import oracles


@pytest.mark.parametrize("n, usos, total", [(1, 2, 2), (2, 12, 16), (3, 744, 4096)])
def test_enumeration_counts(n, usos, total):
    r = enumerate_usos(n)
    assert r.total == total
    assert r.counts["is_uso"] == usos


def test_enumeration_matches_definition_oracle():
    for n in (1, 2, 3):
        expected = sum(oracles.is_uso_oracle(oracles.edge_set(Orientation(n, o)), n) for o in all_orientations(n))
        assert enumerate_usos(n, profile=False).counts["is_uso"] == expected


def test_incremental_matches_brute():
    for n in (1, 2, 3):
        brute = set(enumerate_usos(n, profile=False, keep=True).exemplars)
        inc = enumerate_usos(n, "incremental", profile=False, keep=True).exemplars
        assert len(inc) == len(set(inc)) == len(brute)
        assert set(inc) == brute


def test_enumeration_limits():
    with pytest.raises(ValueError):
        enumerate_usos(4)
    with pytest.raises(ValueError):
        enumerate_usos(5, "incremental")


def test_class_tallies_n2_and_n3():
    r2 = census_classes(2)
    assert r2.counts["is_holt_klee"] == 12
    r3 = census_classes(3)
    lu_oracle = sum(
        oracles.locally_uniform_oracle(oracles.edge_set(Orientation(3, o)), 3) for o in all_orientations(3)
    )
    assert r3.counts["is_locally_uniform"] == lu_oracle
    for key in r3.counts:
        assert r3.counts[key] <= r3.total
    assert r3.counts["is_strongly_holt_klee"] <= r3.counts["is_holt_klee"] <= r3.counts["is_uso"]


def test_sampled_p_census():
    r = census_classes(3, "sample-p", trials=200, seed=3)
    assert r.total == 200
    assert r.counts["is_strongly_holt_klee"] == 200
    assert census_classes(3, "sample-p", trials=30, seed=3).to_json() == census_classes(
        3, "sample-p", trials=30, seed=3
    ).to_json()
    with pytest.raises(ValueError):
        census_classes(3, "sample-p", trials=3)


def test_identity_count_exact_and_sampled():
    assert exact_count_n2(identity(2)) == (4, 4)
    res = count_fixed_matrix_usos(identity(2), 200, seed=1, exact_n2=True)
    assert res.distinct == res.exact == 4
    assert res.history == sorted(res.history)
    # the four USOs are distinguished by their sink, i.e. by the sign pattern of q
    sinks = {Orientation(2, o).sinks()[0] for o in res.usos}
    assert sinks == {0, 1, 2, 3}


def test_sampled_never_exceeds_exact():
    rng = random.Random(6)
    for t in range(15):
        M = random_p_matrix(rng, 2)
        res = count_fixed_matrix_usos(M, 150, seed=t, exact_n2=True)
        assert res.distinct <= res.exact <= res.sectors
        for q in sector_directions(M):
            assert is_nondegenerate(M, q)


def test_fixed_count_rejects_non_p():
    with pytest.raises(NotPMatrix):
        count_fixed_matrix_usos(matrix([[0, 1], [1, 0]]), 5, seed=0)


def test_block_matrix_subcube_identity():
    rng = random.Random(10)
    for _ in range(10):
        Mp = random_p_matrix(rng, 2)
        bvec = [F(rng.randint(-8, 8), 4) for _ in range(2)]
        M = block_matrix(Mp, bvec)
        q = random_nondegenerate_rhs(rng, M)
        top = subcube_restriction(induced_orientation(M, q), Subcube(0b100, 0b011))
        qp = tuple(q[i] - bvec[i] * q[2] for i in range(2))
        assert top == induced_orientation(Mp, qp)
        assert is_uso(top)


def test_report_json_shape():
    data = enumerate_usos(2).to_json()
    assert data["n"] == 2 and data["total"] == 16 and set(data["counts"]) >= {"is_uso", "is_holt_klee"}
