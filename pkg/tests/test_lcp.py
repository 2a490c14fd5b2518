import random
from fractions import Fraction as F

import pytest

from usocount.checks import is_locally_uniform, is_strongly_holt_klee, is_uso, unique_sink
from usocount.constructions import BetaAssignment, k_family_matrix, k_family_rhs
from usocount.cube import Orientation, parse_bits, popcount, uniform_orientation
from usocount.errors import Degenerate, NotPMatrix, StepLimitExceeded
from usocount.lcp import (
    basis_matrix,
    basis_of,
    basis_solutions,
    check_lcp_solution,
    induced_orientation,
    is_k_matrix,
    is_nondegenerate,
    is_p_matrix,
    is_z_matrix,
    orientation_from_signs,
    perturb,
    pivot_walk,
    random_k_matrix,
    random_nondegenerate_rhs,
    random_p_matrix,
    sign_vector,
    solve_lcp,
    vertex_of,
)
from usocount.linalg import determinant, identity, matrix, neg, sign, vector

import oracles


def b(s):
    return parse_bits(s)


def test_basis_vertex_round_trip():
    for v in range(16):
        assert vertex_of(basis_of(v)) == v
    assert basis_of(b("101")) == {1, 3}


def test_matrix_classes():
    for n in range(1, 5):
        assert is_p_matrix(identity(n)) and is_z_matrix(identity(n)) and is_k_matrix(identity(n))
    m = matrix([[1, 2], [0, 1]])
    assert is_p_matrix(m) and not is_z_matrix(m) and not is_k_matrix(m)
    assert not is_p_matrix(matrix([[0, 1], [1, 0]]))
    assert not is_z_matrix(k_family_matrix(BetaAssignment(2, {(1, 2): -2})))
    with pytest.raises(ValueError):
        is_p_matrix(matrix([[1, 2]]))


def test_basis_matrix_examples():
    M = matrix([[1, "-3/2"], [0, 1]])
    assert basis_matrix(M, 0) == identity(2)
    assert basis_matrix(M, 0b11) == neg(M)
    assert basis_matrix(M, b("01")) == matrix([[1, "3/2"], [0, -1]])


def test_identity_matrix_orientation():
    assert induced_orientation(identity(2), vector([-1, -1])) == uniform_orientation(2)
    with pytest.raises(Degenerate) as exc:
        induced_orientation(identity(2), vector([0, 1]))
    assert exc.value.vertex == 0 and exc.value.coord == 1


def test_non_p_matrix_rejected():
    with pytest.raises(NotPMatrix):
        induced_orientation(matrix([[0, 1], [1, 0]]), vector([-1, -1]))
    with pytest.raises(NotPMatrix):
        solve_lcp(matrix([[-1, 0], [0, 1]]), vector([1, 1]))


def test_k_family_two_dimensional():
    q = k_family_rhs(2)
    phi = induced_orientation(k_family_matrix(BetaAssignment(2, {(1, 2): F(1, 2)})), q)
    assert phi.out[b("00")] == 0b01
    assert phi.out[b("10")] == 0
    assert phi.out[b("01")] == 0b10
    assert phi.out[b("11")] == 0b11
    psi = induced_orientation(k_family_matrix(BetaAssignment(2, {(1, 2): F(-1, 2)})), q)
    diff = {(v, i) for v in range(4) for i in range(2) if (phi.out[v] ^ psi.out[v]) >> i & 1}
    assert diff == {(b("01"), 0), (b("11"), 0)}


def test_induced_orientation_matches_cramer_oracle():
    rng = random.Random(11)
    for n in (2, 3, 4):
        for _ in range(10):
            M = random_p_matrix(rng, n)
            q = random_nondegenerate_rhs(rng, M)
            phi = induced_orientation(M, q)
            assert phi.out == oracles.induced_by_cramer(M, q)
            assert is_uso(phi)


def test_sign_vector():
    s = sign_vector(identity(2), vector([-1, -1]))
    for v in range(4):
        assert s[v] == tuple(1 if v >> i & 1 else -1 for i in range(2))
    rng = random.Random(5)
    for _ in range(50):
        M = random_p_matrix(rng, 4)
        q = random_nondegenerate_rhs(rng, M)
        for v in range(16):
            assert sign(determinant(basis_matrix(M, v))) == (-1) ** popcount(v)
        assert orientation_from_signs(sign_vector(M, q)) == induced_orientation(M, q)


def test_solve_lcp_examples():
    sol = solve_lcp(identity(2), vector([1, 2]))
    assert sol.basis == frozenset() and sol.w == (1, 2) and sol.z == (0, 0)
    for beta in (F(1, 2), F(-1, 3), F(0)):
        M = k_family_matrix(BetaAssignment(2, {(1, 2): beta}))
        q = k_family_rhs(2)
        sol = solve_lcp(M, q)
        assert sol.basis == {1}
        assert sol.z == (1, 0) and sol.w == (0, 1)
        assert check_lcp_solution(M, q, sol)


def test_solve_lcp_allows_degenerate_q():
    sol = solve_lcp(identity(2), vector([0, 1]))
    assert check_lcp_solution(identity(2), vector([0, 1]), sol)


def test_exactly_one_complementary_basis():
    rng = random.Random(3)
    for _ in range(100):
        M = random_p_matrix(rng, 3)
        q = random_nondegenerate_rhs(rng, M)
        good = [v for v, x in enumerate(basis_solutions(M, q)) if all(xi >= 0 for xi in x)]
        assert len(good) == 1
        assert good[0] == solve_lcp(M, q).vertex == unique_sink(induced_orientation(M, q))


def test_pivot_walk_uniform():
    path = pivot_walk(identity(3), vector([-1, -1, -1]), 0, "least-index")
    assert path == [b("000"), b("100"), b("110"), b("111")]
    assert pivot_walk(identity(3), vector([-1, -1, -1]), 7) == [7]
    with pytest.raises(ValueError):
        pivot_walk(identity(2), vector([-1, -1]), 0, "random")


def test_random_walks_reach_solution():
    rng = random.Random(8)
    for t in range(20):
        M = random_p_matrix(rng, 3)
        q = random_nondegenerate_rhs(rng, M)
        phi = induced_orientation(M, q)
        path = pivot_walk(M, q, rng.randrange(8), "random", seed=t)
        assert path[-1] == solve_lcp(M, q).vertex
        for u, v in zip(path, path[1:]):
            assert phi.out[u] & (u ^ v)


def test_step_limit(monkeypatch):
    import usocount.lcp as lcp

    # a sinkless directed 4-cycle stands in for the induced orientation
    cycle = Orientation.from_edges(
        2, [(b("00"), b("10")), (b("10"), b("11")), (b("11"), b("01")), (b("01"), b("00"))]
    )
    monkeypatch.setattr(lcp, "induced_orientation", lambda M, q: cycle)
    with pytest.raises(StepLimitExceeded):
        lcp.pivot_walk(identity(2), vector([1, 1]), 0)


def test_p_usos_are_strongly_holt_klee_and_k_usos_locally_uniform():
    rng = random.Random(21)
    for n in (2, 3, 4):
        for _ in range(8):
            M = random_p_matrix(rng, n)
            assert is_strongly_holt_klee(induced_orientation(M, random_nondegenerate_rhs(rng, M)))
            K = random_k_matrix(rng, n)
            assert is_locally_uniform(induced_orientation(K, random_nondegenerate_rhs(rng, K)))


def test_perturb():
    q = perturb(identity(3), vector([0, 0, -1]))
    assert is_nondegenerate(identity(3), q)
    assert q[2] < 0
    q0 = vector([-1, 2, 3])
    assert perturb(identity(3), q0) == q0
