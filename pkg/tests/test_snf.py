import random

from clusterdeep.snf import (
    integer_rank,
    invariant_factors,
    smith_normal_form,
    solve_unimodular,
    spans_full_lattice,
)

from helpers import det_int, minor_gcd_invariant_factors


def mat_mul(A, B):
    return [
        [sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))]
        for i in range(len(A))
    ]


def check_snf(M):
    U, D, V = smith_normal_form(M)
    R, C = len(M), len(M[0])
    assert len(U) == R and len(V) == C
    assert abs(det_int(U)) == 1
    assert abs(det_int(V)) == 1
    assert mat_mul(mat_mul(U, M), V) == D
    diag = [D[t][t] for t in range(min(R, C))]
    for i in range(R):
        for j in range(C):
            if i != j:
                assert D[i][j] == 0
    nonzero = [d for d in diag if d]
    assert all(d > 0 for d in nonzero)
    for a, b in zip(nonzero, nonzero[1:]):
        assert b % a == 0
    # past the first zero everything is zero
    seen_zero = False
    for d in diag:
        if d == 0:
            seen_zero = True
        elif seen_zero:
            raise AssertionError("nonzero after zero on diagonal")
    return nonzero


def test_snf_hand_cases():
    assert check_snf([[2, 4], [4, 8]]) == [2]
    assert check_snf([[1, 0], [0, 1]]) == [1, 1]
    assert check_snf([[2, 0], [0, 3]]) == [1, 6]
    assert check_snf([[0, 0], [0, 0]]) == []
    assert check_snf([[6]]) == [6]
    assert check_snf([[2, 4, 4], [-6, 6, 12], [10, 4, 16]]) == [2, 2, 156]


def test_snf_nonsquare():
    assert check_snf([[2, 4, 6]]) == [2]
    assert check_snf([[2], [4], [6]]) == [2]
    assert check_snf([[1, 2], [3, 4], [5, 6]]) == [1, 2]


def test_invariant_factors_match_minor_gcds():
    rng = random.Random(77)
    for _ in range(200):
        r = rng.randint(1, 3)
        c = rng.randint(1, 3)
        M = [[rng.randint(-4, 4) for _ in range(c)] for _ in range(r)]
        expect = minor_gcd_invariant_factors(M)
        assert invariant_factors(M) == expect
        assert check_snf(M) == expect


def test_rank_and_full_lattice():
    assert integer_rank([[0, 1], [-1, 0]]) == 2
    assert spans_full_lattice([[0, 1], [-1, 0]], 2)
    assert not spans_full_lattice([[2, 0], [0, 1]], 2)
    assert not spans_full_lattice([[1, 0]], 2)
    assert spans_full_lattice([[1, 0], [0, 1], [5, 7]], 2)


def test_solve_unimodular():
    rng = random.Random(99)
    for _ in range(50):
        k = rng.randint(1, 4)
        # build a unimodular matrix from random elementary operations
        X = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
        for _ in range(8):
            a, b = rng.randrange(k), rng.randrange(k)
            if a != b:
                f = rng.randint(-3, 3)
                X[a] = [x + f * y for x, y in zip(X[a], X[b])]
        tau = [rng.randint(-5, 5) for _ in range(k)]
        c = [sum(X[i][j] * tau[j] for j in range(k)) for i in range(k)]
        assert solve_unimodular(X, c) == tau
