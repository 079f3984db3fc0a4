from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symtrop.core import TropicalMatrix
from symtrop.matching import (Permutation, cycle_similar, det_result,
                              enumerate_optimal_bijections, hungarian, is_sym_trop_singular,
                              is_trop_singular, pair_multiset, trop_det)

from conftest import random_matrix, random_symmetric

C2 = TropicalMatrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])


def brute_det(A, I=None, J=None):
    I = range(A.n_rows) if I is None else I
    J = range(A.n_cols) if J is None else J
    I, J = list(I), list(J)
    return min(sum(A[I[a], J[p[a]]] for a in range(len(I))) for p in permutations(range(len(J))))


def test_det_examples():
    assert trop_det(C2) == 0
    assert trop_det(TropicalMatrix([[5]])) == 5
    assert trop_det(TropicalMatrix([[0, 1], [1, 0]])) == 0


def test_det_of_submatrix_and_nonsquare():
    A = TropicalMatrix([[3, 1, 4], [1, 5, 9]])
    assert trop_det(A, [0, 1], [1, 2]) == 9
    with pytest.raises(ValueError):
        trop_det(A)


def test_hungarian_potentials_certify_optimum(rng):
    for _ in range(100):
        A = random_matrix(rng, rng.randint(1, 6), den=2)
        cost = [list(r) for r in A.rows()]
        value, assign, u, v = hungarian(cost)
        n = len(cost)
        assert all(cost[i][j] - u[i] - v[j] >= 0 for i in range(n) for j in range(n))
        assert sum(cost[i][assign[i]] for i in range(n)) == value == sum(u) + sum(v)


def test_det_matches_brute_force(rng):
    for _ in range(300):
        n = rng.randint(1, 6)
        A = random_matrix(rng, n, den=rng.choice([1, 3]))
        assert trop_det(A) == brute_det(A)


def test_cycle_similarity_examples():
    n = 7
    a = Permutation.from_cycles("(1257)(346)", n)
    for other in ("(1752)(346)", "(1257)(364)", "(1752)(364)"):
        assert cycle_similar(a, Permutation.from_cycles(other, n))
    assert cycle_similar(a, a)
    assert not cycle_similar(Permutation.from_cycles("(12)", 3), Permutation.from_cycles("(13)", 3))


def test_permutation_printing_and_parity():
    p = Permutation.from_cycles("(1 10 3)", 10)
    assert str(p) == "(1 10 3)"
    assert Permutation.from_cycles("(12)", 3).parity() == 1
    assert Permutation.from_cycles("(123)", 3).parity() == 0


def test_c2_optimal_bijections():
    std = enumerate_optimal_bijections(C2, mode="standard", limit=2)
    assert len(std) == 2
    assert sorted(map(tuple, std)) == [(1, 2, 0), (2, 0, 1)]  # the two 3-cycles
    sym = enumerate_optimal_bijections(C2, mode="symmetric", limit=2)
    assert len(sym) == 1
    assert pair_multiset([0, 1, 2], [0, 1, 2], sym[0]) == ((0, 1), (0, 2), (1, 2))


def test_one_by_one_has_one_witness():
    assert len(enumerate_optimal_bijections(TropicalMatrix([[7]]), limit=2)) == 1


def test_c2_singularity():
    assert is_trop_singular(C2)
    assert not is_sym_trop_singular(C2)


def test_equal_rows_make_any_submatrix_symmetric_singular(rng):
    for _ in range(30):
        A = random_symmetric(rng, 4)
        # index 4 repeats index 1, as a symmetric matrix
        idx = [0, 1, 2, 3, 1]
        S = TropicalMatrix([[A[a, b] for b in idx] for a in idx], symmetric=True)
        assert is_sym_trop_singular(S, [0, 1, 4], [1, 2, 3])
        assert is_sym_trop_singular(S, [1, 4], [1, 4])
        assert is_sym_trop_singular(S, [1, 2, 4], [0, 2, 3])


def test_generic_matrix_is_nonsingular():
    A = TropicalMatrix([[1, 2, 4], [2, 8, 16], [4, 16, 32]])
    sums = sorted(sum(A[i, p[i]] for i in range(3)) for p in permutations(range(3)))
    assert sums[0] < sums[1]
    assert not is_trop_singular(A) and not is_sym_trop_singular(A)


def test_det_result_counts():
    res = det_result(C2, limit=None)
    assert res.value == 0 and res.singular and res.sym_singular is False


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 5), st.data())
def test_singularity_matches_enumeration(n, data):
    vals = data.draw(st.lists(st.integers(0, 3), min_size=n * n, max_size=n * n))
    A = TropicalMatrix([vals[i * n:(i + 1) * n] for i in range(n)])
    best = brute_det(A)
    count = sum(1 for p in permutations(range(n))
                if sum(A[i, p[i]] for i in range(n)) == best)
    assert is_trop_singular(A) == (count >= 2)
    assert trop_det(A) == best
