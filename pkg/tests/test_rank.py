import pytest

from symtrop.core import TropicalMatrix
from symtrop.rank import (brute_rank_oracle, find_nonsingular, rank_one_test,
                          symmetric_tropical_rank, tropical_rank)
from symtrop.witness import catalog

from conftest import random_matrix, random_symmetric

C2 = TropicalMatrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])


def test_standard_ranks():
    assert tropical_rank(catalog("fano7").matrix).rank == 3
    assert tropical_rank(C2).rank == 2
    assert tropical_rank(TropicalMatrix([[0] * 4] * 4)).rank == 1


def test_symmetric_ranks():
    assert symmetric_tropical_rank(C2).rank == 3
    assert symmetric_tropical_rank(catalog("fano7_symmetric").matrix).rank == 4


def test_rank_witness_is_nonsingular():
    rep = symmetric_tropical_rank(C2)
    assert rep.witness_1based() == ([1, 2, 3], [1, 2, 3])


def test_symmetric_rank_needs_symmetric_input():
    with pytest.raises(ValueError):
        symmetric_tropical_rank(TropicalMatrix([[0, 1], [2, 0]]))


def test_rank_one_test():
    assert rank_one_test(TropicalMatrix([[0, 1], [1, 2]]))
    assert not rank_one_test(C2)
    assert rank_one_test(TropicalMatrix([[4]]))


def test_exhaustive_scan_agrees(rng):
    for _ in range(40):
        A = random_symmetric(rng, rng.randint(2, 5))
        assert symmetric_tropical_rank(A, exhaustive=True).rank == symmetric_tropical_rank(A).rank


def test_threaded_scan_agrees(rng):
    A = catalog("fano7_symmetric").matrix
    assert find_nonsingular(A, 4, "symmetric", threads=2) == find_nonsingular(A, 4, "symmetric")


def test_against_oracle_standard(rng):
    for _ in range(150):
        A = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5), 0, 4)
        assert tropical_rank(A).rank == brute_rank_oracle(A)


def test_against_oracle_symmetric(rng):
    for _ in range(150):
        A = random_symmetric(rng, rng.randint(1, 5))
        assert symmetric_tropical_rank(A).rank == brute_rank_oracle(A, "symmetric")
        assert symmetric_tropical_rank(A).rank >= tropical_rank(A).rank


def test_oracle_size_limit():
    with pytest.raises(ValueError):
        brute_rank_oracle(TropicalMatrix([[0] * 8] * 8))
