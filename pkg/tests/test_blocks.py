import random

import pytest

from symtrop.blocks import (StructureViolation, block_decompose, bordered, cosupport,
                            random_block_form)
from symtrop.core import TropicalMatrix, normalize
from symtrop.rank import brute_rank_oracle, symmetric_tropical_rank


def test_cosupport():
    A = TropicalMatrix([[0, 1], [0, 0], [0, 2]])
    assert cosupport(A, 0) == frozenset()
    assert cosupport(A, 1) == frozenset({0, 2})


def test_cosupport_row_column_agree_for_symmetric(rng):
    A = random_block_form(rng, 5, scramble=False)
    for i in range(5):
        assert cosupport(A, i) == frozenset(j for j in range(5) if A[i, j] != 0)


def test_zero_matrix_rejected():
    with pytest.raises(StructureViolation):
        block_decompose(TropicalMatrix([[0, 0], [0, 0]]))


def test_two_diagonal_blocks():
    A = TropicalMatrix([[1, 0], [0, 1]])
    assert brute_rank_oracle(A, "symmetric") == 2
    dec = block_decompose(A)
    assert (dec.zero, dec.b1, dec.b2, dec.c_rows, dec.c_cols) == ((), (0,), (1,), (), ())


def test_zero_row_and_c():
    A = TropicalMatrix([[0, 0, 1], [0, 0, 0], [1, 0, 0]])
    assert brute_rank_oracle(A, "symmetric") == 2
    dec = block_decompose(A)
    assert 1 in dec.zero
    assert dec.C(A) == TropicalMatrix([[1]])


def test_rank_three_pattern_rejected():
    # three positive diagonal blocks: diag(1,1,1) has symmetric tropical rank 3
    with pytest.raises(StructureViolation) as err:
        block_decompose(TropicalMatrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]]))
    assert err.value.witness is not None


def test_overlapping_cosupports_rejected():
    A = TropicalMatrix([[0, 1, 1], [1, 0, 0], [1, 0, 2]])
    with pytest.raises(StructureViolation):
        block_decompose(A)


def test_needs_normalized_input():
    with pytest.raises(ValueError):
        block_decompose(TropicalMatrix([[1, 2], [2, 1]]))


def test_bordered_prepends_zero_row():
    B = bordered(TropicalMatrix([[2]]))
    assert B == TropicalMatrix([[0, 0], [0, 2]])


def test_random_rank_two_decompositions(rng):
    seen = 0
    while seen < 60:
        A = random_block_form(rng, rng.randint(2, 6))
        if symmetric_tropical_rank(A).rank != 2:
            continue
        seen += 1
        B, _ = normalize(A)
        dec = block_decompose(B, check_rank=True)
        P = dec.permuted(B)
        dec.check(B)
        lay = dec.layout()
        z0, z1 = lay["zero"]
        assert all(P[i, j] == 0 for i in range(z0, z1) for j in range(P.n_cols))
        for name in ("B1", "B2"):
            a, b = lay[name]
            assert all(P[i, j] > 0 for i in range(a, b) for j in range(a, b))


def test_random_block_form_shapes():
    rng = random.Random(3)
    for _ in range(50):
        A = random_block_form(rng, 5, scramble=False)
        assert A.symmetric and A.min_entry() == 0
