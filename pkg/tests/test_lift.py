import random

import pytest

from symtrop.blocks import random_block_form
from symtrop.core import TropicalMatrix
from symtrop.lift import (LiftFailed, LiftPreconditionError, classify_conic,
                          kapranov_rank_3x3, rank1_lift, rank2_symmetric_lift, series_det,
                          standard_rank2_lift, verify_lift)
from symtrop.rank import symmetric_tropical_rank
from symtrop.series import PuiseuxSeries, SeriesMatrix

C1 = TropicalMatrix([[1, 0, 0], [0, 1, 0], [0, 0, 0]])
C2 = TropicalMatrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])


def poly(coeffs, prec=8):
    """Polynomial in t from a coefficient list, lowest degree first."""
    return PuiseuxSeries.from_terms([(k, c) for k, c in enumerate(coeffs) if c], prec)


def test_rank1_examples():
    cert = rank1_lift(TropicalMatrix([[0, 1], [1, 2]]))
    assert cert.valid
    assert [[s.terms() for s in r] for r in cert.matrix.entries] == [
        [[(0, 1)], [(1, 1)]], [[(1, 1)], [(2, 1)]]]
    D, _ = series_det([[cert.matrix[i, j] for j in range(2)] for i in range(2)])
    assert D.is_zero()
    cert = rank1_lift(TropicalMatrix([[3]]))
    assert cert.matrix[0, 0].terms() == [(3, 1)]


def test_rank1_random_outer_sums(rng):
    for _ in range(20):
        u = [rng.randint(-3, 3) for _ in range(4)]
        A = TropicalMatrix([[u[i] + u[j] for j in range(4)] for i in range(4)])
        cert = rank1_lift(A)
        assert cert.valid and cert.symmetry


def test_rank1_precondition():
    with pytest.raises(LiftPreconditionError):
        rank1_lift(C2)


def test_c1_printed_lift_verifies():
    L = SeriesMatrix([[poly([0, 1]), poly([1]), poly([1, 1])],
                      [poly([1]), poly([0, 1]), poly([1, 1])],
                      [poly([1, 1]), poly([1, 1]), poly([2, 2])]])
    cert = verify_lift(C1, L, 2)
    assert cert.valid and cert.symmetry and cert.degree_match


def test_c2_nonsymmetric_lift_fails_symmetry():
    L = SeriesMatrix([[poly([0, 1]), poly([1]), poly([1, 1])],
                      [poly([1]), poly([0, 1]), poly([1, 1])],
                      [poly([1, 1]), poly([-1]), poly([0, 1])]])
    cert = verify_lift(C2, L, 2, symmetric=True)
    assert cert.degree_match
    assert cert.symmetry is False
    assert not cert.valid


def test_wrong_rank_detected():
    L = SeriesMatrix([[poly([0, 1]), poly([1])], [poly([1]), poly([0, 1])]])
    assert not verify_lift(TropicalMatrix([[1, 0], [0, 1]]), L, 1).valid


def test_c1_constructed_lift():
    cert = rank2_symmetric_lift(C1)
    assert cert.valid and cert.symmetry and cert.attempts == 1


def test_c2_rejected():
    with pytest.raises(LiftPreconditionError):
        rank2_symmetric_lift(C2)


@pytest.mark.parametrize("rows", [
    [[1, 0], [0, 1]],
    [[0, 1], [1, 0]],
    [[0, 0, 1], [0, 0, 0], [1, 0, 0]],
    [[0, 0, 0, 0], [0, 2, 0, 0], [0, 0, 0, 3], [0, 0, 3, 0]],
    [[0, 0, 0], [0, 1, 1], [0, 1, 2]],
])
def test_small_block_shapes(rows):
    A = TropicalMatrix(rows)
    assert symmetric_tropical_rank(A).rank == 2
    cert = rank2_symmetric_lift(A, seed=11)
    assert cert.valid


def test_lift_is_deterministic():
    A = TropicalMatrix([[0, 0, 1], [0, 0, 0], [1, 0, 0]])
    a = rank2_symmetric_lift(A, seed=5).matrix
    b = rank2_symmetric_lift(A, seed=5).matrix
    assert all(a[i, j].identical(b[i, j]) for i in range(3) for j in range(3))


def test_random_block_structures():
    rng = random.Random(99)
    done = 0
    while done < 25:
        A = random_block_form(rng, rng.randint(3, 7))
        if symmetric_tropical_rank(A).rank != 2:
            continue
        done += 1
        cert = rank2_symmetric_lift(A, seed=done)
        assert cert.valid and cert.symmetry and cert.degree_match


def test_standard_lift_single_column():
    U = TropicalMatrix([[0, 2], [0, 0]])
    L = standard_rank2_lift(U, seed=1)
    cert = verify_lift(U, L, 2, symmetric=False)
    assert cert.valid


def test_standard_lift_random():
    rng = random.Random(4)
    done = 0
    while done < 15:
        p, q = rng.randint(1, 4), rng.randint(1, 4)
        C = [[rng.randint(0, 3) for _ in range(q)] for _ in range(p)]
        for j in range(q):
            if all(C[i][j] == 0 for i in range(p)):
                C[rng.randrange(p)][j] = rng.randint(1, 3)
        U = TropicalMatrix([[0] + r for r in C] + [[0] * (q + 1)])
        from symtrop.rank import tropical_rank
        if tropical_rank(U).rank != 2:
            continue
        done += 1
        assert verify_lift(U, standard_rank2_lift(U, seed=done), 2, symmetric=False).valid


def test_standard_lift_rejects_rank_one_pattern():
    with pytest.raises(LiftPreconditionError):
        standard_rank2_lift(TropicalMatrix([[0, 0], [0, 0]]))


def test_standard_lift_rejects_bad_shape():
    with pytest.raises(LiftPreconditionError):
        standard_rank2_lift(TropicalMatrix([[0, 1], [1, 0]]))


def test_truncation_must_exceed_entries():
    with pytest.raises(LiftPreconditionError):
        rank2_symmetric_lift(C1, trunc=1)


def test_kapranov_3x3_and_conics():
    assert kapranov_rank_3x3(C2) == 3
    assert kapranov_rank_3x3(C1) == 2
    assert kapranov_rank_3x3(TropicalMatrix([[0] * 3] * 3)) == 1
    assert classify_conic(1, 0, 1, 0, 0, 0) == "singular"
    assert classify_conic(1, 0, 1, 0, 0, 1) == "nonsingular"
    assert classify_conic(0, 0, 0, 0, 0, 0) == "singular"


def test_lift_failed_is_runtime_error():
    assert issubclass(LiftFailed, RuntimeError)
