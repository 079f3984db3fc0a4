import pytest

from symtrop.core import TropicalMatrix, permute_cols, permute_rows
from symtrop.matching import Permutation
from symtrop.rank import symmetric_tropical_rank, tropical_rank
from symtrop.witness import (CATALOG, WitnessRecord, border_extend, catalog, duplicate_extend,
                             in_nonbasis_region, verify_record, witness)

from conftest import random_symmetric


def rec(A):
    return WitnessRecord(A, symmetric_tropical_rank(A).rank, False, ("test",))


def test_catalog_shapes_and_flags():
    assert catalog("fano7").matrix.shape == (7, 7)
    assert set(catalog("fano7").matrix.entries()) == {0, 1}
    f13 = catalog("fano13")
    assert f13.matrix.shape == (13, 13) and f13.claimed_kapranov_gap
    assert catalog("shitov6_symmetric").claimed_kapranov_gap
    with pytest.raises(KeyError):
        catalog("nope")


def test_fano13_blocks_are_symmetric_fano():
    A = catalog("fano13").matrix
    f7s = catalog("fano7_symmetric").matrix
    assert A.submatrix(range(6), range(6)) == TropicalMatrix([[0] * 6] * 6)
    assert A.submatrix(range(6, 13), range(6, 13)).submatrix(range(1, 7), range(1, 7)) == \
        TropicalMatrix([[0] * 6] * 6)
    assert A.submatrix(range(0, 7), range(6, 13)) == f7s


def test_shitov_symmetric_is_rearrangement():
    s6, s6s = catalog("shitov6").matrix, catalog("shitov6_symmetric").matrix
    rows = Permutation.from_cycles("(16)(25)(34)", 6)
    cols = Permutation.from_cycles("(135)(246)", 6).inverse()
    assert permute_cols(permute_rows(s6, rows), cols) == s6s
    assert s6s.symmetric


@pytest.mark.parametrize("name", [n for n in CATALOG if n != "fano13"])
def test_catalog_claims(name):
    assert verify_record(catalog(name)).ok


def test_duplicate_examples():
    W = duplicate_extend(rec(TropicalMatrix([[0]])))
    assert W.matrix == TropicalMatrix([[0, 0], [0, 0]])
    assert symmetric_tropical_rank(W.matrix).rank == 1


def test_duplicate_fano13():
    W = duplicate_extend(catalog("fano13"))
    assert W.matrix.shape == (14, 14)
    assert W.matrix.principal(range(13)) == catalog("fano13").matrix
    assert verify_record(W).ok and W.claimed_kapranov_gap


def test_duplicate_preserves_rank(rng):
    for _ in range(200):
        A = random_symmetric(rng, 4, -3, 3)
        W = duplicate_extend(rec(A))
        assert W.matrix.principal(range(4)) == A
        assert symmetric_tropical_rank(W.matrix).rank == symmetric_tropical_rank(A).rank


def test_border_examples():
    W = border_extend(catalog("shitov6_symmetric"))
    assert W.matrix.shape == (7, 7) and symmetric_tropical_rank(W.matrix).rank == 5
    W = border_extend(catalog("c2"))
    assert W.matrix.shape == (4, 4) and symmetric_tropical_rank(W.matrix).rank == 4
    with pytest.raises(ValueError):
        border_extend(catalog("c2"), P=1)
    with pytest.raises(ValueError):
        border_extend(catalog("c2"), M=0)


def test_border_custom_constants(rng):
    for _ in range(50):
        A = random_symmetric(rng, 4, -3, 3)
        W = border_extend(rec(A), P=A.max_entry() + 7, M=A.min_entry() - 5)
        assert symmetric_tropical_rank(W.matrix).rank == symmetric_tropical_rank(A).rank + 1


def test_extensions_need_symmetry():
    A = TropicalMatrix([[0, 1], [2, 0]])
    W = WitnessRecord(A, None, False, ())
    with pytest.raises(ValueError):
        duplicate_extend(W)
    with pytest.raises(ValueError):
        border_extend(W)


def test_region():
    assert in_nonbasis_region(5, 6) and in_nonbasis_region(4, 13)
    assert not in_nonbasis_region(4, 12) and not in_nonbasis_region(5, 5)
    assert not in_nonbasis_region(3, 20)
    with pytest.raises(ValueError):
        witness(4, 12)


def test_witness_bases():
    assert witness(4, 13).matrix == catalog("fano13").matrix
    assert witness(5, 6).matrix == catalog("shitov6_symmetric").matrix


def test_witness_chain():
    W = witness(6, 8)
    assert W.provenance == ("catalog:shitov6_symmetric", "border_extend(P=5,M=-1)",
                            "duplicate_extend")
    assert W.claimed_sym_trop_rank == 5 and W.claimed_kapranov_gap
    assert symmetric_tropical_rank(W.matrix).rank == 5


def test_reduced_verification_for_large_witness():
    W = witness(7, 16)
    rep = verify_record(W)
    assert rep.mode == "reduced" and rep.ok and rep.sym_trop_rank == 6


def test_reduced_verification_catches_wrong_claim():
    W = witness(6, 15)
    bad = WitnessRecord(W.matrix, 4, True, W.provenance)
    assert not verify_record(bad).ok


def test_reduction_agrees_with_full_scan():
    for r, n in [(5, 9), (6, 9), (7, 9)]:
        W = witness(r, n)
        assert verify_record(W, full=False).sym_trop_rank == verify_record(W, full=True).sym_trop_rank


def test_sampled_verification(monkeypatch):
    import symtrop.witness as w
    monkeypatch.setattr(w, "FULL_VERIFY_MAX", 5)
    W = witness(6, 9)
    rep = verify_record(W, samples=60)
    assert rep.mode == "sampled" and rep.ok and rep.sym_trop_rank == 5
    # claiming too much fails: no nonsingular minor of the claimed size exists
    assert not verify_record(WitnessRecord(W.matrix, 6, True, ()), samples=10).ok


def test_standard_rank_not_claimed_after_extension():
    assert duplicate_extend(catalog("c2")).claimed_trop_rank is None
    assert tropical_rank(catalog("c2").matrix).rank == 2
