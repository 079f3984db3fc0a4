"""Catalog of known matrices whose symmetric Kapranov rank exceeds their
symmetric tropical rank, and the two extension steps that grow them.

``duplicate_extend`` repeats the last row and column and keeps the rank.
``border_extend`` adds a row and column of a large constant P with a small
constant M in the corner and raises the rank by one. Starting from the
13 x 13 Fano-based matrix (rank 3) or the symmetric 6 x 6 Shitov matrix
(rank 4), these reach every size n and rank bound r with 4 < r < n, and
r = 4 with n > 12.

Kapranov-gap flags are carried along as provenance, not recomputed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations

from .core import TropicalMatrix, to_fraction
from .matching import is_sym_trop_singular
from .rank import symmetric_tropical_rank, tropical_rank

__all__ = [
    "WitnessRecord",
    "VerificationReport",
    "CATALOG",
    "catalog",
    "duplicate_extend",
    "border_extend",
    "witness",
    "in_nonbasis_region",
    "verify_record",
]

FULL_VERIFY_MAX = 13


@dataclass(frozen=True)
class WitnessRecord:
    matrix: TropicalMatrix
    claimed_sym_trop_rank: int | None
    claimed_kapranov_gap: bool
    provenance: tuple[str, ...]
    claimed_trop_rank: int | None = None
    note: str = ""


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    mode: str  # "full" or "sampled"
    sym_trop_rank: int | None
    trop_rank: int | None
    minors_checked: int = 0
    detail: str = ""


def _m(rows) -> TropicalMatrix:
    if isinstance(rows[0], str):
        rows = [r.split() for r in rows]
    return TropicalMatrix([[int(x) for x in r] for r in rows])


_FANO13 = [
    "0 0 0 0 0 0 1 1 0 1 0 0 0",
    "0 0 0 0 0 0 1 0 1 0 0 0 1",
    "0 0 0 0 0 0 0 1 0 0 0 1 1",
    "0 0 0 0 0 0 1 0 0 0 1 1 0",
    "0 0 0 0 0 0 0 0 0 1 1 0 1",
    "0 0 0 0 0 0 0 0 1 1 0 1 0",
    "1 1 0 1 0 0 0 1 1 0 1 0 0",
    "1 0 1 0 0 0 1 0 0 0 0 0 0",
    "0 1 0 0 0 1 1 0 0 0 0 0 0",
    "1 0 0 0 1 1 0 0 0 0 0 0 0",
    "0 0 0 1 1 0 1 0 0 0 0 0 0",
    "0 0 1 1 0 1 0 0 0 0 0 0 0",
    "0 1 1 0 1 0 0 0 0 0 0 0 0",
]

# name -> (rows, tropical rank, symmetric tropical rank, symmetric Kapranov gap, note)
CATALOG: dict[str, tuple] = {
    "fano7": (
        [[1, 1, 0, 1, 0, 0, 0], [0, 1, 1, 0, 1, 0, 0], [0, 0, 1, 1, 0, 1, 0],
         [0, 0, 0, 1, 1, 0, 1], [1, 0, 0, 0, 1, 1, 0], [0, 1, 0, 0, 0, 1, 1],
         [1, 0, 1, 0, 0, 0, 1]],
        3, None, False,
        "cocircuit matrix of the Fano matroid; Kapranov rank 4 (not symmetric)",
    ),
    "fano7_symmetric": (
        [[1, 1, 0, 1, 0, 0, 0], [1, 0, 1, 0, 0, 0, 1], [0, 1, 0, 0, 0, 1, 1],
         [1, 0, 0, 0, 1, 1, 0], [0, 0, 0, 1, 1, 0, 1], [0, 0, 1, 1, 0, 1, 0],
         [0, 1, 1, 0, 1, 0, 0]],
        3, 4, False,
        "fano7 with rows permuted by (27)(36)(45)",
    ),
    "fano13": (
        _FANO13, None, 3, True,
        "off-diagonal 7x7 blocks are fano7_symmetric; a rank-3 symmetric lift "
        "would give fano7 Kapranov rank 3",
    ),
    "shitov6": (
        [[0, 0, 4, 4, 4, 4], [0, 0, 2, 4, 1, 4], [4, 4, 0, 0, 4, 4],
         [2, 4, 0, 0, 2, 4], [4, 4, 4, 4, 0, 0], [2, 4, 1, 4, 0, 0]],
        4, None, False,
        "tropical rank 4, Kapranov rank 5 (not symmetric)",
    ),
    "shitov6_symmetric": (
        [[0, 0, 2, 4, 1, 4], [0, 0, 4, 4, 4, 4], [2, 4, 2, 4, 0, 0],
         [4, 4, 4, 4, 0, 0], [1, 4, 0, 0, 2, 4], [4, 4, 0, 0, 4, 4]],
        4, 4, True,
        "row/column rearrangement of shitov6, whose Kapranov rank 5 bounds "
        "the symmetric Kapranov rank from below",
    ),
    "c1": (
        [[1, 0, 0], [0, 1, 0], [0, 0, 0]], 2, 2, False,
        "symmetric rank-2 lift exists",
    ),
    "c2": (
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]], 2, 3, False,
        "tropical rank 2 but symmetric tropical rank 3",
    ),
}


def catalog(name: str) -> WitnessRecord:
    try:
        rows, tr, sr, gap, note = CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}; choose from {', '.join(CATALOG)}") from None
    return WitnessRecord(_m(rows), sr, gap, (f"catalog:{name}",), tr, note)


def duplicate_extend(W: WitnessRecord) -> WitnessRecord:
    """Append copies of the last column and row; the rank is unchanged."""
    A = W.matrix
    if not A.symmetric:
        raise ValueError("duplicate_extend needs a symmetric matrix")
    n = A.n_rows
    rows = [list(A.row(i)) + [A[i, n - 1]] for i in range(n)]
    rows.append(list(rows[n - 1]))
    return replace(
        W,
        matrix=TropicalMatrix(rows, symmetric=True),
        claimed_trop_rank=None,
        provenance=W.provenance + ("duplicate_extend",),
    )


def border_extend(W: WitnessRecord, P=None, M=None) -> WitnessRecord:
    """Border with P off the diagonal and M in the corner; the rank goes up by one.

    Requires M < every entry < P. Defaults are max + 1 and min - 1.
    """
    A = W.matrix
    if not A.symmetric:
        raise ValueError("border_extend needs a symmetric matrix")
    lo, hi = A.min_entry(), A.max_entry()
    P = hi + 1 if P is None else to_fraction(P)
    M = lo - 1 if M is None else to_fraction(M)
    if not P > hi:
        raise ValueError(f"P = {P} must exceed every entry (max {hi})")
    if not M < lo:
        raise ValueError(f"M = {M} must be below every entry (min {lo})")
    n = A.n_rows
    rows = [list(A.row(i)) + [P] for i in range(n)] + [[P] * n + [M]]
    sr = W.claimed_sym_trop_rank
    return replace(
        W,
        matrix=TropicalMatrix(rows, symmetric=True),
        claimed_sym_trop_rank=None if sr is None else sr + 1,
        claimed_trop_rank=None,
        provenance=W.provenance + (f"border_extend(P={_fmt(P)},M={_fmt(M)})",),
    )


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def in_nonbasis_region(r: int, n: int) -> bool:
    """True when the r x r minors of a symmetric n x n matrix are known not to be a tropical basis."""
    return 4 < r < n or (r == 4 and n > 12)


def witness(r: int, n: int) -> WitnessRecord:
    """An n x n symmetric matrix of symmetric tropical rank r - 1 with a Kapranov gap.

    Raises r first by bordering, then grows n by duplication.
    """
    if not in_nonbasis_region(r, n):
        raise ValueError(f"(r, n) = ({r}, {n}) is outside the region 4 < r < n or r = 4, n > 12")
    if r == 4:
        W = catalog("fano13")
    else:
        W = catalog("shitov6_symmetric")
        for _ in range(r - 5):
            W = border_extend(W)
    while W.matrix.n_rows < n:
        W = duplicate_extend(W)
    return W


def verify_record(W: WitnessRecord, full: bool | None = None, samples: int = 200,
                  seed: int = 0, threads: int = 1) -> VerificationReport:
    """Recompute the claimed ranks.

    Matrices up to 13 x 13 are checked in full. For larger symmetric ones,
    repeated rows are dropped first: a minor using two equal rows is singular
    and one using a copy equals a minor on the original, so the principal
    submatrix on distinct rows has the same rank ("reduced" mode). If that is
    still larger than 13, a nonsingular minor of the claimed size is searched
    for and ``samples`` random minors one size up must be singular
    ("sampled" mode).
    """
    A = W.matrix
    if full is None:
        full = A.n_rows <= FULL_VERIFY_MAX
    if full:
        return _full(W, A, threads, "full", "all minors scanned")

    if not A.symmetric or W.claimed_sym_trop_rank is None:
        raise ValueError("partial verification needs a symmetric matrix with a claimed rank")
    distinct = _distinct_rows(A)
    if len(distinct) <= FULL_VERIFY_MAX:
        R = A.principal(distinct)
        return _full(replace(W, claimed_trop_rank=None), R, threads, "reduced",
                     f"all minors of the {len(distinct)} distinct rows scanned")

    k = W.claimed_sym_trop_rank
    rng = random.Random(seed)
    checked = 0
    found = None
    for I in combinations(distinct, k):
        for J in combinations(distinct, k):
            checked += 1
            if not is_sym_trop_singular(A, I, J):
                found = (I, J)
                break
        if found:
            break
    singular_ok = True
    for _ in range(samples):
        I = tuple(sorted(rng.sample(distinct, k + 1)))
        J = tuple(sorted(rng.sample(distinct, k + 1)))
        checked += 1
        if not is_sym_trop_singular(A, I, J):
            singular_ok = False
            break
    ok = found is not None and singular_ok
    detail = (f"nonsingular {k}x{k} minor at {found}; {samples} random "
              f"{k + 1}x{k + 1} minors singular" if ok else "sampled check failed")
    return VerificationReport(ok, "sampled", k if ok else None, None, checked, detail)


def _full(W: WitnessRecord, A: TropicalMatrix, threads: int, mode: str,
          detail: str) -> VerificationReport:
    sr = symmetric_tropical_rank(A, threads=threads).rank if A.symmetric else None
    tr = tropical_rank(A, threads=threads).rank if W.claimed_trop_rank is not None else None
    ok = (W.claimed_sym_trop_rank is None or sr == W.claimed_sym_trop_rank) and \
         (W.claimed_trop_rank is None or tr == W.claimed_trop_rank)
    return VerificationReport(ok, mode, sr, tr, detail=detail)


def _distinct_rows(A: TropicalMatrix) -> list[int]:
    seen = set()
    out = []
    for i in range(A.n_rows):
        if A.row(i) not in seen:
            seen.add(A.row(i))
            out.append(i)
    return out
