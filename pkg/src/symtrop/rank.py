"""Tropical rank and symmetric tropical rank by minor enumeration.

Rank here is the largest r admitting a (symmetrically) tropically
nonsingular r x r submatrix. Levels are scanned upward; the first level
with no nonsingular submatrix ends the search unless ``exhaustive`` is set,
in which case every higher level is scanned too and a nonsingular minor
above an all-singular level raises :class:`MonotonicityViolation`.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations, permutations

from .core import TropicalMatrix
from .matching import is_sym_trop_singular, is_trop_singular

__all__ = [
    "RankReport",
    "MonotonicityViolation",
    "tropical_rank",
    "symmetric_tropical_rank",
    "find_nonsingular",
    "rank_one_test",
    "brute_rank_oracle",
    "brute_singular",
]

BRUTE_MAX = 7


class MonotonicityViolation(AssertionError):
    pass


@dataclass(frozen=True)
class RankReport:
    rank: int
    witness_submatrix: tuple[tuple[int, ...], tuple[int, ...]]
    exhaustive: bool
    mode: str = "standard"

    def witness_1based(self) -> tuple[list[int], list[int]]:
        I, J = self.witness_submatrix
        return [i + 1 for i in I], [j + 1 for j in J]


def _scan_chunk(args):
    A, r, mode, I_list = args
    singular = is_sym_trop_singular if mode == "symmetric" else is_trop_singular
    n_cols = A.n_cols
    for I in I_list:
        for J in combinations(range(n_cols), r):
            if mode == "symmetric" and J < I:
                # transpose of (J, I), already covered
                continue
            if not singular(A, I, J):
                return (I, J)
    return None


def find_nonsingular(A: TropicalMatrix, r: int, mode: str = "standard",
                     threads: int = 1) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Lexicographically first (I, J) whose r x r submatrix is nonsingular, or None."""
    if mode == "symmetric" and not A.symmetric:
        raise ValueError("symmetric rank needs a symmetric matrix")
    rows = list(combinations(range(A.n_rows), r))
    if threads <= 1 or len(rows) < 2 * threads:
        return _scan_chunk((A, r, mode, rows))
    chunks = [rows[k:k + 8] for k in range(0, len(rows), 8)]
    with ProcessPoolExecutor(max_workers=threads) as ex:
        for res in ex.map(_scan_chunk, [(A, r, mode, c) for c in chunks]):
            # map preserves order, so the first hit is the lexicographic minimum
            if res is not None:
                return res
    return None


def _rank(A: TropicalMatrix, mode: str, exhaustive: bool, threads: int) -> RankReport:
    top = min(A.n_rows, A.n_cols)
    best = 0
    witness: tuple = ((), ())
    for r in range(1, top + 1):
        hit = find_nonsingular(A, r, mode, threads)
        if hit is None:
            if exhaustive:
                for s in range(r + 1, top + 1):
                    above = find_nonsingular(A, s, mode, threads)
                    if above is not None:
                        raise MonotonicityViolation(
                            f"all {r}x{r} minors singular but {s}x{s} minor at {above} is not"
                        )
            break
        best, witness = r, hit
    return RankReport(best, witness, exhaustive, mode)


def tropical_rank(A: TropicalMatrix, exhaustive: bool = False, threads: int = 1) -> RankReport:
    return _rank(A, "standard", exhaustive, threads)


def symmetric_tropical_rank(A: TropicalMatrix, exhaustive: bool = False,
                            threads: int = 1) -> RankReport:
    if not A.symmetric:
        raise ValueError("symmetric tropical rank is defined for symmetric matrices only")
    return _rank(A, "symmetric", exhaustive, threads)


def rank_one_test(A: TropicalMatrix) -> bool:
    """True iff every column is a tropical multiple of the first."""
    first = A.col(0)
    for j in range(1, A.n_cols):
        col = A.col(j)
        shift = col[0] - first[0]
        if any(col[i] - first[i] != shift for i in range(A.n_rows)):
            return False
    return True


def default_threads() -> int:
    return max(1, min(8, os.cpu_count() or 1))


# -- independent oracle -----------------------------------------------

def brute_singular(A: TropicalMatrix, I, J, mode: str) -> bool:
    """Singularity by listing every bijection; no assignment solver involved."""
    best = None
    optimal = []
    for p in permutations(range(len(J))):
        s = sum(A[I[a], J[p[a]]] for a in range(len(I)))
        if best is None or s < best:
            best, optimal = s, [p]
        elif s == best:
            optimal.append(p)
    if mode == "standard":
        return len(optimal) >= 2
    monomials = set()
    for p in optimal:
        monomials.add(tuple(sorted(tuple(sorted((I[a], J[p[a]]))) for a in range(len(I)))))
    return len(monomials) >= 2


def brute_rank_oracle(A: TropicalMatrix, mode: str = "standard") -> int:
    """Largest r with a nonsingular r x r submatrix, checking every level in full."""
    if max(A.n_rows, A.n_cols) > BRUTE_MAX:
        raise ValueError(f"brute-force oracle is limited to {BRUTE_MAX}x{BRUTE_MAX}")
    if mode == "symmetric" and not A.symmetric:
        raise ValueError("symmetric mode needs a symmetric matrix")
    rank = 0
    for r in range(1, min(A.n_rows, A.n_cols) + 1):
        found = False
        for I in combinations(range(A.n_rows), r):
            for J in combinations(range(A.n_cols), r):
                if not brute_singular(A, I, J, mode):
                    found = True
        if found:
            rank = r
    return rank
