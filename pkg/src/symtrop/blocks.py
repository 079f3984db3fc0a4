"""Canonical block form of a normalized symmetric matrix of symmetric tropical rank two.

After a diagonal permutation such a matrix looks like::

    0   0   0   0   0
    0   B1  0   0   0
    0   0   B2  0   0
    0   0   0   0   C
    0   0   0   C^T 0

with B1, B2 positive symmetric blocks, C nonnegative without zero columns,
and any of the pieces possibly empty. The construction mirrors the
cosupport argument: columns of the bordered matrix have pairwise equal or
disjoint cosupports, positive diagonal entries cluster into at most two
blocks, and the remainder splits into a zero block against C.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .core import TropicalMatrix, diagonal_permute, is_normalized, symmetric_scale
from .matching import Permutation

__all__ = ["StructureViolation", "BlockDecomposition", "cosupport", "block_decompose", "bordered",
           "random_block_form"]


class StructureViolation(ValueError):
    """The input does not have the block structure; ``witness`` holds offending indices (0-based)."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


def cosupport(A: TropicalMatrix, j: int) -> frozenset[int]:
    return frozenset(i for i in range(A.n_rows) if A[i, j] != 0)


def bordered(A: TropicalMatrix) -> TropicalMatrix:
    """A with a zero row and column prepended."""
    n = A.n_rows
    rows = [[0] * (n + 1)] + [[0] + list(A.row(i)) for i in range(n)]
    return TropicalMatrix(rows, symmetric=True if A.symmetric else None)


@dataclass(frozen=True)
class BlockDecomposition:
    """Index groups of the block form, in the original (0-based) indexing.

    ``sigma`` lists original indices in block order, so
    ``diagonal_permute(A, sigma)`` is the block-form matrix.
    """

    zero: tuple[int, ...]
    b1: tuple[int, ...]
    b2: tuple[int, ...]
    c_rows: tuple[int, ...]
    c_cols: tuple[int, ...]

    @property
    def sigma(self) -> Permutation:
        return Permutation(self.zero + self.b1 + self.b2 + self.c_rows + self.c_cols)

    @property
    def zero_rows(self) -> int:
        return len(self.zero)

    def layout(self) -> dict[str, tuple[int, int]]:
        """Half-open index ranges of each block in the permuted matrix."""
        out = {}
        start = 0
        for name, grp in (("zero", self.zero), ("B1", self.b1), ("B2", self.b2),
                          ("C_rows", self.c_rows), ("C_cols", self.c_cols)):
            out[name] = (start, start + len(grp))
            start += len(grp)
        return out

    def permuted(self, A: TropicalMatrix) -> TropicalMatrix:
        return diagonal_permute(A, self.sigma)

    def B1(self, A):
        return A.principal(self.b1) if self.b1 else None

    def B2(self, A):
        return A.principal(self.b2) if self.b2 else None

    def C(self, A):
        return A.submatrix(self.c_rows, self.c_cols) if self.c_rows else None

    def check(self, A: TropicalMatrix) -> None:
        """Assert that A really has the stated pattern."""
        n = A.n_rows
        groups = [self.zero, self.b1, self.b2, self.c_rows, self.c_cols]
        if sorted(i for g in groups for i in g) != list(range(n)):
            raise StructureViolation("index groups do not partition the matrix")
        pos = {}
        for k, g in enumerate(groups):
            for i in g:
                pos[i] = k
        for i in range(n):
            for j in range(n):
                a, b = pos[i], pos[j]
                positive = (a == b and a in (1, 2)) or {a, b} == {3, 4}
                if positive and a in (1, 2) and not A[i, j] > 0:
                    raise StructureViolation(f"block entry ({i + 1},{j + 1}) is not positive")
                if not positive and A[i, j] != 0:
                    raise StructureViolation(f"entry ({i + 1},{j + 1}) should be 0")
        for w in self.c_cols:
            if all(A[z, w] == 0 for z in self.c_rows):
                raise StructureViolation(f"C has a zero column at index {w + 1}")


def block_decompose(A: TropicalMatrix, check_rank: bool = False) -> BlockDecomposition:
    """Compute the block form of a normalized symmetric matrix of symmetric tropical rank 2."""
    if not A.symmetric:
        raise ValueError("block decomposition needs a symmetric matrix")
    if not is_normalized(A) or A.min_entry() < 0:
        raise ValueError("block decomposition needs a normalized matrix (row minima 0)")
    if check_rank:
        from .rank import symmetric_tropical_rank

        r = symmetric_tropical_rank(A).rank
        if r != 2:
            raise StructureViolation(f"symmetric tropical rank is {r}, not 2")
    n = A.n_rows
    cos = [cosupport(A, j) for j in range(n)]

    # Columns of the bordered matrix: the extra zero column has empty cosupport,
    # so only pairs of original columns can clash.
    for i, j in combinations(range(n), 2):
        a, b = cos[i], cos[j]
        if a and b and a != b and a & b:
            k = next(iter(sorted(a & b)))
            l = next(iter(sorted(a - b) or sorted(b - a)))
            raise StructureViolation(
                f"columns {i + 1} and {j + 1} have overlapping but unequal cosupports",
                witness=(i, j, k, l),
            )

    zero = tuple(j for j in range(n) if not cos[j])
    if len(zero) == n:
        raise StructureViolation("the zero matrix has symmetric tropical rank 1")

    blocks: list[tuple[int, ...]] = []
    taken: set[int] = set()
    for i in range(n):
        if A[i, i] > 0 and i not in taken:
            grp = tuple(sorted(cos[i]))
            for j in grp:
                if cos[j] != cos[i]:
                    raise StructureViolation(
                        f"positive diagonal at {i + 1} but column {j + 1} has a different cosupport",
                        witness=(i, j),
                    )
            blocks.append(grp)
            taken.update(grp)
    if len(blocks) > 2:
        reps = tuple(b[0] for b in blocks[:3])
        raise StructureViolation(
            "three positive diagonal blocks give a symmetrically nonsingular diag(a,b,c)",
            witness=reps,
        )
    b1 = blocks[0] if blocks else ()
    b2 = blocks[1] if len(blocks) > 1 else ()

    residual = [j for j in range(n) if j not in taken and cos[j]]
    c_rows: list[int] = []
    if residual:
        c_rows = [residual[0]]
        grown = True
        while grown:
            grown = False
            for j in residual:
                if j not in c_rows and all(A[z, j] == 0 for z in c_rows):
                    c_rows.append(j)
                    grown = True
                    break
    c_cols = [j for j in residual if j not in c_rows]
    for i, j in combinations(c_cols, 2):
        if A[i, j] != 0:
            raise StructureViolation(
                f"residual block is not reducible: entry ({i + 1},{j + 1}) is positive",
                witness=(i, j),
            )
    for j in c_cols:
        if A[j, j] != 0:
            raise StructureViolation(f"residual diagonal entry {j + 1} is positive", witness=(j,))

    if not zero and not c_rows and len(blocks) == 1:
        raise StructureViolation("a single positive block cannot be normalized")

    dec = BlockDecomposition(zero, b1, b2, tuple(c_rows), tuple(c_cols))
    dec.check(A)
    return dec


def random_block_form(rng: random.Random, n: int, max_entry: int = 4,
                      scramble: bool = True) -> TropicalMatrix:
    """A random symmetric matrix with the block pattern above.

    Block entries are integers in 1..max_entry (C may also hold zeros, but
    no zero column). With ``scramble`` a random symmetric scaling and
    diagonal permutation hide the pattern. The symmetric tropical rank is
    not guaranteed to be 2, so callers filter.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    while True:
        labels = [rng.choice("zbBrc") for _ in range(n)]
        kinds = set(labels)
        if ("r" in kinds) != ("c" in kinds):
            continue
        if kinds <= {"z"}:
            continue
        if kinds in ({"b"}, {"B"}):
            continue
        break
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            a, b = labels[i], labels[j]
            if a == b and a in "bB":
                v = rng.randint(1, max_entry)
            elif {a, b} == {"r", "c"}:
                v = rng.randint(0, max_entry)
            else:
                v = 0
            rows[i][j] = rows[j][i] = v
    c_rows = [i for i in range(n) if labels[i] == "r"]
    for j in range(n):
        if labels[j] == "c" and all(rows[i][j] == 0 for i in c_rows):
            i = rng.choice(c_rows)
            rows[i][j] = rows[j][i] = rng.randint(1, max_entry)
    A = TropicalMatrix(rows, symmetric=True)
    if scramble:
        A = symmetric_scale(A, [rng.randint(-2, 2) for _ in range(n)])
        perm = list(range(n))
        rng.shuffle(perm)
        A = diagonal_permute(A, perm)
    return A
