"""Tropical determinants as assignment problems, and optimal-bijection enumeration.

The determinant is solved with a potentials-based Hungarian method. The final
dual potentials certify optimality: a bijection is optimal exactly when all
of its edges have zero reduced cost, so every optimal bijection lives in the
tight subgraph and can be enumerated there by depth-first search.

Symmetric mode identifies X_{i,j} with X_{j,i}. Two bijections then give the
same monomial iff their multisets of unordered index pairs agree; for
principal submatrices this is the same as the two permutations being
cycle-similar.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Sequence

from .core import TropicalMatrix

__all__ = [
    "Permutation",
    "CycleClass",
    "DetResult",
    "pair_multiset",
    "cycle_similar",
    "hungarian",
    "trop_det",
    "det_result",
    "enumerate_optimal_bijections",
    "is_trop_singular",
    "is_sym_trop_singular",
]

_INF = float("inf")


class Permutation:
    """A permutation of {0..n-1}, stored by images; printed 1-based in cycle notation."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"{images} is not a permutation")
        self.images = images

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @classmethod
    def from_cycles(cls, cycles, n: int, one_based: bool = True) -> "Permutation":
        """Build from cycles, either a list of tuples or a string like ``"(1257)(346)"``.

        In the string form, a cycle without separators is read one digit per
        element; use spaces or commas for elements above 9: ``"(1 12 3)"``.
        """
        if isinstance(cycles, str):
            parsed = []
            for body in re.findall(r"\(([^)]*)\)", cycles):
                toks = re.split(r"[\s,]+", body.strip()) if re.search(r"[\s,]", body.strip()) else list(body.strip())
                parsed.append(tuple(int(t) for t in toks if t))
            cycles = parsed
        shift = 1 if one_based else 0
        images = list(range(n))
        seen: set[int] = set()
        for cyc in cycles:
            cyc = [c - shift for c in cyc]
            for c in cyc:
                if not 0 <= c < n or c in seen:
                    raise ValueError(f"bad cycle element {c + shift}")
                seen.add(c)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a] = b
        return cls(images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __len__(self) -> int:
        return len(self.images)

    def __iter__(self):
        return iter(self.images)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def compose(self, other: "Permutation") -> "Permutation":
        """(self ∘ other)(i) = self(other(i))."""
        return Permutation(self.images[j] for j in other.images)

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles, each starting at its smallest element, fixed points included."""
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cyc = []
            k = start
            while not seen[k]:
                seen[k] = True
                cyc.append(k)
                k = self.images[k]
            out.append(tuple(cyc))
        return out

    def parity(self) -> int:
        """0 for even, 1 for odd."""
        return sum(len(c) - 1 for c in self.cycles()) % 2

    def cycle_class(self) -> "CycleClass":
        return CycleClass.of(self)

    def __str__(self) -> str:
        parts = [c for c in self.cycles() if len(c) > 1]
        if not parts:
            return "()"
        sep = " " if len(self.images) > 9 else ""
        return "".join("(" + sep.join(str(k + 1) for k in c) + ")" for c in parts)

    def __repr__(self) -> str:
        return f"Permutation({str(self)}, n={len(self.images)})"


def _canonical_cycle(cyc: tuple[int, ...]) -> tuple[int, ...]:
    k = cyc.index(min(cyc))
    fwd = cyc[k:] + cyc[:k]
    if len(fwd) <= 2:
        return fwd
    rev = (fwd[0],) + tuple(reversed(fwd[1:]))
    return min(fwd, rev)


@dataclass(frozen=True)
class CycleClass:
    """Cycle decomposition up to inverting individual cycles."""

    canonical_cycles: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, perm: Permutation) -> "CycleClass":
        return cls(tuple(sorted(_canonical_cycle(c) for c in perm.cycles())))

    def members(self) -> list[Permutation]:
        """All permutations in the class (inverting any subset of cycles of length >= 3)."""
        n = sum(len(c) for c in self.canonical_cycles)
        flippable = [c for c in self.canonical_cycles if len(c) >= 3]
        fixed = [c for c in self.canonical_cycles if len(c) < 3]
        out = []
        for mask in range(1 << len(flippable)):
            cycs = list(fixed)
            for b, c in enumerate(flippable):
                cycs.append(tuple(reversed(c)) if mask >> b & 1 else c)
            out.append(Permutation.from_cycles(cycs, n, one_based=False))
        return out

    def __str__(self) -> str:
        return "".join("(" + " ".join(str(k + 1) for k in c) + ")" for c in self.canonical_cycles)


def cycle_similar(s: Permutation, t: Permutation) -> bool:
    if len(s) != len(t):
        raise ValueError("permutations act on different ground sets")
    return CycleClass.of(s) == CycleClass.of(t)


def pair_multiset(rows: Sequence[int], cols: Sequence[int], assignment: Sequence[int]) -> tuple:
    """Unordered ambient index pairs used by a bijection rows[a] -> cols[assignment[a]].

    Equal multisets mean equal monomials once X_{i,j} = X_{j,i}.
    """
    pairs = []
    for a, b in enumerate(assignment):
        i, j = rows[a], cols[b]
        pairs.append((i, j) if i <= j else (j, i))
    pairs.sort()
    return tuple(pairs)


def hungarian(cost: Sequence[Sequence]) -> tuple[object, list[int], list, list]:
    """Min-cost perfect assignment on a square cost matrix.

    Returns ``(value, assignment, u, v)`` with ``assignment[i]`` the column of
    row i and dual potentials satisfying cost[i][j] - u[i] - v[j] >= 0, with
    equality on the assignment. Arithmetic stays in the input's number type.
    """
    n = len(cost)
    u = [0] * (n + 1)
    v = [0] * (n + 1)
    p = [0] * (n + 1)  # p[j]: row (1-based) matched to column j
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = [_INF] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = p[j0]
            delta = _INF
            j1 = 0
            row = cost[i0 - 1]
            ui0 = u[i0]
            for j in range(1, n + 1):
                if not used[j]:
                    cur = row[j - 1] - ui0 - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta = minv[j]
                        j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while True:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
            if j0 == 0:
                break
    assignment = [0] * n
    for j in range(1, n + 1):
        assignment[p[j] - 1] = j - 1
    value = sum(cost[i][assignment[i]] for i in range(n))
    return value, assignment, u[1:], v[1:]


def _tight_adjacency(cost, u, v) -> list[list[int]]:
    n = len(cost)
    return [[j for j in range(n) if cost[i][j] - u[i] - v[j] == 0] for i in range(n)]


def _has_perfect_matching(adj: list[list[int]], rows: list[int], free_cols: set[int]) -> bool:
    match: dict[int, int] = {}

    def augment(r: int, seen: set[int]) -> bool:
        for c in adj[r]:
            if c in free_cols and c not in seen:
                seen.add(c)
                if c not in match or augment(match[c], seen):
                    match[c] = r
                    return True
        return False

    return all(augment(r, set()) for r in rows)


def _iter_tight_matchings(adj: list[list[int]], prune: bool) -> Iterator[list[int]]:
    n = len(adj)
    assign = [-1] * n
    used: set[int] = set()

    def rec(i: int):
        if i == n:
            yield list(assign)
            return
        for j in adj[i]:
            if j in used:
                continue
            used.add(j)
            assign[i] = j
            if not prune or _has_perfect_matching(adj, list(range(i + 1, n)),
                                                  set(range(n)) - used):
                yield from rec(i + 1)
            used.discard(j)
        assign[i] = -1

    yield from rec(0)


def _subcost(A: TropicalMatrix, rows: Sequence[int], cols: Sequence[int]) -> list[list[int]]:
    M = A.int_rows
    return [[M[i][j] for j in cols] for i in rows]


def _index_sets(A: TropicalMatrix, I, J) -> tuple[list[int], list[int]]:
    I = list(range(A.n_rows)) if I is None else list(I)
    J = list(range(A.n_cols)) if J is None else list(J)
    if len(I) != len(J):
        raise ValueError(f"index sets have sizes {len(I)} and {len(J)}")
    if not I:
        raise ValueError("empty index set")
    return I, J


def trop_det(A: TropicalMatrix, I=None, J=None) -> Fraction:
    """Minimum over bijections I -> J of the entry sum (whole matrix by default)."""
    if I is None and J is None and not A.is_square:
        raise ValueError("tropical determinant of a non-square matrix")
    I, J = _index_sets(A, I, J)
    value, _, _, _ = hungarian(_subcost(A, I, J))
    return Fraction(value, A.denominator)


def enumerate_optimal_bijections(A: TropicalMatrix, I=None, J=None, mode: str = "standard",
                                 limit: int | None = 2) -> list[list[int]]:
    """Optimal bijections of the submatrix A[I, J], deduplicated per ``mode``.

    Each bijection is a list ``b`` with ``b[a]`` the position in J matched to
    I[a]. Standard mode keeps distinct bijections; symmetric mode keeps one
    representative per pair multiset. Stops once ``limit`` are found
    (``None`` enumerates everything).
    """
    if mode not in ("standard", "symmetric"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "symmetric" and not A.symmetric:
        raise ValueError("symmetric mode needs a symmetric ambient matrix")
    I, J = _index_sets(A, I, J)
    cost = _subcost(A, I, J)
    _, _, u, v = hungarian(cost)
    adj = _tight_adjacency(cost, u, v)
    out: list[list[int]] = []
    seen: set = set()
    for b in _iter_tight_matchings(adj, prune=len(I) > 6):
        if mode == "symmetric":
            key = pair_multiset(I, J, b)
            if key in seen:
                continue
            seen.add(key)
        out.append(b)
        if limit is not None and len(out) >= limit:
            break
    return out


def is_trop_singular(A: TropicalMatrix, I=None, J=None) -> bool:
    return len(enumerate_optimal_bijections(A, I, J, "standard", 2)) >= 2


def is_sym_trop_singular(A: TropicalMatrix, I=None, J=None) -> bool:
    return len(enumerate_optimal_bijections(A, I, J, "symmetric", 2)) >= 2


@dataclass
class DetResult:
    value: Fraction
    distinct_monomials: int
    distinct_classes: int | None
    witnesses: list[list[int]] = field(default_factory=list)
    class_witnesses: list[list[int]] = field(default_factory=list)
    capped: bool = False

    @property
    def singular(self) -> bool:
        return self.distinct_monomials >= 2

    @property
    def sym_singular(self) -> bool | None:
        return None if self.distinct_classes is None else self.distinct_classes >= 2


def det_result(A: TropicalMatrix, I=None, J=None, limit: int | None = 2) -> DetResult:
    """Determinant value plus (capped) counts of optimal bijections in both senses."""
    I, J = _index_sets(A, I, J)
    value = trop_det(A, I, J)
    std = enumerate_optimal_bijections(A, I, J, "standard", limit)
    sym = None
    if A.symmetric:
        sym = enumerate_optimal_bijections(A, I, J, "symmetric", limit)
    capped = limit is not None and (len(std) >= limit)
    return DetResult(value, len(std), None if sym is None else len(sym), std,
                     [] if sym is None else sym, capped)


def all_square_index_pairs(n_rows: int, n_cols: int, r: int):
    """(I, J) pairs of r-subsets in lexicographic order."""
    for I in combinations(range(n_rows), r):
        for J in combinations(range(n_cols), r):
            yield I, J
