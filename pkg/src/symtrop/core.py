"""Exact min-plus scalars and matrices, diagonal permutations, symmetric scaling.

Entries are stored as :class:`fractions.Fraction`; tie detection in the
tropical determinant has to be exact, so floats never enter this module.
Indices are 0-based internally; anything printed for a user is 1-based.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from typing import Iterable, Sequence

__all__ = [
    "TropicalMatrix",
    "ScalingVector",
    "MatrixParseError",
    "NormalizationFailed",
    "to_fraction",
    "t_add",
    "t_mul",
    "diagonal_permute",
    "permute_rows",
    "permute_cols",
    "symmetric_scale",
    "normalize",
    "is_normalized",
    "parse_matrix",
    "format_matrix",
    "format_value",
]


class MatrixParseError(ValueError):
    """Raised for malformed matrix text; carries the 1-based line/column."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where = f" ({where})"
        super().__init__(message + where)


class NormalizationFailed(RuntimeError):
    pass


_NUMBER = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?(/[+-]?\d+)?$")


def to_fraction(x) -> Fraction:
    """Convert ints, Fractions and decimal strings to an exact Fraction.

    Floats are accepted only through their shortest repr, so ``4.25`` becomes
    17/4 rather than a binary approximation. Infinities and NaN are rejected.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not tropical values")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"non-finite entry {x!r}: only real entries are supported")
        return Fraction(repr(x))
    if isinstance(x, str):
        s = x.strip()
        if not _NUMBER.match(s):
            raise ValueError(f"not an exact rational: {x!r}")
        return Fraction(s)
    # numpy integer scalars and the like
    if hasattr(x, "__index__"):
        return Fraction(int(x))
    raise TypeError(f"cannot interpret {x!r} as a rational number")


def t_add(a, b) -> Fraction:
    """Tropical sum (min)."""
    return min(to_fraction(a), to_fraction(b))


def t_mul(a, b) -> Fraction:
    """Tropical product (ordinary +)."""
    return to_fraction(a) + to_fraction(b)


class TropicalMatrix:
    """Dense matrix over the min-plus semiring with exact rational entries.

    ``symmetric=None`` auto-detects symmetry; ``symmetric=True`` asserts it
    and raises if the entries disagree. Instances are immutable.
    """

    def __init__(self, rows: Iterable[Iterable], symmetric: bool | None = None):
        data = tuple(tuple(to_fraction(v) for v in row) for row in rows)
        if not data or not data[0]:
            raise ValueError("a tropical matrix needs at least one entry")
        width = len(data[0])
        for k, row in enumerate(data):
            if len(row) != width:
                raise ValueError(f"row {k + 1} has {len(row)} entries, expected {width}")
        self._rows = data
        self.n_rows = len(data)
        self.n_cols = width
        detected = self.n_rows == self.n_cols and all(
            data[i][j] == data[j][i] for i in range(self.n_rows) for j in range(i)
        )
        if symmetric and not detected:
            raise ValueError("matrix flagged symmetric but entries are not symmetric")
        self.symmetric = detected if symmetric is None else bool(symmetric)

    # -- basic access -------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_rows, self.n_cols)

    @property
    def is_square(self) -> bool:
        return self.n_rows == self.n_cols

    def __getitem__(self, idx):
        i, j = idx
        return self._rows[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._rows[i]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self._rows)

    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def entries(self) -> list[Fraction]:
        return [v for r in self._rows for v in r]

    def min_entry(self) -> Fraction:
        return min(self.entries())

    def max_entry(self) -> Fraction:
        return max(self.entries())

    def spread(self) -> Fraction:
        return self.max_entry() - self.min_entry()

    def transpose(self) -> "TropicalMatrix":
        return TropicalMatrix(zip(*self._rows))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "TropicalMatrix":
        return TropicalMatrix([[self._rows[i][j] for j in cols] for i in rows])

    def principal(self, idx: Sequence[int]) -> "TropicalMatrix":
        return self.submatrix(idx, idx)

    @cached_property
    def denominator(self) -> int:
        """Least common denominator of all entries."""
        return reduce(math.lcm, (v.denominator for v in self.entries()), 1)

    @cached_property
    def int_rows(self) -> tuple[tuple[int, ...], ...]:
        """Entries scaled by :attr:`denominator`; same tropical structure, integer arithmetic."""
        d = self.denominator
        return tuple(tuple(int(v * d) for v in r) for r in self._rows)

    # -- dunder -------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, TropicalMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_value(v) for v in r) for r in self._rows)
        return f"TropicalMatrix([{body}]{', symmetric' if self.symmetric else ''})"

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._rows]


@dataclass(frozen=True)
class ScalingVector:
    """Constants c_i added to row i and column i (tropical multiplication)."""

    c: tuple[Fraction, ...]

    def __init__(self, c: Iterable):
        object.__setattr__(self, "c", tuple(to_fraction(v) for v in c))

    def __len__(self) -> int:
        return len(self.c)

    def __neg__(self) -> "ScalingVector":
        return ScalingVector(-v for v in self.c)

    @classmethod
    def zeros(cls, n: int) -> "ScalingVector":
        return cls([0] * n)


def _as_images(sigma, n: int) -> tuple[int, ...]:
    images = tuple(getattr(sigma, "images", sigma))
    if len(images) != n:
        raise ValueError(f"permutation of size {len(images)} does not match dimension {n}")
    if sorted(images) != list(range(n)):
        raise ValueError(f"{images} is not a permutation of 0..{n - 1}")
    return images


def diagonal_permute(A: TropicalMatrix, sigma) -> TropicalMatrix:
    """result[i][j] = A[sigma(i)][sigma(j)]; ``sigma`` is a Permutation or 0-based image list."""
    if not A.is_square:
        raise ValueError("diagonal permutation needs a square matrix")
    s = _as_images(sigma, A.n_rows)
    return TropicalMatrix([[A[s[i], s[j]] for j in range(A.n_cols)] for i in range(A.n_rows)],
                          symmetric=True if A.symmetric else None)


def permute_rows(A: TropicalMatrix, sigma) -> TropicalMatrix:
    """Row i of the result is row sigma(i) of A."""
    s = _as_images(sigma, A.n_rows)
    return TropicalMatrix([A.row(s[i]) for i in range(A.n_rows)])


def permute_cols(A: TropicalMatrix, sigma) -> TropicalMatrix:
    """Column j of the result is column sigma(j) of A."""
    s = _as_images(sigma, A.n_cols)
    return TropicalMatrix([[r[s[j]] for j in range(A.n_cols)] for r in A.rows()])


def symmetric_scale(A: TropicalMatrix, c) -> TropicalMatrix:
    """result[i][j] = A[i][j] + c_i + c_j."""
    if not A.is_square:
        raise ValueError("symmetric scaling needs a square matrix")
    cv = c.c if isinstance(c, ScalingVector) else tuple(to_fraction(v) for v in c)
    if len(cv) != A.n_rows:
        raise ValueError(f"scaling vector has length {len(cv)}, matrix has size {A.n_rows}")
    n = A.n_rows
    return TropicalMatrix([[A[i, j] + cv[i] + cv[j] for j in range(n)] for i in range(n)],
                          symmetric=True if A.symmetric else None)


def is_normalized(A: TropicalMatrix) -> bool:
    """Every row (hence column, for symmetric A) has minimum exactly 0."""
    return all(min(r) == 0 for r in A.rows()) and all(min(A.col(j)) == 0 for j in range(A.n_cols))


def normalize(A: TropicalMatrix, max_sweeps: int | None = None) -> tuple[TropicalMatrix, ScalingVector]:
    """Symmetrically scale ``A`` so every row and column has minimum 0.

    Gauss-Seidel coordinate updates: c_i is set to the unique value making the
    current row-i minimum zero, min(A_ii + 2c_i, min_{j != i} A_ij + c_i + c_j) = 0.
    Iterates until nothing changes; raises NormalizationFailed after
    ``100 * n`` sweeps.
    """
    if not A.symmetric:
        raise ValueError("normalize requires a symmetric matrix")
    n = A.n_rows
    cap = 100 * n if max_sweeps is None else max_sweeps
    c = [Fraction(0)] * n
    for _ in range(cap):
        changed = False
        for i in range(n):
            best = A[i, i] / 2
            for j in range(n):
                if j != i:
                    v = A[i, j] + c[j]
                    if v < best:
                        best = v
            new = -best
            if new != c[i]:
                c[i] = new
                changed = True
        if not changed:
            B = symmetric_scale(A, c)
            if is_normalized(B):
                return B, ScalingVector(c)
            break
    raise NormalizationFailed(
        f"no normalizing scaling found within {cap} sweeps; supply a scaling manually"
    )


# -- text format ------------------------------------------------------

def format_value(v: Fraction) -> str:
    v = to_fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def parse_matrix(text: str, symmetric: bool | None = None) -> TropicalMatrix:
    """Parse the whitespace-separated matrix format.

    Blank lines and lines starting with '#' are ignored. A line consisting of
    the word ``symmetric`` asserts the symmetry flag.
    """
    rows: list[list[Fraction]] = []
    flag = symmetric
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.lower() == "symmetric":
            flag = True
            continue
        row = []
        for m in re.finditer(r"\S+", raw):
            tok = m.group(0)
            if tok.lower().lstrip("+-") in ("inf", "infinity", "nan", "oo"):
                raise MatrixParseError(f"non-finite entry {tok!r}", lineno, m.start() + 1)
            try:
                row.append(to_fraction(tok))
            except (ValueError, ZeroDivisionError):
                raise MatrixParseError(f"bad entry {tok!r}", lineno, m.start() + 1) from None
        if rows and len(row) != len(rows[0]):
            raise MatrixParseError(
                f"expected {len(rows[0])} entries, found {len(row)}", lineno, None
            )
        rows.append(row)
    if not rows:
        raise MatrixParseError("no matrix rows found")
    try:
        return TropicalMatrix(rows, symmetric=flag)
    except ValueError as exc:
        raise MatrixParseError(str(exc)) from None


def format_matrix(A: TropicalMatrix, header: bool = True) -> str:
    cells = [[format_value(v) for v in r] for r in A.rows()]
    width = max(len(c) for r in cells for c in r)
    lines = []
    if header and A.symmetric:
        lines.append("symmetric")
    lines.extend(" ".join(c.rjust(width) for c in r) for r in cells)
    return "\n".join(lines) + "\n"
