"""Truncated Puiseux series with exact rational exponents and complex coefficients.

A series is stored on a uniform exponent grid ``k / den`` as a dense numpy
coefficient array, together with an absolute precision ``prec``: the value
is known modulo t^prec, and no stored exponent reaches ``prec``. Exponents
never touch floating point, so degrees (the tropicalization) are exact;
coefficients are complex doubles, with a hard-zero threshold that discards
cancellation noise.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .core import TropicalMatrix, to_fraction

__all__ = [
    "ZERO_RTOL",
    "PuiseuxSeries",
    "SeriesMatrix",
    "DegenerateDiscriminant",
    "GenericSource",
    "quadratic_roots",
    "default_truncation",
    "write_series_matrix",
    "read_series_matrix",
    "SeriesFormatError",
]

ZERO_RTOL = 1e-12


class DegenerateDiscriminant(ArithmeticError):
    pass


class SeriesFormatError(ValueError):
    pass


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else to_fraction(x)


def _grid_len(start: int, den: int, prec: Fraction) -> int:
    """Number of grid points k >= start with k/den < prec."""
    # largest k with k < prec*den
    limit = prec * den
    kmax = math.ceil(limit) - 1
    return max(0, kmax - start + 1)


class PuiseuxSeries:
    __slots__ = ("den", "start", "coeffs", "prec")

    def __init__(self, den: int, start: int, coeffs, prec, _noise=None):
        self.den = int(den)
        self.prec = _frac(prec)
        arr = np.asarray(coeffs, dtype=complex)
        n = _grid_len(start, self.den, self.prec)
        arr = arr[:n]
        if _noise is not None and arr.size:
            # _noise[k] bounds the operand magnitudes that produced arr[k]
            arr = np.where(np.abs(arr) < ZERO_RTOL * np.asarray(_noise)[:n], 0, arr)
        nz = np.flatnonzero(arr)
        if nz.size == 0:
            self.start = 0
            self.coeffs = np.zeros(0, dtype=complex)
        else:
            self.start = int(start) + int(nz[0])
            self.coeffs = arr[nz[0]:nz[-1] + 1].copy()
        if self.coeffs.size:
            self._reduce_grid()

    def _reduce_grid(self) -> None:
        # keep den small: collapse the grid when every occupied index shares a factor
        idx = np.flatnonzero(self.coeffs) + self.start
        g = self.den
        for k in idx:
            g = math.gcd(g, int(k))
            if g == 1:
                return
        if g > 1:
            self.den //= g
            self.start //= g
            self.coeffs = self.coeffs[::g].copy()

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, prec) -> "PuiseuxSeries":
        return cls(1, 0, [], prec)

    @classmethod
    def monomial(cls, coeff, exponent, prec) -> "PuiseuxSeries":
        e = _frac(exponent)
        p = _frac(prec)
        if e >= p:
            return cls.zero(p)
        return cls(e.denominator, e.numerator, [complex(coeff)], p)

    @classmethod
    def constant(cls, coeff, prec) -> "PuiseuxSeries":
        return cls.monomial(coeff, 0, prec)

    @classmethod
    def from_terms(cls, terms: Iterable[tuple], prec) -> "PuiseuxSeries":
        """Build from (exponent, coefficient) pairs; repeated exponents are summed."""
        terms = [(_frac(e), complex(c)) for e, c in terms]
        p = _frac(prec)
        terms = [(e, c) for e, c in terms if e < p]
        if not terms:
            return cls.zero(p)
        den = 1
        for e, _ in terms:
            den = math.lcm(den, e.denominator)
        ks = [int(e * den) for e, _ in terms]
        start = min(ks)
        arr = np.zeros(max(ks) - start + 1, dtype=complex)
        for k, (_, c) in zip(ks, terms):
            arr[k - start] += c
        return cls(den, start, arr, p)

    # -- inspection -----------------------------------------------------
    def is_zero(self) -> bool:
        return self.coeffs.size == 0

    @property
    def degree(self) -> Fraction | None:
        """Exponent of the leading term, None for the zero series."""
        if self.is_zero():
            return None
        return Fraction(self.start, self.den)

    @property
    def valuation(self) -> Fraction:
        """Degree, or the precision for a series with no known terms."""
        d = self.degree
        return self.prec if d is None else d

    @property
    def leading_coefficient(self) -> complex:
        return complex(self.coeffs[0]) if self.coeffs.size else 0j

    def scale(self) -> float:
        return float(np.max(np.abs(self.coeffs))) if self.coeffs.size else 0.0

    def terms(self) -> list[tuple[Fraction, complex]]:
        return [(Fraction(self.start + k, self.den), complex(c))
                for k, c in enumerate(self.coeffs) if c != 0]

    def _on_grid(self, den: int) -> tuple[int, np.ndarray]:
        """(start, coeffs) re-expressed on the finer grid 1/den."""
        f = den // self.den
        if f == 1:
            return self.start, self.coeffs
        if self.coeffs.size == 0:
            return 0, self.coeffs
        arr = np.zeros((self.coeffs.size - 1) * f + 1, dtype=complex)
        arr[::f] = self.coeffs
        return self.start * f, arr

    def truncate(self, prec) -> "PuiseuxSeries":
        p = min(_frac(prec), self.prec)
        return PuiseuxSeries(self.den, self.start, self.coeffs, p)

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other) -> "PuiseuxSeries":
        if isinstance(other, PuiseuxSeries):
            return other
        return PuiseuxSeries.constant(complex(other), self.prec)

    def __add__(self, other) -> "PuiseuxSeries":
        other = self._coerce(other)
        prec = min(self.prec, other.prec)
        if self.is_zero():
            return other.truncate(prec)
        if other.is_zero():
            return self.truncate(prec)
        den = math.lcm(self.den, other.den)
        s1, a = self._on_grid(den)
        s2, b = other._on_grid(den)
        start = min(s1, s2)
        end = max(s1 + a.size, s2 + b.size)
        out = np.zeros(end - start, dtype=complex)
        out[s1 - start:s1 - start + a.size] += a
        out[s2 - start:s2 - start + b.size] += b
        noise = np.zeros(out.size)
        noise[s1 - start:s1 - start + a.size] += np.abs(a)
        noise[s2 - start:s2 - start + b.size] += np.abs(b)
        return PuiseuxSeries(den, start, out, prec, _noise=noise)

    __radd__ = __add__

    def __neg__(self) -> "PuiseuxSeries":
        return PuiseuxSeries(self.den, self.start, -self.coeffs, self.prec)

    def __sub__(self, other) -> "PuiseuxSeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "PuiseuxSeries":
        return self._coerce(other) - self

    def __mul__(self, other) -> "PuiseuxSeries":
        if not isinstance(other, PuiseuxSeries):
            c = complex(other)
            if c == 0:
                return PuiseuxSeries.zero(self.prec)
            return PuiseuxSeries(self.den, self.start, self.coeffs * c, self.prec)
        prec = min(self.prec + other.valuation, other.prec + self.valuation)
        if self.is_zero() or other.is_zero():
            return PuiseuxSeries.zero(prec)
        den = math.lcm(self.den, other.den)
        s1, a = self._on_grid(den)
        s2, b = other._on_grid(den)
        out = np.convolve(a, b)
        noise = np.convolve(np.abs(a), np.abs(b))
        return PuiseuxSeries(den, s1 + s2, out, prec, _noise=noise)

    __rmul__ = __mul__

    def shift(self, exponent) -> "PuiseuxSeries":
        """Multiply by t^exponent."""
        e = _frac(exponent)
        den = math.lcm(self.den, e.denominator)
        s, a = self._on_grid(den)
        return PuiseuxSeries(den, s + int(e * den), a, self.prec + e)

    def _unit_part(self) -> tuple[complex, Fraction, np.ndarray, int]:
        """Split s = c t^v (1 + x); returns c, v, coefficients of x on the grid, and den."""
        if self.is_zero():
            raise ZeroDivisionError("series has no known nonzero term")
        c = self.leading_coefficient
        x = self.coeffs / c
        x[0] = 0
        return c, self.degree, x, self.den

    def inverse(self) -> "PuiseuxSeries":
        c, v, x, den = self._unit_part()
        prec = self.prec - 2 * v
        n = _grid_len(0, den, self.prec - v)
        y = np.zeros(max(n, 1), dtype=complex)
        y[0] = 1
        xs = x[:n]
        for k in range(1, n):
            m = min(k, xs.size - 1)
            if m >= 1:
                y[k] = -np.dot(xs[1:m + 1], y[k - 1::-1][:m])
        y /= c
        return PuiseuxSeries(den, -self.start, y, prec)

    def __truediv__(self, other) -> "PuiseuxSeries":
        if not isinstance(other, PuiseuxSeries):
            return self * (1 / complex(other))
        return self * other.inverse()

    def __rtruediv__(self, other) -> "PuiseuxSeries":
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "PuiseuxSeries":
        if k < 0:
            return self.inverse() ** (-k)
        out = None
        for _ in range(k):
            out = self if out is None else out * self
        return out if out is not None else PuiseuxSeries.constant(1, self.prec)

    def sqrt(self) -> "PuiseuxSeries":
        """Principal-branch square root of the leading coefficient; binomial series for the rest."""
        c, v, x, den = self._unit_part()
        n = _grid_len(0, den, self.prec - v)
        y = np.zeros(max(n, 1), dtype=complex)
        y[0] = 1
        xs = np.zeros(max(n, 1), dtype=complex)
        xs[:min(n, x.size)] = x[:n]
        for k in range(1, n):
            acc = xs[k]
            if k >= 2:
                acc -= np.dot(y[1:k], y[k - 1:0:-1])
            y[k] = acc / 2
        # + 0.0 clears a negative zero so the branch cut does not flip the sign
        y *= cmath.sqrt(complex(c.real + 0.0, c.imag + 0.0))
        half = v / 2
        out_den = math.lcm(den, half.denominator)
        f = out_den // den
        arr = np.zeros((y.size - 1) * f + 1, dtype=complex)
        arr[::f] = y
        return PuiseuxSeries(out_den, int(half * out_den), arr, self.prec - v / 2)

    def substitute_scaled(self, lam: float) -> "PuiseuxSeries":
        """The series in lam * t: the coefficient at t^e is multiplied by lam^e."""
        if self.is_zero():
            return self
        e = (self.start + np.arange(self.coeffs.size)) / self.den
        return PuiseuxSeries(self.den, self.start, self.coeffs * np.power(float(lam), e), self.prec)

    def growth_rate(self) -> float:
        """Largest (|c_k| / |c_0|)^(1 / (e_k - e_0)) over the stored terms; 0 if monomial."""
        t = self.terms()
        if len(t) < 2:
            return 0.0
        e0, c0 = t[0]
        return max((abs(c) / abs(c0)) ** (1.0 / float(e - e0)) for e, c in t[1:])

    # -- comparison helpers -----------------------------------------------
    def max_abs_below(self, prec=None) -> float:
        if self.is_zero():
            return 0.0
        if prec is None:
            return self.scale()
        return self.truncate(prec).scale()

    def identical(self, other: "PuiseuxSeries") -> bool:
        """Term-for-term equality, including precision."""
        return self.prec == other.prec and self.terms() == other.terms()

    def __repr__(self) -> str:
        if self.is_zero():
            return f"O(t^{self.prec})"
        parts = []
        for e, c in self.terms()[:6]:
            parts.append(f"({c.real:.4g}{c.imag:+.4g}j)t^{e}")
        more = " + ..." if len(self.terms()) > 6 else ""
        return " + ".join(parts) + more + f" + O(t^{self.prec})"


def quadratic_roots(a: PuiseuxSeries, b: PuiseuxSeries, c: PuiseuxSeries
                    ) -> tuple[PuiseuxSeries, PuiseuxSeries]:
    """Both roots of a x^2 + b x + c, ordered by degree (lowest first).

    The lower-degree root comes from -b -/+ sqrt(disc) with the sign chosen to
    avoid cancellation; the other from Vieta, c / (a x1).
    """
    if a.is_zero():
        raise ZeroDivisionError("leading coefficient vanishes")
    disc = b * b - 4 * (a * c)
    if disc.is_zero():
        raise DegenerateDiscriminant("discriminant vanishes to the working precision")
    sq = disc.sqrt()
    plus = -b + sq
    minus = -b - sq
    cands = [s for s in (plus, minus) if not s.is_zero()]
    num = min(cands, key=lambda s: (s.degree, -abs(s.leading_coefficient)))
    x1 = num / (2 * a)
    if c.is_zero():
        x2 = PuiseuxSeries.zero(c.prec)
    else:
        x2 = c / (a * x1)
    roots = sorted([x1, x2], key=lambda s: (s.valuation,))
    return roots[0], roots[1]


class GenericSource:
    """Seeded stream of generic degree-0 constants (modulus in [1, 2], uniform phase)."""

    def __init__(self, seed: int = 0):
        self.seed = seed
        self.rng = np.random.default_rng(seed)

    def unit(self) -> complex:
        r = self.rng.uniform(1.0, 2.0)
        phi = self.rng.uniform(0.0, 2 * math.pi)
        return complex(r * math.cos(phi), r * math.sin(phi))

    def constant(self, prec) -> PuiseuxSeries:
        return PuiseuxSeries.constant(self.unit(), prec)


def default_truncation(A: TropicalMatrix, rank: int) -> Fraction:
    """2 (r + 1) (1 + spread), measured above the smallest entry."""
    return A.min_entry() + 2 * (rank + 1) * (1 + A.spread())


class SeriesMatrix:
    """Matrix of series; ``prec`` is the common truncation order."""

    def __init__(self, entries: Sequence[Sequence[PuiseuxSeries]], symmetric: bool | None = None,
                 common_prec: bool = True):
        rows = [list(r) for r in entries]
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged series matrix")
        if common_prec:
            p = min(s.prec for r in rows for s in r)
            rows = [[s.truncate(p) for s in r] for r in rows]
        self.entries = rows
        self.n_rows = len(rows)
        self.n_cols = len(rows[0])
        detected = self.is_term_symmetric()
        if symmetric and not detected:
            raise ValueError("series matrix flagged symmetric but entries differ")
        self.symmetric = detected if symmetric is None else bool(symmetric)

    @property
    def prec(self) -> Fraction:
        return min(s.prec for r in self.entries for s in r)

    def __getitem__(self, idx) -> PuiseuxSeries:
        i, j = idx
        return self.entries[i][j]

    def is_term_symmetric(self) -> bool:
        if self.n_rows != self.n_cols:
            return False
        return all(self.entries[i][j].identical(self.entries[j][i])
                   for i in range(self.n_rows) for j in range(i))

    def degrees(self) -> list[list[Fraction | None]]:
        return [[s.degree for s in r] for r in self.entries]

    def tropicalize(self) -> TropicalMatrix:
        degs = self.degrees()
        if any(d is None for r in degs for d in r):
            raise ValueError("a lift entry vanishes to the working precision")
        return TropicalMatrix(degs)


# -- serialization -----------------------------------------------------------

def _fmt_float(x: float) -> str:
    return format(x, ".17g")


def write_series_matrix(M: SeriesMatrix) -> str:
    lines = ["# symtrop series matrix v1",
             f"size {M.n_rows} {M.n_cols}",
             f"trunc {M.prec}",
             f"symmetric {int(M.symmetric)}"]
    for i in range(M.n_rows):
        for j in range(M.n_cols):
            s = M[i, j]
            lines.append(f"entry {i + 1} {j + 1} trunc {s.prec}")
            for e, c in s.terms():
                lines.append(f"{_fmt_float(c.real)} {_fmt_float(c.imag)} {e}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def read_series_matrix(text: str) -> SeriesMatrix:
    n_rows = n_cols = None
    trunc = None
    sym = None
    cells: dict[tuple[int, int], tuple[Fraction, list]] = {}
    cur = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tok = line.split()
        try:
            if tok[0] == "size":
                n_rows, n_cols = int(tok[1]), int(tok[2])
            elif tok[0] == "trunc":
                trunc = Fraction(tok[1])
            elif tok[0] == "symmetric":
                sym = bool(int(tok[1]))
            elif tok[0] == "entry":
                i, j = int(tok[1]) - 1, int(tok[2]) - 1
                p = Fraction(tok[4]) if len(tok) >= 5 and tok[3] == "trunc" else trunc
                cur = (i, j)
                cells[cur] = (p, [])
            elif tok[0] == "end":
                break
            else:
                if cur is None:
                    raise SeriesFormatError(f"term outside an entry block (line {lineno})")
                re_, im_, e = float(tok[0]), float(tok[1]), Fraction(tok[2])
                cells[cur][1].append((e, complex(re_, im_)))
        except (IndexError, ValueError) as exc:
            if isinstance(exc, SeriesFormatError):
                raise
            raise SeriesFormatError(f"malformed line {lineno}: {raw!r}") from None
    if n_rows is None or trunc is None:
        raise SeriesFormatError("missing size or trunc header")
    rows = []
    for i in range(n_rows):
        row = []
        for j in range(n_cols):
            if (i, j) not in cells:
                raise SeriesFormatError(f"missing entry ({i + 1},{j + 1})")
            p, terms = cells[(i, j)]
            row.append(PuiseuxSeries.from_terms(terms, p))
        rows.append(row)
    try:
        # a "symmetric 1" header is checked against the entries
        return SeriesMatrix(rows, symmetric=True if sym else None, common_prec=False)
    except ValueError as exc:
        raise SeriesFormatError(str(exc)) from None
