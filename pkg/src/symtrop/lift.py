"""Symmetric lifts of tropical matrices to rank one and rank two, with verification.

A lift replaces each entry A_ij by a series of degree A_ij. The rank-two
construction works on the normalized block form: zero rows are stripped and
re-added as generic combinations of two columns, a matrix without zero rows
is bordered by one, and a single zero row glues lifts of the two sides
together through a singular 3x3 pivot. Everything generic comes from a
seeded stream, and every result goes through :func:`verify_lift` before it
is returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations

import numpy as np

from .blocks import StructureViolation, block_decompose, bordered
from .core import TropicalMatrix, normalize, symmetric_scale
from .matching import trop_det
from .rank import rank_one_test, symmetric_tropical_rank, tropical_rank
from .series import (DegenerateDiscriminant, GenericSource, PuiseuxSeries, SeriesMatrix,
                     default_truncation, quadratic_roots)

__all__ = [
    "LiftFailed",
    "LiftPreconditionError",
    "LiftCombination",
    "LiftCertificate",
    "verify_lift",
    "rank1_lift",
    "standard_rank2_lift",
    "rank2_symmetric_lift",
    "kapranov_rank_3x3",
    "classify_conic",
    "series_det",
    "VANISH_RTOL",
    "NONZERO_RTOL",
    "RETRY_BUDGET",
]

VANISH_RTOL = 1e-6
NONZERO_RTOL = 1e-3
# stop searching for a witness minor once one is this clearly nonzero
STRONG_LEAD = 0.1
RETRY_BUDGET = 8


class LiftFailed(RuntimeError):
    pass


class LiftPreconditionError(ValueError):
    pass


class _IllConditioned(LiftFailed):
    """A generic draw landed close to a degenerate choice; redraw and try again."""


# a sum whose leading terms should not cancel must keep at least this
# fraction of its largest leading coefficient
SEPARATION = 0.2
LOCAL_TRIES = 6


@dataclass(frozen=True)
class LiftCombination:
    """Column ``column`` equals first * basis[0] + second * basis[1] in the lift."""

    column: object
    basis: tuple
    first: PuiseuxSeries
    second: PuiseuxSeries

    def degrees(self) -> tuple:
        return (self.first.degree, self.second.degree)


@dataclass
class LiftCertificate:
    matrix: SeriesMatrix
    target_rank: int
    degree_match: bool
    symmetry: bool | None
    max_minor_residual: float
    minors_vanish: bool
    witness_leading: float
    witness_minor: tuple | None
    seed: int | None = None
    attempts: int = 1
    combinations: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return (self.degree_match and self.symmetry is not False and self.minors_vanish
                and self.witness_leading > NONZERO_RTOL)

    def checks(self) -> dict:
        return {
            "degree_match": self.degree_match,
            "symmetry": self.symmetry,
            "minors_vanish": self.minors_vanish,
            "max_minor_residual": self.max_minor_residual,
            "witness_minor_leading": self.witness_leading,
            "witness_minor": self.witness_minor,
        }


# -- minors ------------------------------------------------------------------

def _parity(p) -> int:
    inv = 0
    for a in range(len(p)):
        for b in range(a + 1, len(p)):
            if p[a] > p[b]:
                inv += 1
    return inv & 1


def _abs_series(s: PuiseuxSeries) -> PuiseuxSeries:
    return PuiseuxSeries(s.den, s.start, np.abs(s.coeffs), s.prec)


def series_det(rows) -> tuple[PuiseuxSeries, PuiseuxSeries]:
    """Leibniz expansion over series (no division); returns (det, bound).

    ``bound`` is the same expansion with every coefficient replaced by its
    magnitude and every sign by +, so bound[e] is the size a coefficient of
    the determinant at t^e would have without any cancellation.
    """
    k = len(rows)
    total = bound = None
    for p in permutations(range(k)):
        term = rows[0][p[0]]
        mag = _abs_series(term)
        for a in range(1, k):
            term = term * rows[a][p[a]]
            mag = mag * _abs_series(rows[a][p[a]])
        if _parity(p):
            term = -term
        total = term if total is None else total + term
        bound = mag if bound is None else bound + mag
    return total, bound


def _relative_terms(D: PuiseuxSeries, bound: PuiseuxSeries) -> float:
    """Largest |D_e| / env_e, env_e the largest bound coefficient at exponents <= e.

    The running maximum keeps noise-level terms of the bound (left over from
    cancellation inside the entries) from acting as yardsticks.
    """
    env = []
    run = 0.0
    for e, c in bound.terms():
        run = max(run, abs(c))
        env.append((e, run))
    worst = 0.0
    k = 0
    cur = 0.0
    for e, c in D.terms():
        while k < len(env) and env[k][0] <= e:
            cur = env[k][1]
            k += 1
        worst = max(worst, abs(c) / cur if cur else math.inf)
    return worst


def _coef_at(s: PuiseuxSeries, e: Fraction) -> complex:
    for ex, c in s.terms():
        if ex == e:
            return c
        if ex > e:
            break
    return 0j


def verify_lift(A: TropicalMatrix, L: SeriesMatrix, r: int, symmetric: bool | None = None
                ) -> LiftCertificate:
    """Check that L lifts A with rank exactly r; failures are recorded, not raised.

    Minor coefficients are measured against the cancellation-free bound at
    the same exponent: below VANISH_RTOL counts as zero, above NONZERO_RTOL
    as a genuine nonzero leading coefficient.
    """
    if (A.n_rows, A.n_cols) != (L.n_rows, L.n_cols):
        raise ValueError("lift and matrix shapes differ")
    if symmetric is None:
        symmetric = A.symmetric
    n, m = A.n_rows, A.n_cols
    degree_match = all(L[i, j].degree == A[i, j] for i in range(n) for j in range(m))
    sym = L.is_term_symmetric() if symmetric else None

    worst = 0.0
    vanish = True
    k = r + 1
    if k <= min(n, m):
        for I in combinations(range(n), k):
            for J in combinations(range(m), k):
                if sym and J < I:
                    continue
                D, bound = series_det([[L[i, j] for j in J] for i in I])
                resid = _relative_terms(D, bound)
                worst = max(worst, resid)
                if resid >= VANISH_RTOL or D.prec <= trop_det(A, I, J):
                    # either a visible nonzero term, or too little precision
                    # to see the cancellation at the tropical determinant
                    vanish = False
    lead = 0.0
    witness = None
    if r == 0:
        lead = 1.0
    else:
        for I in combinations(range(n), r):
            for J in combinations(range(m), r):
                D, bound = series_det([[L[i, j] for j in J] for i in I])
                e = trop_det(A, I, J)
                b = abs(_coef_at(bound, e))
                c = abs(_coef_at(D, e)) / b if b else 0.0
                if c > lead:
                    lead, witness = c, (I, J)
                if lead > STRONG_LEAD:
                    break
            if lead > STRONG_LEAD:
                break
    return LiftCertificate(L, r, degree_match, sym, worst, vanish, lead, witness)


# -- rank one ----------------------------------------------------------------

def rank1_lift(A: TropicalMatrix, trunc=None) -> LiftCertificate:
    """Monomial lift t^{A_ij}; additive rank one makes it an outer product."""
    if not rank_one_test(A):
        raise LiftPreconditionError("matrix does not have tropical rank one")
    prec = Fraction(trunc) if trunc is not None else default_truncation(A, 1)
    if prec <= A.max_entry():
        raise LiftPreconditionError("truncation order must exceed every entry")
    L = SeriesMatrix([[PuiseuxSeries.monomial(1, A[i, j], prec) for j in range(A.n_cols)]
                      for i in range(A.n_rows)], symmetric=A.symmetric or None)
    return verify_lift(A, L, 1)


# -- standard rank two: ultrametric points ----------------------------------

def _ultrametric_points(C: list[list[Fraction]], src: GenericSource, prec
                        ) -> tuple[list[PuiseuxSeries], list[PuiseuxSeries]]:
    """Series r_i, y_j with deg(y_j - r_i) = C[i][j] exactly.

    Works top-down: at the smallest value d of C inside a cluster, the cluster
    splits along edges with C > d and each part gets its own generic
    coefficient at t^d. A pair that never separates at its own value means
    C is not realizable and the lift fails.
    """
    p, q = len(C), len(C[0])
    terms: dict[tuple, list] = {("r", i): [] for i in range(p)}
    terms.update({("y", j): [] for j in range(q)})

    def split(elems: list[tuple]) -> None:
        rs = [e[1] for e in elems if e[0] == "r"]
        ys = [e[1] for e in elems if e[0] == "y"]
        if not rs or not ys:
            return
        d = min(C[i][j] for i in rs for j in ys)
        parent = {e: e for e in elems}

        def find(e):
            while parent[e] != e:
                parent[e] = parent[parent[e]]
                e = parent[e]
            return e

        for i in rs:
            for j in ys:
                if C[i][j] > d:
                    parent[find(("r", i))] = find(("y", j))
        groups: dict = {}
        for e in elems:
            groups.setdefault(find(e), []).append(e)
        if len(groups) == 1:
            raise LiftFailed("entry pattern is not realizable by points on a tropical line")
        coeffs: list[complex] = []
        for grp in groups.values():
            g = src.unit()
            while any(abs(g - h) < SEPARATION * max(abs(g), abs(h)) for h in coeffs):
                g = src.unit()
            coeffs.append(g)
            for e in grp:
                terms[e].append((d, g))
            split(grp)

    split(list(terms))
    r_pts = [PuiseuxSeries.from_terms(terms[("r", i)], prec) for i in range(p)]
    y_pts = [PuiseuxSeries.from_terms(terms[("y", j)], prec) for j in range(q)]
    return r_pts, y_pts


def _standard_block(C: list[list[Fraction]], src: GenericSource, prec):
    """Rank-two lift of rows (Z, 0) x cols (0, W) with C on Z x W and zeros elsewhere.

    Returns (U, r_pts, y_pts) with U a dict keyed by ('z', i) / 'o' and
    'o' / ('w', j). Each entry is a bilinear form in (1, y_j) against
    (b_i, -b_i r_i) or (eps, 1), so the rank is at most two.
    """
    r_pts, y_pts = _ultrametric_points(C, src, prec)
    b = [src.constant(prec) for _ in r_pts]
    s = [src.constant(prec) for _ in y_pts]
    eps = src.constant(prec)
    U = {("o", "o"): eps}
    for i, bi in enumerate(b):
        U[(("z", i), "o")] = bi
        for j, sj in enumerate(s):
            U[(("z", i), ("w", j))] = bi * sj * (y_pts[j] - r_pts[i])
    one = PuiseuxSeries.constant(1, prec)
    for j, sj in enumerate(s):
        U[("o", ("w", j))] = sj * _checked_sum(one, eps * y_pts[j])
    return U


def standard_rank2_lift(U: TropicalMatrix, seed: int = 0, trunc=None,
                        retries: int = RETRY_BUDGET) -> SeriesMatrix:
    """Rank-two lift of [[0, C], [0, 0]]: last row zero, first column zero, C >= 0."""
    p, q = U.n_rows - 1, U.n_cols - 1
    if p < 1 or q < 1:
        raise LiftPreconditionError("need at least one row of C and one column of C")
    if any(U[p, j] != 0 for j in range(U.n_cols)) or any(U[i, 0] != 0 for i in range(U.n_rows)):
        raise LiftPreconditionError("last row and first column must be zero")
    C = [[U[i, j + 1] for j in range(q)] for i in range(p)]
    if any(v < 0 for row in C for v in row):
        raise LiftPreconditionError("C must be nonnegative")
    if any(all(C[i][j] == 0 for i in range(p)) for j in range(q)):
        raise LiftPreconditionError("C has a zero column")
    if tropical_rank(U).rank != 2:
        raise LiftPreconditionError("matrix does not have tropical rank two")
    prec = Fraction(trunc) if trunc is not None else default_truncation(U, 2)
    last = None
    for k in range(retries):
        src = GenericSource(seed + k)
        try:
            D = _standard_block(C, src, prec)
        except (LiftFailed, ZeroDivisionError) as exc:
            last = exc
            continue
        rows = [[D[(("z", i), "o")]] + [D[(("z", i), ("w", j))] for j in range(q)]
                for i in range(p)]
        rows.append([D[("o", "o")]] + [D[("o", ("w", j))] for j in range(q)])
        L = SeriesMatrix(rows, symmetric=False)
        cert = verify_lift(U, L, 2, symmetric=False)
        if cert.valid:
            return L
        last = LiftFailed(f"verification failed: {cert.checks()}")
    raise LiftFailed(f"no rank-two lift after {retries} seeds ({last})")


# -- symmetric rank two ------------------------------------------------------

class _Lift:
    """Symmetric lift keyed by labels; storing (i, j) also stores (j, i)."""

    def __init__(self, labels):
        self.labels = list(labels)
        self.e: dict = {}
        self.combos: list[LiftCombination] = []

    def __getitem__(self, key):
        return self.e[key]

    def __setitem__(self, key, value):
        i, j = key
        self.e[(i, j)] = value
        self.e[(j, i)] = value

    def absorb(self, other: "_Lift") -> None:
        self.e.update(other.e)
        self.combos.extend(other.combos)


def _checked_sum(*parts: PuiseuxSeries) -> PuiseuxSeries:
    """Sum of series whose lowest-degree terms must not (nearly) cancel."""
    total = parts[0]
    for q in parts[1:]:
        total = total + q
    live = [q for q in parts if not q.is_zero()]
    low = min(q.degree for q in live)
    big = max(abs(q.leading_coefficient) for q in live if q.degree == low)
    if total.is_zero() or total.degree != low or abs(total.leading_coefficient) < SEPARATION * big:
        raise _IllConditioned("leading terms nearly cancel")
    return total


def _inv2(a, b, c, d):
    """Inverse of [[a, b], [c, d]] as nested lists; the determinant must be well separated."""
    det = _checked_sum(a * d, -(b * c))
    inv = det.inverse()
    return [[d * inv, -(b * inv)], [-(c * inv), a * inv]]


def _bilinear(x, G_inv, y):
    """x^T G_inv y for length-two series vectors."""
    return (x[0] * (G_inv[0][0] * y[0] + G_inv[0][1] * y[1])
            + x[1] * (G_inv[1][0] * y[0] + G_inv[1][1] * y[1]))


def _lin(x, G_inv):
    """Row vector x^T G_inv."""
    return (x[0] * G_inv[0][0] + x[1] * G_inv[1][0], x[0] * G_inv[0][1] + x[1] * G_inv[1][1])


def _deg_at_least(s: PuiseuxSeries, d) -> bool:
    return s.is_zero() or s.degree >= d


class _Builder:
    def __init__(self, src: GenericSource, prec: Fraction):
        self.src = src
        self.prec = prec
        self.fresh = 0

    def new_label(self):
        self.fresh += 1
        return ("border", self.fresh)

    # dispatch ----------------------------------------------------------
    def lift(self, M: TropicalMatrix, labels: list, prec: Fraction, depth: int = 0) -> _Lift:
        if depth > 4 * len(labels) + 8:
            raise LiftFailed("recursion did not terminate")
        for _ in range(LOCAL_TRIES):
            try:
                return self._dispatch(M, labels, prec, depth)
            except _IllConditioned:
                continue
        raise LiftFailed("generic choices stayed close to degenerate")

    def _dispatch(self, M: TropicalMatrix, labels: list, prec: Fraction, depth: int) -> _Lift:
        try:
            dec = block_decompose(M)
        except StructureViolation as exc:
            raise LiftFailed(f"block structure lost in recursion: {exc}") from None
        if dec.zero_rows == 0:
            return self._via_border(M, labels, prec, depth)
        if dec.zero_rows >= 2:
            return self._strip_zero(M, labels, dec, prec, depth)
        z = dec.zero[0]
        if dec.c_rows and not dec.b1 and not dec.b2:
            return self._lift_c_form(M, labels, dec, prec)
        if not dec.c_rows and dec.b1 and dec.b2:
            left = self._sub(M, labels, dec.zero + dec.b1, prec, depth)
            right = self._sub(M, labels, dec.zero + dec.b2, prec, depth)
            return self._glue(left, right, labels[z], labels[dec.b1[-1]], labels[dec.b2[0]],
                              side_check=True)
        if dec.c_rows:
            left = self._sub(M, labels, dec.zero + dec.b1 + dec.b2, prec, depth)
            right = self._sub(M, labels, dec.zero + dec.c_rows + dec.c_cols, prec, depth)
            pivot_left = labels[(dec.b1 + dec.b2)[-1]]
            return self._glue(left, right, labels[z], pivot_left, labels[dec.c_cols[0]],
                              side_check=False)
        block = dec.b1 or dec.b2
        return self._single_block(M, labels, z, block, prec, depth)

    def _sub(self, M, labels, idx, prec, depth) -> _Lift:
        idx = sorted(idx)
        return self.lift(M.principal(idx), [labels[i] for i in idx], prec, depth + 1)

    # no zero row: border, lift, strip ------------------------------------
    def _via_border(self, M, labels, prec, depth) -> _Lift:
        new = self.new_label()
        big = self.lift(bordered(M), [new] + list(labels), prec, depth + 1)
        out = _Lift(labels)
        for i in labels:
            for j in labels:
                out.e[(i, j)] = big[(i, j)]
        out.combos = big.combos
        return out

    # several zero rows: strip one, recurse, add it back as a combination --
    def _strip_zero(self, M, labels, dec, prec, depth) -> _Lift:
        z0, zi = dec.zero[0], dec.zero[1]
        rest = [k for k in range(M.n_rows) if k != z0]
        sub = self.lift(M.principal(rest), [labels[k] for k in rest], prec, depth + 1)
        j = next(k for k in range(M.n_rows) if k not in dec.zero)
        li, lj, l0 = labels[zi], labels[j], labels[z0]
        lam = self.src.constant(prec)
        mu = self.src.constant(prec)
        out = _Lift(labels)
        out.absorb(sub)
        for k in rest:
            lk = labels[k]
            out[(l0, lk)] = _checked_sum(lam * sub[(lk, li)], mu * sub[(lk, lj)])
        corner = _checked_sum(lam * lam * sub[(li, li)], 2 * lam * mu * sub[(li, lj)],
                              mu * mu * sub[(lj, lj)])
        if corner.degree != 0:
            raise LiftFailed("bordered corner entry lost degree zero")
        out[(l0, l0)] = corner
        return out

    # one zero row and only the C block -----------------------------------
    def _lift_c_form(self, M, labels, dec, prec) -> _Lift:
        Z, W = list(dec.c_rows), list(dec.c_cols)
        z = labels[dec.zero[0]]
        C = [[M[i, j] for j in W] for i in Z]
        U = _standard_block(C, self.src, prec)
        zl = [labels[i] for i in Z]
        wl = [labels[j] for j in W]
        out = _Lift(labels)
        out[(z, z)] = U[("o", "o")]
        for a, li in enumerate(zl):
            out[(li, z)] = U[(("z", a), "o")]
            for b, lj in enumerate(wl):
                out[(li, lj)] = U[(("z", a), ("w", b))]
        for b, lj in enumerate(wl):
            out[(z, lj)] = U[("o", ("w", b))]

        w1 = wl[0]
        a_star = next(a for a in range(len(Z)) if C[a][0] > 0)
        zs = zl[a_star]
        r, s = out[(z, z)], out[(z, w1)]
        q, x = out[(zs, z)], out[(zs, w1)]
        u = self.src.constant(prec)
        out[(w1, w1)] = u
        den = _checked_sum(r * u, -(s * s))
        out[(zs, zs)] = _checked_sum(q * q * u, -2 * q * s * x, r * x * x) / den
        H_inv = _inv2(out[(zs, zs)], q, q, r)
        for lj in wl[1:]:
            out[(lj, w1)] = _bilinear((out[(zs, lj)], out[(z, lj)]), H_inv, (x, s))
        G_inv = _inv2(r, s, s, u)
        X = {li: (out[(li, z)], out[(li, w1)]) for li in zl + [z] + wl}
        for grp in (zl, wl):
            for a, li in enumerate(grp):
                for lj in grp[a:]:
                    if (li, lj) not in out.e:
                        out[(li, lj)] = _bilinear(X[li], G_inv, X[lj])
        for lj in wl[1:]:
            lam, mu = _lin(X[lj], G_inv)
            out.combos.append(LiftCombination(lj, (z, w1), lam, mu))
            if mu.degree != 0 or not _deg_at_least(lam, 0):
                raise LiftFailed(f"column combination for {lj} violates deg(lambda) >= deg(mu) = 0 ({lam.degree}, {mu.degree})")
        return out

    # one zero row between two sub-lifts ----------------------------------
    def _glue(self, left: _Lift, right: _Lift, z, p, w, side_check: bool) -> _Lift:
        kappa = (left[(z, z)] / right[(z, z)]).sqrt()
        for lj in right.labels:
            if lj != z:
                right[(z, lj)] = right[(z, lj)] * kappa
        right[(z, z)] = left[(z, z)]
        r = left[(z, z)]
        q, a = left[(p, z)], left[(p, p)]
        s, u = right[(z, w)], right[(w, w)]
        qa, qb, qc = -r, 2 * q * s, a * (r * u - s * s) - q * q * u
        _checked_sum(qb * qb, -4 * qa * qc)
        roots = quadratic_roots(qa, qb, qc)
        x = roots[0]
        if x.degree != 0:
            raise LiftFailed("pivot root does not have degree zero")
        out = _Lift(sorted(set(left.labels) | set(right.labels), key=str))
        out.absorb(left)
        out.absorb(right)
        out[(p, w)] = x
        H_inv = _inv2(a, q, q, r)
        L_only = [li for li in left.labels if li != z]
        R_only = [lj for lj in right.labels if lj != z]
        col_w = {li: _bilinear((left[(li, p)], left[(li, z)]), H_inv, (x, s)) for li in L_only}
        col_w[p] = x
        G_inv = _inv2(r, s, s, u)
        X = {li: (left[(li, z)], col_w[li]) for li in L_only}
        X.update({lj: (right[(lj, z)], right[(lj, w)]) for lj in R_only})
        for li in L_only:
            for lj in R_only:
                if (li, lj) not in out.e:
                    out[(li, lj)] = _bilinear(X[li], G_inv, X[lj])
        K_inv = _inv2(a, x, x, u)
        for lj in R_only:
            if lj == w:
                continue
            sig, rho = _lin((out[(p, lj)], out[(w, lj)]), K_inv)
            out.combos.append(LiftCombination(lj, (p, w), sig, rho))
            if side_check and (rho.degree != 0 or not _deg_at_least(sig, 0)):
                raise LiftFailed(f"column combination for {lj} violates 0 = deg(rho) <= deg(sigma)")
        return out

    # one zero row and one positive block ---------------------------------
    def _single_block(self, M, labels, z, block, prec, depth) -> _Lift:
        vals = {M[i, j] for i in block for j in block}
        if len(vals) == 1:
            # p q^T + q p^T with deg p = (0 on the zero row, m on the block), deg q = 0
            m = vals.pop()
            idx = [z] + list(block)
            P = {i: PuiseuxSeries.monomial(self.src.unit(), 0 if i == z else m, prec) for i in idx}
            Q = {i: self.src.constant(prec) for i in idx}
            out = _Lift(labels)
            for a, i in enumerate(idx):
                for j in idx[a:]:
                    out[(labels[i], labels[j])] = _checked_sum(P[i] * Q[j], Q[i] * P[j])
            return out
        # shift weight from the block onto the zero row; the block then has zeros
        half = min(vals) / 2
        c = [Fraction(0)] * M.n_rows
        c[z] = half
        for i in block:
            c[i] = -half
        sub = self.lift(symmetric_scale(M, c), labels, prec + 2 * half, depth + 1)
        out = _Lift(labels)
        out.combos = sub.combos
        for i in range(M.n_rows):
            for j in range(M.n_rows):
                out.e[(labels[i], labels[j])] = sub[(labels[i], labels[j])].shift(-(c[i] + c[j]))
        return out


def _tame(rows, prec) -> list:
    """Truncate to ``prec`` and substitute t -> t / rho, rho the largest coefficient growth rate.

    The substitution maps lifts to lifts (degrees and rank are unchanged)
    and leaves coefficients that no longer grow along each series, so
    floating-point noise stays small next to the leading terms.
    """
    rows = [[s.truncate(prec) for s in row] for row in rows]
    rho = max([1.0] + [s.growth_rate() for row in rows for s in row])
    if rho > 1.0:
        rows = [[s.substitute_scaled(1.0 / rho) for s in row] for row in rows]
    return rows


def _require_rank_two(A: TropicalMatrix) -> None:
    if not A.is_square or not A.symmetric:
        raise LiftPreconditionError("symmetric lifts need a symmetric matrix")
    r = symmetric_tropical_rank(A).rank
    if r != 2:
        raise LiftPreconditionError(f"symmetric tropical rank is {r}, not 2")


def rank2_symmetric_lift(A: TropicalMatrix, seed: int = 0, trunc=None,
                         retries: int = RETRY_BUDGET, check_rank: bool = True) -> LiftCertificate:
    """Symmetric rank-two lift of a matrix with symmetric tropical rank two.

    Seeds seed, seed + 1, ... are tried in turn; ``attempts`` on the returned
    certificate says how many were needed.
    """
    if check_rank:
        _require_rank_two(A)
    elif not A.symmetric:
        raise LiftPreconditionError("symmetric lifts need a symmetric matrix")
    n = A.n_rows
    B, scaling = normalize(A)
    c = scaling.c
    target = Fraction(trunc) if trunc is not None else default_truncation(A, 2)
    if target <= A.max_entry():
        raise LiftPreconditionError("truncation order must exceed every entry")
    work = max(default_truncation(B, 2), target + 2 * max(c)) + 4 * (1 + B.spread())
    last = None
    for k in range(retries):
        src = GenericSource(seed + k)
        try:
            raw = _Builder(src, work).lift(B, list(range(n)), work)
        except (LiftFailed, DegenerateDiscriminant, ZeroDivisionError) as exc:
            last = exc
            continue
        rows = [[raw[(i, j)].shift(-(c[i] + c[j])) for j in range(n)] for i in range(n)]
        prec = min(s.prec for row in rows for s in row)
        if prec < target:
            last = LiftFailed(f"precision dropped to {prec}, below {target}")
            continue
        rows = _tame(rows, target)
        # mirror the upper triangle so symmetry is exact term for term
        for i in range(n):
            for j in range(i):
                rows[i][j] = rows[j][i]
        L = SeriesMatrix(rows, symmetric=True)
        cert = verify_lift(A, L, 2)
        cert.seed, cert.attempts, cert.combinations = seed + k, k + 1, raw.combos
        if cert.valid:
            return cert
        last = LiftFailed(f"verification failed: {cert.checks()}")
    raise LiftFailed(f"no verified rank-two lift after {retries} seeds: {last}")


def kapranov_rank_3x3(A: TropicalMatrix) -> int:
    """Symmetric Kapranov rank of a symmetric 3x3 matrix.

    For 3x3 it agrees with the symmetric tropical rank: full rank is never
    lowered by lifting, rank one lifts monomially, and rank two has a lift.
    """
    if A.shape != (3, 3) or not A.symmetric:
        raise ValueError("need a symmetric 3x3 matrix")
    return symmetric_tropical_rank(A).rank


def classify_conic(a, b, c, d, e, f) -> str:
    """'singular' (a union of two tropical lines) or 'nonsingular' for the conic with this matrix."""
    M = TropicalMatrix([[a, b, d], [b, c, e], [d, e, f]])
    return "singular" if kapranov_rank_3x3(M) < 3 else "nonsingular"
