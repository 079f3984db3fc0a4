"""Command-line interface.

Exit codes: 0 success, 1 mathematical negative (a lift that does not
verify, a failed self-test), 2 usage or precondition error.

Matrix arguments are file paths, ``-`` for stdin, or ``catalog:<name>``.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .blocks import StructureViolation, block_decompose
from .core import (MatrixParseError, NormalizationFailed, TropicalMatrix, format_matrix,
                   format_value, normalize, parse_matrix, to_fraction)
from .lift import (LiftFailed, LiftPreconditionError, classify_conic, rank1_lift,
                   rank2_symmetric_lift, verify_lift)
from .matching import Permutation, det_result
from .rank import MonotonicityViolation, symmetric_tropical_rank, tropical_rank
from .series import SeriesFormatError, read_series_matrix, write_series_matrix
from .witness import (CATALOG, border_extend, catalog, duplicate_extend, verify_record,
                      witness)

SCHEMA = "symtrop-report/1"


class UsageError(Exception):
    pass


class Negative(Exception):
    """A well-posed question whose answer is 'no'; carries the report."""

    def __init__(self, report):
        super().__init__("negative result")
        self.report = report


# -- input helpers ------------------------------------------------------

def load_matrix(source: str, symmetric: bool | None = None) -> TropicalMatrix:
    if source.startswith("catalog:"):
        name = source.split(":", 1)[1]
        if name not in CATALOG:
            raise UsageError(f"unknown catalog entry {name!r}; choose from {', '.join(CATALOG)}")
        A = catalog(name).matrix
        if symmetric and not A.symmetric:
            raise UsageError(f"{source} is not symmetric")
        return A
    text = sys.stdin.read() if source == "-" else _read(source)
    try:
        return parse_matrix(text, symmetric=symmetric)
    except MatrixParseError as exc:
        raise UsageError(f"{source}: {exc}") from None


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def digest(A: TropicalMatrix) -> str:
    return "sha256:" + hashlib.sha256(format_matrix(A).encode()).hexdigest()[:16]


def _indices(text: str | None, n: int) -> list[int] | None:
    if text is None:
        return None
    try:
        idx = [int(x) - 1 for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad index list {text!r}") from None
    if any(not 0 <= i < n for i in idx):
        raise UsageError(f"index out of range in {text!r}")
    return idx


def _json_value(v):
    if isinstance(v, Fraction):
        return format_value(v)
    if isinstance(v, TropicalMatrix):
        return [[format_value(x) for x in r] for r in v.rows()]
    if isinstance(v, (list, tuple)):
        return [_json_value(x) for x in v]
    if isinstance(v, dict):
        return {k: _json_value(x) for k, x in v.items()}
    if isinstance(v, float):
        return float(f"{v:.6g}")
    return v


# -- commands -----------------------------------------------------------

def cmd_det(args) -> dict:
    A = load_matrix(args.matrix, True if args.symmetric else None)
    I = _indices(args.rows, A.n_rows)
    J = _indices(args.cols, A.n_cols)
    if (I is None) != (J is None):
        raise UsageError("give both --rows and --cols, or neither")
    if I is None and not A.is_square:
        raise UsageError("non-square matrix needs --rows and --cols")
    if I is not None and len(I) != len(J):
        raise UsageError("--rows and --cols must have the same length")
    res = det_result(A, I, J, limit=None)
    rows = I if I is not None else list(range(A.n_rows))
    cols = J if J is not None else list(range(A.n_cols))
    out = {
        "tropdet": res.value,
        "singular": res.singular,
        "optimal_bijections": [_bijection(rows, cols, a) for a in res.witnesses],
    }
    if res.sym_singular is not None:
        out["symmetrically_singular"] = res.sym_singular
        out["distinct_symmetric_monomials"] = res.distinct_classes
    return {"matrix": digest(A), "results": out}


def _bijection(rows, cols, assignment) -> list[list[int]]:
    return [[rows[a] + 1, cols[assignment[a]] + 1] for a in range(len(rows))]


def cmd_rank(args) -> dict:
    A = load_matrix(args.matrix, True if args.symmetric else None)
    try:
        if args.symmetric:
            if not A.symmetric:
                raise UsageError("--symmetric needs a symmetric matrix")
            rep = symmetric_tropical_rank(A, args.exhaustive, args.threads)
        else:
            rep = tropical_rank(A, args.exhaustive, args.threads)
    except MonotonicityViolation as exc:
        raise Negative({"matrix": digest(A), "results": {"monotonicity_violation": str(exc)}})
    I, J = rep.witness_1based()
    return {"matrix": digest(A), "results": {
        "mode": rep.mode, "rank": rep.rank, "witness_rows": I, "witness_cols": J,
        "exhaustive": rep.exhaustive}}


def cmd_normalize(args) -> dict:
    A = load_matrix(args.matrix, True)
    B, c = normalize(A)
    return {"matrix": digest(A), "results": {"normalized": B, "scaling": list(c.c)},
            "_text_matrix": B}


def cmd_decompose(args) -> dict:
    A = load_matrix(args.matrix, True)
    B, c = normalize(A)
    dec = block_decompose(B, check_rank=True)
    one = lambda g: [i + 1 for i in g]  # noqa: E731
    return {"matrix": digest(A), "results": {
        "scaling": list(c.c),
        "zero": one(dec.zero), "B1": one(dec.b1), "B2": one(dec.b2),
        "C_rows": one(dec.c_rows), "C_cols": one(dec.c_cols),
        "permutation": str(dec.sigma),
        "block_form": dec.permuted(B)}, "_text_matrix": dec.permuted(B)}


def cmd_lift(args) -> dict:
    A = load_matrix(args.matrix)
    if args.rank == 1:
        cert = rank1_lift(A, args.trunc)
    elif args.rank == 2:
        if not A.symmetric:
            raise UsageError("rank-2 lifts are symmetric; the matrix is not")
        cert = rank2_symmetric_lift(A, seed=args.seed, trunc=args.trunc)
    else:
        raise UsageError("only --rank 1 and --rank 2 lifts are constructed")
    text = write_series_matrix(cert.matrix)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    report = {"matrix": digest(A), "results": {
        "rank": args.rank, "valid": cert.valid, "seed": cert.seed,
        "attempts": cert.attempts, "truncation": cert.matrix.prec,
        "checks": _checks(cert)}}
    if not args.output:
        report["_text_series"] = text
        report["results"]["series"] = text
    return report


def _checks(cert) -> dict:
    c = cert.checks()
    if c["witness_minor"] is not None:
        I, J = c["witness_minor"]
        c["witness_minor"] = [[i + 1 for i in I], [j + 1 for j in J]]
    return c


def cmd_verify_lift(args) -> dict:
    A = load_matrix(args.matrix)
    try:
        L = read_series_matrix(_read(args.series))
    except SeriesFormatError as exc:
        raise UsageError(f"{args.series}: {exc}") from None
    sym = True if args.symmetric else None
    if sym and not A.symmetric:
        raise UsageError("--symmetric needs a symmetric matrix")
    cert = verify_lift(A, L, args.rank, symmetric=sym)
    report = {"matrix": digest(A), "results": {"rank": args.rank, "valid": cert.valid,
                                              "checks": _checks(cert)}}
    if not cert.valid:
        raise Negative(report)
    return report


def _record_report(W, verify: bool, threads: int) -> dict:
    out = {
        "size": W.matrix.n_rows,
        "claimed_sym_trop_rank": W.claimed_sym_trop_rank,
        "claimed_kapranov_gap": W.claimed_kapranov_gap,
        "provenance": list(W.provenance),
        "matrix": W.matrix,
    }
    if W.claimed_kapranov_gap:
        out["gap_basis"] = "imported from the catalog base and carried through the extensions"
    if verify:
        rep = verify_record(W, threads=threads)
        out["verification"] = {"ok": rep.ok, "mode": rep.mode,
                               "sym_trop_rank": rep.sym_trop_rank, "detail": rep.detail}
        if not rep.ok:
            raise Negative({"results": out})
    return out


def cmd_witness(args) -> dict:
    try:
        W = witness(args.r, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return {"results": _record_report(W, args.verify, args.threads), "_text_matrix": W.matrix}


def cmd_extend(args) -> dict:
    A = load_matrix(args.matrix, True)
    from .witness import WitnessRecord
    if args.matrix.startswith("catalog:"):
        W = catalog(args.matrix.split(":", 1)[1])
    else:
        W = WitnessRecord(A, None, False, (f"input:{digest(A)}",))
    if not A.symmetric:
        raise UsageError("extend needs a symmetric matrix")
    if W.claimed_sym_trop_rank is None:
        W = WitnessRecord(A, symmetric_tropical_rank(A, threads=args.threads).rank,
                          W.claimed_kapranov_gap, W.provenance)
    if args.how == "duplicate":
        W = duplicate_extend(W)
    else:
        W = border_extend(W, args.P, args.M)
    return {"matrix": digest(A), "results": _record_report(W, args.verify, args.threads),
            "_text_matrix": W.matrix}


def cmd_conic(args) -> dict:
    vals = [to_fraction(x) for x in args.coeffs]
    kind = classify_conic(*vals)
    msg = "singular: union of two tropical lines" if kind == "singular" else "nonsingular"
    return {"results": {"classification": kind, "message": msg}, "_text_line": msg}


def cmd_catalog(args) -> dict:
    if args.name is None:
        return {"results": {"entries": list(CATALOG)}, "_text_line": "\n".join(CATALOG)}
    if args.name not in CATALOG:
        raise UsageError(f"unknown catalog entry {args.name!r}")
    W = catalog(args.name)
    return {"results": {
        "name": args.name, "matrix": W.matrix, "claimed_trop_rank": W.claimed_trop_rank,
        "claimed_sym_trop_rank": W.claimed_sym_trop_rank,
        "claimed_kapranov_gap": W.claimed_kapranov_gap, "note": W.note},
        "_text_matrix": W.matrix}


def selftest_checks(threads: int = 1):
    """Yield (label, passed) for every catalog claim and a few end-to-end checks."""
    for name in CATALOG:
        W = catalog(name)
        rep = verify_record(W, threads=threads)
        claims = []
        if W.claimed_trop_rank is not None:
            claims.append(f"tropical rank {W.claimed_trop_rank}")
        if W.claimed_sym_trop_rank is not None:
            claims.append(f"symmetric tropical rank {W.claimed_sym_trop_rank}")
        yield f"{name}: {', '.join(claims)}", rep.ok
    from .core import permute_cols, permute_rows
    f7, f7s = catalog("fano7").matrix, catalog("fano7_symmetric").matrix
    yield ("fano7_symmetric is fano7 with rows swapped by (27)(36)(45)",
           permute_rows(f7, Permutation.from_cycles("(27)(36)(45)", 7)) == f7s)
    s6, s6s = catalog("shitov6").matrix, catalog("shitov6_symmetric").matrix
    rows = Permutation.from_cycles("(16)(25)(34)", 6)
    cols = Permutation.from_cycles("(135)(246)", 6).inverse()
    yield ("shitov6_symmetric is a row/column rearrangement of shitov6",
           permute_cols(permute_rows(s6, rows), cols) == s6s)
    c1 = catalog("c1").matrix
    yield ("c1 has a verified symmetric rank-2 lift", rank2_symmetric_lift(c1).valid)
    try:
        rank2_symmetric_lift(catalog("c2").matrix)
        ok = False
    except LiftPreconditionError:
        ok = True
    yield ("c2 is rejected by the rank-2 lift", ok)
    yield ("conic 1 0 1 0 0 0 is singular", classify_conic(1, 0, 1, 0, 0, 0) == "singular")
    yield ("witness(6, 8) has symmetric tropical rank 5",
           verify_record(witness(6, 8), threads=threads).sym_trop_rank == 5)


def cmd_selftest(args) -> dict:
    checks = [{"check": label, "pass": bool(ok)} for label, ok in selftest_checks(args.threads)]
    report = {"results": {"checks": checks, "all_pass": all(c["pass"] for c in checks)},
              "_text_line": "\n".join(f"{'PASS' if c['pass'] else 'FAIL'}  {c['check']}"
                                      for c in checks)}
    if not report["results"]["all_pass"]:
        raise Negative(report)
    return report


# -- plumbing -----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="symtrop", description="Symmetric tropical rank toolkit.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--threads", type=int, default=1, help="worker processes for minor scans")
    common.add_argument("--timing", action="store_true", help="include wall-clock time")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("det", parents=[common], help="tropical determinant and singularity")
    s.add_argument("matrix")
    s.add_argument("--symmetric", action="store_true")
    s.add_argument("--rows", help="1-based comma list")
    s.add_argument("--cols", help="1-based comma list")
    s.set_defaults(func=cmd_det)

    s = sub.add_parser("rank", parents=[common], help="tropical or symmetric tropical rank")
    s.add_argument("matrix")
    s.add_argument("--symmetric", action="store_true")
    s.add_argument("--exhaustive", action="store_true")
    s.set_defaults(func=cmd_rank)

    s = sub.add_parser("normalize", parents=[common], help="symmetric scaling to row minima 0")
    s.add_argument("matrix")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("decompose", parents=[common], help="block form of a rank-2 matrix")
    s.add_argument("matrix")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("lift", parents=[common], help="construct a verified lift")
    s.add_argument("matrix")
    s.add_argument("--rank", type=int, default=2)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trunc", type=Fraction)
    s.add_argument("-o", "--output", help="write the series matrix here")
    s.set_defaults(func=cmd_lift)

    s = sub.add_parser("verify-lift", parents=[common], help="check a series matrix against a matrix")
    s.add_argument("matrix")
    s.add_argument("series")
    s.add_argument("--rank", type=int, required=True)
    s.add_argument("--symmetric", action="store_true")
    s.set_defaults(func=cmd_verify_lift)

    s = sub.add_parser("witness", parents=[common], help="matrix with a symmetric Kapranov gap")
    s.add_argument("-r", type=int, required=True, help="minor size")
    s.add_argument("-n", type=int, required=True, help="matrix size")
    s.add_argument("--verify", action="store_true")
    s.set_defaults(func=cmd_witness)

    s = sub.add_parser("extend", parents=[common], help="duplicate or border extension")
    s.add_argument("how", choices=("duplicate", "border"))
    s.add_argument("matrix")
    s.add_argument("--P", type=Fraction)
    s.add_argument("--M", type=Fraction)
    s.add_argument("--verify", action="store_true")
    s.set_defaults(func=cmd_extend)

    s = sub.add_parser("conic", parents=[common], help="classify a tropical conic")
    s.add_argument("coeffs", nargs=6, metavar="a b c d e f")
    s.set_defaults(func=cmd_conic)

    s = sub.add_parser("catalog", parents=[common], help="list or print catalog matrices")
    s.add_argument("name", nargs="?")
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("selftest", parents=[common], help="re-derive every catalog claim")
    s.set_defaults(func=cmd_selftest)
    return p


def render(report: dict, args, fmt: str) -> str:
    public = {k: v for k, v in report.items() if not k.startswith("_")}
    if fmt == "structured":
        doc = {"schema": SCHEMA, "command": _echo(args), **public}
        return json.dumps(_json_value(doc), indent=2, sort_keys=True) + "\n"
    if "_text_line" in report:
        return report["_text_line"] + "\n"
    lines = []
    res = public.get("results", {})
    for key, val in res.items():
        if isinstance(val, TropicalMatrix) or key == "series":
            continue
        lines.append(f"{key}: {_text_value(val)}")
    if "elapsed_s" in public:
        lines.append(f"elapsed_s: {public['elapsed_s']}")
    text = "\n".join(lines) + ("\n" if lines else "")
    if "_text_matrix" in report:
        text += format_matrix(report["_text_matrix"])
    if "_text_series" in report:
        text += report["_text_series"]
    return text


def _text_value(v) -> str:
    v = _json_value(v)
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True)
    return str(v)


def _echo(args) -> list[str]:
    skip = {"func", "format", "timing", "threads"}
    out = [args.command]
    for k, v in sorted(vars(args).items()):
        if k not in skip and k != "command" and v is not None and v is not False:
            out.append(f"{k}={_json_value(v)}")
    return out


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    code = 0
    try:
        report = args.func(args)
    except Negative as neg:
        report, code = neg.report, 1
    except (UsageError, LiftPreconditionError, StructureViolation, NormalizationFailed,
            KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        print(f"symtrop {args.command}: error: {msg}", file=sys.stderr)
        return 2
    except LiftFailed as exc:
        print(f"symtrop {args.command}: lift failed: {exc}", file=sys.stderr)
        return 1
    if args.timing:
        report["elapsed_s"] = round(time.perf_counter() - start, 3)
    sys.stdout.write(render(report, args, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
