"""Command line entry point.

Exit codes: 0 success or verification pass, 1 verification failure,
2 usage or input error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import document, reference
from .choi import emit_ratio_table, mes_mub_report, ratio_csv
from .errors import BoundViolationError, DocumentError, InvalidArgumentError, SearchSpaceTooLargeError
from .search import DEFAULT_MAX_NODES, SearchConfig, assemble_collection, enumerate_unitary_generators
from .subspace import subspace_recipe, theorem1_witness
from .verify import MuubCollection, verify_collection
from .weyl import Tolerance, as_tolerance, check_dim

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
BUNDLED_PREFIX = "bundled:"
MAX_LISTED_FAILURES = 10


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


def _tol(value: float | None) -> Tolerance:
    return as_tolerance(value)


def _fmt_C(C) -> str:
    return "n/a" if C is None else f"{C:.10g}"


def _finish_collection(collection: MuubCollection, out, tol: Tolerance) -> int:
    cert = verify_collection(collection, tol)
    if cert.constant_C is not None and collection.constant_C is None:
        collection = MuubCollection(collection.dim, collection.bases, cert.constant_C, collection.root_order)
    if out is not None:
        document.write_collection(collection, out)
    print(f"bases={cert.basis_count} C={_fmt_C(cert.constant_C)}")
    return EXIT_OK if cert.passed else EXIT_FAIL


def cmd_search(dim: int, root_order: int | None = None, max_nodes: int = DEFAULT_MAX_NODES,
               max_generators: int | None = None, out=None, tol: float | None = None,
               method: str = "pruned", dedup: bool = True) -> int:
    try:
        tol = _tol(tol)
        cfg = SearchConfig(dim, root_order, max_generators=max_generators, max_nodes=max_nodes, tol=tol, dedup=dedup)
        generators = enumerate_unitary_generators(cfg, method)
    except (InvalidArgumentError, SearchSpaceTooLargeError) as exc:
        _err(str(exc))
        return EXIT_USAGE
    print(f"generators={len(generators)} root_order={cfg.root_order}", file=sys.stderr)
    return _finish_collection(assemble_collection(generators, cfg), out, tol)


def cmd_construct_subspace(dim: int, out=None, tol: float | None = None) -> int:
    try:
        tol = _tol(tol)
        collection = subspace_recipe(dim)
    except InvalidArgumentError as exc:
        _err(str(exc))
        return EXIT_USAGE
    return _finish_collection(collection, out, tol)


def _load(path: str) -> MuubCollection:
    if path.startswith(BUNDLED_PREFIX):
        try:
            return document.loads_collection(reference.bundled_text(path[len(BUNDLED_PREFIX):]))
        except KeyError as exc:
            raise DocumentError(str(exc)) from exc
    return document.read_collection(path)


def cmd_verify(in_path: str, tol: float | None = None, with_mes: bool = True) -> int:
    try:
        tol = _tol(tol)
        collection = _load(in_path)
    except (InvalidArgumentError, DocumentError) as exc:
        _err(str(exc))
        return EXIT_USAGE
    ok = True
    for a, i, dev in document.exponent_mismatches(collection, tol.eps):
        print(f"exponent-mismatch: basis {a} element {i} deviates by {dev:.6g}")
        ok = False
    try:
        cert = verify_collection(collection, tol)
    except BoundViolationError as exc:
        print(f"verdict=fail {exc}")
        return EXIT_FAIL
    print(cert.summary())
    for f in cert.failures[:MAX_LISTED_FAILURES]:
        print(f"  {f.describe()}")
    if len(cert.failures) > MAX_LISTED_FAILURES:
        print(f"  ... {len(cert.failures) - MAX_LISTED_FAILURES} more failures")
    ok = ok and cert.passed
    if with_mes and cert.passed and collection.is_full_space:
        report = mes_mub_report(MuubCollection(collection.dim, collection.bases, cert.constant_C, collection.root_order), tol)
        print(report.summary())
        for line in report.failures[:MAX_LISTED_FAILURES]:
            print(f"  {line}")
        ok = ok and report.passed
    return EXIT_OK if ok else EXIT_FAIL


def cmd_choi_report(in_path: str, tol: float | None = None) -> int:
    try:
        tol = _tol(tol)
        collection = _load(in_path)
        if not collection.is_full_space:
            raise InvalidArgumentError("choi-report needs a full-space collection (span_dim = dim^2)")
    except (InvalidArgumentError, DocumentError) as exc:
        _err(str(exc))
        return EXIT_USAGE
    report = mes_mub_report(collection, tol)
    print(report.summary())
    for (a, b), (lo, hi) in report.pair_overlaps.items():
        print(f"  bases {a},{b}: overlap min={lo:.12g} max={hi:.12g}")
    for line in report.failures:
        print(f"  {line}")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_ratio(count: int, out=None) -> int:
    try:
        rows = emit_ratio_table(count)
    except InvalidArgumentError as exc:
        _err(str(exc))
        return EXIT_USAGE
    text = ratio_csv(rows)
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)
        print(f"rows={len(rows)}")
    return EXIT_OK


def cmd_theorem1(dim: int, tol: float | None = None) -> int:
    try:
        tol = _tol(tol)
        d = check_dim(dim)
        witness = theorem1_witness(d, tol)
    except InvalidArgumentError as exc:
        _err(str(exc))
        return EXIT_USAGE
    print(witness.table())
    print(f"surviving={witness.surviving}")
    return EXIT_OK if witness.surviving == d else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="muub", description="Mutually unbiased unitary bases for prime d.")
    sub = parser.add_subparsers(dest="command", required=True)

    def tol_flag(p):
        p.add_argument("--tol", type=float, default=None, help="numerical tolerance (default: $MUUB_TOL or 1e-9)")

    p = sub.add_parser("search", help="phase-exponent search for a full-space collection")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--root-order", type=int, default=None)
    p.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES)
    p.add_argument("--max-generators", type=int, default=None)
    p.add_argument("--method", choices=["pruned", "exhaustive"], default="pruned")
    p.add_argument("--no-dedup", action="store_true")
    p.add_argument("--out", default=None)
    tol_flag(p)

    p = sub.add_parser("construct-subspace", help="d MUUBs of the diagonal subspace")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--out", default=None)
    tol_flag(p)

    p = sub.add_parser("verify", help="certify a collection document")
    p.add_argument("path", help=f"document path, or {BUNDLED_PREFIX}paper_d3")
    tol_flag(p)

    p = sub.add_parser("choi-report", help="check Choi images of a full-space collection")
    p.add_argument("path")
    tol_flag(p)

    p = sub.add_parser("ratio", help="CSV of (d, R) over odd primes")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--out", default=None)

    p = sub.add_parser("theorem1", help="which MUBs of C^d map to unitary bases")
    p.add_argument("--dim", type=int, required=True)
    tol_flag(p)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "search":
            return cmd_search(args.dim, args.root_order, args.max_nodes, args.max_generators,
                              args.out, args.tol, args.method, not args.no_dedup)
        if args.command == "construct-subspace":
            return cmd_construct_subspace(args.dim, args.out, args.tol)
        if args.command == "verify":
            return cmd_verify(args.path, args.tol)
        if args.command == "choi-report":
            return cmd_choi_report(args.path, args.tol)
        if args.command == "ratio":
            return cmd_ratio(args.count, args.out)
        if args.command == "theorem1":
            return cmd_theorem1(args.dim, args.tol)
    except InvalidArgumentError as exc:
        _err(str(exc))
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
