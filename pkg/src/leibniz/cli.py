"""Command line front end.

Every verb that takes an algebra reads a JSON file (``-`` for stdin) or, with
``--family``, builds one from the catalog.  Exit codes: 0 when the check
passes, 1 when it finds a violation, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .algebra import Algebra, is_lie, verify_leibniz
from .catalog import get_entry, list_families, make
from .derivations import derivation_space, match_derivation_pattern
from .errors import LeibnizError
from .gradation import search_max_length_gradation, verify_gradation
from .harness import SUITES, run_harness
from .invariants import distinguish, profile
from .scalars import Poly, format_scalar, parse_scalar
from .serialization import parse, serialize
from .structure import (
    derived_series,
    is_nilpotent,
    is_quasi_filiform,
    is_solvable,
    lower_central_series,
    series_dims,
)
from .workbench import run_script

__all__ = ["main", "build_parser"]


class UsageError(Exception):
    pass


def _params(pairs: Sequence[str] | None) -> dict:
    out = {}
    for item in pairs or ():
        if "=" not in item:
            raise UsageError(f"--param expects key=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = parse_scalar(v.strip())
    return out


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _algebra(args, path: str | None = None) -> Algebra:
    path = path if path is not None else getattr(args, "file", None)
    if getattr(args, "family", None):
        if args.n is None:
            raise UsageError("--family needs --n")
        return make(args.family, args.n, _params(args.param), convention=getattr(args, "convention", None))
    if not path:
        raise UsageError("give an algebra file or --family/--n")
    return parse(_read(path))


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _label_vector(A: Algebra, vec) -> str:
    terms = [(k, c) for k, c in enumerate(vec) if isinstance(c, Poly) or c != 0]
    return " + ".join(f"({format_scalar(c)})*{A.labels[k]}" for k, c in terms) or "0"


# ---------------------------------------------------------------------------
# verbs


def cmd_verify(args) -> int:
    A = _algebra(args)
    w = verify_leibniz(A)
    if w is None:
        print(f"Leibniz identity holds (dim {A.dim}, {'Lie' if is_lie(A) else 'non-Lie'})")
        return 0
    lab = A.labels
    print(f"Leibniz identity fails: L({lab[w.i - 1]}, {lab[w.j - 1]}, {lab[w.k - 1]}) = {_label_vector(A, w.residual)}")
    return 1


def cmd_series(args) -> int:
    A = _algebra(args)
    print(f"lower central series dims: {series_dims(lower_central_series(A))}")
    print(f"derived series dims: {series_dims(derived_series(A))}")
    print(f"nilpotent: {str(is_nilpotent(A)).lower()}")
    print(f"solvable: {str(is_solvable(A)).lower()}")
    print(f"quasi-filiform: {str(is_quasi_filiform(A)).lower()}")
    return 0


def cmd_der(args) -> int:
    A = _algebra(args)
    der = derivation_space(A)
    print(f"dim Der = {der.dim}")
    if args.basis:
        for idx, D in enumerate(der.basis, start=1):
            print(f"D{idx}:")
            print(str(D.matrix))
    if args.pattern:
        kw = {}
        params = {**{k: v for k, v in A.params.items() if v is not None}, **_params(args.param)}
        if args.pattern == "M1":
            kw["delta"] = int(params.get("delta", 0))
        elif args.pattern == "M2":
            kw["lam"] = params.get("lambda", 0)
        match = match_derivation_pattern(A, args.pattern, **kw)
        print(("Pass: " if match.passed else "Mismatch: ") + match.report)
        return 0 if match.passed else 1
    return 0


def cmd_grade(args) -> int:
    A = _algebra(args)
    if args.weights:
        try:
            weights = [int(w) for w in args.weights.split(",")]
        except ValueError:
            raise UsageError("--weights expects comma separated integers") from None
        verdict = verify_gradation(A, weights)
        print(verdict)
        return 0 if verdict else 1
    g = search_max_length_gradation(A, args.max_weight)
    if g is None:
        print(f"no gradation of length {A.dim} with weights in [-B, B]")
        return 1
    print("weights: " + ", ".join(f"{A.labels[i]}->{w}" for i, w in enumerate(g.weights)))
    print(f"length: {g.length}")
    return 0


def cmd_profile(args) -> int:
    A = _algebra(args)
    pa = profile(A)
    print(f"A: {pa}")
    if args.other:
        pb = profile(parse(_read(args.other)))
        print(f"B: {pb}")
        print(distinguish(pa, pb))
    return 0


def cmd_catalog(args) -> int:
    if args.action == "list":
        for e in list_families():
            dims = f"n={e.fixed_n}" if e.fixed_n else f"n>={e.min_n}"
            params = ", ".join(
                spec.name.replace("{}", "_i") + (f" in {{{', '.join(map(str, spec.choices))}}}" if spec.choices else "")
                for spec in e.params
            )
            print(f"{e.id:12} {e.kind:10} {e.title}  [{dims}; s={e.s}; params: {params or 'none'}]")
            if args.verbose and e.doc:
                print(f"             {e.doc}")
        return 0
    if not args.id or args.n is None:
        raise UsageError("catalog build needs an id and --n")
    get_entry(args.id)
    A = make(args.id, args.n, _params(args.param), convention=args.convention)
    _emit(serialize(A), args.output)
    return 0


def cmd_extend(args) -> int:
    result = run_script(_read(args.script))
    _emit(result.output, args.output)
    if not result.ok:
        print(result.expectation_failed, file=sys.stderr)
        return 1
    return 0


def cmd_harness(args) -> int:
    report = run_harness(args.suite)
    if report.exit_code == 2:
        print(report.text, end="", file=sys.stderr)
        return 2
    _emit(report.text, args.output)
    return report.exit_code


def _source_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("file", nargs="?", help="algebra JSON file, '-' for stdin")
    p.add_argument("--family", help="catalog id instead of a file")
    p.add_argument("--n", type=int, help="nilradical dimension for --family")
    p.add_argument("--param", action="append", metavar="K=V", help="parameter binding (repeatable)")
    p.add_argument("--convention", help="basis convention for families that have two")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="leibniz", description="Exact computations with Leibniz algebras.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("verify", help="check the Leibniz identity")
    _source_args(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("series", help="lower central and derived series")
    _source_args(p)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("der", help="derivation algebra and matrix-form comparison")
    _source_args(p)
    p.add_argument("--pattern", choices=("M1", "M2", "M31"))
    p.add_argument("--basis", action="store_true", help="print a basis of Der")
    p.set_defaults(func=cmd_der)

    p = sub.add_parser("grade", help="maximum-length gradation search or check")
    _source_args(p)
    p.add_argument("--max-weight", type=int, default=None, help="weight bound B (default 2n)")
    p.add_argument("--weights", help="check these comma separated weights instead of searching")
    p.set_defaults(func=cmd_grade)

    p = sub.add_parser("profile", help="invariant profile; with two files, a certificate")
    _source_args(p)
    p.add_argument("other", nargs="?", help="second algebra file")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("catalog", help="list or build catalog tables")
    p.add_argument("action", choices=("list", "build"))
    p.add_argument("id", nargs="?")
    p.add_argument("--n", type=int)
    p.add_argument("--param", action="append", metavar="K=V")
    p.add_argument("--convention")
    p.add_argument("-v", "--verbose", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("extend", help="run a proof script on a generic extension")
    p.add_argument("script", help="script file, '-' for stdin")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("harness", help="run verification suites")
    p.add_argument("suite", help="one of " + ", ".join([*SUITES, "all"]))
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_harness)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except LeibnizError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
