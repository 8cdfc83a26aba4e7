"""Command-line batch verifier.

Exit codes are uniform: 0 when every requested check passes, 1 when a check
is verified false, 2 for invalid input (bad flags, unparseable files,
preconditions not met).
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from qjordan import linalg
from qjordan.constructions import field_algebra, from_linear, load_linear, matrix_plus_algebra
from qjordan.deriv import (
    Epsilon,
    derivation_space,
    generalized_derivation_space,
    inverse_compatible_space,
)
from qjordan.identities import IdentityId, check_identity, is_division, is_weak_qja, run_suite
from qjordan.qjcore import (
    BoundExceeded,
    NotInvertible,
    ParseError,
    QuadraticAlgebra,
    dump_algebra,
    isotope,
    load_algebra,
    scalar_extension,
)

OK, FALSE, INVALID = 0, 1, 2


class InputError(Exception):
    pass


def _read(path: str) -> QuadraticAlgebra:
    try:
        with open(path) as fh:
            return load_algebra(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except ParseError as exc:
        raise InputError(f"parse error in {path}: {exc}") from exc


def _emit(text: str, output: str | None) -> None:
    if output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(output, "w") as fh:
            fh.write(text)


def _parse_element(J: QuadraticAlgebra, text: str) -> np.ndarray:
    tokens = text.replace(";", " ").split()
    if tokens == ["1"] and J.n > 1:
        return J.unit.copy()
    if len(tokens) != J.n:
        raise InputError(f"element needs {J.n} coordinates, got {text!r}")
    try:
        return np.array([J.field.parse_code(t) for t in tokens], dtype=np.int64)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _kv(key: str, value) -> str:
    return f"{key}={value}"


# -- commands --------------------------------------------------------------------


def cmd_make(args) -> int:
    if args.field:
        p, m = args.field
        J = field_algebra(p, m)
    elif args.matrix:
        p, r = args.matrix
        J = matrix_plus_algebra(p, r)
    else:
        try:
            with open(args.from_linear) as fh:
                L = load_linear(fh.read())
        except OSError as exc:
            raise InputError(str(exc)) from exc
        except ParseError as exc:
            raise InputError(f"parse error: {exc}") from exc
        J = from_linear(L)
    _emit(dump_algebra(J), args.output)
    return OK


def cmd_verify(args) -> int:
    J = _read(args.file)
    reports = run_suite(J, args.suite)
    for r in reports:
        print(r.render(args.machine))
    return OK if all(r.holds for r in reports) else FALSE


def cmd_hua(args) -> int:
    J = _read(args.file)
    if not is_division(J):
        print("input is not a division algebra", file=sys.stderr)
        return INVALID
    r = check_identity(J, IdentityId.HUA)
    print(r.render(args.machine))
    return OK if r.holds else FALSE


def cmd_isotope(args) -> int:
    J = _read(args.file)
    a = _parse_element(J, args.element)
    try:
        Ja = isotope(J, a)
    except NotInvertible as exc:
        raise InputError(str(exc)) from exc
    _emit(dump_algebra(Ja), args.output)
    return OK


def cmd_extend(args) -> int:
    J = _read(args.file)
    if not J.field.is_prime_field or args.degree < 2:
        raise InputError("extension needs an algebra over a prime field and degree >= 2")
    _emit(dump_algebra(scalar_extension(J, args.degree)), args.output)
    return OK


def _render_space(space, F, machine: bool) -> list[str]:
    label = "all" if space.epsilon is None else str(space.epsilon)
    lines = [f"epsilon={label} dim={space.dim}"]
    for k, d in enumerate(space.maps):
        lines.append(f"basis {k + 1}")
        lines.append(linalg.format_matrix(d, F))
    return lines


def cmd_derivations(args) -> int:
    J = _read(args.file)
    F = J.field
    signs = [Epsilon.PLUS, Epsilon.MINUS] if args.epsilon == "all" else [Epsilon.parse(args.epsilon)]
    division = is_weak_qja(J) and is_division(J)
    status = OK
    for eps in signs:
        space = derivation_space(J, eps)
        print("\n".join(_render_space(space, F, args.machine)))
        if division:
            same = inverse_compatible_space(J, eps) == space
            print(_kv(f"inverse_compatible[{eps}]", "equal" if same else "different"))
            if not same:
                status = FALSE
    if args.epsilon == "all":
        try:
            total = generalized_derivation_space(J)
        except AssertionError as exc:
            print(f"note: {exc}")
            return FALSE
        if F.p == 2:
            print("note: characteristic 2, D_+ = D_- = D")
        else:
            print("note: D = D_+ (+) D_- (direct sum)")
        print(f"generalized dim={total.dim}")
    return status


def cmd_moufang(args) -> int:
    from qjordan import moufang as mf

    J = _read(args.file)
    if not (is_weak_qja(J) and is_division(J)):
        print("input is not a weak quadratic Jordan division algebra", file=sys.stderr)
        return INVALID
    M = mf.build_moufang(J)
    status = OK
    print(_kv("points", M.n_points))
    sizes = sorted({len(U) for U in M.root_groups.values()})
    print(_kv("root_group_size", ",".join(str(s) for s in sizes)))
    axioms = mf.verify_moufang_axioms(M)
    print(_kv("moufang_axioms", "PASS" if axioms else "FAIL"))
    if not axioms:
        status = FALSE
    show_all = not (args.order or args.proper or args.recover)
    if args.order or args.proper or show_all:
        print(_kv("order", mf.little_projective_group_order(M)))
    if args.proper or show_all:
        print(_kv("proper", "yes" if mf.is_proper(M) else "no"))
    if args.recover:
        e = _parse_element(J, args.recover)
        if not e.any():
            raise InputError("e must be nonzero")
        report = mf.recover_H(M, e)
        for line in report.render():
            print(line)
        if not report.ok:
            status = FALSE
    return status


def cmd_search(args) -> int:
    from qjordan.search import SpaceTooLarge, classify_candidates

    if args.sample is not None and args.seed is None:
        raise InputError("--sample needs --seed")
    try:
        census = classify_candidates(
            args.p,
            args.n,
            sample=args.sample,
            seed=args.seed,
            workers=args.workers,
            check_extension=args.check_extension,
        )
    except SpaceTooLarge as exc:
        raise InputError(str(exc)) from exc
    sys.stdout.write(census.render(include_algebras=args.out is None))
    if args.check_extension:
        print(f"extension_mismatches={len(census.extension_mismatches)}")
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        for label, text in census.weak_not_strict:
            with open(os.path.join(args.out, f"candidate_{label}.qja"), "w") as fh:
                fh.write(text)
    if census.main_theorem_violations or census.extension_mismatches:
        return FALSE
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qjordan", description="Finite quadratic Jordan algebra workbench")
    parser.add_argument("--machine", action="store_true", help="key=value report lines")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("make", help="emit an example algebra file")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--field", nargs=2, type=int, metavar=("P", "M"))
    src.add_argument("--matrix", nargs=2, type=int, metavar=("P", "R"))
    src.add_argument("--from-linear", metavar="FILE")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_make)

    p = sub.add_parser("verify", help="check axioms and identities")
    p.add_argument("file")
    p.add_argument("--suite", choices=["weak", "strict", "lemmas", "division", "all"], default="all")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("isotope", help="emit the isotope at an invertible element")
    p.add_argument("file")
    p.add_argument("--element", required=True, help="space-separated coordinates, or 1 for the unit")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_isotope)

    p = sub.add_parser("extend", help="emit the scalar extension to F_{p^m}")
    p.add_argument("file")
    p.add_argument("--degree", type=int, default=2)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("derivations", help="solve for epsilon-derivations")
    p.add_argument("file")
    p.add_argument("--epsilon", choices=["plus", "minus", "all"], default="all")
    p.set_defaults(func=cmd_derivations)

    p = sub.add_parser("moufang", help="build and analyze the Moufang set")
    p.add_argument("file")
    p.add_argument("--order", action="store_true")
    p.add_argument("--proper", action="store_true")
    p.add_argument("--recover", metavar="E")
    p.set_defaults(func=cmd_moufang)

    p = sub.add_parser("search", help="census of normalized candidates")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sample", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--check-extension", action="store_true")
    p.add_argument("--out", help="directory for weak-but-not-strict algebra files")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("hua", help="check the Hua identity on a division algebra")
    p.add_argument("file")
    p.set_defaults(func=cmd_hua)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, BoundExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INVALID
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INVALID


if __name__ == "__main__":
    sys.exit(main())
