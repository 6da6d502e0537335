"""Command-line front end.

Commands: jordan, fitting, cen, cen0, lcen, contain, lambda, dims, pi-check,
verify.  Exit codes: 0 success, 1 verification/math failure, 2 usage or
parse error.  JSON output is schema-versioned, key-sorted and free of
wall-clock data, so identical inputs and seed give byte-identical bytes.
"""

import argparse
import json
import sys
from pathlib import Path

from .fields import FieldError, PrimeField, field_from_name
from .linalg import ExactMatrix, ParseError, ShapeError, format_matrix, parse_matrix
from .jordan import (
    NotNilpotentError,
    fitting_decomposition,
    jordan_base,
    verify_fitting,
    verify_jordan_base,
)
from .centralizer import (
    SizeBoundError,
    cen0_basis,
    cen_basis,
    cen0_containment,
    check_dim_formula,
    double_zero_centralizer_check,
    lcen_basis,
    matrix_span,
)
from .models import (
    BlockProfile,
    MembershipError,
    TruncPolyMatrix,
    centralizer_residue,
    induced_endomorphism,
    membership_offender,
    model_dims,
    parse_poly_matrix,
    zero_level_residue,
    CEN_MODEL,
)
from .identities import (
    BudgetExceededError,
    DEFAULT_BUDGET,
    NCPoly,
    check_quotient_product_identity,
    check_zero_level_product_identity,
    default_quotient_factor,
    default_zero_level_factor,
    library,
)
from . import verify as verify_mod

SCHEMA = 1

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2


class _CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _entry_json(field, x):
    return x if isinstance(field, PrimeField) else str(x)


def _matrix_json(M: ExactMatrix) -> list:
    return [[_entry_json(M.field, x) for x in row] for row in M.rows]


def _load_matrix(path: str) -> ExactMatrix:
    try:
        return parse_matrix(Path(path).read_text())
    except OSError as exc:
        raise _CliError(f"cannot read {path}: {exc}", EXIT_USAGE) from exc
    except ParseError as exc:
        raise _CliError(f"{path}: {exc}", EXIT_USAGE) from exc


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for line in text_lines:
            print(line)


def cmd_jordan(args) -> int:
    A = _load_matrix(args.matrix)
    try:
        jb = jordan_base(A)
    except NotNilpotentError as exc:
        print(f"not nilpotent: rank stabilizes at {exc.stable_rank} "
              f"(power {exc.stable_power})", file=sys.stderr)
        return EXIT_VERIFICATION
    verified = verify_jordan_base(A, jb)
    payload = {"schema": SCHEMA, "command": "jordan", "verified": verified}
    payload.update(jb.to_json_dict(lambda x: _entry_json(A.field, x)))
    lines = [
        f"block sizes: {list(jb.block_sizes)}",
        f"nilpotency index: {jb.nilpotency_index}",
        f"verified: {verified}",
        "base change:",
        format_matrix(jb.base_change).rstrip(),
    ]
    _emit(args, payload, lines)
    return EXIT_OK if verified else EXIT_VERIFICATION


def cmd_fitting(args) -> int:
    A = _load_matrix(args.matrix)
    fd = fitting_decomposition(A)
    verified = verify_fitting(A, fd)
    payload = {
        "schema": SCHEMA,
        "command": "fitting",
        "t": fd.t,
        "dim_V": fd.V.dim,
        "dim_W": fd.W.dim,
        "dim_W1": fd.W1.dim,
        "dim_W2": fd.W2.dim,
        "nilpotent_part": _matrix_json(fd.nilpotent_part),
        "verified": verified,
    }
    lines = [
        f"t: {fd.t}",
        f"dim V (invertible part): {fd.V.dim}",
        f"dim W (nilpotent part):  {fd.W.dim} = {fd.W1.dim} + {fd.W2.dim}",
        f"verified: {verified}",
    ]
    _emit(args, payload, lines)
    return EXIT_OK if verified else EXIT_VERIFICATION


def _basis_command(args, name: str) -> int:
    A = _load_matrix(args.matrix)
    try:
        if name == "cen":
            basis = cen_basis(A, args.max_dim)
            extra = {}
            lines = [f"dim Cen: {len(basis)}"]
        elif name == "cen0":
            basis = cen0_basis(A, args.max_dim)
            formula = check_dim_formula(A, args.max_dim)
            extra = {
                "kernel_dim_squared": formula.rhs,
                "formula_ok": formula.ok,
            }
            lines = [
                f"dim Cen0: {formula.lhs}",
                f"(dim ker)^2: {formula.rhs}",
                f"ok: {formula.ok}",
            ]
        else:
            basis = lcen_basis(A, args.max_dim)
            dim_cen = len(cen_basis(A, args.max_dim))
            dim_cen0 = len(cen0_basis(A, args.max_dim))
            ok = len(basis) == dim_cen - dim_cen0
            extra = {"dim_cen": dim_cen, "dim_cen0": dim_cen0, "difference_ok": ok}
            lines = [
                f"dim LCen: {len(basis)}",
                f"dim Cen - dim Cen0: {dim_cen} - {dim_cen0} = {dim_cen - dim_cen0}",
                f"ok: {ok}",
            ]
    except SizeBoundError as exc:
        raise _CliError(str(exc), EXIT_USAGE) from exc
    payload = {"schema": SCHEMA, "command": name, "dim": len(basis), **extra}
    if args.basis:
        payload["basis"] = [_matrix_json(B) for B in basis]
        for B in basis:
            lines.append(format_matrix(B).rstrip())
            lines.append("")
    _emit(args, payload, lines)
    failed = extra.get("formula_ok") is False or extra.get("difference_ok") is False
    return EXIT_VERIFICATION if failed else EXIT_OK


def cmd_contain(args) -> int:
    A = _load_matrix(args.matrix_a)
    B = _load_matrix(args.matrix_b)
    try:
        pair = cen0_containment(A, B, args.max_dim)
        rep = double_zero_centralizer_check(A, B, args.max_dim)
    except (ShapeError, SizeBoundError) as exc:
        raise _CliError(str(exc), EXIT_USAGE) from exc
    agreement = pair.agree and rep.equivalent
    payload = {
        "schema": SCHEMA,
        "command": "contain",
        "direct": pair.direct,
        "kernel_image_criterion": pair.criterion,
        "agreement": agreement,
        **rep.to_json_dict(),
    }
    lines = [
        f"direct containment:       {pair.direct}",
        f"kernel/image criterion:   {pair.criterion}",
        f"cond1 (direct):           {rep.cond1}",
        f"cond2 (kernels + transposed): {rep.cond2}",
        f"cond3 (images + transposed):  {rep.cond3}",
        f"equivalent: {rep.equivalent}",
    ]
    _emit(args, payload, lines)
    return EXIT_OK if agreement else EXIT_VERIFICATION


def cmd_lambda(args) -> int:
    default_field = field_from_name(args.field) if args.field else None
    try:
        profile, entries = parse_poly_matrix(Path(args.polymatrix).read_text(), default_field)
    except OSError as exc:
        raise _CliError(f"cannot read {args.polymatrix}: {exc}", EXIT_USAGE) from exc
    except ParseError as exc:
        raise _CliError(f"{args.polymatrix}: {exc}", EXIT_USAGE) from exc
    offender = membership_offender(profile, entries, CEN_MODEL)
    if offender is not None:
        raise _CliError(
            f"entry {offender} violates the centralizer-model pattern", EXIT_USAGE
        )
    P = TruncPolyMatrix.from_entries(profile, entries)
    base = profile.canonical_base()
    M = induced_endomorphism(P, base)
    A = profile.canonical_nilpotent()
    commutes = (M @ A) == (A @ M)
    payload = {
        "schema": SCHEMA,
        "command": "lambda",
        "profile": list(profile.sizes),
        "matrix": _matrix_json(M),
        "commutes": commutes,
    }
    lines = [format_matrix(M).rstrip(), f"commutes with canonical nilpotent: {commutes}"]
    _emit(args, payload, lines)
    return EXIT_OK if commutes else EXIT_VERIFICATION


def cmd_dims(args) -> int:
    field = field_from_name(args.field) if args.field else field_from_name("Q")
    try:
        profile = BlockProfile(tuple(args.sizes), field)
    except ValueError as exc:
        raise _CliError(str(exc), EXIT_USAGE) from exc
    dims = model_dims(profile)
    w = zero_level_residue(profile)
    u = centralizer_residue(profile)
    payload = {
        "schema": SCHEMA,
        "command": "dims",
        "profile": list(profile.sizes),
        "cen_model_dim": dims.cen_model_dim,
        "zero_level_dim": dims.zero_level_dim,
        "quotient_dim": dims.quotient_dim,
        "zero_level_residue": {"dim": w.dim, "positions": [list(p) for p in w.positions]},
        "centralizer_residue": {"dim": u.dim, "positions": [list(p) for p in u.positions]},
    }
    lines = [
        f"profile: {list(profile.sizes)}",
        f"dim (centralizer model / truncation): {dims.cen_model_dim}",
        f"dim (zero-level model / truncation):  {dims.zero_level_dim}",
        f"dim (centralizer / zero-level):       {dims.quotient_dim}",
        f"zero-level residue dim {w.dim}, positions {list(w.positions)}",
        f"centralizer residue dim {u.dim}, positions {list(u.positions)}",
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def _resolve_factor(token: str) -> NCPoly:
    lib = library()
    if token in lib:
        return lib[token]
    path = Path(token)
    if path.exists():
        return NCPoly.parse(path.read_text())
    try:
        return NCPoly.parse(token)
    except ValueError as exc:
        raise _CliError(
            f"unknown identity {token!r} (library: {', '.join(sorted(lib))}; "
            "or give polynomial text / a file)",
            EXIT_USAGE,
        ) from exc


def cmd_pi_check(args) -> int:
    field = field_from_name(args.field or "Fp2")
    if args.matrix:
        A = _load_matrix(args.matrix)
        from .jordan import rank_partition

        try:
            sizes = tuple(rank_partition(A))
        except NotNilpotentError as exc:
            raise _CliError(str(exc), EXIT_USAGE) from exc
        profile = BlockProfile(sizes, A.field)
    elif args.profile:
        try:
            profile = BlockProfile(tuple(args.profile), field)
        except ValueError as exc:
            raise _CliError(str(exc), EXIT_USAGE) from exc
        A = profile.canonical_nilpotent()
    else:
        raise _CliError("pi-check needs --profile or --matrix", EXIT_USAGE)
    n = profile.n
    reports = []
    targets = ["cen0", "quotient"] if args.target == "both" else [args.target]
    try:
        for target in targets:
            if target == "quotient" and n < 2:
                if args.target == "quotient":
                    raise _CliError(
                        "quotient check is ill-posed at nilpotency index 1 "
                        "(empty product)", EXIT_USAGE,
                    )
                continue
            if args.factors:
                factors = [_resolve_factor(t) for t in args.factors]
            elif target == "cen0":
                factors = [default_zero_level_factor(profile)] * n
            else:
                factors = [default_quotient_factor(profile)] * (n - 1)
            if target == "cen0":
                rep = check_zero_level_product_identity(
                    A, factors, budget=args.budget, max_dim=args.max_dim
                )
            else:
                rep = check_quotient_product_identity(A, factors, budget=args.budget)
            reports.append(rep)
    except BudgetExceededError as exc:
        raise _CliError(str(exc), EXIT_USAGE) from exc
    except ValueError as exc:
        raise _CliError(str(exc), EXIT_USAGE) from exc
    ok = all(r.ok for r in reports)
    payload = {
        "schema": SCHEMA,
        "command": "pi-check",
        "ok": ok,
        "reports": [r.to_json_dict() for r in reports],
    }
    lines = []
    for r in reports:
        lines.append(
            f"target {r.target}: factors verified: {r.factors_ok}; "
            f"product vanishes: {r.product_vanishes}; target dim {r.target_dim}"
        )
        if r.witness:
            lines.append(f"  witness: {r.witness}")
    lines.append(f"ok: {ok}")
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_VERIFICATION


def cmd_verify(args) -> int:
    names = args.suite or None
    fields = tuple(args.field.split(",")) if args.field else None
    try:
        results = verify_mod.run_suites(
            names,
            seed=args.seed,
            trials=args.trials,
            max_dim=args.max_dim_override,
            fields=fields,
            budget=args.budget,
        )
    except (ValueError, FieldError) as exc:
        raise _CliError(str(exc), EXIT_USAGE) from exc
    report = verify_mod.report_dict(results, args.seed)
    if args.json:
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        for r in results:
            status = "PASS" if r.ok else "FAIL"
            print(f"{status} {r.name}: {r.passed}/{r.total}")
        print("ok" if report["ok"] else "FAILED")
    if not report["ok"]:
        outdir = Path(args.witness_dir)
        outdir.mkdir(parents=True, exist_ok=True)
        for r in results:
            if r.witnesses:
                path = outdir / f"{r.name}.json"
                path.write_text(json.dumps(r.witnesses, sort_keys=True, indent=2))
                print(f"witnesses written to {path}", file=sys.stderr)
        return EXIT_VERIFICATION
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cenalg",
        description="Exact centralizer algebra computations and verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_max_dim=True):
        p.add_argument("--json", action="store_true", help="emit JSON")
        if with_max_dim:
            p.add_argument(
                "--max-dim", type=int, default=12,
                help="size bound for the n^2-unknown centralizer systems (default 12)",
            )

    p = sub.add_parser("jordan", help="chain basis of a nilpotent matrix")
    p.add_argument("matrix")
    common(p, with_max_dim=False)
    p.set_defaults(fn=cmd_jordan)

    p = sub.add_parser("fitting", help="invertible/nilpotent splitting of a matrix")
    p.add_argument("matrix")
    common(p, with_max_dim=False)
    p.set_defaults(fn=cmd_fitting)

    for name, helptext in (
        ("cen", "basis of the centralizer"),
        ("cen0", "basis of the two-sided annihilator inside the centralizer"),
        ("lcen", "basis of the span of achievable levels"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("matrix")
        p.add_argument("--basis", action="store_true", help="print basis matrices")
        common(p)
        p.set_defaults(fn=lambda a, _n=name: _basis_command(a, _n))

    p = sub.add_parser("contain", help="annihilator containment reports for a pair")
    p.add_argument("matrix_a")
    p.add_argument("matrix_b")
    common(p)
    p.set_defaults(fn=cmd_contain)

    p = sub.add_parser("lambda", help="endomorphism induced by a polynomial matrix")
    p.add_argument("polymatrix")
    p.add_argument("--field", help="field override when the file has no field line")
    common(p, with_max_dim=False)
    p.set_defaults(fn=cmd_lambda)

    p = sub.add_parser("dims", help="model dimensions for a block profile")
    p.add_argument("sizes", type=int, nargs="+")
    p.add_argument("--field", help="field for the profile (default Q)")
    common(p, with_max_dim=False)
    p.set_defaults(fn=cmd_dims)

    p = sub.add_parser("pi-check", help="product identity checks for a profile or matrix")
    p.add_argument("--profile", type=int, nargs="+", help="block sizes")
    p.add_argument("--matrix", help="nilpotent matrix file instead of --profile")
    p.add_argument("--field", help="field for --profile (default Fp2)")
    p.add_argument("--target", choices=["cen0", "quotient", "both"], default="both")
    p.add_argument(
        "--factors", nargs="+",
        help="factor identities by library name, text, or file (default: shipped)",
    )
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    common(p)
    p.set_defaults(fn=cmd_pi_check)

    p = sub.add_parser("verify", help="run the seeded verification suites")
    p.add_argument("--suite", action="append", help="suite name (repeatable; default all)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=None, help="override per-case trial counts")
    p.add_argument(
        "--max-dim", dest="max_dim_override", type=int, default=None,
        help="override the maximum matrix size / profile total",
    )
    p.add_argument("--field", help="comma-separated field overrides, e.g. Fp2,Q")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--witness-dir", default="witnesses")
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (ParseError, FieldError, ShapeError, MembershipError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
