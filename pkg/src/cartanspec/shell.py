"""Command-line interface: problem files in, result documents out.

Problem files are JSON. Complex scalars are written as [re, im] pairs (a
bare number is accepted on input and read as a real). Basis indices are
1-based in files and only there. Brackets are listed sparsely as
[i, j, coefficient-vector] triples with i < j; the parser fills in the
antisymmetric half.

Exit codes: 0 = computation completed (a failed verification verdict is
still a completed computation), 1 = invalid input, 2 = numerical failure.
Errors are mirrored as one-line JSON objects on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from ._ser import (
    complex_to_pair,
    digest,
    pair_to_complex,
    vector_to_jsonable,
)
from .cartan import CartanDecomposition, cartan_decomposition
from .liealg import (
    LieAlgebra,
    from_bracket_list,
    is_nilpotent,
    subalgebra,
    validate,
)
from .numkit import (
    DEFAULT_MATCH_EPS,
    DEFAULT_RANK_EPS,
    InputError,
    NumericalFailure,
    Tolerance,
)
from .rep import DEFAULT_DIMENSION_CAP, Representation, validate_rep
from .spectra import (
    ESSENTIAL_KINDS,
    SLODKOWSKI_DELTA,
    SLODKOWSKI_PI,
    SPLIT,
    SPLIT_DELTA,
    SPLIT_PI,
    TAYLOR,
    SpectrumSet,
    cartan_essential,
    cartan_slodkowski,
    cartan_split,
    cartan_taylor,
)
from .verify import (
    FuzzDims,
    check_cartan_independence,
    check_duality,
    check_essential_empty,
    check_multiplication_formula,
    check_nilpotent_coincidence,
    check_projection,
    check_split_identity,
    check_tensor_formula,
    fuzz,
    report_to_jsonable,
)

TOOL_VERSION = "0.1.0"

SPECTRUM_KINDS = (
    TAYLOR,
    SLODKOWSKI_DELTA,
    SLODKOWSKI_PI,
    SPLIT,
    SPLIT_DELTA,
    SPLIT_PI,
) + ESSENTIAL_KINDS

THEOREM_SELECTORS = (
    "all",
    "duality",
    "split_identity",
    "projection",
    "cartan_independence",
    "nilpotent_coincidence",
    "tensor_product_formula",
    "multiplication_formula",
    "essential_trivial",
)


@dataclass(frozen=True, eq=False)
class Problem:
    algebra: LieAlgebra
    rep: Representation | None
    subalgebras: tuple[tuple[str, np.ndarray], ...]
    tolerance: Tolerance


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise InputError(message)


def _parse_scalar_vector(values, length: int, what: str) -> np.ndarray:
    _expect(isinstance(values, list), f"{what} must be a list")
    _expect(len(values) == length, f"{what} must have length {length}, got {len(values)}")
    return np.array([pair_to_complex(v) for v in values], dtype=complex)


def parse_problem(doc) -> Problem:
    """Build a problem from a decoded JSON document, checking shape only;
    mathematical validation is a separate step."""
    _expect(isinstance(doc, dict), "problem document must be a JSON object")
    _expect("algebra" in doc, "problem document needs an 'algebra' block")
    block = doc["algebra"]
    _expect(isinstance(block, dict), "'algebra' block must be an object")
    _expect("dim" in block, "'algebra' block needs 'dim'")
    n = block["dim"]
    _expect(isinstance(n, int) and n >= 1, "'dim' must be a positive integer")
    entries = []
    for row in block.get("brackets", []):
        _expect(
            isinstance(row, list) and len(row) == 3,
            "each bracket entry must be [i, j, coefficients]",
        )
        i, j, coeffs = row
        _expect(
            isinstance(i, int) and isinstance(j, int),
            "bracket indices must be integers",
        )
        _expect(1 <= i < j <= n, f"bracket indices must satisfy 1 <= i < j <= {n}")
        entries.append((i - 1, j - 1, _parse_scalar_vector(coeffs, n, "bracket coefficients")))
    algebra = from_bracket_list(n, entries)

    rep = None
    if "representation" in doc and doc["representation"] is not None:
        rblock = doc["representation"]
        _expect(isinstance(rblock, dict), "'representation' block must be an object")
        _expect("space_dim" in rblock, "'representation' block needs 'space_dim'")
        d = rblock["space_dim"]
        _expect(isinstance(d, int) and d >= 1, "'space_dim' must be a positive integer")
        matrices = rblock.get("matrices")
        _expect(isinstance(matrices, list), "'representation' block needs 'matrices'")
        _expect(
            len(matrices) == n,
            f"'matrices' must list one matrix per basis vector ({n}), got {len(matrices)}",
        )
        mats = np.zeros((n, d, d), dtype=complex)
        for idx, rows in enumerate(matrices):
            _expect(
                isinstance(rows, list) and len(rows) == d,
                f"matrix {idx + 1} must have {d} rows",
            )
            for a, row in enumerate(rows):
                mats[idx, a, :] = _parse_scalar_vector(row, d, f"matrix {idx + 1} row {a + 1}")
        rep = Representation(algebra, mats)

    subs = []
    for pos, sblock in enumerate(doc.get("subalgebras", [])):
        _expect(isinstance(sblock, dict), "each 'subalgebras' entry must be an object")
        name = sblock.get("name", f"E{pos + 1}")
        _expect(isinstance(name, str) and name, "subalgebra names must be nonempty strings")
        columns = sblock.get("columns")
        _expect(
            isinstance(columns, list) and columns,
            f"subalgebra {name!r} needs a nonempty 'columns' list",
        )
        basis = np.stack(
            [
                _parse_scalar_vector(col, n, f"subalgebra {name!r} column")
                for col in columns
            ],
            axis=1,
        )
        subs.append((name, basis))

    tol_block = doc.get("tolerance", {})
    _expect(isinstance(tol_block, dict), "'tolerance' block must be an object")
    tolerance = Tolerance(
        rank_eps=float(tol_block.get("rank_eps", DEFAULT_RANK_EPS)),
        match_eps=float(tol_block.get("match_eps", DEFAULT_MATCH_EPS)),
    )
    return Problem(algebra=algebra, rep=rep, subalgebras=tuple(subs), tolerance=tolerance)


def problem_to_jsonable(p: Problem) -> dict:
    n = p.algebra.dim
    brackets = []
    for i in range(n):
        for j in range(i + 1, n):
            coeffs = p.algebra.structure[i, j, :]
            if np.any(coeffs != 0):
                brackets.append([i + 1, j + 1, [complex_to_pair(z) for z in coeffs]])
    doc: dict = {"algebra": {"dim": n, "brackets": brackets}}
    if p.rep is not None:
        doc["representation"] = {
            "space_dim": p.rep.space_dim,
            "matrices": [
                [[complex_to_pair(z) for z in row] for row in m] for m in p.rep.mats
            ],
        }
    if p.subalgebras:
        doc["subalgebras"] = [
            {
                "name": name,
                "columns": [
                    [complex_to_pair(z) for z in basis[:, c]]
                    for c in range(basis.shape[1])
                ],
            }
            for name, basis in p.subalgebras
        ]
    doc["tolerance"] = {
        "rank_eps": p.tolerance.rank_eps,
        "match_eps": p.tolerance.match_eps,
    }
    return doc


def problem_digest(p: Problem) -> str:
    return digest(problem_to_jsonable(p))


def load_problem(path: str) -> Problem:
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise InputError(f"cannot read problem file {path!r}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"problem file {path!r} is not valid JSON: {exc}") from exc
    return parse_problem(doc)


def _override_tolerance(p: Problem, args) -> Tolerance:
    rank_eps = p.tolerance.rank_eps if args.rank_eps is None else args.rank_eps
    match_eps = p.tolerance.match_eps if args.match_eps is None else args.match_eps
    return Tolerance(rank_eps=rank_eps, match_eps=match_eps)


def _require_rep(p: Problem) -> Representation:
    if p.rep is None:
        raise InputError("this command needs a 'representation' block in the problem file")
    return p.rep


def spectrum_to_jsonable(s: SpectrumSet) -> dict:
    return {
        "kind": s.kind,
        "k": s.k,
        "side": s.side,
        "points": [
            {
                "coords": vector_to_jsonable(point.character.coords),
                "multiplicity": point.multiplicity,
            }
            for point in s.points
        ],
        "reason": s.reason,
    }


def decomposition_to_jsonable(cd: CartanDecomposition) -> dict:
    return {
        "h_dim": cd.h.dim,
        "h_basis_columns": [
            vector_to_jsonable(cd.h.basis[:, j]) for j in range(cd.h.dim)
        ],
        "h_star_dim": cd.h_star.dim,
        "roots": [
            {
                "alpha": vector_to_jsonable(root.alpha),
                "space_dim": root.space.dim,
                "space_columns": [
                    vector_to_jsonable(root.space.basis[:, j])
                    for j in range(root.space.dim)
                ],
            }
            for root in cd.roots
        ],
    }


def _document(command: str, p: Problem | None, tol: Tolerance, **fields) -> dict:
    doc = {
        "tool": {"name": "cartanspec", "version": TOOL_VERSION},
        "command": command,
        "tolerance": {"rank_eps": tol.rank_eps, "match_eps": tol.match_eps},
    }
    if p is not None:
        doc["input_digest"] = problem_digest(p)
    doc.update(fields)
    return doc


def _emit(doc: dict) -> None:
    sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True, allow_nan=False) + "\n")


def _emit_error(code: int, kind: str, message: str, diagnostics: dict | None = None) -> None:
    payload: dict = {"error": {"code": code, "type": kind, "message": message}}
    if diagnostics:
        payload["error"]["diagnostics"] = diagnostics
    sys.stderr.write(json.dumps(payload, sort_keys=True, allow_nan=False) + "\n")


def cmd_validate(args) -> int:
    p = load_problem(args.problem)
    tol = _override_tolerance(p, args)
    alg_report = validate(p.algebra, tol)
    result: dict = {
        "algebra": {
            "antisymmetry_residual": alg_report.antisymmetry_residual,
            "jacobi_residual": alg_report.jacobi_residual,
            "antisymmetry_ok": alg_report.antisymmetry_ok,
            "jacobi_ok": alg_report.jacobi_ok,
            "solvable": alg_report.solvable,
            "passed": alg_report.passed,
        }
    }
    all_ok = alg_report.passed
    if p.rep is not None:
        rep_report = validate_rep(p.rep, tol)
        result["representation"] = {
            "homomorphism_residual": rep_report.homomorphism_residual,
            "threshold": rep_report.threshold,
            "passed": rep_report.passed,
        }
        all_ok = all_ok and rep_report.passed
    checked_subs = []
    for name, basis in p.subalgebras:
        try:
            subalgebra(p.algebra, basis, tol)
            checked_subs.append({"name": name, "closed": True})
        except InputError as exc:
            checked_subs.append({"name": name, "closed": False, "reason": str(exc)})
            all_ok = False
    if checked_subs:
        result["subalgebras"] = checked_subs
    result["passed"] = all_ok
    _emit(_document("validate", p, tol, result=result))
    if not all_ok:
        _emit_error(
            1,
            "invalid_input",
            "problem failed validation",
            diagnostics=result,
        )
        return 1
    return 0


def cmd_cartan(args) -> int:
    p = load_problem(args.problem)
    tol = _override_tolerance(p, args)
    cd = cartan_decomposition(p.algebra, args.seed, tol)
    _emit(
        _document(
            "cartan",
            p,
            tol,
            seed=args.seed,
            result=decomposition_to_jsonable(cd),
        )
    )
    return 0


def _normalize_kind(kind: str, side: str | None) -> str:
    if side is not None and kind in ("slodkowski", "split", "essential_slodkowski", "essential_split"):
        return f"{kind}_{side}"
    return kind


def cmd_spectrum(args) -> int:
    p = load_problem(args.problem)
    tol = _override_tolerance(p, args)
    r = _require_rep(p)
    kind = _normalize_kind(args.kind, args.side)
    if kind not in SPECTRUM_KINDS:
        raise InputError(
            f"unknown spectrum kind {kind!r}; expected one of {', '.join(SPECTRUM_KINDS)}"
        )
    cd = cartan_decomposition(p.algebra, args.seed, tol)
    if kind == TAYLOR:
        _expect(args.k is None, "kind 'taylor' takes no --k")
        out = cartan_taylor(r, cd, tol)
    elif kind in (SLODKOWSKI_DELTA, SLODKOWSKI_PI):
        _expect(args.k is not None, f"kind {kind!r} needs --k")
        out = cartan_slodkowski(r, cd, args.k, kind.rsplit("_", 1)[1], tol)
    elif kind == SPLIT:
        _expect(args.k is None, "kind 'split' takes no --k")
        out = cartan_split(r, cd, tol=tol)
    elif kind in (SPLIT_DELTA, SPLIT_PI):
        _expect(args.k is not None, f"kind {kind!r} needs --k")
        out = cartan_split(r, cd, k=args.k, side=kind.rsplit("_", 1)[1], tol=tol)
    else:
        out = cartan_essential(r, cd, kind=kind, k=args.k, side=args.side, tol=tol)
    _emit(
        _document(
            "spectrum",
            p,
            tol,
            seed=args.seed,
            kind=kind,
            k=args.k,
            side=out.side,
            result=spectrum_to_jsonable(out),
        )
    )
    return 0


def _parse_seeds(text: str) -> tuple[int, ...]:
    try:
        seeds = tuple(int(part) for part in text.split(",") if part.strip() != "")
    except ValueError as exc:
        raise InputError(f"--seeds must be comma-separated integers, got {text!r}") from exc
    if not seeds:
        raise InputError("--seeds must name at least one seed")
    return seeds


def cmd_verify(args) -> int:
    p = load_problem(args.problem)
    tol = _override_tolerance(p, args)
    r = _require_rep(p)
    seeds = _parse_seeds(args.seeds)
    seed = seeds[0]
    selector = args.theorem
    other = None
    if args.with_problem is not None:
        other_problem = load_problem(args.with_problem)
        other = _require_rep(other_problem)

    reports = []
    if selector in ("all", "duality"):
        reports.append(check_duality(r, k=args.k, seed=seed, tol=tol))
    if selector in ("all", "split_identity"):
        if r.space_dim * r.space_dim <= DEFAULT_DIMENSION_CAP:
            reports.append(check_split_identity(r, k=args.k, seed=seed, tol=tol))
        elif selector == "split_identity":
            raise InputError(
                f"split identity needs space_dim^2 <= {DEFAULT_DIMENSION_CAP}"
            )
    if selector in ("all", "projection"):
        if selector == "projection" and not p.subalgebras:
            raise InputError("projection check needs 'subalgebras' blocks in the file")
        for name, basis in p.subalgebras:
            sub = subalgebra(p.algebra, basis, tol)
            reports.append(check_projection(r, sub, seed=seed, tol=tol))
    if selector in ("all", "cartan_independence"):
        use = seeds if len(seeds) >= 2 else (seeds[0], seeds[0] + 1)
        reports.append(check_cartan_independence(r, seeds=use, tol=tol))
    if selector in ("all", "nilpotent_coincidence"):
        if is_nilpotent(p.algebra, tol):
            reports.append(check_nilpotent_coincidence(r, seed=seed, tol=tol))
        elif selector == "nilpotent_coincidence":
            raise InputError("nilpotent coincidence check needs a nilpotent algebra")
    if selector in ("all", "essential_trivial"):
        reports.append(check_essential_empty(r, seed=seed, tol=tol))
    if selector == "tensor_product_formula" or (selector == "all" and other is not None):
        if other is None:
            raise InputError("tensor formula check needs --with SECOND_PROBLEM")
        reports.append(check_tensor_formula(r, other, k=args.k, seed=seed, tol=tol))
    if selector == "multiplication_formula" or (selector == "all" and other is not None):
        if other is None:
            raise InputError("multiplication formula check needs --with SECOND_PROBLEM")
        reports.append(check_multiplication_formula(r, other, k=args.k, seed=seed, tol=tol))

    all_passed = all(report.passed for report in reports)
    _emit(
        _document(
            "verify",
            p,
            tol,
            seed=seed,
            seeds=list(seeds),
            theorem=selector,
            result={
                "reports": [report_to_jsonable(rep) for rep in reports],
                "all_passed": all_passed,
            },
        )
    )
    return 0


def cmd_fuzz(args) -> int:
    tol = Tolerance(
        rank_eps=DEFAULT_RANK_EPS if args.rank_eps is None else args.rank_eps,
        match_eps=DEFAULT_MATCH_EPS if args.match_eps is None else args.match_eps,
    )
    dims = FuzzDims(
        max_algebra_dim=args.max_algebra_dim,
        max_space_dim=args.max_space_dim,
    )
    reports = fuzz(args.seed, args.count, dims, tol)
    counts = {"checked": 0, "rejected": 0, "error": 0}
    for report in reports:
        counts[report.status] = counts.get(report.status, 0) + 1
    all_passed = all(r.passed for r in reports if r.status == "checked")
    _emit(
        _document(
            "fuzz",
            None,
            tol,
            seed=args.seed,
            count=args.count,
            dims={
                "max_algebra_dim": dims.max_algebra_dim,
                "max_space_dim": dims.max_space_dim,
            },
            result={
                "reports": [report_to_jsonable(r) for r in reports],
                "counts": counts,
                "all_passed": all_passed,
            },
        )
    )
    return 0


def _add_tolerance_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--rank-eps", type=float, default=None, dest="rank_eps")
    sub.add_argument("--match-eps", type=float, default=None, dest="match_eps")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cartanspec",
        description="Joint spectra of solvable Lie algebra representations.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser("validate", help="check a problem file")
    sub.add_argument("problem")
    _add_tolerance_flags(sub)
    sub.set_defaults(func=cmd_validate)

    sub = commands.add_parser("cartan", help="Cartan subalgebra and root spaces")
    sub.add_argument("problem")
    sub.add_argument("--seed", type=int, default=0)
    _add_tolerance_flags(sub)
    sub.set_defaults(func=cmd_cartan)

    sub = commands.add_parser("spectrum", help="compute one spectrum")
    sub.add_argument("problem")
    sub.add_argument("--kind", default=TAYLOR)
    sub.add_argument("--k", type=int, default=None)
    sub.add_argument("--side", choices=["delta", "pi"], default=None)
    sub.add_argument("--seed", type=int, default=0)
    _add_tolerance_flags(sub)
    sub.set_defaults(func=cmd_spectrum)

    sub = commands.add_parser("verify", help="run identity checkers")
    sub.add_argument("problem")
    sub.add_argument("--theorem", choices=THEOREM_SELECTORS, default="all")
    sub.add_argument("--seeds", default="0,1,2")
    sub.add_argument("--k", type=int, default=None)
    sub.add_argument("--with", dest="with_problem", default=None, metavar="PROBLEM2")
    _add_tolerance_flags(sub)
    sub.set_defaults(func=cmd_verify)

    sub = commands.add_parser("fuzz", help="randomized identity sweep")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--count", type=int, default=10)
    sub.add_argument("--max-algebra-dim", type=int, default=3, dest="max_algebra_dim")
    sub.add_argument("--max-space-dim", type=int, default=5, dest="max_space_dim")
    _add_tolerance_flags(sub)
    sub.set_defaults(func=cmd_fuzz)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        _emit_error(1, "invalid_input", str(exc))
        return 1
    except NumericalFailure as exc:
        _emit_error(2, "numerical_failure", str(exc))
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
