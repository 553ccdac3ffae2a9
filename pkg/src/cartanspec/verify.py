"""Mechanical verification of the spectral identities, plus the fuzz
generator that feeds them.

Each checker computes both sides of one identity through independent code
paths and reports the Hausdorff distance between the resulting point sets.
The fuzz generator builds solvable algebras by construction (an abelian
algebra acting on an abelian ideal through commuting triangular matrices,
hidden behind an integer unimodular change of basis), so every generated
instance has exactly representable integer weights.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._ser import digest, matrix_to_jsonable, vector_to_jsonable
from .cartan import (
    cartan_decomposition,
    direct_sum_decomposition,
    opposite_decomposition,
    whole_algebra_decomposition,
)
from .liealg import (
    LieAlgebra,
    SubalgebraBasis,
    is_nilpotent,
    subalgebra,
    validate,
)
from .numkit import DEFAULT_TOL, InputError, Tolerance
from .rep import (
    Representation,
    adjoint_rep,
    multiplication_rep,
    restrict,
    tensor_rep,
    validate_rep,
)
from .spectra import (
    ESSENTIAL_KINDS,
    FINITE_DIM_EMPTY_REASON,
    SpectrumFamily,
    cartan_essential,
    hausdorff_distance,
    spectrum_by_common_eigenvectors,
)

SPLIT_CAP = 64


@dataclass(frozen=True)
class LabeledSet:
    label: str
    points: tuple


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one identity check.

    ``status`` is "checked" for a completed comparison, "rejected" when the
    inputs failed validation (not an identity failure).  ``passed`` is true
    exactly when the worst distance is at or below match_eps.
    """

    theorem_id: str
    inputs_digest: str
    lhs: tuple[LabeledSet, ...]
    rhs: tuple[LabeledSet, ...]
    distance: float
    passed: bool
    seed: int | None = None
    status: str = "checked"
    detail: str = ""


def _instance_digest(r: Representation, extra: dict | None = None) -> str:
    payload = {
        "structure": matrix_to_jsonable(
            r.algebra.structure.reshape(r.algebra.dim, -1)
        )
        if r.algebra.dim
        else [],
        "mats": [matrix_to_jsonable(m) for m in r.mats],
    }
    if extra:
        payload.update(extra)
    return digest(payload)


def _report(
    theorem_id: str,
    r: Representation,
    comparisons: list[tuple[str, list, list]],
    tol: Tolerance,
    seed: int | None,
    extra_digest: dict | None = None,
    extra_passed: bool = True,
    detail: str = "",
) -> CheckReport:
    lhs = []
    rhs = []
    distance = 0.0
    for label, a, b in comparisons:
        lhs.append(LabeledSet(label=label, points=tuple(a)))
        rhs.append(LabeledSet(label=label, points=tuple(b)))
        distance = max(distance, hausdorff_distance(a, b))
    passed = bool(distance <= tol.match_eps) and extra_passed
    return CheckReport(
        theorem_id=theorem_id,
        inputs_digest=_instance_digest(r, extra_digest),
        lhs=tuple(lhs),
        rhs=tuple(rhs),
        distance=distance,
        passed=passed,
        seed=seed,
        detail=detail,
    )


def check_duality(
    r: Representation,
    k: int | None = None,
    seed: int = 0,
    tol: Tolerance = DEFAULT_TOL,
) -> CheckReport:
    """Taylor and Slodkowski spectra of the dual module mirror the original:
    the pi side of rho equals the delta side of its adjoint and conversely,
    while the Taylor sets coincide."""
    cd = cartan_decomposition(r.algebra, seed, tol)
    dual = adjoint_rep(r)
    cd_op = opposite_decomposition(cd)
    fam = SpectrumFamily(r, cd, tol)
    fam_dual = SpectrumFamily(dual, cd_op, tol)
    levels = range(r.algebra.dim + 1) if k is None else [k]
    comparisons = [("taylor", fam.taylor().coords(), fam_dual.taylor().coords())]
    for level in levels:
        comparisons.append(
            (
                f"pi_k{level}_vs_dual_delta_k{level}",
                fam.slodkowski(level, "pi").coords(),
                fam_dual.slodkowski(level, "delta").coords(),
            )
        )
        comparisons.append(
            (
                f"delta_k{level}_vs_dual_pi_k{level}",
                fam.slodkowski(level, "delta").coords(),
                fam_dual.slodkowski(level, "pi").coords(),
            )
        )
    return _report("duality", r, comparisons, tol, seed)


def check_split_identity(
    r: Representation,
    k: int | None = None,
    seed: int = 0,
    tol: Tolerance = DEFAULT_TOL,
    cap: int = SPLIT_CAP,
) -> CheckReport:
    """Split spectra computed through one-sided multiplications agree with
    the direct delta/pi spectra of the module itself."""
    from .rep import left_mult_rep, right_mult_rep

    cd = cartan_decomposition(r.algebra, seed, tol)
    fam = SpectrumFamily(r, cd, tol)
    fam_left = SpectrumFamily(left_mult_rep(r, cap), cd, tol)
    fam_right = SpectrumFamily(right_mult_rep(r, cap), opposite_decomposition(cd), tol)
    levels = range(r.algebra.dim + 1) if k is None else [k]
    comparisons = [
        ("split_taylor_left", fam.taylor().coords(), fam_left.taylor().coords()),
        ("split_taylor_right", fam.taylor().coords(), fam_right.taylor().coords()),
    ]
    for level in levels:
        comparisons.append(
            (
                f"split_delta_k{level}",
                fam.slodkowski(level, "delta").coords(),
                fam_left.slodkowski(level, "delta").coords(),
            )
        )
        comparisons.append(
            (
                f"split_pi_k{level}",
                fam.slodkowski(level, "pi").coords(),
                fam_right.slodkowski(level, "delta").coords(),
            )
        )
    return _report("split_identity", r, comparisons, tol, seed)


def _project(points: list[np.ndarray], basis: np.ndarray) -> list[np.ndarray]:
    return [basis.T @ f for f in points]


def check_projection(
    r: Representation,
    sub: SubalgebraBasis,
    seed: int = 0,
    tol: Tolerance = DEFAULT_TOL,
    cap: int = SPLIT_CAP,
) -> CheckReport:
    """Restriction of functionals maps every spectrum of the module onto the
    corresponding spectrum of the restricted module."""
    cd = cartan_decomposition(r.algebra, seed, tol)
    restricted = restrict(r, sub, tol)
    cd_sub = cartan_decomposition(restricted.algebra, seed, tol)
    fam = SpectrumFamily(r, cd, tol)
    fam_sub = SpectrumFamily(restricted, cd_sub, tol)
    comparisons = [
        (
            "taylor",
            _project(fam.taylor().coords(), sub.basis),
            fam_sub.taylor().coords(),
        )
    ]
    m = restricted.algebra.dim
    for level in range(r.algebra.dim + 1):
        for side in ("delta", "pi"):
            comparisons.append(
                (
                    f"{side}_k{level}",
                    _project(fam.slodkowski(level, side).coords(), sub.basis),
                    fam_sub.slodkowski(min(level, m), side).coords(),
                )
            )
    if r.space_dim * r.space_dim <= cap:
        from .rep import left_mult_rep

        fam_split = SpectrumFamily(left_mult_rep(r, cap), cd, tol)
        fam_sub_split = SpectrumFamily(left_mult_rep(restricted, cap), cd_sub, tol)
        comparisons.append(
            (
                "split",
                _project(fam_split.taylor().coords(), sub.basis),
                fam_sub_split.taylor().coords(),
            )
        )
    return _report("projection", r, comparisons, tol, seed)


def check_cartan_independence(
    r: Representation,
    seeds: tuple[int, ...] = (0, 1, 2),
    tol: Tolerance = DEFAULT_TOL,
    cap: int = SPLIT_CAP,
) -> CheckReport:
    """Spectra computed through Cartan subalgebras found from different random
    seeds coincide as point sets."""
    if len(seeds) < 2:
        raise InputError("independence check needs at least two seeds")
    families = []
    for s in seeds:
        cd = cartan_decomposition(r.algebra, s, tol)
        families.append(SpectrumFamily(r, cd, tol))
    base = families[0]
    comparisons = []
    for i, fam in enumerate(families[1:], start=1):
        comparisons.append(
            (
                f"taylor_seed{seeds[0]}_vs_seed{seeds[i]}",
                base.taylor().coords(),
                fam.taylor().coords(),
            )
        )
        for side in ("delta", "pi"):
            for level in range(r.algebra.dim + 1):
                comparisons.append(
                    (
                        f"{side}_k{level}_seed{seeds[0]}_vs_seed{seeds[i]}",
                        base.slodkowski(level, side).coords(),
                        fam.slodkowski(level, side).coords(),
                    )
                )
    return _report("cartan_independence", r, comparisons, tol, seeds[0])


def check_nilpotent_coincidence(
    r: Representation,
    seed: int = 0,
    tol: Tolerance = DEFAULT_TOL,
) -> CheckReport:
    """For a nilpotent algebra the searched Cartan subalgebra is the whole
    algebra, so spectra through the search and through the identity basis
    coincide."""
    if not is_nilpotent(r.algebra, tol):
        raise InputError("nilpotent coincidence check needs a nilpotent algebra")
    cd_found = cartan_decomposition(r.algebra, seed, tol)
    cd_whole = whole_algebra_decomposition(r.algebra, tol)
    fam_found = SpectrumFamily(r, cd_found, tol)
    fam_whole = SpectrumFamily(r, cd_whole, tol)
    comparisons = [("taylor", fam_found.taylor().coords(), fam_whole.taylor().coords())]
    for side in ("delta", "pi"):
        for level in range(r.algebra.dim + 1):
            comparisons.append(
                (
                    f"{side}_k{level}",
                    fam_found.slodkowski(level, side).coords(),
                    fam_whole.slodkowski(level, side).coords(),
                )
            )
    return _report("nilpotent_coincidence", r, comparisons, tol, seed)


def _product_points(points_a: list, points_b: list) -> list[np.ndarray]:
    return [np.concatenate([a, b]) for a in points_a for b in points_b]


def check_tensor_formula(
    r1: Representation,
    r2: Representation,
    k: int | None = None,
    seed: int = 0,
    tol: Tolerance = DEFAULT_TOL,
    cap: int = SPLIT_CAP,
) -> CheckReport:
    """Spectra of the tensor module are unions of coordinate products:
    delta at level k is the union over p+q=k of delta_p x delta_q, and the
    Taylor set is the full product."""
    product = tensor_rep(r1, r2, cap)
    cd1 = cartan_decomposition(r1.algebra, seed, tol)
    cd2 = cartan_decomposition(r2.algebra, seed, tol)
    cd = direct_sum_decomposition(cd1, cd2, tol)
    fam = SpectrumFamily(product, cd, tol)
    fam1 = SpectrumFamily(r1, cd1, tol)
    fam2 = SpectrumFamily(r2, cd2, tol)
    taylor_product = _product_points(fam1.taylor().coords(), fam2.taylor().coords())
    comparisons = [("taylor", fam.taylor().coords(), taylor_product)]
    n = product.algebra.dim
    levels = range(n + 1) if k is None else [k]
    inclusion_ok = True
    for level in levels:
        for side in ("delta", "pi"):
            union: list[np.ndarray] = []
            for p in range(level + 1):
                q = level - p
                pa = fam1.slodkowski(min(p, r1.algebra.dim), side).coords()
                pb = fam2.slodkowski(min(q, r2.algebra.dim), side).coords()
                union.extend(_product_points(pa, pb))
            lhs_points = fam.slodkowski(level, side).coords()
            comparisons.append((f"{side}_k{level}", lhs_points, union))
            for point in union:
                if min(
                    (float(np.max(np.abs(point - q))) for q in lhs_points),
                    default=float("inf"),
                ) > tol.match_eps:
                    inclusion_ok = False
    return _report(
        "tensor_product_formula",
        product,
        comparisons,
        tol,
        seed,
        extra_passed=inclusion_ok,
        detail="inclusion_holds" if inclusion_ok else "inclusion_broken",
    )


def check_multiplication_formula(
    r1: Representation,
    r2: Representation,
    k: int | None = None,
    seed: int = 0,
    tol: Tolerance = DEFAULT_TOL,
    cap: int = SPLIT_CAP,
) -> CheckReport:
    """Spectra of T -> rho1(l1) T + T rho2(l2) over L1 (+) L2^op are unions of
    products pairing the delta side of one factor with the pi side of the
    other at complementary levels."""
    product = multiplication_rep(r1, r2, cap)
    cd1 = cartan_decomposition(r1.algebra, seed, tol)
    cd2 = cartan_decomposition(r2.algebra, seed, tol)
    cd = direct_sum_decomposition(cd1, opposite_decomposition(cd2), tol)
    fam = SpectrumFamily(product, cd, tol)
    fam1 = SpectrumFamily(r1, cd1, tol)
    fam2 = SpectrumFamily(r2, cd2, tol)
    m = r2.algebra.dim
    taylor_product = _product_points(fam1.taylor().coords(), fam2.taylor().coords())
    comparisons = [("taylor", fam.taylor().coords(), taylor_product)]
    n = product.algebra.dim
    levels = range(n + 1) if k is None else [k]
    for level in levels:
        for side in ("delta", "pi"):
            other = "pi" if side == "delta" else "delta"
            union: list[np.ndarray] = []
            for p in range(level + 1):
                q = level - p
                if m - q < 0:
                    continue
                pa = fam1.slodkowski(min(p, r1.algebra.dim), side).coords()
                pb = fam2.slodkowski(min(m - q, m), other).coords()
                union.extend(_product_points(pa, pb))
            comparisons.append(
                (f"{side}_k{level}", fam.slodkowski(level, side).coords(), union)
            )
    return _report("multiplication_formula", product, comparisons, tol, seed)


def check_essential_empty(
    r: Representation,
    seed: int = 0,
    tol: Tolerance = DEFAULT_TOL,
) -> CheckReport:
    """Essential spectra of finite-dimensional modules are empty, with the
    standing reason code attached."""
    cd = cartan_decomposition(r.algebra, seed, tol)
    ok = True
    for kind in ESSENTIAL_KINDS:
        out = cartan_essential(r, cd, kind=kind, tol=tol)
        ok = ok and not out.points and out.reason == FINITE_DIM_EMPTY_REASON
    return CheckReport(
        theorem_id="essential_trivial",
        inputs_digest=_instance_digest(r),
        lhs=(LabeledSet("essential", ()),),
        rhs=(LabeledSet("essential", ()),),
        distance=0.0,
        passed=ok,
        seed=seed,
    )


# ---------------------------------------------------------------------------
# fuzz generation


@dataclass(frozen=True)
class FuzzDims:
    max_algebra_dim: int = 3
    max_space_dim: int = 5


@dataclass(frozen=True, eq=False)
class FuzzInstance:
    algebra: LieAlgebra
    rep: Representation
    subalgebras: tuple[SubalgebraBasis, ...]
    nilpotent: bool
    seed: int
    meta: dict = field(default_factory=dict)


def _random_unimodular(rng: np.random.Generator, n: int) -> np.ndarray:
    u = np.eye(n, dtype=float)
    for _ in range(2 * n):
        i, j = rng.integers(0, n, size=2)
        if i == j:
            continue
        u[j, :] += float(rng.choice([-1, 1])) * u[i, :]
    if rng.integers(0, 2):
        perm = rng.permutation(n)
        u = u[perm, :]
    return u


def _exact_int_inverse(u: np.ndarray) -> np.ndarray:
    inv = np.rint(np.linalg.inv(u))
    if not np.array_equal(u @ inv, np.eye(u.shape[0])):
        raise AssertionError("unimodular inverse reconstruction failed")
    return inv


def _random_upper(rng: np.random.Generator, n: int, strict: bool) -> np.ndarray:
    m = np.zeros((n, n), dtype=float)
    for i in range(n):
        if not strict:
            m[i, i] = float(rng.integers(-2, 3))
        for j in range(i + 1, n):
            m[i, j] = float(rng.integers(-2, 3))
    return m


def _commuting_actions(
    rng: np.random.Generator, n_act: int, n_ideal: int, nilpotent: bool
) -> list[np.ndarray]:
    if n_ideal == 0 or n_act == 0:
        return []
    if n_act == 1:
        return [_random_upper(rng, n_ideal, strict=nilpotent)]
    shared = _random_upper(rng, n_ideal, strict=nilpotent)
    actions = []
    for _ in range(n_act):
        a = 0.0 if nilpotent else float(rng.integers(-2, 3))
        b = float(rng.integers(-2, 3))
        c = float(rng.integers(-1, 2))
        actions.append(a * np.eye(n_ideal) + b * shared + c * (shared @ shared))
    return actions


def _pre_subalgebra_columns(
    n_act: int, n_ideal: int, actions: list[np.ndarray]
) -> list[np.ndarray]:
    """Columns (in the pre-conjugation basis) of subalgebras that are closed
    by construction: single basis vectors, pairs inside the acting part,
    pairs inside the ideal, and acting/ideal pairs when the action fixes the
    ideal direction."""
    n = n_act + n_ideal
    eye = np.eye(n)
    columns: list[np.ndarray] = []
    for i in range(n):
        columns.append(eye[:, [i]])
    for i in range(n_act):
        for j in range(i + 1, n_act):
            columns.append(eye[:, [i, j]])
    for i in range(n_ideal):
        for j in range(i + 1, n_ideal):
            columns.append(eye[:, [n_act + i, n_act + j]])
    for i in range(n_act):
        for j in range(n_ideal):
            column = actions[i][:, j]
            off = [abs(column[t]) for t in range(n_ideal) if t != j]
            if not off or max(off) == 0.0:
                columns.append(eye[:, [i, n_act + j]])
    return columns


def _build_block_reps(
    rng: np.random.Generator,
    n_act: int,
    n_ideal: int,
    actions: list[np.ndarray],
    structure_pre: np.ndarray,
    budget: int,
) -> list[np.ndarray]:
    """Candidate modules in the pre-conjugation basis, each valid by
    construction and simultaneously triangularizable with integer weights."""
    n = n_act + n_ideal
    blocks: list[np.ndarray] = []

    def character_block() -> np.ndarray:
        values = np.zeros(n, dtype=complex)
        values[:n_act] = rng.integers(-3, 4, size=n_act)
        return values.reshape(n, 1, 1)

    blocks.append(character_block())
    blocks.append(character_block())
    if n_ideal:
        v_action = np.zeros((n, n_ideal, n_ideal), dtype=complex)
        for i in range(n_act):
            v_action[i] = actions[i]
        if n_ideal <= budget:
            blocks.append(v_action)
        if n_ideal + 1 <= budget:
            std = np.zeros((n, n_ideal + 1, n_ideal + 1), dtype=complex)
            for i in range(n_act):
                std[i][:n_ideal, :n_ideal] = actions[i]
            for j in range(n_ideal):
                std[n_act + j][j, n_ideal] = 1.0
            blocks.append(std)
    if n <= budget:
        ad = np.transpose(structure_pre, (0, 2, 1))
        blocks.append(ad)
    if n_ideal == 0:
        shared = _random_upper(rng, min(budget, 3), strict=False)
        commuting = np.zeros((n, shared.shape[0], shared.shape[0]), dtype=complex)
        for i in range(n):
            a = float(rng.integers(-2, 3))
            b = float(rng.integers(-2, 3))
            commuting[i] = a * np.eye(shared.shape[0]) + b * shared
        blocks.append(commuting)
    return [b for b in blocks if b.shape[1] <= budget]


def _combine_blocks(
    rng: np.random.Generator, blocks: list[np.ndarray], n: int, budget: int
) -> np.ndarray:
    mats = blocks[rng.integers(0, len(blocks))]
    for _ in range(2):
        if rng.random() < 0.5:
            other = blocks[rng.integers(0, len(blocks))]
            d1, d2 = mats.shape[1], other.shape[1]
            if rng.random() < 0.5 and d1 + d2 <= budget:
                stacked = np.zeros((n, d1 + d2, d1 + d2), dtype=complex)
                stacked[:, :d1, :d1] = mats
                stacked[:, d1:, d1:] = other
                mats = stacked
            elif d1 * d2 <= budget:
                eye1 = np.eye(d1, dtype=complex)
                eye2 = np.eye(d2, dtype=complex)
                mats = np.stack(
                    [
                        np.kron(mats[i], eye2) + np.kron(eye1, other[i])
                        for i in range(n)
                    ]
                )
    return mats


def random_solvable_instance(
    seed: int, dims: FuzzDims = FuzzDims(), nilpotent: bool = False
) -> FuzzInstance:
    """Deterministically generate one solvable algebra with a module and a
    list of closed subalgebras."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, dims.max_algebra_dim + 1))
    n_act = int(rng.integers(0, n + 1))
    n_ideal = n - n_act
    actions = _commuting_actions(rng, n_act, n_ideal, nilpotent)

    structure_pre = np.zeros((n, n, n), dtype=complex)
    for i in range(n_act):
        for j in range(n_ideal):
            structure_pre[i, n_act + j, n_act:] = actions[i][:, j]
            structure_pre[n_act + j, i, n_act:] = -actions[i][:, j]

    u = _random_unimodular(rng, n)
    u_inv = _exact_int_inverse(u)
    structure = np.zeros_like(structure_pre)
    for i in range(n):
        for j in range(n):
            w = np.einsum("a,b,abk->k", u[:, i].astype(complex), u[:, j].astype(complex), structure_pre)
            structure[i, j, :] = u_inv.astype(complex) @ w
    algebra = LieAlgebra(structure)

    budget = dims.max_space_dim
    blocks = _build_block_reps(rng, n_act, n_ideal, actions, structure_pre, budget)
    mats_pre = _combine_blocks(rng, blocks, n, budget)
    d = mats_pre.shape[1]
    s = _random_unimodular(rng, d)
    s_inv = _exact_int_inverse(s)
    mats_pre = np.stack([s.astype(complex) @ m @ s_inv.astype(complex) for m in mats_pre])
    mats = np.einsum("ki,kab->iab", u.astype(complex), mats_pre)
    module = Representation(algebra, mats)

    subs = []
    for columns in _pre_subalgebra_columns(n_act, n_ideal, actions):
        converted = u_inv.astype(complex) @ columns
        try:
            subs.append(subalgebra(algebra, converted))
        except InputError:
            continue
    is_nil = bool(n_ideal == 0 or all(np.allclose(np.diag(a), 0.0) for a in actions))
    return FuzzInstance(
        algebra=algebra,
        rep=module,
        subalgebras=tuple(subs[:6]),
        nilpotent=is_nil,
        seed=seed,
        meta={"n_act": n_act, "n_ideal": n_ideal},
    )


def run_instance_checks(
    inst: FuzzInstance,
    tol: Tolerance = DEFAULT_TOL,
    split_cap: int = SPLIT_CAP,
    max_projection_subs: int = 4,
) -> list[CheckReport]:
    """Validate one instance and run every applicable single-module checker."""
    alg_report = validate(inst.algebra, tol)
    rep_report = validate_rep(inst.rep, tol)
    if not (alg_report.passed and rep_report.passed):
        return [
            CheckReport(
                theorem_id="input_rejection",
                inputs_digest=_instance_digest(inst.rep),
                lhs=(),
                rhs=(),
                distance=float("inf"),
                passed=False,
                seed=inst.seed,
                status="rejected",
                detail=(
                    f"antisymmetry {alg_report.antisymmetry_residual:.3e}, "
                    f"jacobi {alg_report.jacobi_residual:.3e}, "
                    f"solvable {alg_report.solvable}, "
                    f"homomorphism {rep_report.homomorphism_residual:.3e}"
                ),
            )
        ]
    reports = [
        check_duality(inst.rep, seed=inst.seed, tol=tol),
        check_cartan_independence(inst.rep, seeds=(inst.seed, inst.seed + 1), tol=tol),
        check_essential_empty(inst.rep, seed=inst.seed, tol=tol),
    ]
    cd = cartan_decomposition(inst.algebra, inst.seed, tol)
    homology_route = SpectrumFamily(inst.rep, cd, tol).taylor().coords()
    eigvec_route = spectrum_by_common_eigenvectors(inst.rep, cd, tol).coords()
    oracle_gap = hausdorff_distance(homology_route, eigvec_route)
    reports.append(
        CheckReport(
            theorem_id="eigenvector_route_agreement",
            inputs_digest=_instance_digest(inst.rep),
            lhs=(LabeledSet("homology_route", tuple(homology_route)),),
            rhs=(LabeledSet("eigenvector_route", tuple(eigvec_route)),),
            distance=oracle_gap,
            passed=bool(oracle_gap <= tol.match_eps),
            seed=inst.seed,
        )
    )
    if inst.rep.space_dim * inst.rep.space_dim <= split_cap:
        reports.append(check_split_identity(inst.rep, seed=inst.seed, tol=tol, cap=split_cap))
    for sub in inst.subalgebras[:max_projection_subs]:
        reports.append(check_projection(inst.rep, sub, seed=inst.seed, tol=tol, cap=split_cap))
    if inst.nilpotent:
        reports.append(check_nilpotent_coincidence(inst.rep, seed=inst.seed, tol=tol))
    return reports


def fuzz(
    seed: int,
    count: int,
    dims: FuzzDims = FuzzDims(),
    tol: Tolerance = DEFAULT_TOL,
) -> list[CheckReport]:
    """Generate ``count`` random instances and run all checkers on each.

    A per-case failure (generation or numerics) is recorded as a report with
    status "error"; it never aborts the batch.
    """
    if count < 0:
        raise InputError("count must be nonnegative")
    rng = np.random.default_rng(seed)
    reports: list[CheckReport] = []
    for _ in range(count):
        case_seed = int(rng.integers(0, 2**31 - 1))
        try:
            inst = random_solvable_instance(case_seed, dims)
            reports.extend(run_instance_checks(inst, tol))
        except Exception as exc:  # noqa: BLE001 - per-case isolation is the contract
            reports.append(
                CheckReport(
                    theorem_id="case_error",
                    inputs_digest="",
                    lhs=(),
                    rhs=(),
                    distance=float("inf"),
                    passed=False,
                    seed=case_seed,
                    status="error",
                    detail=f"{type(exc).__name__}: {exc}",
                )
            )
    return reports


def report_to_jsonable(report: CheckReport) -> dict:
    """Plain-data form of a report, identical across reruns with one seed."""
    return {
        "theorem_id": report.theorem_id,
        "inputs_digest": report.inputs_digest,
        "lhs": [
            {"label": s.label, "points": [vector_to_jsonable(p) for p in s.points]}
            for s in report.lhs
        ],
        "rhs": [
            {"label": s.label, "points": [vector_to_jsonable(p) for p in s.points]}
            for s in report.rhs
        ],
        "distance": report.distance if np.isfinite(report.distance) else None,
        "passed": report.passed,
        "seed": report.seed,
        "status": report.status,
        "detail": report.detail,
    }
