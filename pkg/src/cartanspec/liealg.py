"""Finite-dimensional complex Lie algebras given by structure constants.

An algebra of dimension n is stored as the tensor c with
``[e_i, e_j] = sum_k c[i, j, k] e_k``.  Validation checks antisymmetry, the
Jacobi identity, and solvability; downstream consumers require all three.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numkit import (
    DEFAULT_TOL,
    InputError,
    Subspace,
    Tolerance,
    as_matrix,
    as_vector,
    rank_with_tol,
    span,
    subspace_sum,
)


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """Structure-constant presentation of a complex Lie algebra."""

    structure: np.ndarray

    def __post_init__(self) -> None:
        c = np.asarray(self.structure, dtype=complex)
        if c.ndim != 3 or len(set(c.shape)) != 1:
            raise InputError(f"structure tensor must have shape (n, n, n), got {c.shape}")
        if c.size and not np.all(np.isfinite(c)):
            raise InputError("structure tensor contains non-finite entries")
        c = c.copy()
        c.setflags(write=False)
        object.__setattr__(self, "structure", c)

    @property
    def dim(self) -> int:
        return self.structure.shape[0]


def lie_algebra(structure) -> LieAlgebra:
    return LieAlgebra(np.asarray(structure, dtype=complex))


def from_bracket_list(dim: int, entries) -> LieAlgebra:
    """Build an algebra from sparse brackets.

    ``entries`` holds (i, j, coefficients) triples with 0-based i < j; the
    antisymmetric counterpart is filled in automatically.
    """
    if dim < 1:
        raise InputError(f"algebra dimension must be >= 1, got {dim}")
    c = np.zeros((dim, dim, dim), dtype=complex)
    seen = set()
    for i, j, coeffs in entries:
        if not (0 <= i < dim and 0 <= j < dim):
            raise InputError(f"bracket indices ({i}, {j}) out of range for dimension {dim}")
        if i >= j:
            raise InputError(f"bracket indices must satisfy i < j, got ({i}, {j})")
        if (i, j) in seen:
            raise InputError(f"duplicate bracket entry for indices ({i}, {j})")
        seen.add((i, j))
        vec = as_vector(coeffs, "bracket coefficients")
        if vec.shape[0] != dim:
            raise InputError("bracket coefficient vector has wrong length")
        c[i, j, :] = vec
        c[j, i, :] = -vec
    return LieAlgebra(c)


def algebras_equal(a: LieAlgebra, b: LieAlgebra) -> bool:
    return a.dim == b.dim and np.array_equal(a.structure, b.structure)


def bracket(alg: LieAlgebra, x, y) -> np.ndarray:
    x = as_vector(x)
    y = as_vector(y)
    if x.shape[0] != alg.dim or y.shape[0] != alg.dim:
        raise InputError("bracket arguments do not match the algebra dimension")
    return np.einsum("i,j,ijk->k", x, y, alg.structure)


def ad_matrix(alg: LieAlgebra, h) -> np.ndarray:
    """Matrix of l -> [h, l] in the defining basis."""
    h = as_vector(h)
    if h.shape[0] != alg.dim:
        raise InputError("ad argument does not match the algebra dimension")
    return np.einsum("i,ijk->kj", h, alg.structure)


def structure_scale(alg: LieAlgebra) -> float:
    if alg.structure.size == 0:
        return 1.0
    return max(1.0, float(np.max(np.abs(alg.structure))))


def antisymmetry_residual(alg: LieAlgebra) -> float:
    c = alg.structure
    return float(np.max(np.abs(c + np.swapaxes(c, 0, 1)))) if c.size else 0.0


def jacobi_residual(alg: LieAlgebra) -> float:
    c = alg.structure
    if c.size == 0:
        return 0.0
    term1 = np.einsum("jkm,iml->ijkl", c, c)
    term2 = np.einsum("kim,jml->ijkl", c, c)
    term3 = np.einsum("ijm,kml->ijkl", c, c)
    return float(np.max(np.abs(term1 + term2 + term3)))


@dataclass(frozen=True)
class AlgebraValidation:
    antisymmetry_residual: float
    jacobi_residual: float
    antisymmetry_ok: bool
    jacobi_ok: bool
    solvable: bool

    @property
    def passed(self) -> bool:
        return self.antisymmetry_ok and self.jacobi_ok and self.solvable


def validate(alg: LieAlgebra, tol: Tolerance = DEFAULT_TOL) -> AlgebraValidation:
    scale = structure_scale(alg)
    anti = antisymmetry_residual(alg)
    jac = jacobi_residual(alg)
    anti_ok = anti <= 10.0 * tol.rank_eps * scale
    jac_ok = jac <= 10.0 * tol.rank_eps * scale * scale
    solvable = anti_ok and jac_ok and is_solvable(alg, tol)
    return AlgebraValidation(
        antisymmetry_residual=anti,
        jacobi_residual=jac,
        antisymmetry_ok=anti_ok,
        jacobi_ok=jac_ok,
        solvable=solvable,
    )


def require_valid(alg: LieAlgebra, tol: Tolerance = DEFAULT_TOL) -> None:
    report = validate(alg, tol)
    if not report.passed:
        raise InputError(
            "algebra rejected: "
            f"antisymmetry residual {report.antisymmetry_residual:.3e} "
            f"(ok={report.antisymmetry_ok}), "
            f"jacobi residual {report.jacobi_residual:.3e} (ok={report.jacobi_ok}), "
            f"solvable={report.solvable}"
        )


def bracket_span(alg: LieAlgebra, a: Subspace, b: Subspace, tol: Tolerance = DEFAULT_TOL) -> Subspace:
    """Span of all brackets [u, v] with u in a and v in b.

    The rank decision is floored at the structure-constant magnitude: the
    bracket of unit vectors that is mathematically zero only carries rounding
    noise on that scale, and must not be mistaken for a spanning direction.
    """
    n = alg.dim
    if a.ambient_dim != n or b.ambient_dim != n:
        raise InputError("subspaces do not match the algebra dimension")
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(n)
    columns = np.einsum("ip,jq,ijk->kpq", a.basis, b.basis, alg.structure).reshape(n, -1)
    floor = max(1.0, float(np.max(np.abs(alg.structure))) if alg.structure.size else 0.0)
    return span(columns, tol, scale=floor)


def derived_series(alg: LieAlgebra, tol: Tolerance = DEFAULT_TOL) -> list[Subspace]:
    """L, [L, L], [[L, L], [L, L]], ... until zero or stabilization."""
    current = Subspace.full(alg.dim)
    series = [current]
    while current.dim > 0:
        nxt = bracket_span(alg, current, current, tol)
        if nxt.dim >= current.dim:
            break
        series.append(nxt)
        current = nxt
    return series


def lower_central_series(alg: LieAlgebra, tol: Tolerance = DEFAULT_TOL) -> list[Subspace]:
    """L, [L, L], [L, [L, L]], ... until zero or stabilization."""
    full = Subspace.full(alg.dim)
    current = full
    series = [current]
    while current.dim > 0:
        nxt = bracket_span(alg, full, current, tol)
        if nxt.dim >= current.dim:
            break
        series.append(nxt)
        current = nxt
    return series


def is_solvable(alg: LieAlgebra, tol: Tolerance = DEFAULT_TOL) -> bool:
    return derived_series(alg, tol)[-1].dim == 0


def is_nilpotent(alg: LieAlgebra, tol: Tolerance = DEFAULT_TOL) -> bool:
    return lower_central_series(alg, tol)[-1].dim == 0


def derived_subalgebra(alg: LieAlgebra, tol: Tolerance = DEFAULT_TOL) -> Subspace:
    full = Subspace.full(alg.dim)
    return bracket_span(alg, full, full, tol)


def opposite(alg: LieAlgebra) -> LieAlgebra:
    """Same space with the negated bracket."""
    return LieAlgebra(-alg.structure)


def direct_sum(a: LieAlgebra, b: LieAlgebra) -> LieAlgebra:
    na, nb = a.dim, b.dim
    c = np.zeros((na + nb, na + nb, na + nb), dtype=complex)
    c[:na, :na, :na] = a.structure
    c[na:, na:, na:] = b.structure
    return LieAlgebra(c)


@dataclass(frozen=True, eq=False)
class SubalgebraBasis:
    """A subalgebra presented by independent basis columns inside a parent algebra."""

    algebra: LieAlgebra
    basis: np.ndarray

    def __post_init__(self) -> None:
        basis = as_matrix(self.basis, "subalgebra basis")
        if basis.shape[0] != self.algebra.dim:
            raise InputError("subalgebra basis rows do not match the algebra dimension")
        if basis.shape[1] == 0:
            raise InputError("subalgebra must have positive dimension")
        basis = basis.copy()
        basis.setflags(write=False)
        object.__setattr__(self, "basis", basis)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]


def subalgebra(alg: LieAlgebra, basis, tol: Tolerance = DEFAULT_TOL) -> SubalgebraBasis:
    """Wrap basis columns as a subalgebra, checking independence and closure."""
    sub = SubalgebraBasis(alg, as_matrix(basis, "subalgebra basis"))
    if rank_with_tol(sub.basis, tol) != sub.dim:
        raise InputError("subalgebra basis columns are not independent at tolerance")
    if not subalgebra_closure_check(sub, tol):
        raise InputError("subalgebra basis is not closed under the bracket")
    return sub


def _bracket_fit(sub: SubalgebraBasis) -> tuple[np.ndarray, float]:
    """Least-squares coordinates of all pairwise brackets in the sub-basis,
    together with the worst relative fit residual."""
    basis = sub.basis
    r = sub.dim
    coords = np.zeros((r, r, r), dtype=complex)
    worst = 0.0
    for i in range(r):
        for j in range(i + 1, r):
            w = bracket(sub.algebra, basis[:, i], basis[:, j])
            fit = np.linalg.lstsq(basis, w, rcond=None)[0]
            residual = float(np.linalg.norm(w - basis @ fit))
            scale = max(1.0, float(np.linalg.norm(w)))
            worst = max(worst, residual / scale)
            coords[i, j, :] = fit
            coords[j, i, :] = -fit
    return coords, worst


def subalgebra_closure_check(sub: SubalgebraBasis, tol: Tolerance = DEFAULT_TOL) -> bool:
    _, worst = _bracket_fit(sub)
    return worst <= 10.0 * tol.rank_eps * structure_scale(sub.algebra) * max(
        1.0, float(np.max(np.abs(sub.basis)))
    )


def induced_structure(sub: SubalgebraBasis, tol: Tolerance = DEFAULT_TOL) -> LieAlgebra:
    """Structure constants of the subalgebra in its own basis."""
    coords, worst = _bracket_fit(sub)
    threshold = 10.0 * tol.rank_eps * structure_scale(sub.algebra) * max(
        1.0, float(np.max(np.abs(sub.basis)))
    )
    if worst > threshold:
        raise InputError(
            f"subalgebra is not closed under the bracket (fit residual {worst:.3e})"
        )
    return LieAlgebra(coords)


def subspace_of(sub: SubalgebraBasis) -> Subspace:
    return Subspace(sub.algebra.dim, sub.basis)


def sum_of_subspaces(parts: list[Subspace], n: int, tol: Tolerance = DEFAULT_TOL) -> Subspace:
    total = Subspace.zero(n)
    for part in parts:
        total = subspace_sum(total, part, tol)
    return total
