"""Finite-dimensional representations and the derived constructions used for
split spectra, duality, and product formulas.

A representation stores one matrix per algebra basis vector; validity means
``rho([e_i, e_j]) = [rho(e_i), rho(e_j)]`` up to the working tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .liealg import (
    LieAlgebra,
    SubalgebraBasis,
    direct_sum,
    induced_structure,
    opposite,
)
from .numkit import DEFAULT_TOL, InputError, Tolerance, as_vector

DEFAULT_DIMENSION_CAP = 64


@dataclass(frozen=True, eq=False)
class Representation:
    """Matrices of the basis vectors of ``algebra`` acting on C^space_dim."""

    algebra: LieAlgebra
    mats: np.ndarray

    def __post_init__(self) -> None:
        mats = np.asarray(self.mats, dtype=complex)
        if mats.ndim != 3 or mats.shape[0] != self.algebra.dim:
            raise InputError(
                f"expected {self.algebra.dim} matrices in a (n, d, d) array, got shape {mats.shape}"
            )
        if mats.shape[1] != mats.shape[2]:
            raise InputError("representation matrices must be square")
        if mats.shape[1] == 0:
            raise InputError("representation space must have positive dimension")
        if mats.size and not np.all(np.isfinite(mats)):
            raise InputError("representation matrices contain non-finite entries")
        mats = mats.copy()
        mats.setflags(write=False)
        object.__setattr__(self, "mats", mats)

    @property
    def space_dim(self) -> int:
        return self.mats.shape[1]


def representation(alg: LieAlgebra, mats) -> Representation:
    return Representation(alg, np.asarray(mats, dtype=complex))


def apply_rep(r: Representation, x) -> np.ndarray:
    """Matrix of the algebra element with coordinates x."""
    x = as_vector(x)
    if x.shape[0] != r.algebra.dim:
        raise InputError("element coordinates do not match the algebra dimension")
    return np.einsum("i,ijk->jk", x, r.mats)


def _rep_scale(r: Representation) -> float:
    norms = [float(np.linalg.norm(m, 2)) for m in r.mats] or [0.0]
    c = r.algebra.structure
    cmax = float(np.max(np.abs(c))) if c.size else 0.0
    return max(1.0, (1.0 + max(norms)) ** 2, cmax * (1.0 + max(norms)))


def homomorphism_residual(r: Representation) -> float:
    c = r.algebra.structure
    worst = 0.0
    for i in range(r.algebra.dim):
        for j in range(i + 1, r.algebra.dim):
            expected = np.einsum("k,kab->ab", c[i, j, :], r.mats)
            actual = r.mats[i] @ r.mats[j] - r.mats[j] @ r.mats[i]
            worst = max(worst, float(np.linalg.norm(expected - actual)))
    return worst


@dataclass(frozen=True)
class RepValidation:
    homomorphism_residual: float
    threshold: float

    @property
    def passed(self) -> bool:
        return self.homomorphism_residual <= self.threshold


def validate_rep(r: Representation, tol: Tolerance = DEFAULT_TOL) -> RepValidation:
    residual = homomorphism_residual(r)
    return RepValidation(residual, 10.0 * tol.rank_eps * _rep_scale(r))


def require_valid_rep(r: Representation, tol: Tolerance = DEFAULT_TOL) -> None:
    report = validate_rep(r, tol)
    if not report.passed:
        raise InputError(
            f"representation rejected: homomorphism residual {report.homomorphism_residual:.3e} "
            f"exceeds {report.threshold:.3e}"
        )


def restrict(r: Representation, sub: SubalgebraBasis, tol: Tolerance = DEFAULT_TOL) -> Representation:
    """Representation of the subalgebra in its own basis, on the same space."""
    if sub.algebra is not r.algebra and not np.array_equal(
        sub.algebra.structure, r.algebra.structure
    ):
        raise InputError("subalgebra belongs to a different algebra")
    small = induced_structure(sub, tol)
    mats = np.einsum("ij,ikl->jkl", sub.basis, r.mats)
    return Representation(small, mats)


def adjoint_rep(r: Representation) -> Representation:
    """Dual-space action: transposed matrices over the opposite algebra."""
    mats = np.transpose(r.mats, (0, 2, 1))
    return Representation(opposite(r.algebra), mats)


def _check_cap(d: int, cap: int, what: str) -> None:
    if d > cap:
        raise InputError(f"{what} needs a space of dimension {d}, above the cap {cap}")


def left_mult_rep(r: Representation, cap: int = DEFAULT_DIMENSION_CAP) -> Representation:
    """T -> rho(l) T on d x d matrices, row-major matrix-unit basis."""
    d = r.space_dim
    _check_cap(d * d, cap, "left multiplication representation")
    eye = np.eye(d, dtype=complex)
    mats = np.stack([np.kron(m, eye) for m in r.mats])
    return Representation(r.algebra, mats)


def right_mult_rep(r: Representation, cap: int = DEFAULT_DIMENSION_CAP) -> Representation:
    """T -> T rho(l) on d x d matrices, a representation of the opposite algebra."""
    d = r.space_dim
    _check_cap(d * d, cap, "right multiplication representation")
    eye = np.eye(d, dtype=complex)
    mats = np.stack([np.kron(eye, m.T) for m in r.mats])
    return Representation(opposite(r.algebra), mats)


def tensor_rep(
    r1: Representation, r2: Representation, cap: int = DEFAULT_DIMENSION_CAP
) -> Representation:
    """rho(l1 + l2) = rho1(l1) (x) I + I (x) rho2(l2) over the direct sum algebra."""
    d1, d2 = r1.space_dim, r2.space_dim
    _check_cap(d1 * d2, cap, "tensor representation")
    alg = direct_sum(r1.algebra, r2.algebra)
    eye1 = np.eye(d1, dtype=complex)
    eye2 = np.eye(d2, dtype=complex)
    mats = [np.kron(m, eye2) for m in r1.mats] + [np.kron(eye1, m) for m in r2.mats]
    return Representation(alg, np.stack(mats))


def multiplication_rep(
    r1: Representation, r2: Representation, cap: int = DEFAULT_DIMENSION_CAP
) -> Representation:
    """T -> rho1(l1) T + T rho2(l2) on d1 x d2 matrices.

    The carrier algebra is L1 (+) L2^op: right multiplication reverses the
    order of products, so the second factor must carry the opposite bracket
    for the homomorphism law to hold.
    """
    d1, d2 = r1.space_dim, r2.space_dim
    _check_cap(d1 * d2, cap, "multiplication representation")
    alg = direct_sum(r1.algebra, opposite(r2.algebra))
    eye1 = np.eye(d1, dtype=complex)
    eye2 = np.eye(d2, dtype=complex)
    mats = [np.kron(m, eye2) for m in r1.mats] + [np.kron(eye1, m.T) for m in r2.mats]
    return Representation(alg, np.stack(mats))


def ad_representation(alg: LieAlgebra) -> Representation:
    """The adjoint action of the algebra on itself: ad(e_i)[k, j] = c[i, j, k]."""
    mats = np.transpose(alg.structure, (0, 2, 1))
    return Representation(alg, mats)
