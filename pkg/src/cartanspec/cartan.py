"""Cartan subalgebras of solvable Lie algebras and root-space decompositions.

A Cartan subalgebra H is a nilpotent subalgebra equal to the joint
generalized 0-eigenspace of its own adjoint action on the whole algebra.
The search draws random elements with small integer coordinates and takes
the kernel of ``ad(x)**n`` (the Fitting null component), which is a Cartan
subalgebra for generic x; non-generic draws are detected and retried.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .liealg import (
    LieAlgebra,
    SubalgebraBasis,
    ad_matrix,
    induced_structure,
    is_nilpotent,
    opposite,
    require_valid,
    subalgebra_closure_check,
    sum_of_subspaces,
)
from .numkit import (
    DEFAULT_TOL,
    InputError,
    NumericalFailure,
    Subspace,
    Tolerance,
    certified_weight_spaces,
    generalized_zero_eigenspace,
    subspace_intersection,
    subspaces_equal,
    weight_sort_key,
)


@dataclass(frozen=True, eq=False)
class Root:
    """A root functional (values on the Cartan basis columns) with its root space."""

    alpha: np.ndarray
    space: Subspace


@dataclass(frozen=True, eq=False)
class CartanDecomposition:
    """Cartan subalgebra, all roots (the zero root included), and the sum of
    the nonzero root spaces."""

    algebra: LieAlgebra
    h: SubalgebraBasis
    roots: tuple[Root, ...]
    h_star: Subspace


def fitting_null(alg: LieAlgebra, x, tol: Tolerance = DEFAULT_TOL) -> Subspace:
    """Generalized 0-eigenspace of ad(x), i.e. the kernel of ad(x)**n."""
    return generalized_zero_eigenspace(ad_matrix(alg, x), tol)


def zero_root_space(alg: LieAlgebra, basis: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> Subspace:
    """Joint generalized 0-eigenspace of ad over the given basis columns."""
    n = alg.dim
    space = Subspace.full(n)
    for j in range(basis.shape[1]):
        space = subspace_intersection(space, fitting_null(alg, basis[:, j], tol), tol)
    return space


def is_cartan(alg: LieAlgebra, h: SubalgebraBasis, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Nilpotent subalgebra equal to the joint generalized 0-eigenspace of its ad action."""
    if h.algebra is not alg and not np.array_equal(h.algebra.structure, alg.structure):
        raise InputError("subalgebra belongs to a different algebra")
    if not subalgebra_closure_check(h, tol):
        return False
    if not is_nilpotent(induced_structure(h, tol), tol):
        return False
    zero_space = zero_root_space(alg, h.basis, tol)
    return subspaces_equal(zero_space, Subspace(alg.dim, h.basis), tol)


def find_cartan_subalgebra(
    alg: LieAlgebra,
    seed: int = 0,
    tol: Tolerance = DEFAULT_TOL,
    attempts: int = 20,
) -> SubalgebraBasis:
    """Seeded random search for a Cartan subalgebra of a solvable algebra."""
    require_valid(alg, tol)
    rng = np.random.default_rng(seed)
    n = alg.dim
    for _ in range(attempts):
        x = rng.integers(-5, 6, size=n).astype(complex)
        if not np.any(x):
            continue
        candidate_space = fitting_null(alg, x, tol)
        if candidate_space.dim == 0:
            continue
        candidate = SubalgebraBasis(alg, candidate_space.basis)
        if is_cartan(alg, candidate, tol):
            return candidate
    raise NumericalFailure(
        f"no Cartan subalgebra found in {attempts} random draws (seed {seed}); "
        "the algebra may be too degenerate for integer sampling"
    )


def root_decomposition(
    alg: LieAlgebra, h: SubalgebraBasis, tol: Tolerance = DEFAULT_TOL
) -> CartanDecomposition:
    """Refine the algebra into joint generalized eigenspaces of ad over H.

    The functional of each space is a root; the zero root space must come
    back equal to H, and the nonzero root spaces sum to the complement H*.
    """
    if not is_cartan(alg, h, tol):
        raise InputError("given subalgebra is not a Cartan subalgebra at this tolerance")
    n = alg.dim
    ads = [ad_matrix(alg, h.basis[:, j]) for j in range(h.dim)]
    triples, _ = certified_weight_spaces(ads, tol)
    roots = []
    nonzero_spaces = []
    zero_space = None
    for alpha, space, _witness in triples:
        roots.append(Root(alpha=alpha, space=space))
        if np.max(np.abs(alpha)) <= tol.match_eps:
            if zero_space is not None:
                raise NumericalFailure("two distinct zero roots in the decomposition")
            zero_space = space
        else:
            nonzero_spaces.append(space)
    if zero_space is None or not subspaces_equal(zero_space, Subspace(n, h.basis), tol):
        raise NumericalFailure(
            "zero-root space of the decomposition does not match the Cartan subalgebra"
        )
    h_star = sum_of_subspaces(nonzero_spaces, n, tol)
    if h.dim + h_star.dim != n:
        raise NumericalFailure(
            f"Cartan decomposition dimensions are inconsistent: {h.dim} + {h_star.dim} != {n}"
        )
    if subspace_intersection(Subspace(n, h.basis), h_star, tol).dim != 0:
        raise NumericalFailure("Cartan subalgebra meets the sum of nonzero root spaces")
    return CartanDecomposition(algebra=alg, h=h, roots=tuple(roots), h_star=h_star)


def cartan_decomposition(
    alg: LieAlgebra, seed: int = 0, tol: Tolerance = DEFAULT_TOL
) -> CartanDecomposition:
    """Find a Cartan subalgebra from the seed and decompose."""
    return root_decomposition(alg, find_cartan_subalgebra(alg, seed, tol), tol)


def whole_algebra_decomposition(alg: LieAlgebra, tol: Tolerance = DEFAULT_TOL) -> CartanDecomposition:
    """For a nilpotent algebra the whole algebra is a Cartan subalgebra."""
    require_valid(alg, tol)
    if not is_nilpotent(alg, tol):
        raise InputError("whole-algebra decomposition needs a nilpotent algebra")
    n = alg.dim
    h = SubalgebraBasis(alg, np.eye(n, dtype=complex))
    zero = Root(alpha=np.zeros(n, dtype=complex), space=Subspace.full(n))
    return CartanDecomposition(algebra=alg, h=h, roots=(zero,), h_star=Subspace.zero(n))


def opposite_decomposition(cd: CartanDecomposition) -> CartanDecomposition:
    """The same subspaces read inside the opposite algebra; roots negate."""
    op = opposite(cd.algebra)
    h = SubalgebraBasis(op, cd.h.basis)
    roots = tuple(Root(alpha=-r.alpha, space=r.space) for r in cd.roots)
    return CartanDecomposition(algebra=op, h=h, roots=roots, h_star=cd.h_star)


def _embed(space: Subspace, offset: int, total: int) -> Subspace:
    basis = np.zeros((total, space.dim), dtype=complex)
    basis[offset : offset + space.ambient_dim, :] = space.basis
    return Subspace(total, basis)


def direct_sum_decomposition(
    cd1: CartanDecomposition, cd2: CartanDecomposition, tol: Tolerance = DEFAULT_TOL
) -> CartanDecomposition:
    """H1 (+) H2 is a Cartan subalgebra of the direct sum; roots lift by zero
    on the other factor."""
    from .liealg import direct_sum  # local import to keep module load order simple

    alg = direct_sum(cd1.algebra, cd2.algebra)
    n1, n2 = cd1.algebra.dim, cd2.algebra.dim
    n = n1 + n2
    r1, r2 = cd1.h.dim, cd2.h.dim
    basis = np.zeros((n, r1 + r2), dtype=complex)
    basis[:n1, :r1] = cd1.h.basis
    basis[n1:, r1:] = cd2.h.basis
    h = SubalgebraBasis(alg, basis)

    zero_parts = []
    roots: list[Root] = []
    nonzero_spaces = []
    for root in cd1.roots:
        alpha = np.concatenate([root.alpha, np.zeros(r2, dtype=complex)])
        space = _embed(root.space, 0, n)
        if np.max(np.abs(root.alpha), initial=0.0) <= tol.match_eps:
            zero_parts.append(space)
        else:
            roots.append(Root(alpha=alpha, space=space))
            nonzero_spaces.append(space)
    for root in cd2.roots:
        alpha = np.concatenate([np.zeros(r1, dtype=complex), root.alpha])
        space = _embed(root.space, n1, n)
        if np.max(np.abs(root.alpha), initial=0.0) <= tol.match_eps:
            zero_parts.append(space)
        else:
            roots.append(Root(alpha=alpha, space=space))
            nonzero_spaces.append(space)
    zero_space = sum_of_subspaces(zero_parts, n, tol)
    roots.insert(0, Root(alpha=np.zeros(r1 + r2, dtype=complex), space=zero_space))
    roots.sort(key=lambda r: weight_sort_key(r.alpha))
    h_star = sum_of_subspaces(nonzero_spaces, n, tol)
    return CartanDecomposition(algebra=alg, h=h, roots=tuple(roots), h_star=h_star)
