"""Small catalog of concrete algebras and representations used in tests,
scripts, and documentation examples."""

from __future__ import annotations

import numpy as np

from .liealg import LieAlgebra, from_bracket_list, lie_algebra
from .rep import Representation, representation


def abelian_algebra(n: int) -> LieAlgebra:
    return lie_algebra(np.zeros((n, n, n), dtype=complex))


def affine_algebra() -> LieAlgebra:
    """Two-dimensional solvable algebra with [e1, e2] = e2."""
    return from_bracket_list(2, [(0, 1, [0.0, 1.0])])


def affine_rep() -> Representation:
    """The defining two-dimensional module of the affine algebra."""
    mats = [
        [[1.0, 0.0], [0.0, 0.0]],
        [[0.0, 1.0], [0.0, 0.0]],
    ]
    return representation(affine_algebra(), mats)


def heisenberg_algebra() -> LieAlgebra:
    """Three-dimensional nilpotent algebra with [e1, e2] = e3."""
    return from_bracket_list(3, [(0, 1, [0.0, 0.0, 1.0])])


def heisenberg_rep() -> Representation:
    """Strictly upper triangular 3x3 module of the Heisenberg algebra."""
    e12 = np.zeros((3, 3))
    e12[0, 1] = 1.0
    e23 = np.zeros((3, 3))
    e23[1, 2] = 1.0
    e13 = np.zeros((3, 3))
    e13[0, 2] = 1.0
    return representation(heisenberg_algebra(), [e12, e23, e13])


def abelian_diag_rep(diagonals) -> Representation:
    """Commuting diagonal module of an abelian algebra, one diagonal per generator."""
    diagonals = [np.asarray(d, dtype=complex) for d in diagonals]
    alg = abelian_algebra(len(diagonals))
    mats = [np.diag(d) for d in diagonals]
    return representation(alg, mats)


def so3_algebra() -> LieAlgebra:
    """[e1, e2] = e3, [e2, e3] = e1, [e3, e1] = e2; valid but not solvable."""
    return from_bracket_list(
        3,
        [
            (0, 1, [0.0, 0.0, 1.0]),
            (1, 2, [1.0, 0.0, 0.0]),
            (0, 2, [0.0, -1.0, 0.0]),
        ],
    )


def jacobi_violation_algebra() -> LieAlgebra:
    """[e1, e2] = e1, [e1, e3] = e2, [e2, e3] = 0; fails the Jacobi identity."""
    return from_bracket_list(
        3,
        [
            (0, 1, [1.0, 0.0, 0.0]),
            (0, 2, [0.0, 1.0, 0.0]),
        ],
    )


def diamond_algebra() -> LieAlgebra:
    """Four-dimensional solvable algebra: [h, x] = y, [h, y] = -x, [x, y] = z."""
    return from_bracket_list(
        4,
        [
            (0, 1, [0.0, 0.0, 1.0, 0.0]),
            (0, 2, [0.0, -1.0, 0.0, 0.0]),
            (1, 2, [0.0, 0.0, 0.0, 1.0]),
        ],
    )
