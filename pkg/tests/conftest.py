"""Shared fixtures; the concrete algebras and modules come from the package catalog."""

import numpy as np
import pytest

from cartanspec.catalog import (
    abelian_diag_rep,
    affine_algebra,
    affine_rep as affine_module,
    heisenberg_algebra,
    heisenberg_rep as heisenberg_module,
    jacobi_violation_algebra,
    so3_algebra,
)
from cartanspec.liealg import SubalgebraBasis
from cartanspec.numkit import DEFAULT_TOL


def jacobi_violating_structure() -> np.ndarray:
    """Antisymmetric structure constants that break the Jacobi identity."""
    return jacobi_violation_algebra().structure


def abelian_diag_module():
    """Two commuting diagonals; the weight set is {(1, 3), (2, 4)}."""
    return abelian_diag_rep([[1.0, 2.0], [3.0, 4.0]])


@pytest.fixture
def tol():
    return DEFAULT_TOL


@pytest.fixture
def affine():
    return affine_algebra()


@pytest.fixture
def affine_rep():
    return affine_module()


@pytest.fixture
def heisenberg():
    return heisenberg_algebra()


@pytest.fixture
def heisenberg_rep():
    return heisenberg_module()


@pytest.fixture
def abelian_rep():
    return abelian_diag_module()


@pytest.fixture
def cartan_e1(affine):
    return SubalgebraBasis(affine, np.eye(2, dtype=complex)[:, [0]])


@pytest.fixture
def cartan_e1_plus_e2(affine):
    return SubalgebraBasis(affine, np.array([[1.0], [1.0]], dtype=complex))
