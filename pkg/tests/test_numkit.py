"""Linear-algebra kernel: rank decisions, eigenspace extraction, certificates."""

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cartanspec.numkit import (
    DEFAULT_TOL,
    InputError,
    Subspace,
    Tolerance,
    _cluster_single_linkage,
    _largest_linkage_gap,
    certified_weight_spaces,
    generalized_eigenspaces,
    generalized_zero_eigenspace,
    joint_generalized_eigenspaces,
    kernel_basis,
    operator_norm,
    orthonormal_columns,
    power_kernel,
    rank_with_tol,
    span,
    subspace_contains,
    subspace_intersection,
    subspace_sum,
    subspaces_equal,
    unit_with_deterministic_phase,
)


def _exact_rank(m: np.ndarray) -> int:
    return sympy.Matrix(np.asarray(m.real, dtype=np.int64).tolist()).rank()


class TestRankDecisions:
    def test_integer_matrices_match_exact_rank(self):
        cases = [
            np.array([[1, 2], [2, 4]], dtype=float),
            np.array([[1, 2, 3], [4, 5, 6], [7, 8, 9]], dtype=float),
            np.eye(4),
            np.zeros((3, 3)),
        ]
        for m in cases:
            assert rank_with_tol(m.astype(complex)) == _exact_rank(m)

    def test_product_rank_matches_exact_rank(self):
        rng = np.random.default_rng(7)
        a = rng.integers(-4, 5, size=(5, 2)).astype(float)
        b = rng.integers(-4, 5, size=(2, 6)).astype(float)
        m = a @ b
        assert rank_with_tol(m.astype(complex)) == _exact_rank(m)

    def test_relative_threshold_keeps_tiny_but_clean_scales(self):
        # a uniformly tiny full-rank matrix is full rank relative to itself
        assert rank_with_tol(1e-12 * np.eye(3, dtype=complex)) == 3

    def test_scale_floor_demotes_pure_noise(self):
        """A matrix that is rounding dust on the scale of its source
        computation must not be judged full rank just because the threshold
        is relative to the dust itself."""
        noise = np.diag([1e-16, 3e-17]).astype(complex)
        assert rank_with_tol(noise) == 2  # relative-only view
        assert rank_with_tol(noise, scale=1.0) == 0
        assert kernel_basis(noise, scale=1.0).dim == 2

    def test_kernel_dimension_is_cols_minus_rank(self):
        m = np.array([[1, 2, 3], [2, 4, 6]], dtype=complex)
        assert rank_with_tol(m) == 1
        k = kernel_basis(m)
        assert k.dim == 2
        assert float(np.linalg.norm(m @ k.basis)) < 1e-12

    def test_kernel_of_empty_shapes(self):
        assert kernel_basis(np.zeros((0, 4), dtype=complex)).dim == 4
        assert kernel_basis(np.zeros((4, 0), dtype=complex)).dim == 0


class TestSubspaces:
    def test_span_and_contains(self, tol):
        s = span(np.array([[1.0, 2.0], [0.0, 0.0], [1.0, 2.0]], dtype=complex))
        assert s.dim == 1
        assert subspace_contains(s, np.array([3.0, 0.0, 3.0], dtype=complex))
        assert not subspace_contains(s, np.array([1.0, 1.0, 0.0], dtype=complex))

    def test_sum_and_intersection(self):
        e = np.eye(3, dtype=complex)
        a = Subspace(3, e[:, [0, 1]])
        b = Subspace(3, e[:, [1, 2]])
        assert subspace_sum(a, b).dim == 3
        inter = subspace_intersection(a, b)
        assert inter.dim == 1
        assert subspace_contains(inter, e[:, 1])

    def test_equality_ignores_basis_choice(self):
        a = Subspace(2, np.array([[1.0], [1.0]], dtype=complex))
        b = Subspace(2, np.array([[-2.0], [-2.0]], dtype=complex))
        assert subspaces_equal(a, b)
        assert not subspaces_equal(a, Subspace(2, np.array([[1.0], [0.0]], dtype=complex)))

    def test_orthonormal_columns_scale_floor(self):
        noise = 1e-16 * np.ones((3, 2), dtype=complex)
        assert orthonormal_columns(noise).shape[1] == 1
        assert orthonormal_columns(noise, scale=1.0).shape[1] == 0


class TestClustering:
    def test_chained_values_form_one_cluster(self):
        vals = np.array([0.0, 0.6e-7, 1.3e-7], dtype=complex)
        assert len(_cluster_single_linkage(vals, 1e-7)) == 1

    def test_separated_values_stay_apart(self):
        vals = np.array([0.0, 1.0, 1.0 + 5e-8], dtype=complex)
        clusters = _cluster_single_linkage(vals, 1e-7)
        assert sorted(len(c) for c in clusters) == [1, 2]

    def test_largest_linkage_gap_is_widest_mst_edge(self):
        vals = np.array([0.0, 0.1, 5.0, 5.05], dtype=complex)
        assert _largest_linkage_gap(vals) == pytest.approx(4.9)


class TestEigenspaces:
    def test_jordan_block_is_one_space(self):
        j = np.array([[2, 1, 0], [0, 2, 1], [0, 0, 2]], dtype=complex)
        dec = generalized_eigenspaces(j)
        assert len(dec.pairs) == 1
        lam, space = dec.pairs[0]
        assert abs(lam - 2) < 1e-12
        assert space.dim == 3

    def test_distinct_eigenvalues_split(self):
        dec = generalized_eigenspaces(np.diag([1.0, 1.0, 5.0]).astype(complex))
        dims = sorted(space.dim for _, space in dec.pairs)
        assert dims == [1, 2]

    def test_defective_zero_survives_conjugation_and_scaling(self):
        """A scaled, conjugated nilpotent block perturbs its zero eigenvalue
        into a ring wider than match_eps; the certificate-gated merge must
        still report one zero cluster of the full chain length."""
        rng = np.random.default_rng(3)
        q = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        j = np.array([[0, 30, 0], [0, 0, 0], [0, 0, 7.0]], dtype=complex)
        m = np.linalg.solve(q, j @ q)
        dec = generalized_eigenspaces(m)
        got = sorted((round(abs(lam), 6), space.dim) for lam, space in dec.pairs)
        assert got == [(0.0, 2), (7.0, 1)]
        for lam, space in dec.pairs:
            drift = np.linalg.norm(
                m @ space.basis - space.basis @ (space.basis.conj().T @ m @ space.basis)
            )
            assert drift < 1e-10 * operator_norm(m)

    def test_close_but_genuine_eigenvalues_stay_apart(self):
        m = np.diag([0.0, 1e-3, 1.0]).astype(complex)
        dec = generalized_eigenspaces(m)
        assert len(dec.pairs) == 3

    def test_zero_eigenspace_of_nilpotent_is_everything(self):
        j = np.array([[0, 40, 0], [0, 0, 40], [0, 0, 0]], dtype=complex)
        assert generalized_zero_eigenspace(j).dim == 3

    def test_zero_eigenspace_picks_only_the_zero_cluster(self):
        m = np.diag([0.0, 0.0, 3.0]).astype(complex)
        assert generalized_zero_eigenspace(m).dim == 2
        assert generalized_zero_eigenspace(np.diag([2.0, 3.0]).astype(complex)).dim == 0

    def test_power_kernel_matches_exact_nilpotent_degree(self):
        j = np.array([[0, 1, 0], [0, 0, 1], [0, 0, 0]], dtype=complex)
        assert power_kernel(j, 1).dim == 1
        assert power_kernel(j, 2).dim == 2
        assert power_kernel(j, 3).dim == 3


class TestJointRefinement:
    def test_commuting_diagonals_refine_to_weight_vectors(self):
        mats = [np.diag([1.0, 2.0]).astype(complex), np.diag([3.0, 4.0]).astype(complex)]
        pairs, ambiguous = joint_generalized_eigenspaces(mats)
        weights = sorted(tuple(np.round(v.real, 9)) for v, _ in pairs)
        assert weights == [(1.0, 3.0), (2.0, 4.0)]
        assert not ambiguous

    def test_shared_eigenvalue_split_by_second_matrix(self):
        mats = [np.diag([1.0, 1.0]).astype(complex), np.diag([3.0, 5.0]).astype(complex)]
        pairs, _ = joint_generalized_eigenspaces(mats)
        assert len(pairs) == 2

    def test_non_invariant_family_is_refused(self):
        from cartanspec.numkit import NumericalFailure

        mats = [np.diag([0.0, 1.0]).astype(complex), np.array([[0, 1], [1, 0]], dtype=complex)]
        with pytest.raises(NumericalFailure):
            joint_generalized_eigenspaces(mats)


class TestCertifiedWeightSpaces:
    def test_witnesses_are_joint_eigenvectors(self):
        mats = [np.diag([1.0, 2.0, 2.0]).astype(complex), np.diag([3.0, 4.0, 4.0]).astype(complex)]
        triples, _ = certified_weight_spaces(mats)
        assert [space.dim for _, space, _ in triples] == [1, 2]
        for values, _, witness in triples:
            for j, m in enumerate(mats):
                assert np.linalg.norm(m @ witness - values[j] * witness) < 1e-9

    def test_defective_family_merges_back_to_true_weight(self):
        """Conjugated Jordan action: the raw refinement may fracture the zero
        weight, but the certified result is a single accurate weight space."""
        rng = np.random.default_rng(11)
        q = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        j1 = np.array([[0, 25, 0], [0, 0, 0], [0, 0, 0]], dtype=complex)
        m1 = np.linalg.solve(q, j1 @ q)
        triples, _ = certified_weight_spaces([m1])
        assert len(triples) == 1
        values, space, witness = triples[0]
        assert space.dim == 3
        assert abs(values[0]) < 1e-8
        assert np.linalg.norm(m1 @ witness - values[0] * witness) < 1e-7 * operator_norm(m1)


class TestPhases:
    def test_unit_phase_makes_largest_entry_real_positive(self):
        v = np.array([1j, -2.0, 0.5], dtype=complex)
        u = unit_with_deterministic_phase(v)
        idx = int(np.argmax(np.abs(u)))
        assert abs(u[idx].imag) < 1e-15 and u[idx].real > 0
        assert np.linalg.norm(u) == pytest.approx(1.0)

    def test_zero_vector_is_refused(self):
        with pytest.raises(InputError):
            unit_with_deterministic_phase(np.zeros(3, dtype=complex))


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=2**31 - 1))
def test_kernel_residual_is_tiny_on_random_products(seed):
    rng = np.random.default_rng(seed)
    rows, inner, cols = (int(rng.integers(1, 6)) for _ in range(3))
    m = (
        rng.standard_normal((rows, inner)) @ rng.standard_normal((inner, cols))
    ).astype(complex)
    k = kernel_basis(m)
    assert rank_with_tol(m) + k.dim == cols
    if k.dim:
        assert float(np.linalg.norm(m @ k.basis)) <= 1e-8 * max(1.0, operator_norm(m))


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=2**31 - 1))
def test_eigenspace_dims_partition_the_space(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 6))
    m = rng.integers(-3, 4, size=(n, n)).astype(complex)
    dec = generalized_eigenspaces(m)
    assert sum(space.dim for _, space in dec.pairs) == n
    for lam, space in dec.pairs:
        op = space.basis.conj().T @ m @ space.basis
        # the restriction carries only that cluster; defective eigenvalues may
        # ring out to roughly (eps * norm) ** (1/n), so the bound is loose
        eigs = np.linalg.eigvals(op)
        assert np.max(np.abs(eigs - lam)) < 1e-2 * max(1.0, operator_norm(m))
