"""Spectra of the catalog modules, with hand-computed and brute-force oracles.

Affine module oracle: restricting diag(1, 0) to H = span{e1} gives weights
{1, 0}; both lift by zero on the root line span{e2}, so every spectrum kind
must produce exactly {(1, 0), (0, 0)}.  The same set must appear over the
second Cartan subalgebra span{e1 + e2} because the restricted matrix
[[1, 1], [0, 0]] has the same eigenvalues.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cartanspec.cartan import (
    cartan_decomposition,
    root_decomposition,
    whole_algebra_decomposition,
)
from cartanspec.numkit import InputError
from cartanspec.spectra import (
    ESSENTIAL_KINDS,
    FINITE_DIM_EMPTY_REASON,
    cartan_essential,
    cartan_slodkowski,
    cartan_split,
    cartan_taylor,
    character_distance,
    character_of,
    hausdorff_distance,
    lift_weight,
    spectrum_by_common_eigenvectors,
    weights_of_nilpotent_rep,
)
from cartanspec.rep import restrict
from cartanspec.verify import random_solvable_instance


def coord_set(spec, ndigits=8):
    return {tuple(np.round(np.asarray(c).real, ndigits)) for c in spec.coords()}


class TestCharacters:
    def test_affine_character_condition(self, affine, tol):
        assert character_of(affine, [1.0, 0.0], tol).is_character
        assert character_of(affine, [0.0, 0.0], tol).is_character
        assert not character_of(affine, [0.0, 1.0], tol).is_character

    def test_length_mismatch(self, affine, tol):
        with pytest.raises(InputError):
            character_of(affine, [1.0], tol)

    def test_character_distance_is_sup_norm(self):
        assert character_distance([1.0, 2.0], [1.5, 2.0]) == pytest.approx(0.5)
        with pytest.raises(InputError):
            character_distance([1.0], [1.0, 2.0])

    def test_hausdorff_edge_cases(self):
        assert hausdorff_distance([], []) == 0.0
        assert hausdorff_distance([np.array([1.0])], []) == float("inf")
        a = [np.array([0.0, 0.0]), np.array([1.0, 0.0])]
        b = [np.array([0.0, 0.1]), np.array([1.0, 0.0])]
        assert hausdorff_distance(a, b) == pytest.approx(0.1)


class TestWeights:
    def test_commuting_diagonals(self, abelian_rep, tol):
        weights = weights_of_nilpotent_rep(abelian_rep, tol)
        seen = {tuple(np.round(w.values.real, 8)): w.multiplicity for w in weights}
        assert seen == {(1.0, 3.0): 1, (2.0, 4.0): 1}
        for w in weights:
            for mat, value in zip(abelian_rep.mats, w.values):
                assert np.linalg.norm(mat @ w.witness - value * w.witness) < 1e-9

    def test_strictly_upper_module_has_single_zero_weight(self, heisenberg_rep, tol):
        weights = weights_of_nilpotent_rep(heisenberg_rep, tol)
        assert len(weights) == 1
        assert np.max(np.abs(weights[0].values)) < 1e-12
        assert weights[0].multiplicity == 3

    def test_non_nilpotent_algebra_is_rejected(self, affine_rep, tol):
        with pytest.raises(InputError, match="nilpotent"):
            weights_of_nilpotent_rep(affine_rep, tol)


class TestLift:
    def test_lift_over_standard_cartan(self, affine, affine_rep, cartan_e1, tol):
        cd = root_decomposition(affine, cartan_e1, tol)
        assert np.allclose(lift_weight(cd, [7.0]), [7.0, 0.0])

    def test_lift_over_diagonal_cartan(self, affine, cartan_e1_plus_e2, tol):
        # f(e1 + e2) = w and f(e2) = 0 force f = (w, 0)
        cd = root_decomposition(affine, cartan_e1_plus_e2, tol)
        assert np.allclose(lift_weight(cd, [7.0]), [7.0, 0.0])


class TestAffineSpectra:
    def test_taylor_points(self, affine, affine_rep, cartan_e1, tol):
        cd = root_decomposition(affine, cartan_e1, tol)
        spec = cartan_taylor(affine_rep, cd, tol)
        assert coord_set(spec) == {(1.0, 0.0), (0.0, 0.0)}
        assert sorted(p.multiplicity for p in spec.points) == [1, 1]
        assert all(p.character.is_character for p in spec.points)

    def test_every_kind_collapses_to_the_same_set(self, affine, affine_rep, cartan_e1, tol):
        cd = root_decomposition(affine, cartan_e1, tol)
        expected = {(1.0, 0.0), (0.0, 0.0)}
        assert coord_set(spectrum_by_common_eigenvectors(affine_rep, cd, tol)) == expected
        for k in (0, 1, 2):
            for side in ("delta", "pi"):
                assert coord_set(cartan_slodkowski(affine_rep, cd, k, side, tol)) == expected
        assert coord_set(cartan_split(affine_rep, cd, tol=tol)) == expected
        for k in (0, 1):
            assert coord_set(cartan_split(affine_rep, cd, k=k, side="delta", tol=tol)) == expected
            assert coord_set(cartan_split(affine_rep, cd, k=k, side="pi", tol=tol)) == expected

    def test_same_points_over_the_other_cartan(
        self, affine, affine_rep, cartan_e1_plus_e2, tol
    ):
        cd = root_decomposition(affine, cartan_e1_plus_e2, tol)
        assert coord_set(cartan_taylor(affine_rep, cd, tol)) == {(1.0, 0.0), (0.0, 0.0)}

    def test_split_pi_reports_the_original_cartan_basis(
        self, affine, affine_rep, cartan_e1, tol
    ):
        cd = root_decomposition(affine, cartan_e1, tol)
        spec = cartan_split(affine_rep, cd, k=0, side="pi", tol=tol)
        assert np.allclose(spec.cartan_basis, cd.h.basis)
        assert spec.kind == "split_pi"


class TestNilpotentSpectra:
    def test_heisenberg_single_point(self, heisenberg, heisenberg_rep, tol):
        cd = whole_algebra_decomposition(heisenberg, tol)
        spec = cartan_taylor(heisenberg_rep, cd, tol)
        assert coord_set(spec) == {(0.0, 0.0, 0.0)}
        assert spec.points[0].multiplicity == 3
        route = spectrum_by_common_eigenvectors(heisenberg_rep, cd, tol)
        assert coord_set(route) == coord_set(spec)

    def test_abelian_diagonals_match_brute_force(self, abelian_rep, tol):
        cd = whole_algebra_decomposition(abelian_rep.algebra, tol)
        spec = cartan_taylor(abelian_rep, cd, tol)
        # brute force: the matrices are diagonal, so the standard basis
        # vectors enumerate every common eigenvector
        oracle = {
            tuple(float(m[i, i].real) for m in abelian_rep.mats)
            for i in range(abelian_rep.space_dim)
        }
        assert coord_set(spec) == oracle


class TestArgumentChecks:
    def test_plain_split_takes_no_level(self, affine, affine_rep, cartan_e1, tol):
        cd = root_decomposition(affine, cartan_e1, tol)
        with pytest.raises(InputError, match="no level"):
            cartan_split(affine_rep, cd, k=1, tol=tol)

    def test_sided_split_needs_a_level(self, affine, affine_rep, cartan_e1, tol):
        cd = root_decomposition(affine, cartan_e1, tol)
        with pytest.raises(InputError, match="level"):
            cartan_split(affine_rep, cd, side="delta", tol=tol)

    def test_bad_side_is_rejected(self, affine, affine_rep, cartan_e1, tol):
        cd = root_decomposition(affine, cartan_e1, tol)
        with pytest.raises(InputError):
            cartan_slodkowski(affine_rep, cd, 0, "sigma", tol)
        with pytest.raises(InputError):
            cartan_split(affine_rep, cd, k=0, side="sigma", tol=tol)

    def test_level_beyond_algebra_dim_is_rejected(self, affine, affine_rep, cartan_e1, tol):
        cd = root_decomposition(affine, cartan_e1, tol)
        with pytest.raises(InputError, match="level"):
            cartan_slodkowski(affine_rep, cd, 3, "delta", tol)

    def test_level_between_cartan_and_algebra_dim_clamps(
        self, affine, affine_rep, cartan_e1, tol
    ):
        cd = root_decomposition(affine, cartan_e1, tol)
        low = cartan_slodkowski(affine_rep, cd, 1, "delta", tol)
        high = cartan_slodkowski(affine_rep, cd, 2, "delta", tol)
        assert coord_set(low) == coord_set(high)

    def test_mismatched_algebra_is_rejected(self, heisenberg_rep, affine, cartan_e1, tol):
        cd = root_decomposition(affine, cartan_e1, tol)
        with pytest.raises(InputError):
            cartan_taylor(heisenberg_rep, cd, tol)


class TestEssential:
    def test_all_kinds_are_empty_with_a_reason(self, affine, affine_rep, cartan_e1, tol):
        cd = root_decomposition(affine, cartan_e1, tol)
        for kind in ESSENTIAL_KINDS:
            spec = cartan_essential(affine_rep, cd, kind=kind, tol=tol)
            assert spec.points == ()
            assert spec.reason == FINITE_DIM_EMPTY_REASON

    def test_unknown_kind_is_rejected(self, affine, affine_rep, cartan_e1, tol):
        cd = root_decomposition(affine, cartan_e1, tol)
        with pytest.raises(InputError, match="essential"):
            cartan_essential(affine_rep, cd, kind="essential_bogus", tol=tol)


@settings(max_examples=10, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10**9))
def test_homology_route_matches_eigenvector_route(seed):
    inst = random_solvable_instance(seed)
    cd = cartan_decomposition(inst.algebra, seed=0)
    taylor = cartan_taylor(inst.rep, cd)
    route = spectrum_by_common_eigenvectors(inst.rep, cd)
    assert hausdorff_distance(taylor.coords(), route.coords()) <= 1e-6
    total = sum(p.multiplicity for p in taylor.points)
    assert total == inst.rep.space_dim
