"""Joint spectra of solvable-algebra representations through a Cartan
decomposition.

Candidate spectral points always come from the simultaneous generalized
weight refinement of the representation restricted to the Cartan subalgebra;
the routes differ in how membership is confirmed:

* the Taylor / Slodkowski route builds the twisted chain complex and reads
  homology (windowed by level and side for the Slodkowski variants);
* the split route runs the same machinery on the one-sided multiplication
  representations acting on d x d matrices;
* an independent confirmation route never touches the chain complex and
  certifies each candidate by an explicit common eigenvector.

Every confirmed weight is lifted to a functional on the whole algebra by
zero extension on the sum of nonzero root spaces, and must vanish on the
derived subalgebra (the character condition).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cartan import CartanDecomposition, opposite_decomposition
from .koszul import HomologyProfile, build_complex, homology_dims, slodkowski_membership
from .liealg import derived_subalgebra, is_nilpotent
from .numkit import (
    DEFAULT_TOL,
    InputError,
    NumericalFailure,
    Subspace,
    Tolerance,
    as_vector,
    certified_weight_spaces,
    weight_sort_key,
)
from .rep import (
    DEFAULT_DIMENSION_CAP,
    Representation,
    left_mult_rep,
    require_valid_rep,
    restrict,
    right_mult_rep,
)

FINITE_DIM_EMPTY_REASON = "finite_dimensional_fredholm_trivial"

TAYLOR = "taylor"
SLODKOWSKI_DELTA = "slodkowski_delta"
SLODKOWSKI_PI = "slodkowski_pi"
SPLIT = "split"
SPLIT_DELTA = "split_delta"
SPLIT_PI = "split_pi"
ESSENTIAL_KINDS = (
    "essential_taylor",
    "essential_slodkowski_delta",
    "essential_slodkowski_pi",
    "essential_split",
    "essential_split_delta",
    "essential_split_pi",
)


@dataclass(frozen=True, eq=False)
class Character:
    """A functional on the algebra, flagged by whether it kills [L, L]."""

    coords: np.ndarray
    is_character: bool


def character_of(alg, coords, tol: Tolerance = DEFAULT_TOL) -> Character:
    coords = as_vector(coords, "functional coordinates")
    if coords.shape[0] != alg.dim:
        raise InputError("functional length does not match the algebra dimension")
    derived = derived_subalgebra(alg, tol)
    ok = all(
        abs(complex(coords @ derived.basis[:, j])) <= tol.match_eps
        for j in range(derived.dim)
    )
    return Character(coords=coords, is_character=ok)


@dataclass(frozen=True, eq=False)
class Weight:
    """A joint generalized weight of a nilpotent-algebra module."""

    values: np.ndarray
    multiplicity: int
    witness: np.ndarray
    space: Subspace


def weights_of_nilpotent_rep(h_rep: Representation, tol: Tolerance = DEFAULT_TOL) -> list[Weight]:
    """Weights with multiplicities and explicit common-eigenvector witnesses.

    Inside each joint generalized weight space the twisted operators act
    nilpotently and share a kernel vector; the witness is taken from the
    kernel of the stacked twisted operators restricted to the space.
    """
    if not is_nilpotent(h_rep.algebra, tol):
        raise InputError("weights are defined for nilpotent algebras only")
    r = h_rep.algebra.dim
    triples, _ = certified_weight_spaces(list(h_rep.mats), tol)
    scale = max([1.0] + [float(np.linalg.norm(h_rep.mats[j], 2)) for j in range(r)])
    weights = []
    for values, space, witness in triples:
        worst = max(
            float(np.linalg.norm(h_rep.mats[j] @ witness - values[j] * witness))
            for j in range(r)
        )
        if worst > tol.match_eps * scale:
            raise NumericalFailure(
                f"witness residual {worst:.3e} exceeds tolerance for a computed weight"
            )
        weights.append(
            Weight(values=values, multiplicity=space.dim, witness=witness, space=space)
        )
    return weights


@dataclass(frozen=True, eq=False)
class SpectrumPoint:
    character: Character
    multiplicity: int
    profile: HomologyProfile | None = None
    witness: np.ndarray | None = None


@dataclass(frozen=True, eq=False)
class SpectrumSet:
    """A computed spectrum: its kind, level, side, points, and provenance."""

    kind: str
    k: int | None
    side: str | None
    points: tuple[SpectrumPoint, ...]
    tolerance: Tolerance
    cartan_basis: np.ndarray
    reason: str | None = None

    def coords(self) -> list[np.ndarray]:
        return [p.character.coords for p in self.points]


def lift_weight(cd: CartanDecomposition, values) -> np.ndarray:
    """Extend a functional on H by zero on the nonzero root spaces.

    The extension is the unique functional f with f(h_j) = values_j on the
    Cartan basis and f = 0 on H*; in coordinates it solves B^T f = (values, 0)
    for the basis matrix B = [H | H*].
    """
    values = as_vector(values, "weight values")
    n = cd.algebra.dim
    basis = np.hstack([cd.h.basis, cd.h_star.basis])
    if basis.shape != (n, n):
        raise InputError("Cartan decomposition does not split the algebra")
    rhs = np.concatenate([values, np.zeros(cd.h_star.dim, dtype=complex)])
    return np.linalg.solve(basis.T, rhs)


def character_distance(a, b) -> float:
    a = as_vector(a)
    b = as_vector(b)
    if a.shape != b.shape:
        raise InputError("cannot compare functionals of different lengths")
    if a.shape[0] == 0:
        return 0.0
    return float(np.max(np.abs(a - b)))


def hausdorff_distance(set_a, set_b) -> float:
    """Hausdorff distance between finite sets of functionals in the sup norm."""
    list_a = [as_vector(v) for v in set_a]
    list_b = [as_vector(v) for v in set_b]
    if not list_a and not list_b:
        return 0.0
    if not list_a or not list_b:
        return float("inf")
    d_ab = max(min(character_distance(a, b) for b in list_b) for a in list_a)
    d_ba = max(min(character_distance(a, b) for a in list_a) for b in list_b)
    return max(d_ab, d_ba)


def _dedupe_points(points: list[SpectrumPoint], tol: Tolerance) -> list[SpectrumPoint]:
    merged: list[SpectrumPoint] = []
    for point in points:
        hit = None
        for i, existing in enumerate(merged):
            if character_distance(existing.character.coords, point.character.coords) <= tol.match_eps:
                hit = i
                break
        if hit is None:
            merged.append(point)
        else:
            kept = merged[hit]
            merged[hit] = SpectrumPoint(
                character=kept.character,
                multiplicity=kept.multiplicity + point.multiplicity,
                profile=kept.profile,
                witness=kept.witness,
            )
    merged.sort(key=lambda p: weight_sort_key(p.character.coords))
    return merged


@dataclass(frozen=True, eq=False)
class _Candidate:
    weight: Weight
    profile: HomologyProfile
    character: Character


class SpectrumFamily:
    """All spectra of one (representation, Cartan decomposition) pair.

    The weight refinement and the per-candidate homology profiles are
    computed once; each kind of spectrum is then a cheap membership filter.
    """

    def __init__(
        self,
        r: Representation,
        cd: CartanDecomposition,
        tol: Tolerance = DEFAULT_TOL,
    ) -> None:
        if cd.algebra is not r.algebra and not np.array_equal(
            cd.algebra.structure, r.algebra.structure
        ):
            raise InputError("representation and decomposition use different algebras")
        require_valid_rep(r, tol)
        self.rep = r
        self.cd = cd
        self.tol = tol
        h_rep = restrict(r, cd.h, tol)
        self.h_dim = cd.h.dim
        self.candidates: list[_Candidate] = []
        for weight in weights_of_nilpotent_rep(h_rep, tol):
            cx = build_complex(h_rep, weight.values, tol)
            profile = homology_dims(cx, tol)
            lifted = lift_weight(cd, weight.values)
            character = character_of(r.algebra, lifted, tol)
            self.candidates.append(
                _Candidate(weight=weight, profile=profile, character=character)
            )

    def _assemble(
        self,
        selected: list[_Candidate],
        kind: str,
        k: int | None,
        side: str | None,
    ) -> SpectrumSet:
        points = [
            SpectrumPoint(
                character=c.character,
                multiplicity=c.weight.multiplicity,
                profile=c.profile,
                witness=c.weight.witness,
            )
            for c in selected
        ]
        points = _dedupe_points(points, self.tol)
        for point in points:
            if not point.character.is_character:
                raise NumericalFailure(
                    "computed spectral point does not vanish on the derived subalgebra; "
                    "tolerance breakdown"
                )
        if not points:
            raise NumericalFailure(
                f"computed {kind} spectrum is empty; this cannot happen for a valid "
                "finite-dimensional module"
            )
        return SpectrumSet(
            kind=kind,
            k=k,
            side=side,
            points=tuple(points),
            tolerance=self.tol,
            cartan_basis=self.cd.h.basis,
        )

    def taylor(self, kind: str = TAYLOR) -> SpectrumSet:
        selected = [c for c in self.candidates if any(dim > 0 for dim in c.profile.dims)]
        return self._assemble(selected, kind, None, None)

    def slodkowski(self, k: int, side: str, kind: str | None = None) -> SpectrumSet:
        if not 0 <= k <= self.rep.algebra.dim:
            raise InputError(f"level k must lie in 0..{self.rep.algebra.dim}, got {k}")
        if side not in ("delta", "pi"):
            raise InputError(f"side must be 'delta' or 'pi', got {side!r}")
        k_eff = min(k, self.h_dim)
        selected = [
            c for c in self.candidates if slodkowski_membership(c.profile, k_eff, side)
        ]
        if kind is None:
            kind = SLODKOWSKI_DELTA if side == "delta" else SLODKOWSKI_PI
        return self._assemble(selected, kind, k, side)

def cartan_taylor(
    r: Representation, cd: CartanDecomposition, tol: Tolerance = DEFAULT_TOL
) -> SpectrumSet:
    """Points whose twisted chain complex has nonvanishing homology."""
    return SpectrumFamily(r, cd, tol).taylor()


def cartan_slodkowski(
    r: Representation,
    cd: CartanDecomposition,
    k: int,
    side: str,
    tol: Tolerance = DEFAULT_TOL,
) -> SpectrumSet:
    """Windowed membership: homology in degrees 0..k (delta) or r-k..r (pi)."""
    return SpectrumFamily(r, cd, tol).slodkowski(k, side)


def cartan_split(
    r: Representation,
    cd: CartanDecomposition,
    k: int | None = None,
    side: str | None = None,
    tol: Tolerance = DEFAULT_TOL,
    cap: int = DEFAULT_DIMENSION_CAP,
) -> SpectrumSet:
    """Split spectra through the one-sided multiplication representations.

    The delta side is the delta spectrum of left multiplication; the pi side
    is the delta spectrum of right multiplication, which lives over the
    opposite algebra and is read back through the coordinate identification
    of functionals. With no side, the plain split spectrum is the Taylor
    spectrum of left multiplication.
    """
    if side is None:
        if k is not None:
            raise InputError("plain split spectrum takes no level")
        family = SpectrumFamily(left_mult_rep(r, cap), cd, tol)
        return family.taylor(kind=SPLIT)
    if k is None:
        raise InputError("sided split spectra need a level k")
    if side == "delta":
        family = SpectrumFamily(left_mult_rep(r, cap), cd, tol)
        return family.slodkowski(k, "delta", kind=SPLIT_DELTA)
    if side == "pi":
        family = SpectrumFamily(right_mult_rep(r, cap), opposite_decomposition(cd), tol)
        out = family.slodkowski(k, "delta", kind=SPLIT_PI)
        return SpectrumSet(
            kind=SPLIT_PI,
            k=k,
            side="pi",
            points=out.points,
            tolerance=out.tolerance,
            cartan_basis=cd.h.basis,
        )
    raise InputError(f"side must be 'delta', 'pi', or None, got {side!r}")


def cartan_essential(
    r: Representation,
    cd: CartanDecomposition,
    kind: str = "essential_taylor",
    k: int | None = None,
    side: str | None = None,
    tol: Tolerance = DEFAULT_TOL,
) -> SpectrumSet:
    """Essential spectra are empty in finite dimensions: every operator on a
    finite-dimensional space is Fredholm, so no quotient obstruction survives."""
    if kind not in ESSENTIAL_KINDS:
        raise InputError(f"unknown essential kind {kind!r}")
    require_valid_rep(r, tol)
    return SpectrumSet(
        kind=kind,
        k=k,
        side=side,
        points=(),
        tolerance=tol,
        cartan_basis=cd.h.basis,
        reason=FINITE_DIM_EMPTY_REASON,
    )


def spectrum_by_common_eigenvectors(
    r: Representation, cd: CartanDecomposition, tol: Tolerance = DEFAULT_TOL
) -> SpectrumSet:
    """Independent confirmation route: candidates from the weight refinement,
    membership certified by an explicit common eigenvector.

    This path never builds a chain complex, so it cross-checks the homology
    route end to end: a point belongs to the spectrum exactly when some
    nonzero vector satisfies rho(h) x = f(h) x for every h in the Cartan
    subalgebra and the lift kills the derived subalgebra.
    """
    if cd.algebra is not r.algebra and not np.array_equal(
        cd.algebra.structure, r.algebra.structure
    ):
        raise InputError("representation and decomposition use different algebras")
    require_valid_rep(r, tol)
    h_rep = restrict(r, cd.h, tol)
    points = []
    for weight in weights_of_nilpotent_rep(h_rep, tol):
        lifted = lift_weight(cd, weight.values)
        character = character_of(r.algebra, lifted, tol)
        if not character.is_character:
            raise NumericalFailure(
                "eigenvector-confirmed point does not vanish on the derived subalgebra"
            )
        points.append(
            SpectrumPoint(
                character=character,
                multiplicity=weight.multiplicity,
                profile=None,
                witness=weight.witness,
            )
        )
    points = _dedupe_points(points, tol)
    return SpectrumSet(
        kind=TAYLOR,
        k=None,
        side=None,
        points=tuple(points),
        tolerance=tol,
        cartan_basis=cd.h.basis,
    )
