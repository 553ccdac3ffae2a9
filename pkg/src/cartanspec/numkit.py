"""Tolerance-controlled dense complex linear algebra.

Matrices are numpy arrays of complex128, validated to be finite at API
boundaries.  Rank decisions compare singular values against ``rank_eps``
times the largest singular value; eigenvalues and characters are identified
when closer than the absolute distance ``match_eps``.  Every routine here is
pure and deterministic: identical inputs and tolerances give bit-identical
outputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

DEFAULT_RANK_EPS = 1e-9
DEFAULT_MATCH_EPS = 1e-7


class InputError(ValueError):
    """A caller-supplied value violates a documented precondition."""


class NumericalFailure(RuntimeError):
    """A computation could not be completed reliably at the working tolerance."""


@dataclass(frozen=True)
class Tolerance:
    """Numeric thresholds shared by the whole pipeline.

    ``rank_eps`` is relative to the largest singular value of the matrix
    under inspection; ``match_eps`` is the absolute distance at which two
    eigenvalues or two characters are considered equal.
    """

    rank_eps: float = DEFAULT_RANK_EPS
    match_eps: float = DEFAULT_MATCH_EPS

    def __post_init__(self) -> None:
        for name in ("rank_eps", "match_eps"):
            value = getattr(self, name)
            if not (np.isreal(value) and np.isfinite(value) and value > 0):
                raise InputError(f"{name} must be a positive finite real, got {value!r}")


DEFAULT_TOL = Tolerance()


def as_matrix(entries, what: str = "matrix") -> np.ndarray:
    """Coerce to a finite complex 2-d array."""
    m = np.asarray(entries, dtype=complex)
    if m.ndim != 2:
        raise InputError(f"{what} must be 2-dimensional, got shape {m.shape}")
    if m.size and not np.all(np.isfinite(m)):
        raise InputError(f"{what} contains non-finite entries")
    return m


def as_square(entries, what: str = "matrix") -> np.ndarray:
    m = as_matrix(entries, what)
    if m.shape[0] != m.shape[1]:
        raise InputError(f"{what} must be square, got shape {m.shape}")
    return m


def as_vector(entries, what: str = "vector") -> np.ndarray:
    v = np.asarray(entries, dtype=complex)
    if v.ndim != 1:
        raise InputError(f"{what} must be 1-dimensional, got shape {v.shape}")
    if v.size and not np.all(np.isfinite(v)):
        raise InputError(f"{what} contains non-finite entries")
    return v


def singular_values(m) -> np.ndarray:
    m = as_matrix(m)
    if 0 in m.shape:
        return np.zeros(0)
    return np.linalg.svd(m, compute_uv=False)


def rank_with_tol(m, tol: Tolerance = DEFAULT_TOL, scale: float = 0.0) -> int:
    """Number of singular values above ``rank_eps`` relative to the largest.

    ``scale`` raises the reference point: a matrix whose largest singular
    value is itself just rounding noise relative to the scale of the
    computation that produced it would otherwise be judged full rank, the
    threshold being relative to that noise.
    """
    s = singular_values(m)
    if s.size == 0:
        return 0
    reference = max(float(s[0]), float(scale))
    if reference == 0.0:
        return 0
    return int(np.count_nonzero(s > tol.rank_eps * reference))


def operator_norm(m) -> float:
    s = singular_values(m)
    return float(s[0]) if s.size else 0.0


@dataclass(frozen=True)
class Subspace:
    """A subspace of C^ambient_dim spanned by the (independent) columns of basis."""

    ambient_dim: int
    basis: np.ndarray

    def __post_init__(self) -> None:
        basis = as_matrix(self.basis, "subspace basis")
        if basis.shape[0] != self.ambient_dim:
            raise InputError(
                f"basis rows {basis.shape[0]} do not match ambient dimension {self.ambient_dim}"
            )
        basis = basis.copy()
        basis.setflags(write=False)
        object.__setattr__(self, "basis", basis)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @staticmethod
    def full(n: int) -> "Subspace":
        return Subspace(n, np.eye(n, dtype=complex))

    @staticmethod
    def zero(n: int) -> "Subspace":
        return Subspace(n, np.zeros((n, 0), dtype=complex))


def orthonormal_columns(m, tol: Tolerance = DEFAULT_TOL, scale: float = 0.0) -> np.ndarray:
    """Orthonormal basis for the column space, rank decided at tolerance.

    ``scale`` has the same meaning as in rank_with_tol.
    """
    m = as_matrix(m)
    if 0 in m.shape:
        return np.zeros((m.shape[0], 0), dtype=complex)
    u, s, _ = np.linalg.svd(m, full_matrices=False)
    reference = max(float(s[0]), float(scale)) if s.size else float(scale)
    if reference == 0.0:
        return np.zeros((m.shape[0], 0), dtype=complex)
    r = int(np.count_nonzero(s > tol.rank_eps * reference))
    return u[:, :r]


def span(columns, tol: Tolerance = DEFAULT_TOL, scale: float = 0.0) -> Subspace:
    columns = as_matrix(columns, "spanning columns")
    return Subspace(columns.shape[0], orthonormal_columns(columns, tol, scale=scale))


def kernel_basis(m, tol: Tolerance = DEFAULT_TOL, scale: float = 0.0) -> Subspace:
    """Orthonormal kernel basis; its dimension is cols - rank_with_tol(m).

    ``scale`` has the same meaning as in rank_with_tol.
    """
    m = as_matrix(m)
    rows, cols = m.shape
    if cols == 0:
        return Subspace.zero(0)
    if rows == 0:
        return Subspace.full(cols)
    _, s, vh = np.linalg.svd(m, full_matrices=True)
    reference = max(float(s[0]), float(scale)) if s.size else float(scale)
    if reference == 0.0:
        r = 0
    else:
        r = int(np.count_nonzero(s > tol.rank_eps * reference))
    return Subspace(cols, vh[r:, :].conj().T)


def power_kernel(m, power: int, tol: Tolerance = DEFAULT_TOL) -> Subspace:
    """Kernel of m**power.

    The matrix is normalized by its largest singular value before powering,
    so the normalized power is a contraction and the rank threshold can be
    the absolute value ``rank_eps``.  This keeps the decision stable when
    the power collapses to numerical noise.
    """
    m = as_square(m)
    n = m.shape[0]
    if power < 1:
        raise InputError(f"power must be >= 1, got {power}")
    if n == 0:
        return Subspace.full(0)
    s0 = operator_norm(m)
    if s0 == 0.0:
        return Subspace.full(n)
    q = np.linalg.matrix_power(m / s0, power)
    _, s, vh = np.linalg.svd(q, full_matrices=True)
    r = int(np.count_nonzero(s > tol.rank_eps))
    return Subspace(n, vh[r:, :].conj().T)


def subspace_sum(a: Subspace, b: Subspace, tol: Tolerance = DEFAULT_TOL) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise InputError("subspaces live in different ambient spaces")
    return span(np.hstack([a.basis, b.basis]), tol)


def subspace_intersection(a: Subspace, b: Subspace, tol: Tolerance = DEFAULT_TOL) -> Subspace:
    """Intersection via the kernel of the concatenation [A | -B]."""
    if a.ambient_dim != b.ambient_dim:
        raise InputError("subspaces live in different ambient spaces")
    n = a.ambient_dim
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(n)
    paired = kernel_basis(np.hstack([a.basis, -b.basis]), tol)
    if paired.dim == 0:
        return Subspace.zero(n)
    vectors = a.basis @ paired.basis[: a.dim, :]
    return span(vectors, tol)


def subspace_contains(s: Subspace, v, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Least-squares projection residual tested against match_eps."""
    v = as_vector(v)
    if v.shape[0] != s.ambient_dim:
        raise InputError("vector dimension does not match ambient space")
    norm_v = float(np.linalg.norm(v))
    if s.dim == 0:
        return norm_v <= tol.match_eps
    coeffs = np.linalg.lstsq(s.basis, v, rcond=None)[0]
    residual = float(np.linalg.norm(v - s.basis @ coeffs))
    return residual <= tol.match_eps * max(1.0, norm_v)


def subspaces_equal(a: Subspace, b: Subspace, tol: Tolerance = DEFAULT_TOL) -> bool:
    if a.ambient_dim != b.ambient_dim:
        raise InputError("subspaces live in different ambient spaces")
    ra = rank_with_tol(a.basis, tol)
    rb = rank_with_tol(b.basis, tol)
    if ra != rb:
        return False
    if ra == 0:
        return True
    return rank_with_tol(np.hstack([a.basis, b.basis]), tol) == ra


def _cluster_single_linkage(values: np.ndarray, radius: float) -> list[np.ndarray]:
    """Group scalars with single-linkage at the given radius.

    Returns index arrays, one per cluster, ordered by the (re, im) key of
    the cluster mean.
    """
    k = values.shape[0]
    parent = list(range(k))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(k):
        for j in range(i + 1, k):
            if abs(values[i] - values[j]) <= radius:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[rj] = ri
    groups: dict[int, list[int]] = {}
    for i in range(k):
        groups.setdefault(find(i), []).append(i)
    clusters = [np.array(ix, dtype=int) for ix in groups.values()]
    means = [complex(np.mean(values[ix])) for ix in clusters]
    order = sorted(range(len(clusters)), key=lambda c: (means[c].real, means[c].imag))
    return [clusters[c] for c in order]


@dataclass(frozen=True)
class EigenDecomposition:
    """Generalized eigenspaces of one operator.

    ``clustering_ambiguous`` is set when two distinct clusters end up with
    representatives closer than twice match_eps, i.e. the grouping of nearby
    eigenvalues was borderline.
    """

    pairs: tuple[tuple[complex, Subspace], ...]
    clustering_ambiguous: bool


def _largest_linkage_gap(values: np.ndarray) -> float:
    """Largest merge height of single-linkage clustering (the widest edge of
    a minimal spanning tree over the scalars)."""
    k = values.shape[0]
    parent = list(range(k))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    edges = sorted(
        (abs(complex(values[i] - values[j])), i, j)
        for i in range(k)
        for j in range(i + 1, k)
    )
    remaining = k
    last = 0.0
    for dist, i, j in edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[rj] = ri
            last = dist
            remaining -= 1
            if remaining == 1:
                break
    return last


def generalized_eigenspaces(m, tol: Tolerance = DEFAULT_TOL) -> EigenDecomposition:
    """Cluster the eigenvalues of m and return one invariant subspace each.

    Each subspace comes from a sorted Schur decomposition selecting exactly
    that cluster's eigenvalues, so its dimension is the cluster size by
    construction — no rank decision is involved, which keeps the result
    stable when a cluster's block of m is itself numerically zero.

    Clustering starts at match_eps but must also survive defectivity: a
    defective eigenvalue of chain length k perturbs into a ring of radius
    about (eps * norm)**(1/k), which can exceed any fixed radius, and the
    fragments of such a ring span their joint weight space too poorly to be
    recombined after the fact.  Fine clusters closer than the ring bound are
    therefore candidate-merged here, where the merged invariant subspace can
    be re-extracted from m itself at full accuracy; a merge is kept exactly
    when that subspace still contains an eigenvector for the merged mean.
    Genuinely distinct eigenvalues fail that certificate and stay separate,
    so the bound only feeds candidates and never decides identification.
    """
    m = as_square(m)
    n = m.shape[0]
    if n == 0:
        return EigenDecomposition(pairs=(), clustering_ambiguous=False)
    if n == 1:
        return EigenDecomposition(
            pairs=((complex(m[0, 0]), Subspace.full(1)),), clustering_ambiguous=False
        )
    t, _ = scipy.linalg.schur(m, output="complex")
    eigenvalues = np.diag(t)
    scale = max(1.0, operator_norm(m))
    fine = _cluster_single_linkage(eigenvalues, tol.match_eps)

    subspace_cache: dict[tuple[int, ...], Subspace | None] = {}

    def invariant_subspace(ix: np.ndarray):
        key = tuple(sorted(int(i) for i in ix))
        if key in subspace_cache:
            return subspace_cache[key]
        if len(key) == n:
            out: Subspace | None = Subspace.full(n)
        else:
            chosen = set(key)
            members = eigenvalues[list(key)]
            others = eigenvalues[[i for i in range(n) if i not in chosen]]

            def belongs(z: complex) -> bool:
                return float(np.min(np.abs(members - z))) < float(
                    np.min(np.abs(others - z))
                )

            _, zmat, sdim = scipy.linalg.schur(
                m, output="complex", sort=lambda v: belongs(complex(v))
            )
            out = Subspace(n, zmat[:, :sdim]) if sdim == len(key) else None
        subspace_cache[key] = out
        return out

    def certified(ix: np.ndarray) -> bool:
        space = invariant_subspace(ix)
        if space is None:
            return False
        mean = complex(np.mean(eigenvalues[ix]))
        op = space.basis.conj().T @ m @ space.basis
        kern = kernel_basis(
            op - mean * np.eye(space.dim, dtype=complex), tol, scale=scale
        )
        return kern.dim > 0

    def consolidate(group: list[np.ndarray]) -> list[np.ndarray]:
        if len(group) == 1:
            return group
        merged = np.concatenate(group)
        if certified(merged):
            return [merged]
        means = np.array([np.mean(eigenvalues[g]) for g in group])
        split_radius = np.nextafter(_largest_linkage_gap(means), 0.0)
        parts = _cluster_single_linkage(means, split_radius)
        if len(parts) <= 1:
            return group
        out: list[np.ndarray] = []
        for part in parts:
            out.extend(consolidate([group[int(i)] for i in part]))
        return out

    u = float(np.finfo(np.float64).eps)
    ring_bound = max(tol.match_eps, 10.0 * (u * scale) ** 0.25)
    fine_means = np.array([np.mean(eigenvalues[ix]) for ix in fine])
    clusters: list[np.ndarray] = []
    for component in _cluster_single_linkage(fine_means, ring_bound):
        clusters.extend(consolidate([fine[int(i)] for i in component]))

    pairs = []
    for ix in clusters:
        lam = complex(np.mean(eigenvalues[ix]))
        space = invariant_subspace(ix)
        if space is None:
            raise NumericalFailure(
                f"eigenvalue cluster of size {len(ix)} did not re-sort stably; "
                "clusters are too close to separate at this tolerance"
            )
        pairs.append((lam, space))
    pairs.sort(key=lambda p: (p[0].real, p[0].imag))
    reps = [lam for lam, _ in pairs]
    ambiguous = any(
        abs(reps[i] - reps[j]) <= 2.0 * tol.match_eps
        for i in range(len(reps))
        for j in range(i + 1, len(reps))
    )
    combined = np.hstack([space.basis for _, space in pairs])
    if rank_with_tol(combined, tol) != n:
        raise NumericalFailure("generalized eigenspaces are not independent at this tolerance")
    return EigenDecomposition(pairs=tuple(pairs), clustering_ambiguous=ambiguous)


def weight_sort_key(values: np.ndarray) -> tuple:
    return tuple(float(part) for z in values for part in (z.real, z.imag))


def joint_generalized_eigenspaces(
    mats, tol: Tolerance = DEFAULT_TOL
) -> tuple[list[tuple[np.ndarray, Subspace]], bool]:
    """Simultaneous generalized-eigenspace refinement of a matrix family.

    The family must leave each member's generalized eigenspaces invariant,
    as holds for representations of nilpotent Lie algebras; a violated
    invariance is reported as NumericalFailure.  Returns (weight vector,
    subspace) pairs sorted by weight, plus a clustering-ambiguity flag.
    """
    mats = [as_square(m) for m in mats]
    if not mats:
        raise InputError("need at least one matrix to refine")
    d = mats[0].shape[0]
    for m in mats:
        if m.shape[0] != d:
            raise InputError("matrices have mismatched shapes")
    branches: list[tuple[np.ndarray, list[complex]]] = [(np.eye(d, dtype=complex), [])]
    ambiguous = False
    for m in mats:
        scale = max(1.0, operator_norm(m))
        guard = 1e3 * tol.rank_eps * scale * np.sqrt(max(d, 1))
        refined: list[tuple[np.ndarray, list[complex]]] = []
        for basis, weight in branches:
            op = basis.conj().T @ m @ basis
            drift = float(np.linalg.norm(m @ basis - basis @ op))
            if drift > guard:
                raise NumericalFailure(
                    f"refinement subspace is not invariant (residual {drift:.3e}); "
                    "the family does not admit a joint weight decomposition at this tolerance"
                )
            dec = generalized_eigenspaces(op, tol)
            ambiguous = ambiguous or dec.clustering_ambiguous
            for lam, sub in dec.pairs:
                refined.append((basis @ sub.basis, weight + [lam]))
        branches = refined
    out = [(np.array(w, dtype=complex), Subspace(d, b)) for b, w in branches]
    out.sort(key=lambda pair: weight_sort_key(pair[0]))
    total = sum(space.dim for _, space in out)
    if total != d:
        raise NumericalFailure(f"joint weight spaces sum to {total}, expected {d}")
    return out, ambiguous


def certified_weight_spaces(
    mats, tol: Tolerance = DEFAULT_TOL
) -> tuple[list[tuple[np.ndarray, Subspace, np.ndarray]], bool]:
    """Joint weight spaces of a family, each certified by a common eigenvector.

    The family must act so that every true joint weight space contains a
    common eigenvector (any jointly triangularizable family qualifies, in
    particular a nilpotent Lie algebra acting on a module).  A defective
    eigenvalue perturbs, under roundoff, into a ring of simple eigenvalues of
    radius roughly (eps * norm)**(1/k) for a length-k chain — wide enough to
    defeat any fixed clustering radius — so the raw refinement can split one
    weight space into fragments whose recorded values carry the full ring
    error.  Two repairs run here, both arbitrated by the certificate itself
    rather than by a radius guess:

    * an entry with no common eigenvector is merged into the nearest sibling
      whose union certifies, else the computation fails loudly;
    * entries closer than the ring bound are candidate-merged, and the merge
      is kept only when the union still has a common eigenvector — the mean
      over a complete ring cancels the perturbation to leading order, while
      genuinely distinct weights fail the certificate and stay apart.

    Returns (values, space, witness) triples sorted by weight, plus the
    clustering-ambiguity flag of the underlying refinement.
    """
    pairs, ambiguous = joint_generalized_eigenspaces(mats, tol)
    mats = [as_square(m) for m in mats]
    d = mats[0].shape[0]
    op_scale = max([1.0] + [operator_norm(m) for m in mats])

    def witness_of(values: np.ndarray, space: Subspace):
        basis = space.basis
        stacked = np.vstack(
            [
                basis.conj().T @ m @ basis - values[j] * np.eye(space.dim, dtype=complex)
                for j, m in enumerate(mats)
            ]
        )
        k = kernel_basis(stacked, tol, scale=op_scale)
        if k.dim == 0:
            return None
        return unit_with_deterministic_phase(basis @ k.basis[:, 0])

    class Entry:
        __slots__ = ("values", "space", "witness", "uid")

        def __init__(self, values, space, uid):
            self.values = np.asarray(values, dtype=complex)
            self.space = space
            self.witness = witness_of(self.values, space)
            self.uid = uid

    next_uid = iter(range(10**9))
    entries = [Entry(v, s, next(next_uid)) for v, s in pairs]

    def distance(a: Entry, b: Entry) -> float:
        return float(np.max(np.abs(a.values - b.values)))

    def merged_entry(a: Entry, b: Entry):
        da, db = a.space.dim, b.space.dim
        values = (da * a.values + db * b.values) / (da + db)
        basis = orthonormal_columns(np.hstack([a.space.basis, b.space.basis]), tol)
        if basis.shape[1] != da + db:
            raise NumericalFailure(
                "weight-space fragments failed to merge into an independent space"
            )
        candidate = Entry(values, Subspace(d, basis), next(next_uid))
        return candidate if candidate.witness is not None else None

    # Repair entries that lack the certificate outright.
    while any(e.witness is None for e in entries):
        if len(entries) == 1:
            raise NumericalFailure(
                "a joint weight space has no common eigenvector at this tolerance"
            )
        sick = next(e for e in entries if e.witness is None)
        others = sorted(
            (e for e in entries if e is not sick),
            key=lambda e: (distance(e, sick), e.uid),
        )
        for other in others:
            merged = merged_entry(sick, other)
            if merged is not None:
                entries = [e for e in entries if e not in (sick, other)] + [merged]
                break
        else:
            raise NumericalFailure(
                "a joint weight space has no common eigenvector at this tolerance"
            )

    # Consolidate defective-eigenvalue rings: candidate pairs inside the ring
    # bound, kept only when the union certifies.
    u = float(np.finfo(np.float64).eps)
    ring_bound = 10.0 * (u * op_scale) ** 0.25
    rejected: set[tuple[int, int]] = set()
    while True:
        candidates = [
            (distance(a, b), a.uid, b.uid, a, b)
            for ix, a in enumerate(entries)
            for b in entries[ix + 1 :]
            if distance(a, b) <= ring_bound
            and (min(a.uid, b.uid), max(a.uid, b.uid)) not in rejected
        ]
        if not candidates:
            break
        candidates.sort(key=lambda c: (c[0], c[1], c[2]))
        _, ua, ub, a, b = candidates[0]
        merged = merged_entry(a, b)
        if merged is None:
            rejected.add((min(ua, ub), max(ua, ub)))
            continue
        entries = [e for e in entries if e not in (a, b)] + [merged]

    entries.sort(key=lambda e: weight_sort_key(e.values))
    triples = [(e.values, e.space, e.witness) for e in entries]
    return triples, ambiguous


def generalized_zero_eigenspace(m, tol: Tolerance = DEFAULT_TOL) -> Subspace:
    """Invariant subspace of all eigenvalues that are zero at tolerance.

    The zero radius accounts for defective-eigenvalue perturbation: a zero
    of chain length up to dim splits under roundoff by as much as
    (eps * norm)**(1/dim), so the test |z| <= radius uses that bound when it
    exceeds match_eps.  Selection happens inside a sorted Schur
    decomposition, so the dimension is the number of selected eigenvalues —
    no rank decision.
    """
    m = as_square(m)
    n = m.shape[0]
    if n == 0:
        return Subspace.zero(0)
    scale = max(1.0, operator_norm(m))
    u = float(np.finfo(np.float64).eps)
    radius = max(tol.match_eps, 2.0 * (u * scale) ** (1.0 / n))
    if n == 1:
        return Subspace.full(1) if abs(complex(m[0, 0])) <= radius else Subspace.zero(1)
    _, z, sdim = scipy.linalg.schur(
        m, output="complex", sort=lambda v: abs(complex(v)) <= radius
    )
    if sdim == 0:
        return Subspace.zero(n)
    return Subspace(n, z[:, :sdim])


def unit_with_deterministic_phase(v: np.ndarray) -> np.ndarray:
    """Normalize a nonzero vector so its largest-modulus entry is real positive."""
    v = as_vector(v)
    norm = np.linalg.norm(v)
    if norm == 0:
        raise InputError("cannot normalize the zero vector")
    idx = int(np.argmax(np.abs(v)))
    phase = v[idx] / abs(v[idx])
    return v / (norm * phase)
