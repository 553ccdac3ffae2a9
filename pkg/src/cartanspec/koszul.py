"""Chain complexes of nilpotent-algebra modules twisted by a character.

For a nilpotent algebra H of dimension r acting on X through ``rho``, and a
character ``f`` vanishing on [H, H], the chain space in degree p is
``X (x) Lambda^p H`` and the boundary acts on a generator by

    d(x (x) h_{i1} ^ ... ^ h_{ip})
        = sum_k (-1)^k (rho(h_{ik}) - f(h_{ik})) x (x) (omit h_{ik})
        + sum_{k<l} (-1)^(k+l) x (x) [h_{ik}, h_{il}] ^ (omit both)

with 1-based positions k, l. These are the signs that square to zero for a
left action; pairing the bracket sum above with the action sign (-1)^(k+1)
instead would leave d(d(x (x) h1 ^ h2)) = -2 (rho - f)([h1, h2]) x, which
vanishes only when the algebra is abelian.

Basis order: p-element index subsets in lexicographic order, each carrying a
full copy of X, so a chain coordinate block is (subset index) * dim X.
Spectral membership windows: the delta family inspects homology in degrees
0..k, the pi family in degrees r-k..r.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

import numpy as np

from .liealg import derived_subalgebra, is_nilpotent
from .numkit import (
    DEFAULT_TOL,
    InputError,
    NumericalFailure,
    Tolerance,
    as_vector,
    operator_norm,
    rank_with_tol,
)
from .rep import Representation


@dataclass(frozen=True)
class HomologyProfile:
    """Homology dimensions indexed by degree 0..r."""

    dims: tuple[int, ...]

    @property
    def top_degree(self) -> int:
        return len(self.dims) - 1


def nonexact_degrees(profile: HomologyProfile) -> tuple[int, ...]:
    return tuple(p for p, dim in enumerate(profile.dims) if dim > 0)


def slodkowski_membership(profile: HomologyProfile, k: int, side: str) -> bool:
    """Window test on a homology profile: delta looks at degrees 0..k, pi at
    degrees r-k..r."""
    r = profile.top_degree
    if not 0 <= k <= r:
        raise InputError(f"level k must lie in 0..{r}, got {k}")
    if side == "delta":
        degrees = range(0, k + 1)
    elif side == "pi":
        degrees = range(r - k, r + 1)
    else:
        raise InputError(f"side must be 'delta' or 'pi', got {side!r}")
    return any(profile.dims[p] > 0 for p in degrees)


@dataclass(frozen=True, eq=False)
class KoszulComplex:
    """Boundary maps d_1..d_r; d_p maps degree p to degree p-1.

    ``scale`` is the magnitude of the inputs the boundaries were assembled
    from; rank decisions are taken relative to it, so a boundary whose
    entries are pure rounding noise is treated as zero rather than as an
    arbitrary full-rank matrix.
    """

    h_dim: int
    space_dim: int
    boundaries: tuple[np.ndarray, ...]
    scale: float = 1.0

    def chain_dim(self, p: int) -> int:
        return self.space_dim * comb(self.h_dim, p)


def _subsets(r: int, p: int) -> list[tuple[int, ...]]:
    return list(itertools.combinations(range(r), p))


def build_complex(h_rep: Representation, f, tol: Tolerance = DEFAULT_TOL) -> KoszulComplex:
    """Assemble the boundary matrices for the given module and character.

    The algebra of ``h_rep`` must be nilpotent and ``f`` must vanish on its
    derived subalgebra, otherwise the twisted action is not a module and the
    boundary would not square to zero.
    """
    algebra = h_rep.algebra
    r = algebra.dim
    d = h_rep.space_dim
    f = as_vector(f, "character")
    if f.shape[0] != r:
        raise InputError("character length does not match the algebra dimension")
    if not is_nilpotent(algebra, tol):
        raise InputError("chain complex requires a nilpotent algebra")
    derived = derived_subalgebra(algebra, tol)
    for j in range(derived.dim):
        value = abs(complex(f @ derived.basis[:, j]))
        if value > tol.match_eps:
            raise InputError(
                f"character does not vanish on the derived subalgebra (value {value:.3e})"
            )

    twisted = [h_rep.mats[i] - f[i] * np.eye(d, dtype=complex) for i in range(r)]
    c = algebra.structure
    scale_terms = [1.0] + [float(np.linalg.norm(t, 2)) for t in twisted]
    if c.size:
        scale_terms.append(float(np.max(np.abs(c))))
    op_scale = max(scale_terms)
    boundaries = []
    for p in range(1, r + 1):
        sources = _subsets(r, p)
        targets = _subsets(r, p - 1)
        target_index = {s: i for i, s in enumerate(targets)}
        matrix = np.zeros((d * len(targets), d * len(sources)), dtype=complex)
        for col, subset in enumerate(sources):
            cstart = col * d
            for k_pos, ik in enumerate(subset):
                remaining = subset[:k_pos] + subset[k_pos + 1 :]
                row = target_index[remaining]
                sign = 1.0 if k_pos % 2 else -1.0
                matrix[row * d : (row + 1) * d, cstart : cstart + d] += sign * twisted[ik]
            for k_pos in range(len(subset)):
                for l_pos in range(k_pos + 1, len(subset)):
                    ik, il = subset[k_pos], subset[l_pos]
                    base = tuple(v for t, v in enumerate(subset) if t not in (k_pos, l_pos))
                    pair_sign = -1.0 if (k_pos + l_pos) % 2 else 1.0
                    for m in range(r):
                        coeff = c[ik, il, m]
                        if coeff == 0 or m in base:
                            continue
                        position = sum(1 for v in base if v < m)
                        wedge_sign = -1.0 if position % 2 else 1.0
                        target = tuple(sorted(base + (m,)))
                        row = target_index[target]
                        block = pair_sign * wedge_sign * coeff
                        idx = row * d
                        matrix[idx : idx + d, cstart : cstart + d] += block * np.eye(
                            d, dtype=complex
                        )
        boundaries.append(matrix)
    cx = KoszulComplex(h_dim=r, space_dim=d, boundaries=tuple(boundaries), scale=op_scale)
    residual = complex_residual(cx)
    if residual > 10.0 * tol.rank_eps:
        raise NumericalFailure(
            f"boundary maps do not compose to zero (relative residual {residual:.3e})"
        )
    return cx


def complex_residual(cx: KoszulComplex) -> float:
    """Largest relative norm of d_p d_{p+1} over consecutive boundaries."""
    worst = 0.0
    for p in range(len(cx.boundaries) - 1):
        a = cx.boundaries[p]
        b = cx.boundaries[p + 1]
        denom = max(1.0, operator_norm(a) * operator_norm(b))
        worst = max(worst, float(np.linalg.norm(a @ b)) / denom)
    return worst


def homology_dims(cx: KoszulComplex, tol: Tolerance = DEFAULT_TOL) -> HomologyProfile:
    """H_p = dim ker d_p - rank d_{p+1}, with d_0 = d_{r+1} = 0."""
    r = cx.h_dim
    ranks = [0] * (r + 2)
    for p in range(1, r + 1):
        ranks[p] = rank_with_tol(cx.boundaries[p - 1], tol, scale=cx.scale)
    dims = []
    for p in range(r + 1):
        kernel_dim = cx.chain_dim(p) - ranks[p]
        h = kernel_dim - ranks[p + 1]
        if h < 0:
            raise NumericalFailure(
                f"negative homology dimension in degree {p}; rank decisions are inconsistent"
            )
        dims.append(h)
    return HomologyProfile(dims=tuple(dims))
