"""Complex bipartite machinery: tensor products, Schmidt data, partial trace.

This module stays entirely inside complex quantum mechanics.  It supplies
the two standard routes to a mixed state of a subsystem:

* tracing out the partner of an entangled pure state (the improper route),
* the nonselective projective update rho -> sum_i P_i rho P_i (the proper
  route).

Index convention is row-major throughout: the compound basis vector
(a, b) sits at position a * n2 + b, matching ``numpy.kron``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .density import CDensity
from .errors import DimensionMismatch, NotNormalized, NotOrthogonal

#: Unit-norm tolerance for state vectors.
STATE_NORM_TOL = 1e-12
#: Orthonormality / completeness tolerance for bases and projector families.
FAMILY_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class BipartiteState:
    """Pure state on a tensor product, with optional Schmidt data.

    ``schmidt`` holds (weight, left vector, right vector) triples with
    weights descending; it is filled by :func:`schmidt`.
    """

    dims: tuple[int, int]
    vec: np.ndarray
    schmidt: tuple[tuple[float, np.ndarray, np.ndarray], ...] | None = None

    def __post_init__(self):
        vec = np.asarray(self.vec, dtype=np.complex128).reshape(-1)
        n1, n2 = self.dims
        if vec.size != n1 * n2:
            raise DimensionMismatch(
                f"vector length {vec.size} != {n1} * {n2}"
            )
        norm = float(np.linalg.norm(vec))
        if abs(norm - 1.0) > STATE_NORM_TOL:
            raise NotNormalized(f"state norm {norm!r} off unity by {abs(norm - 1.0):.3e}")
        object.__setattr__(self, "dims", (int(n1), int(n2)))
        object.__setattr__(self, "vec", vec)

    def density(self) -> np.ndarray:
        return np.outer(self.vec, self.vec.conj())

    @property
    def schmidt_weights(self) -> np.ndarray:
        if self.schmidt is None:
            raise ValueError("schmidt data not filled; call schmidt() first")
        return np.array([w for w, _, _ in self.schmidt])


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Tensor product with the row-major index convention."""
    return np.kron(np.asarray(a, np.complex128), np.asarray(b, np.complex128))


def schmidt(state: BipartiteState, tol: float = FAMILY_TOL) -> BipartiteState:
    """Return the state with its Schmidt data filled in.

    The state is reshaped to an n1 x n2 coefficient matrix and factored
    by SVD; singular values are the Schmidt weights (descending) and the
    factors give the orthonormal left/right families.  Weights at or
    below ``tol`` carry no correlation and are dropped.
    """
    n1, n2 = state.dims
    coeff = state.vec.reshape(n1, n2)
    left, weights, right_h = np.linalg.svd(coeff)
    terms = tuple(
        (float(w), left[:, i].copy(), right_h[i, :].copy())
        for i, w in enumerate(weights)
        if w > tol
    )
    return replace(state, schmidt=terms)


def partial_trace(rho: np.ndarray, dims: tuple[int, int], over: int) -> CDensity:
    """Trace out one factor of a density matrix on a tensor product.

    ``over`` selects the discarded factor (1 or 2).  The result is
    validated as a complex density on the kept factor.
    """
    n1, n2 = dims
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.shape != (n1 * n2, n1 * n2):
        raise DimensionMismatch(f"density shape {rho.shape} != ({n1 * n2}, {n1 * n2})")
    four = rho.reshape(n1, n2, n1, n2)
    if over == 2:
        kept = np.einsum("abcb->ac", four)
    elif over == 1:
        kept = np.einsum("abad->bd", four)
    else:
        raise ValueError(f"over must be 1 or 2, got {over!r}")
    return CDensity.from_matrix(kept)


@dataclass(frozen=True, eq=False)
class ProjectorFamily:
    """Orthogonal complex projectors summing to the identity."""

    projectors: tuple[np.ndarray, ...]

    @classmethod
    def from_projectors(cls, projectors, tol: float = FAMILY_TOL) -> "ProjectorFamily":
        mats = tuple(np.asarray(p, dtype=np.complex128) for p in projectors)
        if not mats:
            raise ValueError("projector family cannot be empty")
        n = mats[0].shape[0]
        for idx, p in enumerate(mats):
            if p.shape != (n, n):
                raise DimensionMismatch(f"projector {idx} has shape {p.shape}, expected ({n}, {n})")
        worst = 0.0
        for i, p in enumerate(mats):
            for j, q in enumerate(mats):
                target = p if i == j else 0.0
                worst = max(worst, float(np.abs(p @ q - target).max()))
        if worst > tol:
            raise NotOrthogonal(
                f"projector products deviate from orthogonality by {worst:.3e}"
            )
        completeness = float(np.abs(sum(mats) - np.eye(n)).max())
        if completeness > tol:
            raise NotNormalized(
                f"projector sum deviates from identity by {completeness:.3e}"
            )
        return cls(projectors=mats)

    @classmethod
    def from_basis(cls, basis: np.ndarray, tol: float = FAMILY_TOL) -> "ProjectorFamily":
        """Rank-one family from the columns of a unitary basis matrix."""
        basis = np.asarray(basis, dtype=np.complex128)
        return cls.from_projectors(
            [np.outer(basis[:, i], basis[:, i].conj()) for i in range(basis.shape[1])],
            tol=tol,
        )


def lueders_nonselective(rho: CDensity, family: ProjectorFamily) -> CDensity:
    """Nonselective projective update rho -> sum_i P_i rho P_i.

    The result commutes with every family member and the update is
    idempotent, which the tests exercise; here only shape compatibility
    is enforced and the output revalidated.
    """
    n = rho.dim
    if family.projectors[0].shape != (n, n):
        raise DimensionMismatch(
            f"family on dimension {family.projectors[0].shape[0]} "
            f"applied to state of dimension {n}"
        )
    out = np.zeros_like(rho.mat)
    for p in family.projectors:
        out += p @ rho.mat @ p
    return CDensity.from_matrix(out)


def measurement_interaction(
    phi0, apparatus_dim: int = 2
) -> tuple[np.ndarray, BipartiteState]:
    """Premeasurement coupling of a two-level system to a two-level pointer.

    ``phi0 = (c_plus, c_minus)`` are the coefficients of the system
    state in the measured basis.  The returned unitary U completes the
    map |+>|0> -> |+>|u>, |->|0> -> |->|d> by a controlled shift of the
    pointer basis label, with {|u>, |d>} the pointer's computational
    basis and |0> = |u>.  The returned state U(phi0 (x) |0>) carries its
    Schmidt data, whose weights are (|c_plus|, |c_minus|).
    """
    if apparatus_dim != 2:
        raise DimensionMismatch("the pointer is modeled on a two-level system")
    phi0 = np.asarray(phi0, dtype=np.complex128).reshape(-1)
    if phi0.size != 2:
        raise DimensionMismatch(f"system state must have two components, got {phi0.size}")
    norm2 = float(np.vdot(phi0, phi0).real)
    if abs(norm2 - 1.0) > STATE_NORM_TOL:
        raise NotNormalized(
            f"|c+|^2 + |c-|^2 = {norm2!r} off unity by {abs(norm2 - 1.0):.3e}"
        )
    shift = np.array([[0, 1], [1, 0]], dtype=np.complex128)
    hold = np.eye(2, dtype=np.complex128)
    p_plus = np.diag([1.0, 0.0]).astype(np.complex128)
    p_minus = np.diag([0.0, 1.0]).astype(np.complex128)
    unitary = kron(p_plus, hold) + kron(p_minus, shift)
    pointer0 = np.array([1.0, 0.0], dtype=np.complex128)
    vec = unitary @ np.kron(phi0, pointer0)
    state = schmidt(BipartiteState(dims=(2, 2), vec=vec))
    return unitary, state
