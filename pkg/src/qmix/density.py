"""Density matrices over the quaternions and their complex projection.

The complex projection P(M) = (1/2)(M - i M i) = M_alpha maps every
quaternionic density matrix to a complex one, and partitions the set of
quaternionic densities into classes sharing a projection.  Each class
contains exactly one purely complex member (beta = 0); states with
beta = 0 are classified here as *proper* mixtures and states with
beta != 0 as *improper* mixtures.  Complex observables cannot tell the
members of a class apart; the observable j*rho_beta can, which is what
makes the classification physically meaningful.

Constructive content:

* ``lift`` builds, for a complex density of rank m > 1 and any target
  rank m' with ceil(m/2) <= m' <= m, a quaternionic density of rank m'
  projecting back onto it, by replacing pairs of spectral terms with
  rank-one quaternionic blocks (``block_purify``).
* ``purify`` is the extreme case m' = 1, possible exactly when m <= 2.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    NotHermitian,
    NotNormalized,
    NotOrthogonal,
    NotPositive,
    NotPurifiable,
    RankOne,
    RankOutOfRange,
    TraceNotOne,
)
from .qmatrix import (
    QMatrix,
    eigvals_hermitian,
    hermiticity_deviation,
    rank_q,
    real_trace,
)

#: Default tolerance for hermiticity / positivity / trace validation.
VALIDATION_TOL = 1e-10
#: Relative floor used when counting nonzero eigenvalues of a complex density.
RANK_REL_TOL = 1e-12
#: Relative tolerance for grouping degenerate eigenvalues in ``lift``.
DEGENERACY_REL_TOL = 1e-10


class MixtureKind(enum.Enum):
    """Classification of a quaternionic density by its beta block."""

    PROPER = "Proper"
    IMPROPER = "Improper"


def proper_tolerance(n: int, alpha_norm: float) -> float:
    """Scale-aware zero test for ||rho_beta||_F.

    The mathematical distinction is exact (beta = 0 versus beta != 0);
    floating point needs a threshold that grows with dimension and with
    the size of the complex block.
    """
    return n * 1e-12 * (1.0 + alpha_norm)


@dataclass(frozen=True, eq=False)
class QDensity:
    """Validated quaternionic density matrix with cached classification."""

    mat: QMatrix
    classification: MixtureKind
    beta_norm: float

    @property
    def alpha(self) -> np.ndarray:
        return self.mat.alpha

    @property
    def beta(self) -> np.ndarray:
        return self.mat.beta

    @property
    def dim(self) -> int:
        return self.mat.rows

    @property
    def is_proper(self) -> bool:
        return self.classification is MixtureKind.PROPER


@dataclass(frozen=True, eq=False)
class CDensity:
    """Complex density matrix (hermitian, positive, unit trace) with rank."""

    mat: np.ndarray
    rank: int

    @classmethod
    def from_matrix(cls, mat: np.ndarray, tol: float = VALIDATION_TOL) -> "CDensity":
        """Validate a complex matrix as a density matrix.

        Raises :class:`NotHermitian`, :class:`NotPositive` or
        :class:`TraceNotOne` naming the violated invariant and the
        measured deviation.
        """
        mat = np.asarray(mat, dtype=np.complex128)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise DimensionMismatch(f"density matrix must be square, got {mat.shape}")
        dev = float(np.abs(mat - mat.conj().T).max(initial=0.0))
        if dev > tol:
            raise NotHermitian(f"hermiticity deviation {dev:.3e} exceeds {tol:.3e}")
        eigs = np.linalg.eigvalsh(mat)
        if eigs.min(initial=0.0) < -tol:
            raise NotPositive(
                f"minimum eigenvalue {eigs.min():.3e} below -{tol:.3e}"
            )
        trace = float(np.trace(mat).real)
        if abs(trace - 1.0) > tol:
            raise TraceNotOne(f"trace {trace!r} deviates from 1 by {abs(trace - 1.0):.3e}")
        return cls(mat=mat, rank=_complex_rank(eigs))

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


def _complex_rank(eigs: np.ndarray) -> int:
    """Count eigenvalues above the scale-aware zero floor."""
    scale = float(np.abs(eigs).max(initial=0.0))
    if scale == 0.0:
        return 0
    n = eigs.size
    threshold = max(n * np.finfo(np.float64).eps, RANK_REL_TOL) * scale
    return int(np.count_nonzero(eigs > threshold))


@dataclass(frozen=True, eq=False)
class Observable:
    """Hermitian quaternionic operator; flagged complex when beta ~ 0."""

    mat: QMatrix
    is_complex: bool

    @classmethod
    def from_qmatrix(cls, mat: QMatrix, tol: float = VALIDATION_TOL) -> "Observable":
        dev = hermiticity_deviation(mat)
        if dev > tol:
            raise NotHermitian(f"hermiticity deviation {dev:.3e} exceeds {tol:.3e}")
        return cls(mat=mat, is_complex=float(np.linalg.norm(mat.beta)) <= tol)

    @classmethod
    def from_complex(cls, mat: np.ndarray, tol: float = VALIDATION_TOL) -> "Observable":
        return cls.from_qmatrix(QMatrix.from_complex(mat), tol=tol)


# ---------------------------------------------------------------------
# validation and classification
# ---------------------------------------------------------------------

def validate(m: QMatrix, tol: float = VALIDATION_TOL) -> QDensity:
    """Validate a quaternionic matrix as a density matrix and classify it.

    Checks hermiticity, positivity (through the complex-adjoint
    spectrum) and unit real trace, each at ``tol``; the raised error
    names the violated invariant and the measured deviation.  The
    proper/improper classification uses the scale-aware zero test
    :func:`proper_tolerance` on ||rho_beta||_F.
    """
    if not m.is_square:
        raise DimensionMismatch(f"density matrix must be square, got {m.shape}")
    dev = hermiticity_deviation(m)
    if dev > tol:
        raise NotHermitian(f"hermiticity deviation {dev:.3e} exceeds {tol:.3e}")
    eigs = eigvals_hermitian(m, tol=tol)
    if eigs.size and eigs.min() < -tol:
        raise NotPositive(f"minimum eigenvalue {eigs.min():.3e} below -{tol:.3e}")
    trace = real_trace(m)
    if abs(trace - 1.0) > tol:
        raise TraceNotOne(f"real trace {trace!r} deviates from 1 by {abs(trace - 1.0):.3e}")
    beta_norm = float(np.linalg.norm(m.beta))
    alpha_norm = float(np.linalg.norm(m.alpha))
    kind = (
        MixtureKind.PROPER
        if beta_norm <= proper_tolerance(m.rows, alpha_norm)
        else MixtureKind.IMPROPER
    )
    return QDensity(mat=m, classification=kind, beta_norm=beta_norm)


def classify(rho: QDensity) -> MixtureKind:
    """Proper iff ||rho_beta||_F passes the scale-aware zero test."""
    return rho.classification


def complex_projection(rho: QDensity) -> CDensity:
    """P(rho) = (1/2)(rho - i rho i) = rho_alpha, validated as a density.

    The projection is trace preserving and positivity preserving, so
    validation of the result is a structural self-check, not a data
    filter.
    """
    return CDensity.from_matrix(rho.alpha)


def embed_proper(rho_alpha: CDensity) -> QDensity:
    """Embed a complex density as the beta = 0 member of its class."""
    return validate(QMatrix.from_complex(rho_alpha.mat))


def expectation(a: Observable, rho: QDensity) -> float:
    """Re Tr(A rho) = Re Tr(A_alpha rho_alpha - conj(A_beta) rho_beta).

    For a complex observable the second term vanishes and the value
    coincides with the complex-theory prediction Tr(A_alpha rho_alpha),
    whatever rho_beta is.
    """
    if a.mat.shape != rho.mat.shape:
        raise DimensionMismatch(
            f"observable {a.mat.shape} does not match state {rho.mat.shape}"
        )
    value = np.trace(a.mat.alpha @ rho.alpha)
    value -= np.trace(a.mat.beta.conj() @ rho.beta)
    return float(value.real)


def discriminating_observable(rho: QDensity) -> Observable:
    """The witness A = j*rho_beta, hermitian because rho_beta is skew.

    Its expectation is ||rho_beta||_F^2 on ``rho`` and zero on the
    beta = 0 member of the same projection class, which separates the
    two whenever rho is improper.
    """
    return Observable.from_qmatrix(QMatrix(np.zeros_like(rho.beta), rho.beta.copy()))


def rank_bounds_check(
    rho: QDensity, tol: float | None = None
) -> tuple[int, int, bool]:
    """Return (m, rank of projection, whether m <= rank <= 2m holds)."""
    m = rank_q(rho.mat, tol=tol)
    rank_alpha = complex_projection(rho).rank
    return m, rank_alpha, (m <= rank_alpha <= 2 * m)


# ---------------------------------------------------------------------
# purification blocks, lift, purify
# ---------------------------------------------------------------------

def block_purify(
    u: np.ndarray,
    v: np.ndarray,
    cu: complex,
    cv: complex,
    tol: float = VALIDATION_TOL,
) -> QMatrix:
    """Rank-one quaternionic block projecting onto |cu|^2 uu* + |cv|^2 vv*.

    For an orthonormal pair (u, v) and weights (cu, cv), returns the
    (unnormalized) projector onto the right-module line spanned by
    u*cu + v*cv*j:

        alpha = |cu|^2 uu^dag + |cv|^2 vv^dag
        beta  = conj(cu) conj(cv) (conj(v) u^dag - conj(u) v^dag)

    with real trace |cu|^2 + |cv|^2 and quaternionic rank one.  With
    cv = 0 the block degenerates to a purely complex rank-one term.
    """
    u = np.asarray(u, dtype=np.complex128).reshape(-1)
    v = np.asarray(v, dtype=np.complex128).reshape(-1)
    if u.shape != v.shape:
        raise DimensionMismatch(f"vector shapes differ: {u.shape} vs {v.shape}")
    for name, vec in (("u", u), ("v", v)):
        norm = float(np.linalg.norm(vec))
        if abs(norm - 1.0) > tol:
            raise NotNormalized(f"{name} has norm {norm!r}, off unity by {abs(norm - 1.0):.3e}")
    overlap = abs(np.vdot(u, v))
    if overlap > tol:
        raise NotOrthogonal(f"|<u, v>| = {overlap:.3e} exceeds {tol:.3e}")
    cu = complex(cu)
    cv = complex(cv)
    weight = abs(cu) ** 2 + abs(cv) ** 2
    if weight == 0.0:
        raise NotNormalized("cu and cv cannot both vanish")
    alpha = abs(cu) ** 2 * np.outer(u, u.conj()) + abs(cv) ** 2 * np.outer(v, v.conj())
    cross = np.conj(cu) * np.conj(cv)
    beta = cross * (np.outer(v.conj(), u.conj()) - np.outer(u.conj(), v.conj()))
    return QMatrix(alpha, beta)


def _phase_normalize(vec: np.ndarray) -> np.ndarray:
    """Rotate a vector's global phase so its largest component is real positive."""
    idx = int(np.argmax(np.abs(vec)))
    pivot = vec[idx]
    if pivot == 0:
        return vec
    return vec * (np.conj(pivot) / abs(pivot))


def _ordered_spectral_terms(mat: np.ndarray, rank: int) -> tuple[np.ndarray, np.ndarray]:
    """Top-``rank`` eigenpairs, eigenvalues descending, deterministic order.

    Eigenvectors are phase-normalized; within a degenerate group the
    order is fixed by descending lexicographic comparison of the
    normalized components, so repeated calls on equal inputs agree.
    """
    eigs, vecs = np.linalg.eigh(mat)
    order = np.argsort(-eigs, kind="stable")
    eigs = eigs[order][:rank]
    vecs = vecs[:, order][:, :rank]
    vecs = np.column_stack([_phase_normalize(vecs[:, i]) for i in range(rank)]) \
        if rank else vecs[:, :0]
    scale = float(np.abs(eigs).max(initial=0.0)) or 1.0
    start = 0
    while start < rank:
        stop = start + 1
        while stop < rank and abs(eigs[start] - eigs[stop]) <= DEGENERACY_REL_TOL * scale:
            stop += 1
        if stop - start > 1:
            keys = sorted(
                range(start, stop),
                key=lambda i: tuple((-c.real, -c.imag) for c in vecs[:, i]),
            )
            vecs[:, start:stop] = vecs[:, keys]
        start = stop
    return eigs, vecs


def lift(rho_alpha: CDensity, target_rank: int) -> QDensity:
    """Quaternionic density of rank ``target_rank`` projecting onto ``rho_alpha``.

    Requires m = rank(rho_alpha) > 1 and ceil(m/2) <= target_rank <= m.
    The construction pairs the top eigenvectors of rho_alpha, largest
    eigenvalues first and adjacent in the descending order, and replaces
    each of the k = m - target_rank pairs by a rank-one quaternionic
    block; the remaining spectral terms stay complex.  Zero eigenvalues
    carry no rank and are never paired.
    """
    m = rho_alpha.rank
    if m <= 1:
        raise RankOne("rank-one complex densities admit no lift to lower rank")
    lo = (m + 1) // 2
    if not lo <= target_rank <= m:
        raise RankOutOfRange(
            f"target rank {target_rank} outside admissible range "
            f"[{lo}, {m}] for projection rank {m}"
        )
    eigs, vecs = _ordered_spectral_terms(rho_alpha.mat, m)
    pairs = m - target_rank
    n = rho_alpha.dim
    total = QMatrix.zeros(n)
    for k in range(pairs):
        a, b = 2 * k, 2 * k + 1
        total = total + block_purify(
            vecs[:, a], vecs[:, b], np.sqrt(eigs[a]), np.sqrt(eigs[b])
        )
    for i in range(2 * pairs, m):
        term = eigs[i] * np.outer(vecs[:, i], vecs[:, i].conj())
        total = total + QMatrix.from_complex(term)
    return validate(total)


def purify(rho_alpha: CDensity) -> QDensity:
    """Quaternionic rank-one density projecting onto ``rho_alpha``.

    Possible exactly when rank(rho_alpha) <= 2.  Rank-one input is
    already the projection of a pure state and is embedded unchanged;
    rank-two input delegates to ``lift(rho_alpha, 1)``.
    """
    if rho_alpha.rank == 1:
        return embed_proper(rho_alpha)
    if rho_alpha.rank == 2:
        return lift(rho_alpha, 1)
    raise NotPurifiable(
        f"projection rank {rho_alpha.rank} exceeds 2, the largest rank "
        "a quaternionic pure state can project onto"
    )


# ---------------------------------------------------------------------
# random generation
# ---------------------------------------------------------------------

def _as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _ginibre(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def random_density(n: int, kind: MixtureKind | str, seed=None) -> QDensity:
    """Random valid density of the requested kind, deterministic per seed.

    Kinds: ``Proper`` (beta = 0), ``Improper`` (beta != 0), ``Pure-Q``
    (quaternionic rank one, whose projection has rank two almost
    surely).  Improper and Pure-Q require n >= 2: a 1 x 1 hermitian
    quaternion has no skew part.
    """
    rng = _as_rng(seed)
    label = kind.value.lower() if isinstance(kind, MixtureKind) else str(kind).lower()
    if label == "proper":
        g = _ginibre(rng, n)
        mat = g @ g.conj().T
        mat /= np.trace(mat).real
        return validate(QMatrix.from_complex(mat))
    if label not in ("improper", "pure-q"):
        raise ValueError(f"unknown density kind: {kind!r}")
    if n < 2:
        raise DimensionMismatch(
            "improper and pure quaternionic densities need dimension >= 2"
        )
    for _ in range(16):
        if label == "improper":
            g = QMatrix(_ginibre(rng, n), _ginibre(rng, n))
            mat = g @ g.h
        else:
            wa = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            wb = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            w = QMatrix(wa.reshape(-1, 1), wb.reshape(-1, 1))
            mat = w @ w.h
        rho = validate(mat / real_trace(mat))
        if rho.classification is MixtureKind.IMPROPER:
            return rho
    raise RuntimeError(f"random {label} generation kept landing on beta ~ 0")
