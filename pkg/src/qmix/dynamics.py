"""Quaternionic unitary dynamics and its complex projection.

States evolve by conjugation, rho(t) = U(t) rho(0) U(t)^dag, with the
propagator generated by an anti-hermitian quaternionic H(t) through
U(t) = T exp(-int_0^t H(u) du); the equivalent differential form is
d rho/dt = -[H(t), rho(t)].  Generators absorb the imaginary unit:
there is no preferred global i to factor out of a quaternionic H.

The complex projection of the evolved state has the closed form

    rho_a(t) = U_a rho_a U_a^dag + conj(U_b) conj(rho_a) U_b^T
             + U_a conj(rho_b) U_b^T - conj(U_b) rho_b U_a^dag

with rate  d rho_a/dt = -[H_a, rho_a] + conj(H_b) rho_b - conj(rho_b) H_b.
When U is purely complex both partitions by the projection survive:
beta evolves as conj(U_a) rho_b U_a^dag, so beta = 0 is preserved and
||beta||_F is invariant.  A genuinely quaternionic U generically leaks
a proper state into the improper class; ``partition_witness`` exhibits
such a leak.

Time dependence is a sampled schedule on a uniform grid, evaluated by
linear interpolation and integrated per step with midpoint sampling.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .density import CDensity, MixtureKind, QDensity, random_density, validate
from .errors import (
    DimensionMismatch,
    DriftExceeded,
    NotAntiHermitian,
    NotUnitary,
    WitnessNotFound,
)
from .qmatrix import QMatrix, expm_q, frobenius_norm, max_abs, real_trace

#: Anti-hermiticity tolerance for generator samples.
GENERATOR_TOL = 1e-10
#: Unitarity tolerance for propagators.
UNITARITY_TOL = 1e-9
#: Cap on the per-step hermiticity/trace correction in ``integrate``.
DRIFT_TOL = 1e-6


def anti_hermiticity_deviation(m: QMatrix) -> float:
    """Max entry deviation of M from -M^dag."""
    dev_alpha = np.abs(m.alpha + m.alpha.conj().T).max(initial=0.0)
    dev_beta = np.abs(m.beta - m.beta.T).max(initial=0.0)
    return float(max(dev_alpha, dev_beta))


@dataclass(frozen=True, eq=False)
class Generator:
    """Anti-hermitian generator, constant or sampled on a uniform grid.

    ``samples`` holds H at equally spaced times covering [0, horizon];
    a single sample means a constant generator.  Anti-hermiticity
    (alpha block anti-hermitian, beta block symmetric) is enforced on
    every sample at construction.
    """

    samples: tuple[QMatrix, ...]
    horizon: float = 0.0

    def __post_init__(self):
        if not self.samples:
            raise ValueError("generator needs at least one sample")
        object.__setattr__(self, "samples", tuple(self.samples))
        dim = self.samples[0].rows
        for idx, h in enumerate(self.samples):
            if not h.is_square or h.rows != dim:
                raise DimensionMismatch(f"sample {idx} has shape {h.shape}")
            dev = anti_hermiticity_deviation(h)
            if dev > GENERATOR_TOL:
                raise NotAntiHermitian(
                    f"sample {idx} deviates from anti-hermiticity by {dev:.3e}"
                )
        if len(self.samples) > 1 and self.horizon <= 0.0:
            raise ValueError("a sampled schedule needs a positive horizon")

    @classmethod
    def constant(cls, h: QMatrix) -> "Generator":
        return cls(samples=(h,))

    @classmethod
    def schedule(cls, samples, horizon: float) -> "Generator":
        return cls(samples=tuple(samples), horizon=float(horizon))

    @property
    def dim(self) -> int:
        return self.samples[0].rows

    def at(self, t: float) -> QMatrix:
        """Generator at time ``t``: linear interpolation, clamped ends."""
        if len(self.samples) == 1:
            return self.samples[0]
        t = min(max(t, 0.0), self.horizon)
        cell = self.horizon / (len(self.samples) - 1)
        x = t / cell
        i = min(int(x), len(self.samples) - 2)
        w = x - i
        return self.samples[i] * (1.0 - w) + self.samples[i + 1] * w


@dataclass(frozen=True, eq=False)
class Propagator:
    """Unitary propagator over [t0, t1]; unitarity checked at construction."""

    u: QMatrix
    t0: float = 0.0
    t1: float = 0.0

    def __post_init__(self):
        if not self.u.is_square:
            raise DimensionMismatch(f"propagator must be square, got {self.u.shape}")
        dev = max_abs(self.u.h @ self.u - QMatrix.identity(self.u.rows))
        if dev > UNITARITY_TOL:
            raise NotUnitary(f"U^dag U deviates from identity by {dev:.3e}")

    @classmethod
    def identity(cls, n: int) -> "Propagator":
        return cls(u=QMatrix.identity(n))

    @classmethod
    def from_complex_unitary(cls, u: np.ndarray, t0: float = 0.0, t1: float = 0.0) -> "Propagator":
        return cls(u=QMatrix.from_complex(u), t0=t0, t1=t1)

    @property
    def dim(self) -> int:
        return self.u.rows

    @property
    def is_complex(self) -> bool:
        return float(np.linalg.norm(self.u.beta)) <= UNITARITY_TOL


def evolve(rho: QDensity, prop: Propagator) -> QDensity:
    """Conjugate a density by a unitary: rho -> U rho U^dag."""
    if prop.dim != rho.dim:
        raise DimensionMismatch(
            f"propagator dimension {prop.dim} != state dimension {rho.dim}"
        )
    return validate(prop.u @ rho.mat @ prop.u.h)


def projected_evolution(rho0: QDensity, prop: Propagator) -> CDensity:
    """Complex projection of the evolved state, by the closed formula.

    Computes the four-term expression for rho_alpha(t) directly from the
    blocks of U and rho(0); it must agree with projecting after evolving,
    which the tests enforce as a path-equivalence check.
    """
    if prop.dim != rho0.dim:
        raise DimensionMismatch(
            f"propagator dimension {prop.dim} != state dimension {rho0.dim}"
        )
    ua, ub = prop.u.alpha, prop.u.beta
    ra, rb = rho0.alpha, rho0.beta
    out = ua @ ra @ ua.conj().T
    out += ub.conj() @ ra.conj() @ ub.T
    out += ua @ rb.conj() @ ub.T
    out -= ub.conj() @ rb @ ua.conj().T
    return CDensity.from_matrix(out)


def time_ordered(gen: Generator, t: float, steps: int) -> Propagator:
    """Time-ordered propagator as an ordered product of step exponentials.

    Each step contributes exp(-h H(t_mid)) with midpoint sampling; later
    factors multiply from the left.  For a constant generator the product
    collapses to exp(-t H) up to roundoff.
    """
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    h = t / steps
    u = QMatrix.identity(gen.dim)
    for k in range(steps):
        mid = (k + 0.5) * h
        u = expm_q(gen.at(mid) * (-h)) @ u
    return Propagator(u=u, t0=0.0, t1=t)


def integrate(
    rho0: QDensity,
    gen: Generator,
    t: float,
    steps: int,
    drift_tol: float = DRIFT_TOL,
) -> QDensity:
    """Integrate d rho/dt = -[H(t), rho] with classic fourth-order steps.

    After every step the iterate is re-hermitized ((rho + rho^dag)/2)
    and trace-renormalized; the applied correction is measured and
    :class:`DriftExceeded` raised if it ever passes ``drift_tol``.
    Silent drift is never allowed to accumulate.
    """
    if gen.dim != rho0.dim:
        raise DimensionMismatch(
            f"generator dimension {gen.dim} != state dimension {rho0.dim}"
        )
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    h = t / steps

    def rate(tau: float, mat: QMatrix) -> QMatrix:
        ham = gen.at(tau)
        return mat @ ham - ham @ mat

    current = rho0.mat
    for k in range(steps):
        tau = k * h
        k1 = rate(tau, current)
        k2 = rate(tau + h / 2, current + k1 * (h / 2))
        k3 = rate(tau + h / 2, current + k2 * (h / 2))
        k4 = rate(tau + h, current + k3 * h)
        raw = current + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0)
        hermitized = (raw + raw.h) * 0.5
        herm_correction = frobenius_norm(raw - hermitized)
        trace = real_trace(hermitized)
        correction = max(herm_correction, abs(trace - 1.0))
        if correction > drift_tol:
            raise DriftExceeded(
                f"correction {correction:.3e} at step {k} exceeds {drift_tol:.0e}"
            )
        current = hermitized / trace
    return validate(current)


def projected_rate_check(rho: QDensity, gen: Generator, h: float = 1e-4) -> float:
    """Residual between the finite-difference projected rate and its formula.

    Evolves one midpoint-sampled step forward and backward, takes the
    central difference of the projection at t = 0, and compares with
    -[H_a, rho_a] + conj(H_b) rho_b - conj(rho_b) H_b.  The residual
    shrinks as O(h^2).
    """
    forward = Propagator(u=expm_q(gen.at(h / 2) * (-h)), t0=0.0, t1=h)
    backward = Propagator(u=expm_q(gen.at(0.0) * h), t0=0.0, t1=-h)
    plus = evolve(rho, forward)
    minus = evolve(rho, backward)
    fd = (plus.alpha - minus.alpha) / (2.0 * h)
    ham = gen.at(0.0)
    ha, hb = ham.alpha, ham.beta
    ra, rb = rho.alpha, rho.beta
    rhs = -(ha @ ra - ra @ ha) + hb.conj() @ rb - rb.conj() @ hb
    return float(np.linalg.norm(fd - rhs))


def random_generator(
    n: int, rng: np.random.Generator, quaternionic: bool = True, norm: float = 1.0
) -> Generator:
    """Random constant anti-hermitian generator of Frobenius norm ``norm``."""
    ga = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    alpha = (ga - ga.conj().T) / 2
    if quaternionic:
        gb = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        beta = (gb + gb.T) / 2
    else:
        beta = np.zeros_like(alpha)
    ham = QMatrix(alpha, beta)
    scale = frobenius_norm(ham)
    if scale > 0:
        ham = ham * (norm / scale)
    return Generator.constant(ham)


def partition_witness(
    n: int,
    seed: int,
    t: float = 1.0,
    leak_threshold: float = 1e-6,
    max_attempts: int = 100,
) -> tuple[Generator, QDensity, float]:
    """Find a proper state that a quaternionic dynamics makes improper.

    Draws random (generator, proper state) pairs from seeds derived from
    ``seed`` and returns the first whose evolution over ``t`` leaks beta
    norm above ``leak_threshold``.  Such witnesses are generic, so
    exhausting ``max_attempts`` raises :class:`WitnessNotFound`.
    """
    if n < 2:
        raise DimensionMismatch("partition witnesses need dimension >= 2")
    for attempt in range(max_attempts):
        rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(attempt,)))
        gen = random_generator(n, rng, quaternionic=True)
        rho = random_density(n, MixtureKind.PROPER, rng)
        prop = Propagator(u=expm_q(gen.samples[0] * (-t)), t0=0.0, t1=t)
        leak = float(np.linalg.norm(evolve(rho, prop).beta))
        if leak > leak_threshold:
            return gen, rho, leak
    raise WitnessNotFound(
        f"no leak above {leak_threshold:.0e} in {max_attempts} attempts (n={n}, seed={seed})"
    )
