"""Density layer: validation, projection, classification, lift, purify."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qmix import (
    CDensity,
    MixtureKind,
    Observable,
    QMatrix,
    block_purify,
    classify,
    complex_projection,
    discriminating_observable,
    embed_proper,
    expectation,
    lift,
    proper_tolerance,
    purify,
    random_density,
    rank_bounds_check,
    rank_q,
    validate,
)
from qmix.errors import (
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

from support import qclose, random_complex

E0 = np.array([1.0, 0.0])
E1 = np.array([0.0, 1.0])
HALF = 1 / np.sqrt(2)


def purified_two_level() -> QMatrix:
    return QMatrix(np.diag([0.5, 0.5]), np.array([[0, -0.5], [0.5, 0]]))


def random_cdensity(rng, n, rank=None) -> CDensity:
    rank = n if rank is None else rank
    frame = np.linalg.qr(random_complex(rng, n, rank))[0]
    weights = rng.uniform(0.2, 1.0, size=rank)
    weights /= weights.sum()
    return CDensity.from_matrix((frame * weights) @ frame.conj().T)


# -- validation ---------------------------------------------------------

def test_validate_maximally_mixed_is_proper():
    rho = validate(QMatrix.from_complex(np.eye(2) / 2))
    assert rho.classification is MixtureKind.PROPER
    assert rho.beta_norm == 0.0


def test_validate_purified_state_improper_and_pure():
    rho = validate(purified_two_level())
    assert rho.classification is MixtureKind.IMPROPER
    assert rank_q(rho.mat) == 1


def test_validate_rejects_indefinite():
    mat = QMatrix(np.diag([0.7, 0.3]), np.array([[0, 0.6], [-0.6, 0]]))
    with pytest.raises(NotPositive):
        validate(mat)


def test_validate_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        validate(QMatrix(np.diag([0.5, 0.5]), np.eye(2)))  # symmetric beta


def test_validate_rejects_wrong_trace():
    with pytest.raises(TraceNotOne):
        validate(QMatrix.from_complex(np.eye(2)))


def test_validate_error_message_carries_deviation():
    with pytest.raises(TraceNotOne, match="deviates from 1 by"):
        validate(QMatrix.from_complex(np.eye(2)))


# -- projection and classification ---------------------------------------

def test_projection_of_proper_state_is_identity_map():
    rng = np.random.default_rng(30)
    rho = random_density(4, MixtureKind.PROPER, rng)
    projected = complex_projection(rho)
    assert np.array_equal(projected.mat, rho.alpha)


def test_projection_of_purified_state():
    rho = validate(purified_two_level())
    projected = complex_projection(rho)
    assert np.abs(projected.mat - np.diag([0.5, 0.5])).max() < 1e-15
    assert projected.rank == 2


@given(st.integers(0, 2**32 - 1), st.integers(2, 6))
@settings(max_examples=80, deadline=None)
def test_projection_always_yields_valid_density(seed, n):
    rng = np.random.default_rng(seed)
    rho = random_density(n, MixtureKind.IMPROPER, rng)
    projected = complex_projection(rho)  # raises if any invariant breaks
    eigs = np.linalg.eigvalsh(projected.mat)
    assert eigs.min() >= -1e-10
    assert abs(np.trace(projected.mat).real - 1.0) <= 1e-12


def test_classify_embedded_complex_density_is_proper():
    rng = np.random.default_rng(31)
    rho = embed_proper(random_cdensity(rng, 3))
    assert classify(rho) is MixtureKind.PROPER


def test_classify_lift_below_full_rank_is_improper():
    rng = np.random.default_rng(32)
    source = random_cdensity(rng, 4, rank=4)
    lowered = lift(source, 3)
    assert classify(lowered) is MixtureKind.IMPROPER


def test_proper_tolerance_scales():
    assert proper_tolerance(2, 1.0) == pytest.approx(4e-12)
    assert proper_tolerance(4, 0.0) == pytest.approx(4e-12)


# -- expectation values ---------------------------------------------------

def test_expectation_of_identity_is_one():
    rng = np.random.default_rng(33)
    rho = random_density(3, MixtureKind.IMPROPER, rng)
    assert expectation(Observable.from_complex(np.eye(3)), rho) == pytest.approx(1.0)


@pytest.mark.parametrize("p", [0.1, 0.5, 0.9])
def test_expectation_of_sigma_z_ignores_beta(p):
    sigma_z = Observable.from_complex(np.diag([1.0, -1.0]))
    weights = np.diag([p, 1 - p])
    proper = validate(QMatrix.from_complex(weights))
    improper = validate(block_purify(E0, E1, np.sqrt(p), np.sqrt(1 - p)))
    assert expectation(sigma_z, proper) == pytest.approx(2 * p - 1)
    assert expectation(sigma_z, improper) == pytest.approx(2 * p - 1)


def test_discriminator_separates_the_class():
    # oracle: Re Tr(-conj(beta) beta) = ||beta||_F^2 = 1/2 for this state
    improper = validate(purified_two_level())
    proper = embed_proper(complex_projection(improper))
    witness = discriminating_observable(improper)
    assert expectation(witness, improper) == pytest.approx(0.5, abs=1e-14)
    assert expectation(witness, proper) == 0.0


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=60, deadline=None)
def test_discriminator_value_is_beta_norm_squared(seed):
    rng = np.random.default_rng(seed)
    rho = random_density(3, MixtureKind.IMPROPER, rng)
    witness = discriminating_observable(rho)
    assert expectation(witness, rho) == pytest.approx(rho.beta_norm**2, rel=1e-10)
    assert expectation(witness, embed_proper(complex_projection(rho))) == 0.0


def test_complex_observables_cannot_distinguish_class_members():
    rng = np.random.default_rng(34)
    for _ in range(50):
        source = random_cdensity(rng, 4)
        members = [embed_proper(source)]
        for target in range((source.rank + 1) // 2, source.rank + 1):
            members.append(lift(source, target))
        herm = random_complex(rng, 4)
        obs = Observable.from_complex((herm + herm.conj().T) / 2)
        values = [expectation(obs, member) for member in members]
        assert max(values) - min(values) <= 1e-11


def test_expectation_dimension_check():
    rho = validate(QMatrix.from_complex(np.eye(2) / 2))
    with pytest.raises(DimensionMismatch):
        expectation(Observable.from_complex(np.eye(3)), rho)


# -- rank bounds -----------------------------------------------------------

def test_rank_bounds_proper():
    rng = np.random.default_rng(35)
    rho = random_density(4, MixtureKind.PROPER, rng)
    m, rank_alpha, ok = rank_bounds_check(rho, tol=1e-10)
    assert ok and rank_alpha == m


def test_rank_bounds_purified_state():
    rho = validate(purified_two_level())
    assert rank_bounds_check(rho, tol=1e-10) == (1, 2, True)


@given(st.integers(0, 2**32 - 1), st.integers(2, 6))
@settings(max_examples=80, deadline=None)
def test_rank_bounds_hold_on_randoms(seed, n):
    rng = np.random.default_rng(seed)
    kind = [MixtureKind.IMPROPER, "Pure-Q"][seed % 2]
    rho = random_density(n, kind, rng)
    _, _, ok = rank_bounds_check(rho, tol=1e-10)
    assert ok


# -- block_purify ----------------------------------------------------------

def test_block_purify_degenerate_pair_is_complex():
    block = block_purify(E0, E1, 1.0, 0.0)
    assert np.array_equal(block.alpha, np.diag([1.0, 0.0]))
    assert not block.beta.any()


def test_block_purify_two_level_blocks_exact():
    block = block_purify(E0, E1, HALF, HALF)
    assert np.abs(block.alpha - np.diag([0.5, 0.5])).max() <= 1e-14
    assert np.abs(block.beta - np.array([[0, -0.5], [0.5, 0]])).max() <= 1e-14


def test_block_purify_random_idempotent_after_normalization():
    rng = np.random.default_rng(36)
    for _ in range(50):
        frame = np.linalg.qr(random_complex(rng, 4))[0]
        u, v = frame[:, 0], frame[:, 1]
        cu = complex(*rng.standard_normal(2))
        cv = complex(*rng.standard_normal(2))
        block = block_purify(u, v, cu, cv)
        weight = abs(cu) ** 2 + abs(cv) ** 2
        normalized = block / weight
        assert qclose(normalized @ normalized, normalized, tol=1e-10)
        assert rank_q(block, tol=1e-10) == 1
        projection = abs(cu) ** 2 * np.outer(u, u.conj()) + abs(cv) ** 2 * np.outer(v, v.conj())
        assert np.abs(block.alpha - projection).max() <= 1e-13


def test_block_purify_rejects_non_orthogonal():
    with pytest.raises(NotOrthogonal):
        block_purify(E0, (E0 + E1) / np.sqrt(2), HALF, HALF)


def test_block_purify_rejects_unnormalized_vectors():
    with pytest.raises(NotNormalized):
        block_purify(2 * E0, E1, HALF, HALF)
    with pytest.raises(NotNormalized):
        block_purify(E0, E1, 0.0, 0.0)


# -- lift -------------------------------------------------------------------

def test_lift_full_rank_target_keeps_beta_zero():
    rng = np.random.default_rng(37)
    source = random_cdensity(rng, 4)
    lifted = lift(source, source.rank)
    assert not lifted.beta.any()
    assert np.abs(lifted.alpha - source.mat).max() <= 1e-12


def test_lift_maximally_mixed_two_level_gives_purified_state():
    lifted = lift(CDensity.from_matrix(np.diag([0.5, 0.5])), 1)
    assert np.abs(lifted.alpha - np.diag([0.5, 0.5])).max() <= 1e-14
    assert np.abs(lifted.beta - np.array([[0, -0.5], [0.5, 0]])).max() <= 1e-14


def test_lift_rank_four_all_targets():
    rng = np.random.default_rng(38)
    source = random_cdensity(rng, 4, rank=4)
    for target in (2, 3, 4):
        lifted = lift(source, target)
        assert np.abs(lifted.alpha - source.mat).max() <= 1e-10
        assert rank_q(lifted.mat, tol=1e-10) == target


def test_lift_rejects_out_of_range_rank():
    rng = np.random.default_rng(39)
    source = random_cdensity(rng, 4, rank=4)
    with pytest.raises(RankOutOfRange, match=r"\[2, 4\]"):
        lift(source, 1)
    with pytest.raises(RankOutOfRange):
        lift(source, 5)


def test_lift_rejects_rank_one():
    source = CDensity.from_matrix(np.diag([1.0, 0.0]))
    with pytest.raises(RankOne):
        lift(source, 1)


@given(st.integers(0, 2**32 - 1), st.integers(2, 6))
@settings(max_examples=40, deadline=None)
def test_lift_round_trips_every_admissible_rank(seed, m):
    rng = np.random.default_rng(seed)
    source = random_cdensity(rng, 6, rank=m)
    for target in range((m + 1) // 2, m + 1):
        lifted = lift(source, target)
        assert np.abs(lifted.alpha - source.mat).max() <= 1e-12
        assert rank_q(lifted.mat, tol=1e-10) == target


# -- purify -------------------------------------------------------------------

def test_purify_rank_one_returns_embedding():
    source = CDensity.from_matrix(np.outer(E0, E0))
    pure = purify(source)
    assert pure.classification is MixtureKind.PROPER
    assert rank_q(pure.mat, tol=1e-10) == 1
    assert np.array_equal(pure.alpha, source.mat)


def test_purify_two_level():
    pure = purify(CDensity.from_matrix(np.diag([0.5, 0.5])))
    assert rank_q(pure.mat, tol=1e-10) == 1
    assert classify(pure) is MixtureKind.IMPROPER


def test_purify_rank_three_refused():
    with pytest.raises(NotPurifiable):
        purify(CDensity.from_matrix(np.eye(3) / 3))


# -- random generation ---------------------------------------------------------

def test_random_proper_has_zero_beta():
    rho = random_density(4, MixtureKind.PROPER, 1234)
    assert rho.beta_norm == 0.0


def test_random_pure_q_has_rank_one_with_rank_two_projection():
    rho = random_density(2, "Pure-Q", 99)
    assert rank_q(rho.mat, tol=1e-10) == 1
    assert complex_projection(rho).rank == 2


def test_random_density_deterministic_per_seed():
    a = random_density(3, MixtureKind.IMPROPER, 7)
    b = random_density(3, MixtureKind.IMPROPER, 7)
    assert np.array_equal(a.alpha, b.alpha)
    assert np.array_equal(a.beta, b.beta)


def test_random_density_rejects_dimension_one_quaternionic():
    with pytest.raises(DimensionMismatch):
        random_density(1, MixtureKind.IMPROPER, 0)
    # a 1x1 proper density is fine
    assert random_density(1, MixtureKind.PROPER, 0).alpha[0, 0] == pytest.approx(1.0)
