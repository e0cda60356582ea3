import math

import numpy as np
import pytest

import oracles
from entrobound.linalg import NotHermitianError, NotPSDError, ValidationError, psd_sqrt
from entrobound.measurement import (
    CompletenessError,
    EigenvalueBoundError,
    MeasurementKind,
    NormalizationError,
    NotRankOne,
    OrthogonalityError,
    as_density,
    clamp_distribution,
    density_matrix,
    is_projective,
    outcome_distribution,
    pure_state,
    pure_to_density,
    rank_one_decomposition,
    validate_measurement,
)

R2 = math.sqrt(2)


def test_single_identity_is_povm_and_pvm():
    assert validate_measurement([np.eye(2)]).kind is MeasurementKind.POVM
    assert validate_measurement([np.eye(2)], "PVM").kind is MeasurementKind.PVM


def test_discrimination_povm(disc_m):
    assert disc_m.n_outcomes == 3
    assert not is_projective(disc_m)
    with pytest.raises(OrthogonalityError):
        validate_measurement(oracles.disc_m(), "PVM")
    # inconclusive element is PSD
    assert np.linalg.eigvalsh(oracles.disc_m()[2]).min() >= -1e-15


def test_discrimination_pvm(disc_n):
    assert disc_n.kind is MeasurementKind.PVM
    assert is_projective(disc_n)


def test_default_and_custom_labels():
    assert validate_measurement([np.eye(2)]).labels == ("1",)
    m = validate_measurement(oracles.disc_n(), labels=["psi1", "psi2"])
    assert m.labels == ("psi1", "psi2")
    with pytest.raises(ValidationError):
        validate_measurement(oracles.disc_n(), labels=["only-one"])


def test_completeness_error_names_deviation():
    with pytest.raises(CompletenessError) as info:
        validate_measurement([np.diag([1.0, 0.0]), np.diag([0.0, 0.9])])
    assert info.value.deviation == pytest.approx(0.1)


def test_element_errors_are_distinct_and_indexed():
    with pytest.raises(NotHermitianError) as info:
        validate_measurement([np.eye(2), np.array([[0, 1], [0, 0]])])
    assert "element 1" in str(info.value)
    with pytest.raises(NotPSDError):
        validate_measurement([np.diag([1.0, -0.2]), np.diag([0.0, 1.2])])
    with pytest.raises(EigenvalueBoundError):
        validate_measurement([np.diag([1.5, 1.0]), np.diag([-0.5, 0.0])])


def test_pvm_fixed_point_of_sqrt(rng):
    for _ in range(20):
        for p in oracles.rand_basis_pvm(rng, 3):
            assert np.abs(psd_sqrt(p) - p).max() <= 1e-9


def test_outcome_distribution_examples(disc_m, disc_n, psi1):
    comp = validate_measurement([np.diag([1.0, 0.0]), np.diag([0.0, 1.0])], "PVM")
    np.testing.assert_allclose(outcome_distribution(comp, np.eye(2) / 2), [0.5, 0.5])
    p = outcome_distribution(disc_n, psi1)
    np.testing.assert_allclose(p, [math.cos(math.pi / 8) ** 2, math.sin(math.pi / 8) ** 2], atol=1e-15)
    assert p[0] == pytest.approx(2 ** -1.5 * (R2 + 1), abs=1e-15)
    np.testing.assert_allclose(p, [0.853553, 0.146447], atol=1e-6)
    assert outcome_distribution(disc_m, psi1).max() == pytest.approx(2 ** -0.5, abs=1e-15)


def test_distribution_sums_to_one_and_matches_oracle(rng):
    for _ in range(100):
        d, n = int(rng.integers(2, 5)), int(rng.integers(2, 6))
        els = oracles.rand_povm(rng, d, n)
        m = validate_measurement(els)
        rho = oracles.rand_density(rng, d)
        p = outcome_distribution(m, rho)
        assert abs(p.sum() - 1) <= 1e-9
        np.testing.assert_allclose(p, oracles.probs(els, rho), atol=1e-12)


def test_mixing_linearity(rng):
    for _ in range(50):
        m = validate_measurement(oracles.rand_povm(rng, 3, 4))
        r1, r2 = oracles.rand_density(rng, 3), oracles.rand_density(rng, 3)
        lam = rng.uniform()
        mix = outcome_distribution(m, lam * r1 + (1 - lam) * r2)
        expect = lam * outcome_distribution(m, r1) + (1 - lam) * outcome_distribution(m, r2)
        assert np.abs(mix - expect).max() <= 1e-10


def test_rank_one_decomposition(disc_m, disc_n):
    dec = rank_one_decomposition(disc_m)
    assert dec[1].weight == pytest.approx(R2 / (R2 + 1), abs=1e-14)
    np.testing.assert_allclose(dec[1].vector, [0, 1], atol=1e-14)
    assert [e.weight for e in rank_one_decomposition(disc_n)] == pytest.approx([1, 1], abs=1e-14)
    verdict = rank_one_decomposition(validate_measurement([np.eye(2)]))
    assert isinstance(verdict, NotRankOne) and verdict.index == 0


def test_pure_to_density_examples(phi3):
    np.testing.assert_allclose(pure_to_density([1, 0]).matrix, np.diag([1, 0]))
    np.testing.assert_allclose(pure_to_density(np.array([1, 1]) / R2).matrix, np.full((2, 2), 0.5))
    rho = pure_to_density(phi3)
    m3 = oracles.disc_m()[2]
    assert np.trace(m3 @ rho.matrix).real == pytest.approx(2 / (R2 + 1), abs=1e-14)
    assert [lam for lam, _ in rho.support()] == [1.0]


def test_density_support_cutoff():
    rho = density_matrix(np.diag([1 - 1e-13, 1e-13]))
    assert len(rho.support()) == 1


def test_state_validation_errors():
    with pytest.raises(NormalizationError):
        pure_state([1, 1])
    with pytest.raises(NormalizationError):
        density_matrix(np.eye(2))
    with pytest.raises(NotPSDError):
        density_matrix(np.diag([1.5, -0.5]))
    with pytest.raises(NotHermitianError):
        density_matrix([[0.5, 0.5], [0, 0.5]])


def test_as_density_accepts_vectors_and_matrices():
    assert as_density(np.array([0, 1])).matrix[1, 1] == 1
    assert as_density(np.eye(2) / 2).matrix[0, 0] == 0.5


def test_clamp_distribution():
    np.testing.assert_array_equal(clamp_distribution([1.0, -5e-13]), [1.0, 0.0])
    with pytest.raises(ValidationError):
        clamp_distribution([1.0, -1e-6])
    with pytest.raises(ValidationError):
        clamp_distribution([0.5, 0.4])


def test_random_generator_always_validates(rng):
    from entrobound.harness import ensembles

    g = np.random.default_rng(3)
    for _ in range(50):
        d, n = int(g.integers(2, 5)), int(g.integers(2, 7))
        assert ensembles.random_povm(g, d, n).n_outcomes == n
        assert ensembles.random_rank_one_povm(g, d, max(n, d)).n_outcomes == max(n, d)
        assert is_projective(ensembles.random_pvm(g, d, min(n, d)))
