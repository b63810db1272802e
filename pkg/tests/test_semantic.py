"""Logistic similarity model and the semantic/equivalent-bit rate maps."""

import math

import numpy as np
import pytest

from semsec import (
    SemanticParams,
    semantic_similarity,
    semantic_rate_suts,
    equivalent_bit_rate,
)

SP = SemanticParams()

# SINR where 10*c1*log10(gamma) + c2 crosses zero: 10**(0.7895/2.525)
GAMMA_MID = 10.0 ** (-SP.c2 / (10.0 * SP.c1))


def test_params_validation():
    with pytest.raises(ValueError):
        SemanticParams(a1=0.5, a2=0.4)
    with pytest.raises(ValueError):
        SemanticParams(c1=0.0)
    with pytest.raises(ValueError):
        SemanticParams(k=0)
    with pytest.raises(ValueError):
        SemanticParams(rho=-1.0)


def test_similarity_midpoint_value():
    assert GAMMA_MID == pytest.approx(2.0543444699297473, rel=1e-12)
    assert semantic_similarity(GAMMA_MID, SP) == pytest.approx(0.675, rel=1e-12)
    # the rounded SINR quoted alongside the midpoint lands within a hair
    assert semantic_similarity(2.0548, SP) == pytest.approx(0.675, abs=1e-4)


def test_similarity_zero_sinr_floor():
    assert semantic_similarity(0.0, SP) == 0.37


def test_similarity_approaches_upper_asymptote():
    val = semantic_similarity(1.0e6, SP)
    assert abs(val - 0.98) < 1e-3
    assert val == pytest.approx(0.97999964629298285, rel=1e-12)
    assert val < SP.a2


def test_similarity_rejects_negative_sinr():
    with pytest.raises(ValueError):
        semantic_similarity(-0.1, SP)


def test_similarity_strictly_increasing():
    gammas = np.logspace(-4, 6, 81)
    vals = np.array([semantic_similarity(g, SP) for g in gammas])
    assert np.all(np.diff(vals) > 0.0)
    # continuous at zero: tiny SINR sits just above the floor
    assert semantic_similarity(1e-30, SP) == pytest.approx(0.37, abs=1e-12)


def test_similarity_range():
    rng = np.random.default_rng(0)
    gammas = rng.uniform(0.0, 1e4, 1000)
    vals = np.array([semantic_similarity(g, SP) for g in gammas])
    assert np.all(vals >= SP.a1)
    assert np.all(vals < SP.a2)


def test_similarity_slope_matches_logistic_derivative():
    # d eps / d gamma = (a2-a1) * sig(z) * (1-sig(z)) * 10*c1 / (ln10 * gamma)
    scale = 10.0 * SP.c1 / math.log(10.0)
    for gamma in np.logspace(-2, 4, 20):
        z = scale * math.log(gamma) + SP.c2
        sig = 1.0 / (1.0 + math.exp(-z))
        analytic = (SP.a2 - SP.a1) * sig * (1.0 - sig) * scale / gamma
        h = 1e-6 * gamma
        fd = (
            semantic_similarity(gamma + h, SP) - semantic_similarity(gamma - h, SP)
        ) / (2.0 * h)
        assert fd == pytest.approx(analytic, rel=1e-6)


def test_suts_rate_at_midpoint():
    assert semantic_rate_suts(GAMMA_MID, SP) == pytest.approx(0.27, rel=1e-12)


def test_suts_rate_zero_sinr():
    expected = SP.i_suts / (SP.k * SP.l_words) * SP.a1
    assert semantic_rate_suts(0.0, SP) == pytest.approx(expected, rel=1e-12)


def test_suts_rate_linear_in_i_suts():
    doubled = SemanticParams(i_suts=2 * SP.i_suts)
    assert semantic_rate_suts(3.0, doubled) == pytest.approx(
        2.0 * semantic_rate_suts(3.0, SP), rel=1e-12
    )


def test_equivalent_bit_rate_floor_and_ceiling():
    assert equivalent_bit_rate(0.0, SP) == pytest.approx(2.96, rel=1e-12)
    assert equivalent_bit_rate(1.0e12, SP) == pytest.approx(7.84, abs=1e-9)


def test_equivalent_bit_rate_halves_when_k_doubles():
    doubled = SemanticParams(k=2 * SP.k)
    assert equivalent_bit_rate(5.0, doubled) == pytest.approx(
        0.5 * equivalent_bit_rate(5.0, SP), rel=1e-12
    )


def test_equivalent_bit_rate_consistent_with_suts_rate():
    factor = SP.rho * SP.l_words / SP.i_suts
    for gamma in (0.0, 0.3, GAMMA_MID, 50.0):
        assert equivalent_bit_rate(gamma, SP) == pytest.approx(
            factor * semantic_rate_suts(gamma, SP), rel=1e-12
        )


def test_equivalent_bit_rate_independent_of_display_params():
    other = SemanticParams(i_suts=7.0, l_words=3.0)
    assert equivalent_bit_rate(2.0, other) == pytest.approx(
        equivalent_bit_rate(2.0, SP), rel=1e-12
    )
