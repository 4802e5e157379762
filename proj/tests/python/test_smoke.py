"""Smoke tests for the _symflow python module against known values."""

import math

import numpy as np
import pytest

import symflow


def test_permutation_matrix():
    p = symflow.permutation(2)
    expected = np.array(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
    )
    assert np.allclose(p, expected)
    assert np.allclose(p @ p, np.eye(4))
    assert abs(np.trace(p).real - 2.0) < 1e-14


def test_projectors_and_eigenbases():
    d = 3
    s = symflow.symmetrizer(d)
    a = symflow.antisymmetrizer(d)
    assert np.allclose(s + a, np.eye(d * d), atol=1e-12)
    assert np.allclose(s @ s, s, atol=1e-12)
    assert np.allclose(s @ a, 0.0, atol=1e-12)
    assert len(symflow.sym_eigenbasis(d)) == d * (d + 1) // 2
    assert len(symflow.asym_eigenbasis(d)) == d * (d - 1) // 2


def test_symmetricity_and_classification():
    rho = symflow.random_density(7, 2, "state_antisymmetric")
    assert abs(symflow.symmetricity(rho) + 1.0) < 1e-10
    report = symflow.classify(rho)
    assert report["class"] == "state_antisymmetric"

    mixed = np.eye(4, dtype=complex) / 4.0
    assert abs(symflow.symmetricity(mixed) - 0.5) < 1e-12


def test_random_density_determinism():
    first = symflow.random_density(123, 3, "paos")
    second = symflow.random_density(123, 3, "paos")
    assert np.array_equal(first, second)


def test_semigroup_decay():
    rho = symflow.random_density(11, 2, "generic")
    tau = 0.5 * math.log(2.0)
    out = symflow.semigroup_symmetrize(rho, tau)
    p = symflow.permutation(2)
    mixed_before = symflow.antisymmetrizer(2) @ rho @ symflow.symmetrizer(2)
    mixed_after = symflow.antisymmetrizer(2) @ out @ symflow.symmetrizer(2)
    assert np.allclose(mixed_after, 0.5 * mixed_before, atol=1e-12)
    # Trace preserved, exchange-diagonal blocks untouched.
    assert abs(np.trace(out).real - np.trace(rho).real) < 1e-12
    assert np.allclose(p @ out @ p, symflow.semigroup_symmetrize(p @ rho @ p, tau), atol=1e-12)


def test_master_equation_matches_channel():
    rho = symflow.random_density(5, 2, "generic")
    samples = symflow.integrate_master_equation(rho, gamma=0.5, dt=0.01, t_max=0.5, stride=10)
    t_final, rho_final = samples[-1]
    closed = symflow.semigroup_symmetrize(rho, 2.0 * 0.5 * t_final)
    assert np.allclose(rho_final, closed, atol=1e-8)


def test_bath_exponent_routes_agree():
    quad = symflow.bath_exponent_quadrature(1.0, 10.0, 5.0)
    closed = symflow.bath_exponent_closed(1.0, 10.0, 5.0)
    assert abs(quad - closed) < 1e-6
    assert symflow.bath_exponent_quadrature(1.0, 10.0, 0.0) == 0.0
    assert abs(symflow.semigroup_tau(0.01, 50.0, 500.0) - 0.6283185307179586) < 1e-12


def test_weierstrass_product():
    assert abs(symflow.weierstrass_product(1.0, 100000, True) - math.sinh(1.0)) < 1e-8


def test_schedule_and_map():
    assert abs(symflow.schedule_m("to_symmetric", 1.0, 2.0) - math.tanh(2.0) ** 2) < 1e-12
    sigma = symflow.random_density(2, 2, "paos")
    image = symflow.apply_map(sigma, "to_antisymmetric", 1.0, 2.0)
    assert abs(symflow.symmetricity(image) + math.tanh(2.0) ** 2) < 1e-10
    assert abs(np.trace(image).real - 1.0) < 1e-10


def test_renyi_entropy_drop():
    sigma = symflow.random_density(3, 2, "paos")
    s0 = symflow.renyi_entropy(sigma)
    image = symflow.apply_map(sigma, "to_symmetric", 1.0, 8.0)
    assert symflow.renyi_entropy(image) <= s0 + 1e-12


def test_scattering_probabilities():
    assert symflow.standard_probability(0.0, 1, 1.0 + 0j, 1.0 + 0j) == pytest.approx(4.0)
    assert symflow.standard_probability(0.5, -1, 1.0 + 0j, 1.0 + 0j) == pytest.approx(1.0)
    f_n, f_mn = 0.12 + 0.08j, -0.06 + 0.10j
    limit = symflow.environment_probability(0.5, 1, f_n, f_mn, "to_symmetric", 1.0, 1.0, 8.0)
    std = symflow.standard_probability(0.5, 1, f_n, f_mn)
    assert abs(limit - std) < 1e-8


def test_cp_certificate():
    cert = symflow.cp_certificate(0.4, -0.5)
    assert cert["before_positive"]
    assert not cert["after_positive"]
    assert cert["inequality_predicts_negative"]
    assert cert["before_formula_residual"] < 1e-10
    assert cert["after_formula_residual"] < 1e-10
    assert min(cert["after_eigs"]) == pytest.approx(-0.08197051490249264, abs=1e-10)


def test_verify_suites():
    results = symflow.verify(d=2, seed=3)
    assert results and all(row["passed"] for row in results)
