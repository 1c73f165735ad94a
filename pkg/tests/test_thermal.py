import numpy as np
import pytest

from thermosim import (
    ConfigurationError,
    QuditHamiltonian,
    ThermalSpec,
    gibbs_weights,
    partial_trace,
    purify,
    thermal_density,
)
from thermosim.qcore import EQ_TOL

from helpers import (
    REF_PARTITION_A,
    REF_PARTITION_B,
    REF_WEIGHTS_A,
    REF_WEIGHTS_B,
    random_thermal_spec,
)


def test_hamiltonian_validation():
    with pytest.raises(ConfigurationError):
        QuditHamiltonian((1.0,))
    with pytest.raises(ConfigurationError):
        QuditHamiltonian((0.0, np.nan))


def test_spec_rejects_bad_beta():
    ham = QuditHamiltonian((0.0, 1.0))
    with pytest.raises(ConfigurationError):
        ThermalSpec(-0.5, ham)
    with pytest.raises(ConfigurationError):
        ThermalSpec(np.inf, ham)


def test_infinite_temperature_weights():
    gw = gibbs_weights(ThermalSpec(0.0, QuditHamiltonian((7.0, -3.0))))
    np.testing.assert_allclose(gw.weights, [0.5, 0.5], atol=EQ_TOL)
    assert abs(gw.partition - 2.0) < EQ_TOL


def test_weights_match_reference_values():
    gw = gibbs_weights(ThermalSpec(1.0, QuditHamiltonian((5.0, 0.0))))
    np.testing.assert_allclose(gw.weights, REF_WEIGHTS_A, atol=EQ_TOL)
    assert abs(gw.partition - REF_PARTITION_A) < EQ_TOL

    gw = gibbs_weights(ThermalSpec(1.0, QuditHamiltonian((0.0, 1.0))))
    np.testing.assert_allclose(gw.weights, REF_WEIGHTS_B, atol=EQ_TOL)
    assert abs(gw.partition - REF_PARTITION_B) < EQ_TOL


def test_weights_survive_large_beta_energy_products():
    gw = gibbs_weights(ThermalSpec(70.0, QuditHamiltonian((10.0, 0.0))))
    assert gw.weights[1] == pytest.approx(1.0, abs=1e-12)
    assert gw.weights[0] > 0.0  # e^(-700), close to the underflow edge


def test_weight_shift_invariance():
    rng = np.random.default_rng(41)
    for _ in range(30):
        spec = random_thermal_spec(rng)
        shifted = ThermalSpec(
            spec.beta,
            QuditHamiltonian(tuple(e + 3.7 for e in spec.hamiltonian.energies)),
        )
        np.testing.assert_allclose(
            gibbs_weights(spec).weights, gibbs_weights(shifted).weights, atol=EQ_TOL
        )


def test_ground_weight_decreases_with_beta():
    # p_0 is the weight of the higher level here, so it must fall as beta grows
    ham = QuditHamiltonian((2.0, -1.0))
    values = [gibbs_weights(ThermalSpec(b, ham)).weights[0] for b in np.linspace(0, 5, 11)]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_thermal_density_examples():
    np.testing.assert_allclose(
        thermal_density(ThermalSpec(0.0, QuditHamiltonian((3.0, 1.0)))).entries,
        np.eye(2) / 2,
        atol=EQ_TOL,
    )
    np.testing.assert_allclose(
        thermal_density(ThermalSpec(1.0, QuditHamiltonian((5.0, 0.0)))).entries,
        np.diag(REF_WEIGHTS_A),
        atol=EQ_TOL,
    )
    np.testing.assert_allclose(
        thermal_density(ThermalSpec(1.0, QuditHamiltonian((0.0, 0.0, 0.0)))).entries,
        np.eye(3) / 3,
        atol=EQ_TOL,
    )


def test_purify_infinite_temperature_is_bell_state():
    state = purify(ThermalSpec(0.0, QuditHamiltonian((4.0, 2.0))))
    np.testing.assert_allclose(state.amps, [1, 0, 0, 1] / np.sqrt(2), atol=EQ_TOL)


def test_purify_amplitudes_are_weight_roots():
    state = purify(ThermalSpec(1.0, QuditHamiltonian((5.0, 0.0))))
    np.testing.assert_allclose(
        state.amps, [np.sqrt(REF_WEIGHTS_A[0]), 0, 0, np.sqrt(REF_WEIGHTS_A[1])], atol=EQ_TOL
    )


def test_purify_phase_sits_on_upper_branch():
    phi = 0.9
    state = purify(ThermalSpec(0.0, QuditHamiltonian((0.0, 1.0))), phase=phi)
    assert state.amps[3] == pytest.approx(np.exp(1j * phi) / np.sqrt(2), abs=EQ_TOL)
    assert state.amps[0] == pytest.approx(1 / np.sqrt(2), abs=EQ_TOL)


def test_purify_phase_requires_qubit():
    spec = ThermalSpec(1.0, QuditHamiltonian((0.0, 1.0, 2.0)))
    purify(spec)  # phase 0 is fine for qudits
    with pytest.raises(ConfigurationError):
        purify(spec, phase=0.1)


def test_purification_round_trip_randomized():
    rng = np.random.default_rng(43)
    for _ in range(60):
        spec = random_thermal_spec(rng)
        phase = float(rng.uniform(0, 2 * np.pi)) if spec.hamiltonian.dim == 2 else 0.0
        state = purify(spec, phase)
        assert abs(state.norm() - 1.0) < EQ_TOL
        reduced = partial_trace(state, keep={1})
        np.testing.assert_allclose(reduced.entries, thermal_density(spec).entries, atol=EQ_TOL)
