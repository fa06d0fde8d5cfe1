import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from jcmetrology import hilbert, jc_model
from jcmetrology.jc_model import ProbeSpec

THETAS = np.linspace(0, np.pi, 9)
OMEGAS = [0.1, 0.5, 1.0, 1.5, 2.0, 3.0]
GRID = list(itertools.product(THETAS, range(0, 7), OMEGAS))

thetas = st.floats(0, np.pi)
photons = st.integers(0, 12)
omegas = st.floats(-8, 8)


def test_spec_defaults_and_validation():
    spec = ProbeSpec(0.3, 4)
    assert spec.truncation == 6 and spec.dim == 12
    assert ProbeSpec(0.3, 4, 9).truncation == 9
    for bad in (dict(theta=-0.1, n_photons=1), dict(theta=3.2, n_photons=1)):
        with pytest.raises(ValueError, match="theta"):
            ProbeSpec(**bad)
    with pytest.raises(ValueError, match="n_photons"):
        ProbeSpec(0.0, -1)
    with pytest.raises(ValueError, match="truncation"):
        ProbeSpec(0.0, 3, 4)


def test_generator_d2_entries():
    g = jc_model.build_generator(ProbeSpec(0.0, 0))
    expected = np.zeros((4, 4))
    expected[0, 3] = expected[3, 0] = 0.5  # <e,0|G|g,1>
    np.testing.assert_array_equal(g, expected)


@pytest.mark.parametrize("n,d", [(0, 2), (3, 5), (5, 9)])
def test_generator_matches_loop_oracle(n, d):
    g = jc_model.build_generator(ProbeSpec(0.0, n, d))
    np.testing.assert_allclose(g, oracles.jc_generator(n, d), atol=1e-15)
    assert hilbert.is_hermitian(g)
    ground0 = 1 * d + 0
    assert not np.any(g[ground0])


def test_generator_conserves_excitations():
    spec = ProbeSpec(0.0, 6, 10)
    g = jc_model.build_generator(spec)
    e = jc_model.excitation_operator(spec)
    assert np.max(np.abs(hilbert.commutator(g, e))) < 1e-14


def test_probe_states():
    np.testing.assert_array_equal(jc_model.probe_state(ProbeSpec(0.0, 3)), hilbert.ket(10, 3))
    np.testing.assert_array_equal(jc_model.probe_state(ProbeSpec(np.pi, 0)).round(15), hilbert.ket(4, 2))
    psi = jc_model.probe_state(ProbeSpec(np.pi / 2, 1))
    np.testing.assert_allclose(psi, (hilbert.ket(6, 1) + hilbert.ket(6, 4)) / np.sqrt(2), atol=1e-16)


def test_evolve_identity_at_zero():
    spec = ProbeSpec(1.1, 4)
    np.testing.assert_allclose(jc_model.evolve(spec, 0.0), jc_model.probe_state(spec), atol=0)


@pytest.mark.parametrize("omega", [0.3, 2.0, 7.5])
def test_dark_state(omega):
    spec = ProbeSpec(np.pi, 0)
    np.testing.assert_allclose(jc_model.evolve(spec, omega), jc_model.probe_state(spec), atol=1e-15)


def test_full_transfer():
    spec = ProbeSpec(0.0, 0)
    psi = jc_model.evolve(spec, np.pi)
    assert psi[spec.index(jc_model.GROUND, 1)] == pytest.approx(-1j, abs=1e-15)
    np.testing.assert_allclose(jc_model.evolve_numeric(spec, np.pi), psi, atol=1e-10)


@pytest.mark.parametrize("theta,n,omega", GRID[::7])
def test_evolve_matches_pade_oracle(theta, n, omega):
    psi = jc_model.evolve(ProbeSpec(theta, n), omega)
    np.testing.assert_allclose(psi, oracles.evolved(theta, n, omega), atol=1e-12)


@settings(max_examples=100, deadline=None)
@given(thetas, photons, omegas)
def test_norm_and_excitation_conservation(theta, n, omega):
    spec = ProbeSpec(theta, n)
    psi = jc_model.evolve(spec, omega)
    assert abs(np.linalg.norm(psi) - 1) <= 1e-13
    e = jc_model.excitation_operator(spec)
    assert abs(hilbert.expectation(e, psi).real - jc_model.excitation_expectation(spec)) <= 1e-12


@pytest.mark.parametrize(
    "theta,n,expected", [(0.0, 3, 4.0), (np.pi, 0, 0.0), (np.pi / 2, 2, 2.5)]
)
def test_excitation_expectation(theta, n, expected):
    assert jc_model.excitation_expectation(ProbeSpec(theta, n)) == pytest.approx(expected, abs=1e-12)


# reduced states -----------------------------------------------------------

def test_reduced_qubit_at_zero_is_probe():
    theta = 0.9
    q = np.array([np.cos(theta / 2), np.sin(theta / 2)])
    np.testing.assert_allclose(jc_model.reduced_qubit(ProbeSpec(theta, 2), 0.0), np.outer(q, q), atol=1e-16)


@pytest.mark.parametrize("omega", [0.2, 1.0, 2.7])
def test_reduced_qubit_excited_probe(omega):
    rho = jc_model.reduced_qubit(ProbeSpec(0.0, 3), omega)
    assert rho[1, 1].real == pytest.approx(np.sin(omega) ** 2, abs=1e-15)
    assert rho[0, 1] == 0


def test_reduced_qubit_frozen_value():
    # scipy expm + loop partial trace at theta=pi/2, n=3, omega=1.0
    expected = np.array(
        [[0.43610242550688705, 0.17501994895100237], [0.17501994895100237, 0.5638975744931131]]
    )
    np.testing.assert_allclose(jc_model.reduced_qubit(ProbeSpec(np.pi / 2, 3), 1.0), expected, atol=1e-12)


def test_reduced_field_at_zero():
    rho = jc_model.reduced_field(ProbeSpec(1.3, 3), 0.0)
    np.testing.assert_allclose(rho, np.diag([0, 0, 0, 1, 0]), atol=1e-16)


@pytest.mark.parametrize("omega", [0.4, 1.9])
def test_reduced_field_excited_probe(omega):
    n = 2
    rho = jc_model.reduced_field(ProbeSpec(0.0, n), omega)
    assert rho[n - 1, n - 1] == 0
    assert rho[n + 1, n + 1].real == pytest.approx(np.sin(omega * np.sqrt(n + 1) / 2) ** 2, abs=1e-15)
    assert np.count_nonzero(rho - np.diag(np.diag(rho))) == 0


def test_reduced_field_frozen_populations():
    # scipy expm + loop partial trace at theta=pi/2, n=3, omega=1.5
    expected = [0.4639738631595027, 0.03852801269038576, 0.49749812415011135]
    rho = jc_model.reduced_field(ProbeSpec(np.pi / 2, 3), 1.5)
    np.testing.assert_allclose(np.diag(rho).real[2:], expected, atol=1e-12)


def test_reduced_field_has_coherences_for_superpositions():
    rho = jc_model.reduced_field(ProbeSpec(np.pi / 2, 3), 1.0)
    oracle = oracles.reduced(np.pi / 2, 3, 1.0, "field")
    assert abs(oracle[3, 2]) > 0.2
    np.testing.assert_allclose(rho, oracle, atol=1e-12)


@pytest.mark.parametrize("theta,n,omega", GRID)
def test_consistency_triangle(theta, n, omega):
    spec = ProbeSpec(theta, n)
    dims = spec.dims
    closed = {"qubit": jc_model.reduced_qubit(spec, omega), "field": jc_model.reduced_field(spec, omega)}
    block = hilbert.projector(jc_model.evolve(spec, omega))
    numeric = hilbert.projector(jc_model.evolve_numeric(spec, omega))
    for keep, rho in closed.items():
        a = hilbert.partial_trace(block, dims, keep)
        b = hilbert.partial_trace(numeric, dims, keep)
        assert np.max(np.abs(rho - a)) <= 1e-12
        assert np.max(np.abs(rho - b)) <= 1e-10
        assert np.max(np.abs(a - b)) <= 1e-10
        assert hilbert.is_density(rho)


def test_consistency_with_larger_truncation():
    spec = ProbeSpec(np.pi / 3, 2, 8)
    psi = jc_model.evolve_numeric(spec, 1.7)
    rf = hilbert.partial_trace(hilbert.projector(psi), spec.dims, "field")
    np.testing.assert_allclose(rf, jc_model.reduced_field(spec, 1.7), atol=1e-10)


# distributions ------------------------------------------------------------

def test_joint_at_zero():
    theta, n = 1.0, 2
    dist = jc_model.joint_distribution(ProbeSpec(theta, n), 0.0).as_dict()
    assert dist[("e", n)] == pytest.approx(np.cos(theta / 2) ** 2)
    assert dist[("g", n)] == pytest.approx(np.sin(theta / 2) ** 2)
    assert dist[("e", n - 1)] == 0 and dist[("g", n + 1)] == 0


@pytest.mark.parametrize("omega", [0.3, 1.25, 2.2])
def test_joint_excited_probe(omega):
    dist = jc_model.joint_distribution(ProbeSpec(0.0, 3), omega).as_dict()
    assert dist[("e", 3)] == pytest.approx(np.cos(omega) ** 2, abs=1e-15)
    assert dist[("g", 4)] == pytest.approx(np.sin(omega) ** 2, abs=1e-15)


def test_joint_frozen_values():
    # |amplitude|^2 of the scipy-evolved state, theta=pi/2, n=1, omega=1.0
    dist = jc_model.joint_distribution(ProbeSpec(np.pi / 2, 1), 1.0).as_dict()
    expected = {
        ("e", 0): 0.11492442353296503,
        ("e", 1): 0.2889859236913437,
        ("g", 1): 0.38507557646703483,
        ("g", 2): 0.21101407630865637,
    }
    for label, p in expected.items():
        assert dist[label] == pytest.approx(p, abs=1e-13)


def test_n_zero_drops_lower_branch():
    spec = ProbeSpec(np.pi / 2, 0)
    assert jc_model.joint_distribution(spec, 1.0).labels == (("e", 0), ("g", 0), ("g", 1))
    assert jc_model.field_distribution(spec, 1.0).labels == (0, 1)
    assert jc_model.qubit_distribution(spec, 1.0).labels == ("e", "g")


def test_qubit_distribution_at_zero():
    theta = 2.0
    dist = jc_model.qubit_distribution(ProbeSpec(theta, 5), 0.0)
    np.testing.assert_allclose(dist.probs, [np.cos(theta / 2) ** 2, np.sin(theta / 2) ** 2])


@pytest.mark.parametrize("omega", [0.5, 1.25, 2.0])
def test_field_distribution_ground_probe(omega):
    dist = jc_model.field_distribution(ProbeSpec(np.pi, 3), omega).as_dict()
    assert dist[2] == pytest.approx(np.sin(omega * np.sqrt(3) / 2) ** 2, abs=1e-15)
    assert dist[3] == pytest.approx(np.cos(omega * np.sqrt(3) / 2) ** 2, abs=1e-15)
    assert dist[4] == pytest.approx(0, abs=1e-16)


def test_qubit_distribution_frozen_value():
    # ground population of the scipy-evolved reduced qubit, theta=pi/2, n=3, omega=1.25
    dist = jc_model.qubit_distribution(ProbeSpec(np.pi / 2, 3), 1.25).as_dict()
    assert dist["g"] == pytest.approx(0.5603104732678323, abs=1e-13)


@pytest.mark.parametrize("theta,n,omega", GRID[::3])
def test_distributions_match_states(theta, n, omega):
    spec = ProbeSpec(theta, n)
    joint = jc_model.joint_distribution(spec, omega)
    psi = jc_model.evolve(spec, omega)
    np.testing.assert_allclose(joint.probs, jc_model.basis_probabilities(spec, psi, joint.labels), atol=1e-13)

    jd = joint.as_dict()
    field = jc_model.field_distribution(spec, omega)
    for m, p in field.as_dict().items():
        assert abs(jd.get(("e", m), 0) + jd.get(("g", m), 0) - p) <= 1e-12
    qubit = jc_model.qubit_distribution(spec, omega).as_dict()
    for q in "eg":
        assert abs(sum(p for (j, _), p in jd.items() if j == q) - qubit[q]) <= 1e-12

    rq = jc_model.reduced_qubit(spec, omega)
    rf = jc_model.reduced_field(spec, omega)
    assert abs(qubit["e"] - rq[0, 0].real) <= 1e-12
    np.testing.assert_allclose(
        [rf[m, m].real for m in field.labels], field.probs, atol=1e-12
    )


@settings(max_examples=100, deadline=None)
@given(thetas, photons, st.floats(0.05, 6.0), st.sampled_from(jc_model.MEASUREMENTS))
def test_dprobs_match_finite_differences(theta, n, omega, measurement):
    spec = ProbeSpec(theta, n)
    dist = jc_model.distribution(spec, omega, measurement)
    fd = oracles.central_diff(lambda w: jc_model.distribution(spec, w, measurement).probs, omega)
    assert np.max(np.abs(dist.dprobs - fd)) <= 1e-6
    assert abs(dist.probs.sum() - 1) <= 1e-12
    assert abs(dist.dprobs.sum()) <= 1e-12


@pytest.mark.parametrize("theta", [0.0, 1.0, np.pi])
@pytest.mark.parametrize("measurement", jc_model.MEASUREMENTS)
def test_n_zero_periodicity(theta, measurement):
    spec = ProbeSpec(theta, 0)
    for omega in np.linspace(0.1, 6.0, 13):
        a = jc_model.distribution(spec, omega, measurement).probs
        b = jc_model.distribution(spec, omega + 4 * np.pi, measurement).probs
        assert np.max(np.abs(a - b)) <= 1e-12


@pytest.mark.parametrize("theta,n,omega", GRID[::5])
def test_state_derivatives_match_finite_differences(theta, n, omega):
    spec = ProbeSpec(theta, n)
    for state, deriv in (
        (jc_model.reduced_qubit, jc_model.reduced_qubit_derivative),
        (jc_model.reduced_field, jc_model.reduced_field_derivative),
    ):
        fd = oracles.central_diff(lambda w: state(spec, w), omega)
        assert np.max(np.abs(deriv(spec, omega) - fd)) <= 1e-6


def test_outcome_distribution_validation():
    with pytest.raises(ValueError, match="sum"):
        jc_model.OutcomeDistribution(("a", "b"), [0.5, 0.6], [0, 0])
    with pytest.raises(ValueError, match="negative"):
        jc_model.OutcomeDistribution(("a", "b"), [1.1, -0.1], [0, 0])
    dist = jc_model.OutcomeDistribution(("a", "b"), [1 + 1e-15, -1e-15], [0, 0])
    assert dist.probs.min() == 0
