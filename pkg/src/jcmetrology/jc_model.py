"""Resonant Jaynes-Cummings dynamics for a qubit and a truncated oscillator.

The coupling ``omega`` is the dimensionless product of coupling constant and
interaction time. The probe is ``(cos(theta/2)|e> + sin(theta/2)|g>) (x) |n>``.
Because the interaction only mixes ``|e,m>`` with ``|g,m+1>``, every quantity
below has a closed form built from the two block angles
``x1 = omega*sqrt(n+1)`` and ``x0 = omega*sqrt(n)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Sequence

import numpy as np

from . import hilbert

EXCITED, GROUND = 0, 1
PROB_CLAMP = 1e-14
SUM_TOL = 1e-12

JOINT = "joint"
QUBIT = hilbert.QUBIT
FIELD = hilbert.FIELD
MEASUREMENTS = (JOINT, QUBIT, FIELD)


@dataclass(frozen=True)
class ProbeSpec:
    """Probe preparation: qubit angle, Fock number and oscillator truncation.

    ``truncation`` defaults to ``n_photons + 2``, the smallest space that holds
    ``|n+1>`` so the dynamics is exact.
    """

    theta: float
    n_photons: int
    truncation: int | None = None

    def __post_init__(self):
        theta = float(self.theta)
        if not np.isfinite(theta) or theta < 0.0 or theta > np.pi:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta}")
        if int(self.n_photons) != self.n_photons or self.n_photons < 0:
            raise ValueError(f"n_photons must be a non-negative integer, got {self.n_photons}")
        n = int(self.n_photons)
        d = n + 2 if self.truncation is None else int(self.truncation)
        if d < n + 2:
            raise ValueError(f"truncation {d} too small for n={n}; need at least {n + 2}")
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "n_photons", n)
        object.__setattr__(self, "truncation", d)

    @property
    def dim(self) -> int:
        return 2 * self.truncation

    @property
    def dims(self) -> tuple[int, int]:
        return (2, self.truncation)

    def index(self, qubit: int, m: int) -> int:
        return qubit * self.truncation + m


@dataclass(frozen=True)
class OutcomeDistribution:
    """Outcome probabilities ``p(j|omega)`` and their analytic omega-derivatives."""

    labels: tuple
    probs: np.ndarray
    dprobs: np.ndarray

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=float)
        dprobs = np.asarray(self.dprobs, dtype=float)
        if probs.shape != (len(self.labels),) or dprobs.shape != probs.shape:
            raise ValueError("labels, probs and dprobs must have matching lengths")
        if probs.min(initial=0.0) < -PROB_CLAMP:
            raise ValueError(f"negative probability {probs.min():.3e}")
        if abs(probs.sum() - 1.0) > SUM_TOL:
            raise ValueError(f"probabilities sum to {probs.sum():.15f}")
        if abs(dprobs.sum()) > SUM_TOL:
            raise ValueError(f"derivatives sum to {dprobs.sum():.3e}")
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "probs", np.clip(probs, 0.0, None))
        object.__setattr__(self, "dprobs", dprobs)

    def as_dict(self) -> dict:
        return dict(zip(self.labels, self.probs))


# ---------------------------------------------------------------- operators

def annihilation(d: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, d, dtype=float)), 1).astype(complex)


def sigma_plus() -> np.ndarray:
    """``|e><g|`` in the (e, g) ordering."""
    s = np.zeros((2, 2), dtype=complex)
    s[EXCITED, GROUND] = 1.0
    return s


def sigma_minus() -> np.ndarray:
    return sigma_plus().T.copy()


def sigma_z() -> np.ndarray:
    return np.diag([1.0, -1.0]).astype(complex)


def build_generator(spec: ProbeSpec) -> np.ndarray:
    """``(sigma_+ a + sigma_- a^dag) / 2`` on the truncated space."""
    a = annihilation(spec.truncation)
    return 0.5 * (
        hilbert.tensor_product(sigma_plus(), a)
        + hilbert.tensor_product(sigma_minus(), hilbert.dagger(a))
    )


def excitation_operator(spec: ProbeSpec) -> np.ndarray:
    """Total excitation number ``a^dag a + sigma_+ sigma_-``."""
    d = spec.truncation
    a = annihilation(d)
    return hilbert.tensor_product(np.eye(2), hilbert.dagger(a) @ a) + hilbert.tensor_product(
        sigma_plus() @ sigma_minus(), np.eye(d)
    )


# ------------------------------------------------------------------- states

def _angles(spec: ProbeSpec, omega):
    n = spec.n_photons
    c = np.cos(spec.theta / 2)
    s = np.sin(spec.theta / 2)
    r1, r0 = np.sqrt(n + 1.0), np.sqrt(float(n))
    return c, s, r1, r0, omega * r1, omega * r0


def probe_state(spec: ProbeSpec) -> np.ndarray:
    psi = np.zeros(spec.dim, dtype=complex)
    n = spec.n_photons
    psi[spec.index(EXCITED, n)] = np.cos(spec.theta / 2)
    psi[spec.index(GROUND, n)] = np.sin(spec.theta / 2)
    return psi


def evolve(spec: ProbeSpec, omega: float) -> np.ndarray:
    """Closed-form ``exp(-i omega G)`` applied to the probe."""
    c, s, _, _, x1, x0 = _angles(spec, omega)
    n = spec.n_photons
    psi = np.zeros(spec.dim, dtype=complex)
    psi[spec.index(EXCITED, n)] = c * np.cos(x1 / 2)
    psi[spec.index(GROUND, n + 1)] = -1j * c * np.sin(x1 / 2)
    psi[spec.index(GROUND, n)] = s * np.cos(x0 / 2)
    if n > 0:
        psi[spec.index(EXCITED, n - 1)] = -1j * s * np.sin(x0 / 2)
    return psi


def evolve_numeric(spec: ProbeSpec, omega: float) -> np.ndarray:
    """Same as :func:`evolve` but through the eigendecomposition of the generator."""
    return hilbert.unitary_from_generator(build_generator(spec), omega) @ probe_state(spec)


def global_state(spec: ProbeSpec, omega: float) -> np.ndarray:
    return hilbert.projector(evolve(spec, omega))


def reduced_qubit(spec: ProbeSpec, omega: float) -> np.ndarray:
    """Qubit density matrix in the (e, g) basis."""
    c, s, _, _, x1, x0 = _angles(spec, omega)
    gg = c**2 * np.sin(x1 / 2) ** 2 + s**2 * np.cos(x0 / 2) ** 2
    eg = 0.5 * np.sin(spec.theta) * np.cos(x0 / 2) * np.cos(x1 / 2)
    return np.array([[1.0 - gg, eg], [eg, gg]], dtype=complex)


def reduced_field(spec: ProbeSpec, omega: float) -> np.ndarray:
    """Oscillator density matrix on Fock levels ``0..d-1``.

    Populations sit on ``n-1, n, n+1``. For a qubit superposition
    (``0 < theta < pi``) the neighbouring levels also carry imaginary
    coherences ``<n|rho|n-1>`` and ``<n+1|rho|n>``; they vanish at
    ``theta in {0, pi}``.
    """
    c, s, _, _, x1, x0 = _angles(spec, omega)
    n = spec.n_photons
    half_sin = 0.5 * np.sin(spec.theta)
    rho = np.zeros((spec.truncation, spec.truncation), dtype=complex)
    rho[n, n] = 0.5 * (1 + c**2 * np.cos(x1) + s**2 * np.cos(x0))
    rho[n + 1, n + 1] = c**2 * (1 - np.cos(x1)) / 2
    up = -1j * half_sin * np.sin(x1 / 2) * np.cos(x0 / 2)
    rho[n + 1, n], rho[n, n + 1] = up, np.conj(up)
    if n > 0:
        rho[n - 1, n - 1] = s**2 * (1 - np.cos(x0)) / 2
        down = 1j * half_sin * np.cos(x1 / 2) * np.sin(x0 / 2)
        rho[n, n - 1], rho[n - 1, n] = down, np.conj(down)
    return rho


def reduced_qubit_derivative(spec: ProbeSpec, omega: float) -> np.ndarray:
    c, s, r1, r0, x1, x0 = _angles(spec, omega)
    dgg = 0.5 * (c**2 * r1 * np.sin(x1) - s**2 * r0 * np.sin(x0))
    deg = -0.25 * np.sin(spec.theta) * (
        r0 * np.sin(x0 / 2) * np.cos(x1 / 2) + r1 * np.cos(x0 / 2) * np.sin(x1 / 2)
    )
    return np.array([[-dgg, deg], [deg, dgg]], dtype=complex)


def reduced_field_derivative(spec: ProbeSpec, omega: float) -> np.ndarray:
    c, s, r1, r0, x1, x0 = _angles(spec, omega)
    n = spec.n_photons
    half_sin = 0.5 * np.sin(spec.theta)
    d = np.zeros((spec.truncation, spec.truncation), dtype=complex)
    d[n, n] = -0.5 * (c**2 * r1 * np.sin(x1) + s**2 * r0 * np.sin(x0))
    d[n + 1, n + 1] = 0.5 * c**2 * r1 * np.sin(x1)
    up = -0.5j * half_sin * (
        r1 * np.cos(x1 / 2) * np.cos(x0 / 2) - r0 * np.sin(x1 / 2) * np.sin(x0 / 2)
    )
    d[n + 1, n], d[n, n + 1] = up, np.conj(up)
    if n > 0:
        d[n - 1, n - 1] = 0.5 * s**2 * r0 * np.sin(x0)
        down = 0.5j * half_sin * (
            r0 * np.cos(x1 / 2) * np.cos(x0 / 2) - r1 * np.sin(x1 / 2) * np.sin(x0 / 2)
        )
        d[n, n - 1], d[n - 1, n] = down, np.conj(down)
    return d


# ---------------------------------------------------------- measurements

def outcome_table(spec: ProbeSpec, omega, measurement: str):
    """Labels, probabilities and derivatives for a measurement.

    ``omega`` may be an array; probabilities then have shape
    ``(n_outcomes,) + omega.shape``. Used directly by likelihood scans.
    """
    c, s, r1, r0, x1, x0 = _angles(spec, np.asarray(omega, dtype=float))
    n = spec.n_photons
    c2, s2 = c**2, s**2
    up_stay, up_move = c2 * (1 + np.cos(x1)) / 2, c2 * (1 - np.cos(x1)) / 2
    dn_stay, dn_move = s2 * (1 + np.cos(x0)) / 2, s2 * (1 - np.cos(x0)) / 2
    d_up = c2 * r1 * np.sin(x1) / 2
    d_dn = s2 * r0 * np.sin(x0) / 2

    if measurement == JOINT:
        rows = [
            (("e", n - 1), dn_move, d_dn),
            (("e", n), up_stay, -d_up),
            (("g", n), dn_stay, -d_dn),
            (("g", n + 1), up_move, d_up),
        ]
    elif measurement == QUBIT:
        rows = [
            ("e", up_stay + dn_move, d_dn - d_up),
            ("g", up_move + dn_stay, d_up - d_dn),
        ]
    elif measurement == FIELD:
        rows = [
            (n - 1, dn_move, d_dn),
            (n, up_stay + dn_stay, -d_up - d_dn),
            (n + 1, up_move, d_up),
        ]
    else:
        raise ValueError(f"unknown measurement {measurement!r}; choose from {MEASUREMENTS}")

    if n == 0 and measurement != QUBIT:
        rows = rows[1:]
    labels = [r[0] for r in rows]
    probs = np.stack([np.broadcast_to(r[1], np.shape(x1)) for r in rows])
    dprobs = np.stack([np.broadcast_to(r[2], np.shape(x1)) for r in rows])
    return labels, probs, dprobs


def distribution(spec: ProbeSpec, omega: float, measurement: str) -> OutcomeDistribution:
    labels, probs, dprobs = outcome_table(spec, float(omega), measurement)
    return OutcomeDistribution(labels, probs, dprobs)


def joint_distribution(spec: ProbeSpec, omega: float) -> OutcomeDistribution:
    """Population measurement on the qubit together with photon counting.

    Outcomes are ``(qubit, m)`` pairs, ordered by basis index. The ``(e, n-1)``
    outcome is omitted for ``n = 0``.
    """
    return distribution(spec, omega, JOINT)


def qubit_distribution(spec: ProbeSpec, omega: float) -> OutcomeDistribution:
    return distribution(spec, omega, QUBIT)


def field_distribution(spec: ProbeSpec, omega: float) -> OutcomeDistribution:
    return distribution(spec, omega, FIELD)


def excitation_expectation(spec: ProbeSpec) -> float:
    psi = probe_state(spec)
    return hilbert.expectation(excitation_operator(spec), psi).real


def basis_probabilities(spec: ProbeSpec, psi, labels: Sequence[Hashable]) -> np.ndarray:
    """``|<j,m|psi>|^2`` for joint labels ``(qubit, m)``."""
    psi = np.asarray(psi)
    idx = [spec.index(EXCITED if q == "e" else GROUND, m) for q, m in labels]
    return np.abs(psi[idx]) ** 2
