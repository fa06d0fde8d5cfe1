"""Classical and quantum Fisher information for the JC coupling."""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from . import hilbert, jc_model
from .jc_model import OutcomeDistribution, ProbeSpec

PROB_CUTOFF = 1e-12
EIG_SUM_CUTOFF = 1e-10
DERIV_HERMITIAN_TOL = 1e-10

GLOBAL = "global"
SUBSYSTEMS = (GLOBAL, hilbert.QUBIT, hilbert.FIELD)


def classical_fi(dist: OutcomeDistribution) -> float:
    """``sum_j dp_j^2 / p_j`` over outcomes with ``p_j > 1e-12``.

    Outcomes below the cutoff are dropped. Where a probability touches zero
    with non-zero slope the true summand has a finite limit which this
    misses, so avoid evaluating exactly at such isolated points.
    """
    p, dp = dist.probs, dist.dprobs
    keep = p > PROB_CUTOFF
    return float(np.sum(dp[keep] ** 2 / p[keep]))


def qfi_pure_unitary(spec: ProbeSpec) -> float:
    """Four times the generator variance on the probe."""
    g = jc_model.build_generator(spec)
    psi = jc_model.probe_state(spec)
    mean = hilbert.expectation(g, psi).real
    second = hilbert.expectation(g @ g, psi).real
    return 4.0 * (second - mean**2)


def _check_inputs(rho, drho):
    rho = hilbert.as_operator(rho)
    drho = hilbert.as_operator(drho)
    if rho.shape != drho.shape:
        raise ValueError(f"shape mismatch: rho {rho.shape}, drho {drho.shape}")
    for name, a in (("rho", rho), ("drho", drho)):
        dev = np.max(np.abs(a - hilbert.dagger(a)))
        if dev > DERIV_HERMITIAN_TOL:
            raise ValueError(f"{name} is not Hermitian (max deviation {dev:.3e})")
    return rho, drho


def _sld_kernel(rho, drho):
    rho, drho = _check_inputs(rho, drho)
    spec = hilbert.eig_hermitian(rho)
    v = spec.eigenvectors
    lam_sum = spec.eigenvalues[:, None] + spec.eigenvalues[None, :]
    supported = lam_sum > EIG_SUM_CUTOFF
    d_eig = hilbert.dagger(v) @ drho @ v
    return v, d_eig, lam_sum, supported


def qfi_spectral(rho, drho) -> float:
    """QFI from the eigenbasis of ``rho`` and the derivative ``drho``.

    Uses ``2 sum_{kl} |<k|drho|l>|^2 / (lam_k + lam_l)``, which needs no
    eigenvector derivatives. Pairs with ``lam_k + lam_l <= 1e-10`` are skipped.
    """
    _, d_eig, lam_sum, supported = _sld_kernel(rho, drho)
    return float(2.0 * np.sum(np.abs(d_eig[supported]) ** 2 / lam_sum[supported]))


def sld(rho, drho) -> np.ndarray:
    """Symmetric logarithmic derivative, zero on the kernel of ``rho``."""
    v, d_eig, lam_sum, supported = _sld_kernel(rho, drho)
    l_eig = np.zeros_like(d_eig)
    l_eig[supported] = 2.0 * d_eig[supported] / lam_sum[supported]
    return v @ l_eig @ hilbert.dagger(v)


def kernel_leakage(rho, drho) -> float:
    """Largest entry of ``drho`` between kernel vectors of ``rho``.

    The cutoff in :func:`qfi_spectral` is exact only when this vanishes.
    """
    _, d_eig, _, supported = _sld_kernel(rho, drho)
    return float(np.max(np.abs(d_eig[~supported]), initial=0.0))


def drho_analytic(spec: ProbeSpec, omega: float, subsystem: str = GLOBAL) -> np.ndarray:
    if subsystem == GLOBAL:
        g = jc_model.build_generator(spec)
        rho = jc_model.global_state(spec, omega)
        return -1j * hilbert.commutator(g, rho)
    if subsystem == hilbert.QUBIT:
        return jc_model.reduced_qubit_derivative(spec, omega)
    if subsystem == hilbert.FIELD:
        return jc_model.reduced_field_derivative(spec, omega)
    raise ValueError(f"unknown subsystem {subsystem!r}; choose from {SUBSYSTEMS}")


def state(spec: ProbeSpec, omega: float, subsystem: str = GLOBAL) -> np.ndarray:
    if subsystem == GLOBAL:
        return jc_model.global_state(spec, omega)
    if subsystem == hilbert.QUBIT:
        return jc_model.reduced_qubit(spec, omega)
    if subsystem == hilbert.FIELD:
        return jc_model.reduced_field(spec, omega)
    raise ValueError(f"unknown subsystem {subsystem!r}; choose from {SUBSYSTEMS}")


def qfi(spec: ProbeSpec, omega: float, subsystem: str = GLOBAL) -> float:
    return qfi_spectral(state(spec, omega, subsystem), drho_analytic(spec, omega, subsystem))


@dataclass(frozen=True)
class FisherReport:
    H_total: float
    H_qubit: float
    H_field: float
    F_joint: float
    F_qubit: float
    F_field: float

    def as_dict(self) -> dict:
        return asdict(self)


def qfi_report(spec: ProbeSpec, omega: float) -> FisherReport:
    return FisherReport(
        H_total=qfi(spec, omega, GLOBAL),
        H_qubit=qfi(spec, omega, hilbert.QUBIT),
        H_field=qfi(spec, omega, hilbert.FIELD),
        F_joint=classical_fi(jc_model.joint_distribution(spec, omega)),
        F_qubit=classical_fi(jc_model.qubit_distribution(spec, omega)),
        F_field=classical_fi(jc_model.field_distribution(spec, omega)),
    )
