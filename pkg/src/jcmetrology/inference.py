"""Monte Carlo check of the Cramer-Rao bound with maximum-likelihood estimates."""
from __future__ import annotations

from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from . import estimation, jc_model
from .jc_model import ProbeSpec

GRID_POINTS = 1000
REFINE_TOL = 1e-8
MIN_FISHER = 1e-9
_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


class EstimationError(RuntimeError):
    """The likelihood cannot single out an estimate."""


def default_interval(
    spec: ProbeSpec, omega_true: float, measurement: str = jc_model.JOINT
) -> tuple[float, float]:
    """Local search window around ``omega_true``.

    The window reaches 90% of the way to the nearest turning point of any
    omega-dependent outcome probability, so the likelihood has a single peak,
    and is never wider than ``pi/sqrt(n+1)``.
    """
    cap = 0.5 * np.pi / np.sqrt(spec.n_photons + 1.0)
    offsets = np.linspace(-cap, cap, 4001)
    _, _, dprobs = jc_model.outcome_table(spec, omega_true + offsets, measurement)
    dprobs = dprobs[np.max(np.abs(dprobs), axis=1) > 1e-12]
    sign = np.sign(dprobs)
    flips = np.any((sign[:, :-1] != sign[:, 1:]) | (sign[:, :-1] == 0), axis=0)
    near = np.minimum(np.abs(offsets[:-1]), np.abs(offsets[1:]))[flips]
    half = min(0.9 * near.min(), cap) if near.size else cap
    if half <= 0:
        raise EstimationError(
            f"omega_true={omega_true} sits on a turning point of the outcome "
            "probabilities; give an explicit search interval"
        )
    return (omega_true - half, omega_true + half)


@dataclass(frozen=True)
class McConfig:
    spec: ProbeSpec
    omega_true: float
    measurement: str = jc_model.JOINT
    samples: int = 10_000
    repetitions: int = 100
    seed: int = 0
    search_interval: tuple[float, float] | None = None

    def __post_init__(self):
        if self.measurement not in jc_model.MEASUREMENTS:
            raise ValueError(f"unknown measurement {self.measurement!r}")
        if self.samples < 1 or self.repetitions < 1:
            raise ValueError("samples and repetitions must be positive")
        if self.search_interval is None:
            object.__setattr__(
                self, "search_interval", default_interval(self.spec, self.omega_true, self.measurement)
            )
        lo, hi = map(float, self.search_interval)
        if not hi > lo:
            raise ValueError(f"empty search interval ({lo}, {hi})")
        if not lo < self.omega_true < hi:
            raise ValueError(f"omega_true={self.omega_true} outside ({lo}, {hi})")
        object.__setattr__(self, "search_interval", (lo, hi))

    def distribution(self, omega: float | None = None):
        omega = self.omega_true if omega is None else omega
        return jc_model.distribution(self.spec, omega, self.measurement)


@dataclass
class EstimationReport:
    estimates: list[float]
    mean: float
    bias: float
    empirical_variance: float
    fisher: float
    qfi: float
    cr_bound: float
    q_cr_bound: float
    efficiency: float
    bound_respected: bool
    config: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return asdict(self)


def _rng(seed: int, stream: int | None = None) -> np.random.Generator:
    key = [int(seed) & 0xFFFFFFFFFFFFFFFF]
    if stream is not None:
        key.append(int(stream))
    return np.random.default_rng(key)


def sample_outcomes(cfg: McConfig, rng: np.random.Generator | None = None) -> list:
    """``cfg.samples`` i.i.d. outcome labels drawn at ``cfg.omega_true``."""
    rng = _rng(cfg.seed) if rng is None else rng
    dist = cfg.distribution()
    idx = rng.choice(len(dist.labels), size=cfg.samples, p=dist.probs / dist.probs.sum())
    return [dist.labels[i] for i in idx]


def sample_counts(cfg: McConfig, rng: np.random.Generator) -> np.ndarray:
    """Outcome histogram of ``cfg.samples`` draws, in label order."""
    dist = cfg.distribution()
    return rng.multinomial(cfg.samples, dist.probs / dist.probs.sum())


def _log_likelihood(cfg: McConfig, counts: np.ndarray, omega) -> np.ndarray:
    _, probs, _ = jc_model.outcome_table(cfg.spec, omega, cfg.measurement)
    probs = np.clip(probs, 0.0, None)
    active = counts > 0
    with np.errstate(divide="ignore"):
        logs = np.log(probs[active])
    return np.tensordot(counts[active], logs, axes=1)


def _golden_max(f, a: float, b: float, tol: float) -> float:
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def mle_from_counts(cfg: McConfig, counts) -> float:
    """Maximise the multinomial log-likelihood over ``cfg.search_interval``.

    A 1000-point grid locates the peak, then golden-section search refines it
    to 1e-8 inside the neighbouring grid cells. Grid ties go to the point
    closest to the interval midpoint.
    """
    counts = np.asarray(counts)
    if counts.sum() == 0:
        raise EstimationError("no outcomes to estimate from")
    lo, hi = cfg.search_interval
    grid = np.linspace(lo, hi, GRID_POINTS)
    ll = _log_likelihood(cfg, counts, grid)
    best = ll.max()
    if not np.isfinite(best):
        raise EstimationError("observed outcomes are impossible everywhere on the interval")
    finite = ll[np.isfinite(ll)]
    if best - finite.min() <= 1e-12 * max(1.0, abs(best)) and finite.size == grid.size:
        raise EstimationError("likelihood is flat on the interval: zero Fisher information")

    ties = np.flatnonzero(ll >= best - 1e-12 * max(1.0, abs(best)))
    mid = 0.5 * (lo + hi)
    i = ties[np.argmin(np.round(np.abs(grid[ties] - mid), 12))]
    a, b = grid[max(i - 1, 0)], grid[min(i + 1, grid.size - 1)]
    return _golden_max(lambda w: float(_log_likelihood(cfg, counts, w)), a, b, REFINE_TOL)


def mle(cfg: McConfig, outcomes: Sequence) -> float:
    if len(outcomes) == 0:
        raise EstimationError("no outcomes to estimate from")
    labels = cfg.distribution().labels
    tally = Counter(outcomes)
    unknown = set(tally) - set(labels)
    if unknown:
        raise EstimationError(f"outcomes {sorted(map(str, unknown))} cannot occur")
    return mle_from_counts(cfg, np.array([tally.get(lab, 0) for lab in labels]))


def run_experiment(cfg: McConfig) -> EstimationReport:
    """Repeat the M-shot experiment and compare the estimator spread with 1/(M F)."""
    fisher = estimation.classical_fi(cfg.distribution())
    if fisher < MIN_FISHER:
        raise EstimationError(
            f"zero Fisher information (F={fisher:.3e}) for {cfg.measurement} measurement"
        )
    h_total = estimation.qfi_pure_unitary(cfg.spec)

    estimates = []
    for rep in range(cfg.repetitions):
        counts = sample_counts(cfg, _rng(cfg.seed, rep))
        estimates.append(mle_from_counts(cfg, counts))
    est = np.array(estimates)
    mean = float(est.mean())
    var = float(est.var(ddof=1)) if est.size > 1 else 0.0

    m = cfg.samples
    cr = 1.0 / (m * fisher)
    qcr = 1.0 / (m * h_total)
    slack = 1.0 - 3.0 / np.sqrt(cfg.repetitions)
    return EstimationReport(
        estimates=[float(x) for x in est],
        mean=mean,
        bias=mean - cfg.omega_true,
        empirical_variance=var,
        fisher=fisher,
        qfi=h_total,
        cr_bound=cr,
        q_cr_bound=qcr,
        efficiency=cr / var if var > 0 else float("inf"),
        bound_respected=bool(var >= qcr * slack),
        config={
            "theta": cfg.spec.theta,
            "n": cfg.spec.n_photons,
            "truncation": cfg.spec.truncation,
            "omega_true": cfg.omega_true,
            "measurement": cfg.measurement,
            "samples": cfg.samples,
            "repetitions": cfg.repetitions,
            "seed": cfg.seed,
            "search_interval": list(cfg.search_interval),
        },
    )
