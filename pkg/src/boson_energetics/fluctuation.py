"""Monte Carlo over binomial photon transmission.

A setup with end-to-end transmission eta delivers a fluctuating number of
photons per sample; the metric, and with it the classical simulation cost,
fluctuates too.  This module draws those samples reproducibly, averages the
classical cost, and locates the advantage thresholds on the mean-metric axis.

Samples are drawn from per-index counter-based substreams and reduced in index
order with exact summation, so results are bit-identical regardless of how the
loop would be parallelized; this implementation is the single-threaded
reference path.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .classical import ClassicalPlatform, classical_energy_per_sample, classical_time_per_sample
from .metric import AlgorithmTolerances, metric as metric_value
from .optimizer import (
    DEFAULT_TARGETS,
    OperatingPoint,
    SearchSpace,
    sweep_targets,
)
from .photon import DistinguishabilityModel
from .resources import FacilityConfig, quantum_energy_per_sample, quantum_time_per_sample
from .rng import substream


@dataclass(frozen=True)
class McConfig:
    """Sample count, base seed, and replication count for seed-spread studies."""

    n_samples: int = 10_000
    seed: int = 123456789
    n_seeds: int = 10

    def __post_init__(self) -> None:
        if self.n_samples < 1:
            raise ValueError("n_samples must be >= 1")
        if self.n_seeds < 1:
            raise ValueError("n_seeds must be >= 1")


@dataclass(frozen=True)
class FluctuationResult:
    """Averages and metric histogram of one fluctuation run.

    Histogram bins are unit integers (round half up); counts sum to n_samples.
    e_q_J and t_q_s do not fluctuate: the quantum cost per sample is
    independent of how many photons were lost.
    """

    n: int
    m: int
    eta: float
    temperature_K: float
    seed: int
    n_samples: int
    mean_metric: float
    metric_histogram: dict[int, int]
    mean_e_c_J: float
    e_q_J: float
    mean_t_c_s: float
    t_q_s: float


def draw_transmitted(n: int, eta: float, rng: np.random.Generator) -> int:
    """Number of surviving photons out of n at per-photon transmission eta."""
    if not 0 <= eta <= 1:
        raise ValueError("eta must be in [0, 1]")
    return int(rng.binomial(n, eta))


def _metric_bin(value: float) -> int:
    # round half up, matching integer-labeled histograms
    return math.floor(value + 0.5)


def run_fluctuation(
    n: int,
    m: int,
    eta: float,
    temperature_K: float,
    mc: McConfig,
    model: DistinguishabilityModel,
    tol: AlgorithmTolerances,
    facility: FacilityConfig,
    platform: ClassicalPlatform,
) -> FluctuationResult:
    """Draw n_samples transmission outcomes and average the classical cost.

    Per sample i: t_i ~ Binomial(n, eta) from substream(seed, i), the lost
    count is l_i = n - t_i, the metric is evaluated at l_i (zero when nothing
    survives), and the classical energy/time follow from the floored metric.
    """
    if not 0 < eta <= 1:
        raise ValueError("eta must be in (0, 1]")
    metrics: list[float] = []
    energies: list[float] = []
    times: list[float] = []
    histogram: Counter[int] = Counter()
    for i in range(mc.n_samples):
        transmitted = draw_transmitted(n, eta, substream(mc.seed, i))
        if transmitted == 0:
            value = 0.0
        else:
            value = metric_value(temperature_K, n, n - transmitted, model, tol)
        metrics.append(value)
        energies.append(classical_energy_per_sample(m, value, platform))
        times.append(classical_time_per_sample(m, value, platform))
        histogram[_metric_bin(value)] += 1

    n_samples = mc.n_samples
    return FluctuationResult(
        n=n,
        m=m,
        eta=eta,
        temperature_K=temperature_K,
        seed=mc.seed,
        n_samples=n_samples,
        mean_metric=math.fsum(metrics) / n_samples,
        metric_histogram=dict(sorted(histogram.items())),
        mean_e_c_J=math.fsum(energies) / n_samples,
        e_q_J=quantum_energy_per_sample(temperature_K, n, facility),
        mean_t_c_s=math.fsum(times) / n_samples,
        t_q_s=quantum_time_per_sample(n, facility),
    )


@dataclass(frozen=True)
class AveragedRow:
    """One sweep target with its operating point and fluctuation averages."""

    target: float
    point: OperatingPoint
    fluctuation: FluctuationResult


@dataclass(frozen=True)
class AveragedThresholds:
    """Advantage thresholds on the mean-metric axis, with the sweep rows behind them."""

    energy: float | None
    computational: float | None
    rows: tuple[AveragedRow, ...]


def _interpolate_crossing(points: list[tuple[float, float]]) -> float | None:
    """Smallest x with f(x) <= 0 on the piecewise-linear interpolant of (x, f)."""
    prev: tuple[float, float] | None = None
    for x, f in points:
        if f <= 0:
            if prev is None or prev[1] <= 0:
                return x
            px, pf = prev
            if x == px:
                return x
            return px + (x - px) * pf / (pf - f)
        prev = (x, f)
    return None


def averaged_thresholds(
    l: float,
    mc: McConfig,
    space: SearchSpace,
    model: DistinguishabilityModel,
    tol: AlgorithmTolerances,
    facility: FacilityConfig,
    platform: ClassicalPlatform,
    targets=DEFAULT_TARGETS,
) -> AveragedThresholds:
    """Advantage thresholds when the classical cost is averaged over transmission noise.

    Re-runs the target sweep; each optimum (T*, n*, eta*) gets a fluctuation
    run, and the crossings of E_q vs <E_c> and t_q vs <t_c> are located by
    linear interpolation between adjacent sweep points on the mean-metric axis.
    """
    points = sweep_targets(targets, l, space, model, tol, facility, platform)
    rows: list[AveragedRow] = []
    for point in points:
        if not point.feasible:
            continue
        fluct = run_fluctuation(
            point.n_star,
            point.m,
            point.eta_star,
            point.t_star_K,
            mc,
            model,
            tol,
            facility,
            platform,
        )
        rows.append(AveragedRow(target=point.target, point=point, fluctuation=fluct))

    rows.sort(key=lambda r: r.fluctuation.mean_metric)
    energy_curve = [
        (r.fluctuation.mean_metric, r.fluctuation.e_q_J - r.fluctuation.mean_e_c_J)
        for r in rows
    ]
    time_curve = [
        (r.fluctuation.mean_metric, r.fluctuation.t_q_s - r.fluctuation.mean_t_c_s)
        for r in rows
    ]
    return AveragedThresholds(
        energy=_interpolate_crossing(energy_curve),
        computational=_interpolate_crossing(time_curve),
        rows=tuple(rows),
    )
