"""Constrained grid search over the control parameters (T, n).

The resource (total wall power) is minimized subject to the performance metric
reaching a target M0.  The equality constraint is relaxed to metric >= M0 with
power minimization: power is monotone in n, so the minimizer saturates the
constraint from above on the integer grid.  Ties are broken by smaller n, then
larger T; the reduction uses the fixed total order (power, n, -T) so results
do not depend on evaluation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .classical import (
    ClassicalPlatform,
    classical_energy_per_sample,
    classical_time_per_sample,
)
from .metric import AlgorithmTolerances, click_ratio, metric as metric_value, mode_count
from .photon import DistinguishabilityModel, effective_indistinguishability
from .resources import (
    FacilityConfig,
    NoiseBudget,
    end_to_end_transmission,
    expected_losses,
    quantum_energy_per_sample,
    quantum_time_per_sample,
    total_power,
)


@dataclass(frozen=True)
class SearchSpace:
    """Temperature grid and photon-number range swept by the optimizer."""

    t_min_K: float = 1.0
    t_max_K: float = 3.0
    t_step_K: float = 0.01
    n_min: int = 1
    n_max: int = 200

    def __post_init__(self) -> None:
        if not self.t_min_K < self.t_max_K:
            raise ValueError("t_min_K must be < t_max_K")
        if self.t_step_K <= 0:
            raise ValueError("t_step_K must be > 0")
        if self.n_min < 1:
            raise ValueError("n_min must be >= 1")
        if self.n_max < self.n_min:
            raise ValueError("n_max must be >= n_min")

    def temperature_grid(self) -> np.ndarray:
        steps = round((self.t_max_K - self.t_min_K) / self.t_step_K)
        steps = max(steps, 1)
        return np.linspace(self.t_min_K, self.t_max_K, steps + 1)


@dataclass(frozen=True)
class OperatingPoint:
    """One optimizer solution with its quantum and classical per-sample costs.

    e_c_J and t_c_s are evaluated at the target metric; metric_achieved records
    the (possibly larger) metric at the chosen grid point.  eta_star is the
    end-to-end transmission (n* - l) / n* the hardware must reach.
    """

    feasible: bool
    target: float
    l: float
    t_star_K: float = math.nan
    n_star: int = 0
    m: int = 0
    metric_achieved: float = math.nan
    eta_star: float = math.nan
    p_tot_W: float = math.nan
    e_q_J: float = math.nan
    t_q_s: float = math.nan
    e_c_J: float = math.nan
    t_c_s: float = math.nan
    clamped: bool = False

    FIELDS = (
        "feasible",
        "target",
        "l",
        "t_star_K",
        "n_star",
        "m",
        "metric_achieved",
        "eta_star",
        "p_tot_W",
        "e_q_J",
        "t_q_s",
        "e_c_J",
        "t_c_s",
        "clamped",
    )

    def row(self) -> list:
        return [getattr(self, name) for name in self.FIELDS]


def _indistinguishability_on_grid(
    t_grid: np.ndarray, model: DistinguishabilityModel
) -> np.ndarray:
    return np.array([effective_indistinguishability(float(t), model) for t in t_grid])


def _metric_on_grid(
    ind_grid: np.ndarray, n: int, l: float, tol: AlgorithmTolerances
) -> np.ndarray:
    """Vectorized metric over the temperature grid for one photon number."""
    m = mode_count(n)
    x = ind_grid * ind_grid * click_ratio(n, m, l)
    k_eff = np.log(0.5 * tol.eps_delta * (1.0 - x)) / np.log(x) - 1.0
    return np.maximum(0.0, np.minimum(n - l, k_eff))


def optimize_for_metric(
    target: float,
    l: float,
    space: SearchSpace,
    model: DistinguishabilityModel,
    tol: AlgorithmTolerances,
    facility: FacilityConfig,
    platform: ClassicalPlatform,
) -> OperatingPoint:
    """Minimize total power over grid points (T, n) with metric(T, n, l) >= target.

    For fixed n the feasible temperatures form a low-T prefix (the metric is
    non-increasing in T) and power is non-increasing in T, so scanning each n
    and taking its largest feasible T reproduces the exhaustive grid argmin.
    Returns an infeasible point when no grid point reaches the target.
    """
    if target <= 0:
        raise ValueError("target must be > 0")
    if l < 0:
        raise ValueError("l must be >= 0")
    t_grid = space.temperature_grid()
    if t_grid.size == 0:
        raise ValueError("empty temperature grid")
    ind_grid = _indistinguishability_on_grid(t_grid, model)

    n_lo = max(space.n_min, math.floor(l) + 1)
    best_key: tuple[float, int, float] | None = None
    best: tuple[float, int, float] | None = None  # (T, n, metric at point)
    for n in range(n_lo, space.n_max + 1):
        if n - l < target:
            continue
        metric_vals = _metric_on_grid(ind_grid, n, l, tol)
        feasible = np.nonzero(metric_vals >= target)[0]
        if feasible.size == 0:
            continue
        idx = int(feasible[-1])  # largest feasible T: cheapest cooling
        t_here = float(t_grid[idx])
        power = total_power(t_here, n, facility)
        key = (power, n, -t_here)
        if best_key is None or key < best_key:
            best_key = key
            best = (t_here, n, float(metric_vals[idx]))

    if best is None:
        return OperatingPoint(feasible=False, target=target, l=l)
    t_star, n_star, achieved = best
    m = mode_count(n_star)
    return OperatingPoint(
        feasible=True,
        target=target,
        l=l,
        t_star_K=t_star,
        n_star=n_star,
        m=m,
        metric_achieved=achieved,
        eta_star=(n_star - l) / n_star,
        p_tot_W=total_power(t_star, n_star, facility),
        e_q_J=quantum_energy_per_sample(t_star, n_star, facility),
        t_q_s=quantum_time_per_sample(n_star, facility),
        e_c_J=classical_energy_per_sample(m, target, platform),
        t_c_s=classical_time_per_sample(m, target, platform),
    )


def sweep_targets(
    targets,
    l: float,
    space: SearchSpace,
    model: DistinguishabilityModel,
    tol: AlgorithmTolerances,
    facility: FacilityConfig,
    platform: ClassicalPlatform,
) -> list[OperatingPoint]:
    """One operating point per target; infeasible targets are recorded, not fatal."""
    targets = list(targets)
    if not targets:
        raise ValueError("empty target list")
    return [
        optimize_for_metric(m0, l, space, model, tol, facility, platform) for m0 in targets
    ]


DEFAULT_TARGETS = tuple(range(1, 26))


def energy_threshold(
    l: float,
    space: SearchSpace,
    model: DistinguishabilityModel,
    tol: AlgorithmTolerances,
    facility: FacilityConfig,
    platform: ClassicalPlatform,
    targets=DEFAULT_TARGETS,
) -> int | None:
    """Smallest integer target whose optimum has E_q <= E_c; None if no crossing."""
    for point in sweep_targets(targets, l, space, model, tol, facility, platform):
        if point.feasible and point.e_q_J <= point.e_c_J:
            return int(point.target)
    return None


def computational_threshold(
    l: float,
    space: SearchSpace,
    model: DistinguishabilityModel,
    tol: AlgorithmTolerances,
    facility: FacilityConfig,
    platform: ClassicalPlatform,
    targets=DEFAULT_TARGETS,
) -> int | None:
    """Smallest integer target whose optimum has t_q <= t_c; None if no crossing."""
    for point in sweep_targets(targets, l, space, model, tol, facility, platform):
        if point.feasible and point.t_q_s <= point.t_c_s:
            return int(point.target)
    return None


@dataclass(frozen=True)
class LostPhotonRow:
    """Summary of the optimization landscape at one fixed lost-photon count."""

    l: int
    energy_threshold: int | None
    min_k_eff: float | None  # smallest k_eff on the branch where it limits the metric
    note: str


def lost_photon_sweep(
    l_values,
    space: SearchSpace,
    model: DistinguishabilityModel,
    tol: AlgorithmTolerances,
    facility: FacilityConfig,
    platform: ClassicalPlatform,
    targets=DEFAULT_TARGETS,
) -> list[LostPhotonRow]:
    """Per l: energy threshold and the lowest metric-limiting k_eff.

    k_eff limits the metric only where k_eff <= n - l; below that the metric is
    just the surviving photon count and no temperature interplay happens.
    """
    t_max = space.temperature_grid()[-1]
    ind = effective_indistinguishability(float(t_max), model)
    rows = []
    for l in l_values:
        limiting = []
        for n in range(math.floor(l) + 2, space.n_max + 1):
            m = mode_count(n)
            x = ind * ind * click_ratio(n, m, l)
            k_eff = math.log(0.5 * tol.eps_delta * (1.0 - x)) / math.log(x) - 1.0
            if k_eff <= n - l:
                limiting.append(k_eff)
        thr = energy_threshold(l, space, model, tol, facility, platform, targets)
        if limiting:
            note = "ok"
            min_k = min(limiting)
        else:
            note = "k_eff never limits the metric in range"
            min_k = None
        rows.append(LostPhotonRow(l=int(l), energy_threshold=thr, min_k_eff=min_k, note=note))
    return rows


@dataclass(frozen=True)
class HardwareSweepRow:
    """Fixed-hardware scaling: metric and costs at one photon number."""

    n: int
    m: int
    l: float
    eta: float
    metric: float
    e_q_J: float
    t_q_s: float
    e_c_J: float
    t_c_s: float


def fixed_hardware_sweep(
    n_values,
    budget: NoiseBudget,
    temperature_K: float,
    model: DistinguishabilityModel,
    tol: AlgorithmTolerances,
    facility: FacilityConfig,
    platform: ClassicalPlatform,
) -> list[HardwareSweepRow]:
    """Scaling study at fixed per-component losses: l(n) = n (1 - eta(m(n))).

    Classical costs are evaluated at the achieved metric since there is no
    target here.
    """
    rows = []
    for n in n_values:
        m = mode_count(n)
        eta = end_to_end_transmission(m, budget)
        l = expected_losses(n, budget)
        value = metric_value(temperature_K, n, l, model, tol)
        rows.append(
            HardwareSweepRow(
                n=n,
                m=m,
                l=l,
                eta=eta,
                metric=value,
                e_q_J=quantum_energy_per_sample(temperature_K, n, facility),
                t_q_s=quantum_time_per_sample(n, facility),
                e_c_J=classical_energy_per_sample(m, value, platform),
                t_c_s=classical_time_per_sample(m, value, platform),
            )
        )
    return rows
