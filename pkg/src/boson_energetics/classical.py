"""Classical-side cost model: FLOP lower bound, energy, time, RCS reference.

The per-sample cost of the fastest known exact sampler is bounded below by its
two dominant inner steps, summed over subproblem sizes j = 2..n.  Partial
distinguishability and loss shrink the effective problem size, so the bound is
evaluated at the performance metric instead of the raw photon number.

Pure functions, thread-safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .resources import watt_hours

# Beyond this the terms of the sum exceed 2^63 and float accumulation takes over.
EXACT_SUM_MAX_N = 62

GFLOPS_PER_WATT_TO_FLOPS_PER_JOULE = 1.0e9


@dataclass(frozen=True)
class ClassicalPlatform:
    """Energy efficiency and peak rate of the reference supercomputer module."""

    eta_e_flops_per_joule: float = 72.733 * GFLOPS_PER_WATT_TO_FLOPS_PER_JOULE
    r_max_flops: float = 4.5e15

    def __post_init__(self) -> None:
        if self.eta_e_flops_per_joule <= 0:
            raise ValueError("eta_e_flops_per_joule must be > 0")
        if self.r_max_flops <= 0:
            raise ValueError("r_max_flops must be > 0")

    @classmethod
    def from_gflops_per_watt(cls, gflops_per_watt: float, r_max_flops: float) -> "ClassicalPlatform":
        return cls(
            eta_e_flops_per_joule=gflops_per_watt * GFLOPS_PER_WATT_TO_FLOPS_PER_JOULE,
            r_max_flops=r_max_flops,
        )


@dataclass(frozen=True)
class RcsReference:
    """Measured per-sample cost of the superconducting random-circuit sampler."""

    energy_per_sample_Wh: float = 1.0e-3
    time_per_sample_s: float = 2.0e-4

    def __post_init__(self) -> None:
        if self.energy_per_sample_Wh <= 0 or self.time_per_sample_s <= 0:
            raise ValueError("RCS reference values must be > 0")


def flop_lower_bound(m: int, n_eff: float):
    """Lower bound sum_{j=2}^{n} (j 2^j + m j) on FLOPs per sample.

    n is floor(n_eff); the empty sum (n < 2) is zero.  Up to n = 62 the sum is
    accumulated in exact integers, beyond that in floating point.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if n_eff < 0:
        raise ValueError("n_eff must be >= 0")
    n = math.floor(n_eff)
    if n < 2:
        return 0
    if n <= EXACT_SUM_MAX_N:
        return sum(j * 2**j + m * j for j in range(2, n + 1))
    total = 0.0
    for j in range(2, n + 1):
        total += j * 2.0**j + m * j
    return total


def classical_energy_per_sample(m: int, metric: float, platform: ClassicalPlatform) -> float:
    """Energy L(m, metric) / eta_e to draw one sample classically, in joule."""
    if metric < 0:
        raise ValueError("metric must be >= 0")
    return flop_lower_bound(m, metric) / platform.eta_e_flops_per_joule


def classical_energy_per_sample_wh(m: int, metric: float, platform: ClassicalPlatform) -> float:
    return watt_hours(classical_energy_per_sample(m, metric, platform))


def classical_time_per_sample(m: int, metric: float, platform: ClassicalPlatform) -> float:
    """Time L(m, metric) / R_max to draw one sample classically, in seconds."""
    if metric < 0:
        raise ValueError("metric must be >= 0")
    return flop_lower_bound(m, metric) / platform.r_max_flops


def rcs_reference() -> RcsReference:
    """Per-sample energy and time of the published random-circuit-sampling run."""
    return RcsReference()


def rcs_energy_ratio(quantum_energy_wh: float, ref: RcsReference | None = None) -> float:
    """Order-of-magnitude ratio of the RCS energy cost to a photonic energy cost.

    The two sampling tasks have no known hardness mapping; treat the ratio as a
    hardware-level benchmark only.
    """
    if quantum_energy_wh <= 0:
        raise ValueError("quantum_energy_wh must be > 0")
    if ref is None:
        ref = rcs_reference()
    return ref.energy_per_sample_Wh / quantum_energy_wh
