"""Hardness metric for lossy, partially distinguishable boson sampling.

The classical simulation cost is governed by the number of detectors that
click, not by the number of input photons.  These routines compute the typical
click count with and without loss, reduce an imperfect instance to an
equivalent number of ideal photons (k_eff), and combine both into the
performance metric min(n - l, k_eff).

All quantities stay real-valued; rounding to integers happens only at
presentation time.  Pure functions, thread-safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .photon import DistinguishabilityModel, effective_indistinguishability

# Modes per photon; kept as an exact ratio so that ceil() never suffers from
# binary rounding (2.1 * 10 != 21.0 in floats).
_MODE_NUM = 21
_MODE_DEN = 10


@dataclass(frozen=True)
class SamplingInstance:
    """One boson sampling configuration: n input photons, m modes, l lost photons.

    l is real-valued so that expected-loss scenarios can be represented; flows
    that draw integer losses simply pass integers.
    """

    n: int
    m: int
    l: float = 0.0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.m < self.n:
            raise ValueError("m must be >= n")
        if not 0 <= self.l < self.n:
            raise ValueError("l must satisfy 0 <= l < n")

    @classmethod
    def standard(cls, n: int, l: float = 0.0) -> "SamplingInstance":
        """Instance with the linear mode-count convention m = ceil(2.1 n)."""
        return cls(n=n, m=mode_count(n), l=l)


@dataclass(frozen=True)
class AlgorithmTolerances:
    """Product eps * delta of simulation error tolerance and failure probability."""

    eps_delta: float = 0.001

    def __post_init__(self) -> None:
        if not 0 < self.eps_delta < 1:
            raise ValueError("eps_delta must be in (0, 1)")


def mode_count(n: int) -> int:
    """Number of modes ceil(2.1 n), computed in integer arithmetic."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return -(-_MODE_NUM * n // _MODE_DEN)


def typical_clicks(n: int, m: int) -> float:
    """Typical number of triggered detectors m n / (m + n) for a lossless run."""
    if n < 1 or m < 1:
        raise ValueError("n and m must be >= 1")
    return m * n / (m + n)


def typical_clicks_lossy(n: int, m: int, l: float) -> float:
    """Typical click count with l photons lost: m (n - l) / (m + n - l)."""
    if not 0 <= l < n:
        raise ValueError("l must satisfy 0 <= l < n")
    return m * (n - l) / (m + n - l)


def large_deviation_center(n: int, m: int) -> float:
    """Centering m n / (m + n + 1) of the click-count concentration statement."""
    return m * n / (m + n + 1)


def large_deviation_bound(n: int, m: int, t: float) -> float:
    """Bound 2 exp(-2 t^2 n) on the probability of clicks deviating by t*n or more."""
    if t < 0:
        raise ValueError("t must be >= 0")
    if n < 1:
        raise ValueError("n must be >= 1")
    return 2.0 * math.exp(-2.0 * t * t * n)


def simulability_kernel(x: float, tol: AlgorithmTolerances) -> float:
    """Shared kernel k(x) = ln[(eps*delta/2)(1 - x)] / ln(x) - 1 for x in (0, 1).

    Both the collision-free and the saturated-regime reductions evaluate this
    kernel; they differ only in the argument x.
    """
    if not 0 < x < 1:
        raise ValueError(f"kernel argument must be in (0, 1), got {x}")
    return math.log(0.5 * tol.eps_delta * (1.0 - x)) / math.log(x) - 1.0


def _check_indistinguishability(ind: float) -> None:
    if not 0 < ind < 1:
        raise ValueError(f"indistinguishability must be in (0, 1), got {ind}")


def k_collision_free(ind: float, n: int, l: float, tol: AlgorithmTolerances) -> float:
    """Equivalent ideal-photon count in the collision-free regime.

    Kernel argument I^2 (n - l) / n.
    """
    _check_indistinguishability(ind)
    if not 0 <= l < n:
        raise ValueError("l must satisfy 0 <= l < n")
    return simulability_kernel(ind * ind * (n - l) / n, tol)


def click_ratio(n: int, m: int, l: float) -> float:
    """Closed form of the lossy-to-lossless click ratio (n-l)(m+n) / (n(m+n-l))."""
    if not 0 <= l < n:
        raise ValueError("l must satisfy 0 <= l < n")
    return (n - l) * (m + n) / (n * (m + n - l))


def k_effective(ind: float, inst: SamplingInstance, tol: AlgorithmTolerances) -> float:
    """Equivalent ideal-photon count in the saturated regime m = Theta(n).

    Same kernel as k_collision_free with (n - l)/n replaced by the ratio of
    typical click counts with and without loss.
    """
    _check_indistinguishability(ind)
    return simulability_kernel(ind * ind * click_ratio(inst.n, inst.m, inst.l), tol)


@dataclass(frozen=True)
class MetricBreakdown:
    """Intermediate quantities behind one metric evaluation."""

    indistinguishability: float
    c_s: float
    c_s_l: float
    ratio: float
    k_eff: float
    value: float
    clamped: bool


def metric_breakdown(
    temperature_K: float,
    n: int,
    l: float,
    model: DistinguishabilityModel,
    tol: AlgorithmTolerances,
) -> MetricBreakdown:
    """Evaluate the performance metric min(n - l, k_eff) with m = ceil(2.1 n).

    A negative k_eff (tiny click ratio) is clamped to zero and flagged; the
    metric never exceeds n - l.
    """
    inst = SamplingInstance.standard(n, l)
    ind = effective_indistinguishability(temperature_K, model)
    k_eff = k_effective(ind, inst, tol)
    raw = min(n - l, k_eff)
    clamped = raw < 0
    return MetricBreakdown(
        indistinguishability=ind,
        c_s=typical_clicks(inst.n, inst.m),
        c_s_l=typical_clicks_lossy(inst.n, inst.m, inst.l),
        ratio=click_ratio(inst.n, inst.m, inst.l),
        k_eff=k_eff,
        value=max(0.0, raw),
        clamped=clamped,
    )


def metric(
    temperature_K: float,
    n: int,
    l: float,
    model: DistinguishabilityModel,
    tol: AlgorithmTolerances,
) -> float:
    """Performance metric min(n - l, k_eff), floored at zero."""
    return metric_breakdown(temperature_K, n, l, model, tol).value
