"""Quantum-side resource model: cryogenic power, sample rate, energy, transmission.

Static heat leaks dominate the cryogenic load, so power scales with the number
of cryostats (one detector per mode, at most s_max detectors per cryostat) and
not with detection activity.  Energy per sample is total wall power divided by
the sample generation rate.

Pure functions, thread-safe.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .metric import mode_count

JOULES_PER_WATT_HOUR = 3600.0


def watt_hours(joules: float) -> float:
    return joules / JOULES_PER_WATT_HOUR


class InfeasibleError(ValueError):
    """A hardware capacity constraint cannot be met."""


@dataclass(frozen=True)
class CryostatSpec:
    """Single-cryostat wall-power model and detector capacity.

    When power_override_W is set it replaces the Carnot-fraction formula;
    the default ships the back-solved value used by the headline numbers,
    while the formula branch stays available for sensitivity studies.
    """

    p0_W: float = 0.05
    carnot_fraction: float = 0.004
    t_ext_K: float = 300.0
    s_max: int = 26
    power_override_W: float | None = 1396.0

    def __post_init__(self) -> None:
        if self.p0_W <= 0:
            raise ValueError("p0_W must be > 0")
        if not 0 < self.carnot_fraction < 1:
            raise ValueError("carnot_fraction must be in (0, 1)")
        if self.t_ext_K <= 0:
            raise ValueError("t_ext_K must be > 0")
        if self.s_max < 1:
            raise ValueError("s_max must be >= 1")
        if self.power_override_W is not None and self.power_override_W <= 0:
            raise ValueError("power_override_W must be > 0 when present")


@dataclass(frozen=True)
class FacilityConfig:
    """Fixed electrical overhead plus source repetition rate and cryostat spec."""

    p_fix_W: float = 1000.0
    r_sps_Hz: float = 1.0e9
    cryostat: CryostatSpec = field(default_factory=CryostatSpec)

    def __post_init__(self) -> None:
        if self.p_fix_W < 0:
            raise ValueError("p_fix_W must be >= 0")
        if self.r_sps_Hz <= 0:
            raise ValueError("r_sps_Hz must be > 0")


@dataclass(frozen=True)
class NoiseBudget:
    """Per-component transmissions and losses of the optical path."""

    eta_of: float = 0.712
    eta_d: float = 0.98
    eta_dmx: float = 0.83
    c_mzi_db: float = 0.0035
    c_coup_db: float = 0.057

    def __post_init__(self) -> None:
        for name in ("eta_of", "eta_d", "eta_dmx"):
            if not 0 < getattr(self, name) <= 1:
                raise ValueError(f"{name} must be in (0, 1]")
        for name in ("c_mzi_db", "c_coup_db"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0 dB")


def cryostat_count(m: int, spec: CryostatSpec) -> int:
    """Number of cryostats 1 + floor(m / s_max) needed for m detectors."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return 1 + m // spec.s_max


def cryostat_power(temperature_K: float, spec: CryostatSpec) -> float:
    """Wall power of one cryostat, in watt.

    Formula branch: p0 / eta_c with eta_c = x T / (T_ext - T), i.e.
    p0 (T_ext - T) / (x T), strictly decreasing in T.  The override branch
    returns the configured constant regardless of T.
    """
    if not 0 < temperature_K < spec.t_ext_K:
        raise ValueError(f"temperature must be in (0, {spec.t_ext_K}) K")
    if spec.power_override_W is not None:
        return spec.power_override_W
    return spec.p0_W * (spec.t_ext_K - temperature_K) / (spec.carnot_fraction * temperature_K)


def total_power(temperature_K: float, n: int, cfg: FacilityConfig) -> float:
    """Facility power P_fix + (number of cryostats) * (per-cryostat power), in watt."""
    m = mode_count(n)
    return cfg.p_fix_W + cryostat_count(m, cfg.cryostat) * cryostat_power(temperature_K, cfg.cryostat)


def photons_per_source(n: int, m: int, spec: CryostatSpec, dmx_limit: int | None = None) -> int:
    """Photons each source must emit per sample: ceil(n / cryostat_count).

    One source per cryostat.  When dmx_limit is given, reject configurations
    whose demultiplexer would need more than that many outputs.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    per_source = -(-n // cryostat_count(m, spec))
    if dmx_limit is not None and per_source > dmx_limit:
        raise InfeasibleError(
            f"{per_source} photons per source exceeds the 1-to-{dmx_limit} demultiplexer"
        )
    return per_source


def sample_rate(n: int, cfg: FacilityConfig, dmx_limit: int | None = None) -> float:
    """Sample generation rate r_sps / (photons per source), in hertz."""
    per_source = photons_per_source(n, mode_count(n), cfg.cryostat, dmx_limit)
    return cfg.r_sps_Hz / per_source


def quantum_energy_per_sample(temperature_K: float, n: int, cfg: FacilityConfig) -> float:
    """Energy per sample P_tot / r_sample, in joule.

    Independent of the number of lost photons: losses change what a sample is
    worth, not what it costs to produce.
    """
    return total_power(temperature_K, n, cfg) / sample_rate(n, cfg)


def quantum_time_per_sample(n: int, cfg: FacilityConfig) -> float:
    """Time per sample 1 / r_sample, in seconds."""
    return 1.0 / sample_rate(n, cfg)


def transmission_factors(m: int, budget: NoiseBudget) -> dict[str, float]:
    """Per-factor breakdown of the end-to-end transmission at m modes."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return {
        "eta_of": budget.eta_of,
        "eta_d": budget.eta_d,
        "eta_dmx": budget.eta_dmx,
        "coupling": 10.0 ** (-2.0 * budget.c_coup_db / 10.0),
        "propagation": 10.0 ** (-m * budget.c_mzi_db / 10.0),
    }


def end_to_end_transmission(m: int, budget: NoiseBudget) -> float:
    """Total transmission eta_of eta_d eta_dmx 10^(-2 c_coup/10) 10^(-m c_mzi/10).

    The chip depth equals m (rectangular mesh), hence the factor m in the
    propagation exponent; both chip interfaces contribute coupling loss.
    """
    factors = transmission_factors(m, budget)
    out = 1.0
    for value in factors.values():
        out *= value
    return out


def expected_losses(n: int, budget: NoiseBudget) -> float:
    """Expected lost photons n (1 - eta(m)) at fixed per-component losses."""
    return n * (1.0 - end_to_end_transmission(mode_count(n), budget))
