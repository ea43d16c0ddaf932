"""Temperature dependence of single-photon indistinguishability.

Models a quantum dot coupled to a cavity: thermal acoustic phonons broaden the
zero-phonon line (ZPL) while the cavity Purcell-enhances the radiative rate.
The ratio of emission rate to total linewidth gives the ZPL indistinguishability,
and a fixed penalty accounts for slow spectral wander between remote sources.

Units: rates in micro-eV, energies in milli-eV, temperatures in kelvin.
All functions are pure; no shared state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

# CODATA value in milli-eV per kelvin.
BOLTZMANN_MEV_PER_K = 0.08617333


@dataclass(frozen=True)
class PhononCoupling:
    """Thermal-phonon scattering parameters of the emitter."""

    alpha_ueV: float = 0.1
    epsilon_p_meV: float = 1.0
    boltzmann_meV_per_K: float = BOLTZMANN_MEV_PER_K

    def __post_init__(self) -> None:
        if self.alpha_ueV <= 0:
            raise ValueError("alpha_ueV must be > 0")
        if self.epsilon_p_meV <= 0:
            raise ValueError("epsilon_p_meV must be > 0")
        if self.boltzmann_meV_per_K <= 0:
            raise ValueError("boltzmann_meV_per_K must be > 0")


@dataclass(frozen=True)
class CavityParams:
    """Emitter-cavity rates: bare linewidth, cavity linewidth, coupling."""

    gamma0_ueV: float = 0.658
    kappa_ueV: float = 90.0
    g_ueV: float = 90.0 / math.sqrt(2.0)

    def __post_init__(self) -> None:
        for name in ("gamma0_ueV", "kappa_ueV", "g_ueV"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be > 0")


@dataclass(frozen=True)
class ZplFractionModel:
    """Linear-in-T model for the fraction of emission in the ZPL, clamped to [0, 1]."""

    eta0: float = 0.95
    slope_per_K: float = 0.005

    def __post_init__(self) -> None:
        if not 0 < self.eta0 <= 1:
            raise ValueError("eta0 must be in (0, 1]")
        if self.slope_per_K < 0:
            raise ValueError("slope_per_K must be >= 0")

    def fraction(self, temperature_K: float) -> float:
        return min(1.0, max(0.0, self.eta0 - self.slope_per_K * temperature_K))


@dataclass(frozen=True)
class DistinguishabilityModel:
    """Full source model: phonon bath, cavity, ZPL fraction, remote-source penalty."""

    phonon: PhononCoupling = field(default_factory=PhononCoupling)
    cavity: CavityParams = field(default_factory=CavityParams)
    zpl: ZplFractionModel = field(default_factory=ZplFractionModel)
    remote_penalty: float = 0.05

    def __post_init__(self) -> None:
        if not 0 <= self.remote_penalty < 1:
            raise ValueError("remote_penalty must be in [0, 1)")


def _require_positive_temperature(temperature_K: float) -> None:
    if temperature_K <= 0:
        raise ValueError(f"temperature must be > 0 K, got {temperature_K}")


def bose_einstein_occupation(temperature_K: float, phonon: PhononCoupling) -> float:
    """Mean occupation 1/(exp(eps_p / (kB T)) - 1) of the coupled phonon mode."""
    _require_positive_temperature(temperature_K)
    x = phonon.epsilon_p_meV / (phonon.boltzmann_meV_per_K * temperature_K)
    return 1.0 / math.expm1(x)


def pure_dephasing_rate(temperature_K: float, phonon: PhononCoupling) -> float:
    """ZPL broadening alpha * n(n+1) from two-phonon scattering, in micro-eV."""
    n = bose_einstein_occupation(temperature_K, phonon)
    return phonon.alpha_ueV * n * (n + 1.0)


def purcell_enhanced_rate(temperature_K: float, model: DistinguishabilityModel) -> float:
    """Cavity-funneled emission rate gamma0 * F_eff = 4 g^2 / (kappa + gamma0 + gamma*)."""
    cavity = model.cavity
    gamma_star = pure_dephasing_rate(temperature_K, model.phonon)
    return 4.0 * cavity.g_ueV**2 / (cavity.kappa_ueV + cavity.gamma0_ueV + gamma_star)


def zpl_emission_rate(temperature_K: float, model: DistinguishabilityModel) -> float:
    """Total emission rate gamma(T) = [1 + eta_zpl(T) F_eff(T)] * gamma0, in micro-eV."""
    eta_zpl = model.zpl.fraction(temperature_K)
    return model.cavity.gamma0_ueV + eta_zpl * purcell_enhanced_rate(temperature_K, model)


def indistinguishability_zpl(temperature_K: float, model: DistinguishabilityModel) -> float:
    """Single-source indistinguishability gamma / (gamma + gamma*)."""
    gamma = zpl_emission_rate(temperature_K, model)
    gamma_star = pure_dephasing_rate(temperature_K, model.phonon)
    return gamma / (gamma + gamma_star)


def effective_indistinguishability(temperature_K: float, model: DistinguishabilityModel) -> float:
    """Two-source indistinguishability after subtracting the spectral-wander penalty."""
    value = indistinguishability_zpl(temperature_K, model) - model.remote_penalty
    return min(1.0, max(0.0, value))


def remote_pair_bound(temperature_K: float, model: DistinguishabilityModel) -> float:
    """Upper bound on the two-source indistinguishability for identical sources.

    The bound is the smaller of the geometric mean of the single-source values
    and the classical wavepacket overlap 4 g_a g_b / (g_a + g_b)^2.  With
    identical sources these reduce to I_zpl and 1 respectively.
    """
    i_zpl = indistinguishability_zpl(temperature_K, model)
    gamma = zpl_emission_rate(temperature_K, model)
    overlap = 4.0 * gamma * gamma / (gamma + gamma) ** 2
    return min(math.sqrt(i_zpl * i_zpl), overlap)
