"""Layered JSON configuration for the workbench.

Precedence: built-in defaults, then the config file, then command-line
overrides.  Every section maps one-to-one onto a model dataclass; unknown keys
are rejected with the offending path, and invariant violations name the field
that broke.  The fully resolved dictionary is kept for provenance and hashing.
"""

from __future__ import annotations

import copy
import hashlib
import json
import math
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .classical import ClassicalPlatform, RcsReference
from .fluctuation import McConfig
from .metric import AlgorithmTolerances
from .optimizer import SearchSpace
from .photon import CavityParams, DistinguishabilityModel, PhononCoupling, ZplFractionModel
from .resources import CryostatSpec, FacilityConfig, NoiseBudget

ENV_CONFIG_PATH = "BOSON_ENERGETICS_CONFIG"

DEFAULTS: dict[str, Any] = {
    "distinguishability": {
        "alpha_ueV": 0.1,
        "epsilon_p_meV": 1.0,
        "boltzmann_meV_per_K": 0.08617333,
        "gamma0_ueV": 0.658,
        "kappa_ueV": 90.0,
        "g_ueV": 90.0 / math.sqrt(2.0),
        "zpl_eta0": 0.95,
        "zpl_slope_per_K": 0.005,
        "remote_penalty": 0.05,
    },
    "facility": {
        "p_fix_W": 1000.0,
        "r_sps_Hz": 1.0e9,
    },
    "cryostat": {
        "p0_W": 0.05,
        "carnot_fraction": 0.004,
        "t_ext_K": 300.0,
        "s_max": 26,
        "power_override_W": 1396.0,
    },
    "budgets": {
        "sota": {
            "eta_of": 0.712,
            "eta_d": 0.98,
            "eta_dmx": 0.83,
            "c_mzi_db": 0.0035,
            "c_coup_db": 0.057,
        },
        "energetic": {
            "eta_of": 0.75,
            "eta_d": 0.99,
            "eta_dmx": 0.92,
            "c_mzi_db": 0.0085,
            "c_coup_db": 0.06,
        },
        "comp": {
            "eta_of": 0.80,
            "eta_d": 0.99,
            "eta_dmx": 0.95,
            "c_mzi_db": 0.009,
            "c_coup_db": 0.057,
        },
    },
    "platform": {
        "eta_e_gflops_per_watt": 72.733,
        "r_max_flops": 4.5e15,
    },
    "tolerances": {
        "eps_delta": 0.001,
    },
    "search": {
        "t_min_K": 1.0,
        "t_max_K": 3.0,
        "t_step_K": 0.01,
        "n_min": 1,
        "n_max": 200,
    },
    "mc": {
        "n_samples": 10_000,
        "seed": 123456789,
        "n_seeds": 10,
    },
    "rcs": {
        "energy_per_sample_Wh": 1.0e-3,
        "time_per_sample_s": 2.0e-4,
    },
}


class ConfigError(ValueError):
    """Configuration problem, with the offending path in the message."""


@dataclass(frozen=True)
class WorkbenchConfig:
    """Every model constant the workbench needs, plus the resolved raw dict."""

    distinguishability: DistinguishabilityModel
    facility: FacilityConfig
    cryostat: CryostatSpec
    budgets: dict[str, NoiseBudget]
    platform: ClassicalPlatform
    tolerances: AlgorithmTolerances
    search: SearchSpace
    mc: McConfig
    rcs: RcsReference
    raw: dict[str, Any]

    def sha256(self) -> str:
        canonical = json.dumps(self.raw, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode()).hexdigest()

    def budget(self, name: str) -> NoiseBudget:
        try:
            return self.budgets[name]
        except KeyError:
            known = ", ".join(sorted(self.budgets))
            raise ConfigError(f"unknown budget '{name}' (known: {known})") from None


def _require_keys(section: dict, allowed: set[str], path: str) -> None:
    unknown = set(section) - allowed
    if unknown:
        name = sorted(unknown)[0]
        raise ConfigError(f"unknown key '{path}.{name}'")


def _build(cls, section: dict, path: str, **extra):
    try:
        return cls(**section, **extra)
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"invalid section '{path}': {exc}") from exc


def _build_distinguishability(section: dict) -> DistinguishabilityModel:
    path = "distinguishability"
    allowed = {
        "alpha_ueV",
        "epsilon_p_meV",
        "boltzmann_meV_per_K",
        "gamma0_ueV",
        "kappa_ueV",
        "g_ueV",
        "zpl_eta0",
        "zpl_slope_per_K",
        "remote_penalty",
    }
    _require_keys(section, allowed, path)
    try:
        phonon = PhononCoupling(
            alpha_ueV=section["alpha_ueV"],
            epsilon_p_meV=section["epsilon_p_meV"],
            boltzmann_meV_per_K=section["boltzmann_meV_per_K"],
        )
        cavity = CavityParams(
            gamma0_ueV=section["gamma0_ueV"],
            kappa_ueV=section["kappa_ueV"],
            g_ueV=section["g_ueV"],
        )
        zpl = ZplFractionModel(eta0=section["zpl_eta0"], slope_per_K=section["zpl_slope_per_K"])
        return DistinguishabilityModel(
            phonon=phonon, cavity=cavity, zpl=zpl, remote_penalty=section["remote_penalty"]
        )
    except (ValueError, KeyError) as exc:
        raise ConfigError(f"invalid section '{path}': {exc}") from exc


def _build_budgets(section: dict) -> dict[str, NoiseBudget]:
    budgets = {}
    fields = {"eta_of", "eta_d", "eta_dmx", "c_mzi_db", "c_coup_db"}
    for name, sub in section.items():
        path = f"budgets.{name}"
        if not isinstance(sub, dict):
            raise ConfigError(f"invalid section '{path}': expected an object")
        _require_keys(sub, fields, path)
        for field_name in fields:
            if field_name not in sub:
                raise ConfigError(f"invalid section '{path}': missing '{field_name}'")
            value = sub[field_name]
            if field_name.startswith("eta") and not 0 < value <= 1:
                raise ConfigError(f"invalid value at '{path}.{field_name}': must be in (0, 1]")
            if field_name.startswith("c_") and value < 0:
                raise ConfigError(f"invalid value at '{path}.{field_name}': must be >= 0 dB")
        budgets[name] = _build(NoiseBudget, sub, path)
    return budgets


def build_config(raw: dict[str, Any]) -> WorkbenchConfig:
    """Validate a fully merged raw dictionary and construct the typed config."""
    _require_keys(raw, set(DEFAULTS), path="config")
    for section_name in DEFAULTS:
        if section_name not in raw:
            raise ConfigError(f"missing section '{section_name}'")
        if not isinstance(raw[section_name], dict):
            raise ConfigError(f"invalid section '{section_name}': expected an object")
    for section_name in ("facility", "cryostat", "platform", "tolerances", "search", "mc", "rcs"):
        if section_name == "platform":
            allowed = {"eta_e_gflops_per_watt", "r_max_flops"}
        else:
            allowed = set(DEFAULTS[section_name])
        _require_keys(raw[section_name], allowed, section_name)

    cryostat = _build(CryostatSpec, raw["cryostat"], "cryostat")
    facility = _build(FacilityConfig, raw["facility"], "facility", cryostat=cryostat)
    platform_raw = raw["platform"]
    try:
        platform = ClassicalPlatform.from_gflops_per_watt(
            platform_raw["eta_e_gflops_per_watt"], platform_raw["r_max_flops"]
        )
    except (ValueError, KeyError) as exc:
        raise ConfigError(f"invalid section 'platform': {exc}") from exc
    return WorkbenchConfig(
        distinguishability=_build_distinguishability(raw["distinguishability"]),
        facility=facility,
        cryostat=cryostat,
        budgets=_build_budgets(raw["budgets"]),
        platform=platform,
        tolerances=_build(AlgorithmTolerances, raw["tolerances"], "tolerances"),
        search=_build(SearchSpace, raw["search"], "search"),
        mc=_build(McConfig, raw["mc"], "mc"),
        rcs=_build(RcsReference, raw["rcs"], "rcs"),
        raw=raw,
    )


def _deep_merge(base: dict, extra: dict) -> dict:
    out = copy.deepcopy(base)
    for key, value in extra.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _deep_merge(out[key], value)
        else:
            out[key] = copy.deepcopy(value)
    return out


def _parse_value(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def _apply_override(raw: dict, assignment: str) -> None:
    if "=" not in assignment:
        raise ConfigError(f"override '{assignment}' is not of the form key=value")
    dotted, text = assignment.split("=", 1)
    keys = dotted.strip().split(".")
    if not all(keys):
        raise ConfigError(f"override '{assignment}' has an empty path component")
    node = raw
    for key in keys[:-1]:
        if key not in node or not isinstance(node[key], dict):
            raise ConfigError(f"unknown key '{dotted}'")
        node = node[key]
    node[keys[-1]] = _parse_value(text)


def load_config(
    path: str | os.PathLike | None = None,
    overrides: list[str] | None = None,
) -> WorkbenchConfig:
    """Resolve defaults <- file <- overrides and validate the result.

    With no explicit path, the environment variable BOSON_ENERGETICS_CONFIG is
    consulted; if neither is set, the built-in defaults apply.
    """
    raw = copy.deepcopy(DEFAULTS)
    if path is None:
        path = os.environ.get(ENV_CONFIG_PATH) or None
    if path is not None:
        file_path = Path(path)
        try:
            text = file_path.read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config file '{file_path}': {exc}") from exc
        try:
            loaded = json.loads(text) if text.strip() else {}
        except json.JSONDecodeError as exc:
            raise ConfigError(
                f"config file '{file_path}' is not valid JSON "
                f"(line {exc.lineno}, column {exc.colno}): {exc.msg}"
            ) from exc
        if not isinstance(loaded, dict):
            raise ConfigError(f"config file '{file_path}' must contain a JSON object")
        raw = _deep_merge(raw, loaded)
    for assignment in overrides or []:
        _apply_override(raw, assignment)
    return build_config(raw)
