"""Run configuration: one YAML file drives every command.

The defaults reproduce the reference parameter set (n = 100, gate error
1e-3, 60-qubit registers on a 5.3 um pitch, 0.7 um loading lattice), so
every report is runnable with no flags and no file. A config file may
override any subset; unknown keys are rejected so typos cannot silently
fall back to defaults.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from .hyperfine import HyperfineConfig
from .loading import LoadingConfig
from .scaling import EnsembleParams, ScalingParams
from .trap import BeamParams


class ConfigError(ValueError):
    """Invalid or unreadable run configuration."""


@dataclass(frozen=True)
class TrapRunConfig:
    """Beam and laser-energy grid for the trap spectrum command."""

    power_w: float = 5e-3
    waist_m: float = 5e-6
    energy_min_cm1: float = 25000.0
    energy_max_cm1: float = 26000.0
    energy_step_cm1: float = 20.0

    def __post_init__(self) -> None:
        if self.energy_step_cm1 <= 0:
            raise ConfigError("trap.energy_step_cm1 must be positive")
        if self.energy_max_cm1 <= self.energy_min_cm1:
            raise ConfigError("trap.energy_max_cm1 must exceed trap.energy_min_cm1")

    def beam(self) -> BeamParams:
        return BeamParams(power_w=self.power_w, waist_m=self.waist_m)

    def energy_grid(self) -> list[float]:
        grid = []
        e = self.energy_min_cm1
        while e <= self.energy_max_cm1 + 1e-9:
            grid.append(round(e, 9))
            e += self.energy_step_cm1
        return grid


@dataclass(frozen=True)
class RunConfig:
    scaling: ScalingParams = field(default_factory=ScalingParams)
    ensemble: EnsembleParams = field(default_factory=EnsembleParams)
    hyperfine: HyperfineConfig = field(default_factory=HyperfineConfig)
    loading: LoadingConfig = field(default_factory=LoadingConfig)
    trap: TrapRunConfig = field(default_factory=TrapRunConfig)
    level_table_path: str | None = None  # None means the bundled table
    output_dir: str = "out"


_SECTIONS = {
    "scaling": ScalingParams,
    "ensemble": EnsembleParams,
    "hyperfine": HyperfineConfig,
    "loading": LoadingConfig,
    "trap": TrapRunConfig,
}


def _build_section(name: str, cls, data: dict):
    if not isinstance(data, dict):
        raise ConfigError(f"{name}: expected a mapping, got {type(data).__name__}")
    known = {f.name for f in dataclasses.fields(cls)}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"{name}: unknown keys {sorted(unknown)}; known keys {sorted(known)}")
    try:
        return cls(**data)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{name}: {exc}") from exc


def config_from_dict(data: dict) -> RunConfig:
    if not isinstance(data, dict):
        raise ConfigError(f"config root must be a mapping, got {type(data).__name__}")
    top_known = set(_SECTIONS) | {"level_table_path", "output_dir"}
    unknown = set(data) - top_known
    if unknown:
        raise ConfigError(f"unknown top-level keys {sorted(unknown)}; known {sorted(top_known)}")
    kwargs = {}
    for name, cls in _SECTIONS.items():
        if name in data:
            kwargs[name] = _build_section(name, cls, data[name])
    if "level_table_path" in data:
        path = data["level_table_path"]
        if path is not None:
            if not isinstance(path, str):
                raise ConfigError("level_table_path: expected a string path")
            if not Path(path).exists():
                raise ConfigError(f"level_table_path: file not found: {path}")
        kwargs["level_table_path"] = path
    if "output_dir" in data:
        if not isinstance(data["output_dir"], str):
            raise ConfigError("output_dir: expected a string")
        kwargs["output_dir"] = data["output_dir"]
    return RunConfig(**kwargs)


def load_config(path: str) -> RunConfig:
    """Load and validate a YAML run configuration."""
    p = Path(path)
    if not p.exists():
        raise ConfigError(f"config file not found: {path}")
    try:
        data = yaml.safe_load(p.read_text(encoding="utf-8"))
    except yaml.YAMLError as exc:
        raise ConfigError(f"config file {path} is not valid YAML: {exc}") from exc
    if data is None:
        data = {}
    return config_from_dict(data)


def default_config() -> RunConfig:
    return RunConfig()
