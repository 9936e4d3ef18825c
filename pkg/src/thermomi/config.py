"""Run configuration: the JSON schema shared by the CLI subcommands.

A config file is one JSON object with up to four sections:

    {
      "prior":     {"kind": "gaussian", "mean": 0.0, "variance": 1.0},
      "beta_grid": {"min": 0.1, "max": 10.0, "points": 16, "spacing": "log"},
      "quadrature": {"hermite_nodes": 128},
      "oracle":    {"mc_samples": 1000000, "seed": 20260814}
    }

"prior" and "beta_grid" are required.  "quadrature" overrides any subset
of the integrator defaults; "oracle" configures the Monte Carlo checks.
All validation raises ConfigError with the offending field in the message.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np

from .distributions import InputDistribution, from_dict as prior_from_dict
from .errors import ConfigError, InvalidPrior
from .quadrature import QuadratureConfig
from .reference import OracleConfig

SPACINGS = ("linear", "log")


@dataclass(frozen=True)
class BetaGrid:
    """The snr values a sweep visits, low to high."""

    lo: float
    hi: float
    points: int
    spacing: str = "log"

    def __post_init__(self) -> None:
        if not isinstance(self.points, int) or isinstance(self.points, bool):
            raise ConfigError(f"beta_grid.points must be an integer, got {self.points!r}")
        if self.points <= 0:
            raise ConfigError("beta grid empty")
        if not np.isfinite(self.lo) or self.lo <= 0.0:
            raise ConfigError(f"beta_grid.min must be finite and > 0, got {self.lo!r}")
        if not np.isfinite(self.hi) or self.hi < self.lo:
            raise ConfigError(f"beta_grid.max must be finite and >= min, got {self.hi!r}")
        if self.spacing not in SPACINGS:
            raise ConfigError(f"beta_grid.spacing must be one of {SPACINGS}, got {self.spacing!r}")
        if self.points > 1 and self.hi == self.lo:
            raise ConfigError("beta_grid.max must exceed min when points > 1")

    def expand(self) -> np.ndarray:
        if self.points == 1:
            return np.asarray([self.lo], dtype=float)
        if self.spacing == "log":
            return np.geomspace(self.lo, self.hi, self.points)
        return np.linspace(self.lo, self.hi, self.points)

    def to_dict(self) -> dict:
        return {"min": self.lo, "max": self.hi, "points": self.points, "spacing": self.spacing}


@dataclass(frozen=True)
class RunConfig:
    """Everything a sweep or verify run needs, parsed and validated."""

    prior: InputDistribution
    grid: BetaGrid
    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig)
    oracle: OracleConfig = field(default_factory=OracleConfig)


def _required_section(data: dict, name: str) -> dict:
    section = data.get(name)
    if section is None:
        raise ConfigError(f"missing required section {name!r}")
    if not isinstance(section, dict):
        raise ConfigError(f"{name} must be a JSON object, got {type(section).__name__}")
    return section


def _reject_unknown(section: dict, name: str, allowed: set[str]) -> None:
    extra = sorted(set(section) - allowed)
    if extra:
        raise ConfigError(f"unknown {name} field(s): {', '.join(extra)}")


def _grid_from_dict(section: dict) -> BetaGrid:
    _reject_unknown(section, "beta_grid", {"min", "max", "points", "spacing"})
    if not section:
        raise ConfigError("beta grid empty")
    for key in ("min", "max", "points"):
        if key not in section:
            raise ConfigError(f"beta_grid.{key} is required")
    lo, hi = section["min"], section["max"]
    if not isinstance(lo, (int, float)) or isinstance(lo, bool):
        raise ConfigError(f"beta_grid.min must be a number, got {lo!r}")
    if not isinstance(hi, (int, float)) or isinstance(hi, bool):
        raise ConfigError(f"beta_grid.max must be a number, got {hi!r}")
    return BetaGrid(
        lo=float(lo),
        hi=float(hi),
        points=section["points"],
        spacing=section.get("spacing", "log"),
    )


def _quadrature_from_dict(section: dict) -> QuadratureConfig:
    names = {f.name for f in fields(QuadratureConfig)}
    _reject_unknown(section, "quadrature", names)
    try:
        return QuadratureConfig(**section)
    except ConfigError as exc:
        raise ConfigError(f"quadrature.{exc}") from exc


def _oracle_from_dict(section: dict) -> OracleConfig:
    _reject_unknown(section, "oracle", {"mc_samples", "seed", "hermite_nodes"})
    kwargs = dict(section)
    if "seed" in kwargs:
        kwargs["rng_seed"] = kwargs.pop("seed")
    try:
        return OracleConfig(**kwargs)
    except ConfigError as exc:
        raise ConfigError(f"oracle.{str(exc).replace('rng_seed', 'seed')}") from exc


def config_from_dict(data: dict) -> RunConfig:
    if not isinstance(data, dict):
        raise ConfigError(f"config must be a JSON object, got {type(data).__name__}")
    _reject_unknown(data, "config", {"prior", "beta_grid", "quadrature", "oracle"})
    try:
        prior = prior_from_dict(_required_section(data, "prior"))
    except InvalidPrior as exc:
        raise ConfigError(f"prior: {exc}") from exc
    grid = _grid_from_dict(_required_section(data, "beta_grid"))
    quadrature = _quadrature_from_dict(data.get("quadrature") or {})
    oracle = _oracle_from_dict(data.get("oracle") or {})
    return RunConfig(prior=prior, grid=grid, quadrature=quadrature, oracle=oracle)


def load_config(path: str | Path) -> RunConfig:
    """Read and validate a JSON config file."""
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {p}: {exc.strerror or exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {p} is not valid JSON: {exc}") from exc
    return config_from_dict(data)
