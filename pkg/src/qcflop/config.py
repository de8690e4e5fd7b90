"""Run configuration: flags override a JSON config file, which overrides
defaults; the config file path comes from the QCFLOP_CONFIG environment
variable."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction

ENV_VAR = "QCFLOP_CONFIG"

DEFAULTS = {
    "r_range": (1, 3),
    "order": 10,
    "dmax": 10,
    "rmatrix_order": 2,
    "max_m": 7,
    "max_n": 6,
    "sample": "3/10,0 7/10,0",
    "dim": 2,
    "cutoff": 3,
    "tolerance": 1e-9,
    "gap_tolerance": 1e-6,
    "format": "text",
    "jobs": 1,
}


class ConfigError(ValueError):
    """Invalid configuration (maps to the usage exit code)."""


def parse_r_range(value) -> tuple[int, int]:
    if isinstance(value, int):
        return (value, value)
    if isinstance(value, (tuple, list)) and len(value) == 2:
        lo_i, hi_i = int(value[0]), int(value[1])
        if lo_i < 1 or hi_i < lo_i:
            raise ConfigError(f"r-range {value!r} must be positive and increasing")
        return (lo_i, hi_i)
    text = str(value).strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        try:
            lo_i, hi_i = int(lo), int(hi)
        except ValueError as exc:
            raise ConfigError(f"bad r-range {value!r}") from exc
    else:
        try:
            lo_i = hi_i = int(text)
        except ValueError as exc:
            raise ConfigError(f"bad r value {value!r}") from exc
    if lo_i < 1 or hi_i < lo_i:
        raise ConfigError(f"r-range {value!r} must be positive and increasing")
    return (lo_i, hi_i)


def parse_sample(value: str) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
    """Two complex rationals as 're,im re,im' with rational components."""
    parts = str(value).split()
    if len(parts) != 2:
        raise ConfigError("sample must be two complex rationals: 're,im re,im'")
    out = []
    for part in parts:
        comps = part.split(",")
        if len(comps) != 2:
            raise ConfigError(f"bad complex rational {part!r}")
        try:
            out.append((Fraction(comps[0]), Fraction(comps[1])))
        except ValueError as exc:
            raise ConfigError(f"bad rational in sample {part!r}") from exc
    return out[0], out[1]


@dataclass
class RunConfig:
    r_range: tuple[int, int] = DEFAULTS["r_range"]
    order: int = DEFAULTS["order"]
    dmax: int = DEFAULTS["dmax"]
    rmatrix_order: int = DEFAULTS["rmatrix_order"]
    max_m: int = DEFAULTS["max_m"]
    max_n: int = DEFAULTS["max_n"]
    sample: str = DEFAULTS["sample"]
    dim: int = DEFAULTS["dim"]
    cutoff: int = DEFAULTS["cutoff"]
    tolerance: float = DEFAULTS["tolerance"]
    gap_tolerance: float = DEFAULTS["gap_tolerance"]
    format: str = DEFAULTS["format"]
    jobs: int = DEFAULTS["jobs"]
    out: str | None = None

    def validate(self) -> "RunConfig":
        if self.format not in ("json", "csv", "text"):
            raise ConfigError(f"format must be json, csv or text, not {self.format!r}")
        for name in ("order", "dmax", "rmatrix_order", "max_m", "max_n", "jobs",
                     "dim", "cutoff"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be positive")
        if not (0 < self.tolerance < 1 and 0 < self.gap_tolerance < 1):
            raise ConfigError("tolerances must lie in (0, 1)")
        parse_sample(self.sample)
        return self

    def rs(self) -> list[int]:
        lo, hi = self.r_range
        return list(range(lo, hi + 1))


def load_config(cli_overrides: dict) -> RunConfig:
    """Merge defaults < config file (QCFLOP_CONFIG) < CLI flags."""
    merged = dict(DEFAULTS)
    path = os.environ.get(ENV_VAR)
    if path:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config file {path!r}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError(f"config file {path!r} must hold a JSON object")
        unknown = set(data) - set(DEFAULTS) - {"out"}
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        merged.update(data)
    merged.update({k: v for k, v in cli_overrides.items() if v is not None})
    merged["r_range"] = parse_r_range(merged["r_range"])
    out = merged.pop("out", None)
    return RunConfig(**merged, out=out).validate()
