"""Run configuration: tolerances, limits and output settings.

Values come from defaults, then an optional ``key = value`` file named by
``HESSIAN_HGF_CONFIG``, then explicit overrides.
"""
from __future__ import annotations

import configparser
import os
from dataclasses import asdict, dataclass, fields, replace

from .ffield import DEFAULT_CAP

CONFIG_ENV = "HESSIAN_HGF_CONFIG"


@dataclass(frozen=True)
class RunConfig:
    cap: int = DEFAULT_CAP
    threads: int = 1
    # pilot-calibrated at q = 10009; see README
    km2: float = 0.05
    km4: float = 0.1
    km6: float = 0.25
    kodd: float = 0.05
    ks: float = 0.05
    ks_slack: float = 0.2
    format: str = "csv"
    out: str | None = None

    def __post_init__(self):
        for name in ("km2", "km4", "km6", "kodd", "ks"):
            if getattr(self, name) <= 0:
                raise ValueError(f"tolerance {name} must be positive")
        if self.threads < 1:
            raise ValueError("threads must be at least 1")
        if not 0 < self.cap <= DEFAULT_CAP:
            raise ValueError(f"cap must lie in (0, {DEFAULT_CAP}]")
        if self.format not in ("csv", "json"):
            raise ValueError("format must be csv or json")

    def tolerance(self, m: int) -> float:
        """Tolerance for the m-th scaled moment."""
        if m % 2:
            return self.kodd
        return {2: self.km2, 4: self.km4, 6: self.km6}.get(m, self.km6)

    def as_dict(self) -> dict:
        return asdict(self)


def _coerce(name: str, raw: str):
    kind = {f.name: f.type for f in fields(RunConfig)}[name]
    if raw.lower() in ("", "none") and "None" in kind:
        return None
    if kind.startswith("int"):
        return int(raw)
    if kind.startswith("float"):
        return float(raw)
    return raw


def read_config_file(path: str) -> dict:
    parser = configparser.ConfigParser()
    with open(path) as fh:
        parser.read_string("[run]\n" + fh.read())
    known = {f.name for f in fields(RunConfig)}
    out = {}
    for key, raw in parser["run"].items():
        if key not in known:
            raise ValueError(f"unknown config key {key!r} in {path}")
        out[key] = _coerce(key, raw.strip())
    return out


def load_config(**overrides) -> RunConfig:
    cfg = RunConfig()
    path = os.environ.get(CONFIG_ENV)
    if path:
        cfg = replace(cfg, **read_config_file(path))
    overrides = {k: v for k, v in overrides.items() if v is not None}
    return replace(cfg, **overrides)
