"""Experiment configuration: a small INI dialect, defaults, and validation.

A config file holds one section per experiment; the section name is the
experiment name. Values are flat key = value pairs; lists are comma-separated.

    [gsp-xxz]
    sites = 4, 6, 8, 10
    methods = hs, geCosM, hs+gapamp
    eps = 0.01

Unset keys fall back to per-experiment defaults. Validation separates hard
errors (out-of-range parameters) from warnings (resource limits).
"""
from __future__ import annotations

import configparser
from dataclasses import dataclass, fields
from typing import Iterator

SWEEP_METHODS = ("hs", "geCosM", "hs+gapamp")
GREENS_MODES = ("lehmann", "resolvent-exact", "resolvent-lcu")

DIMENSION_LIMIT = 2 ** 14

EXPERIMENTS: dict[str, str] = {
    "gsp-hubbard": "Ground-state preparation infidelity sweep for the periodic "
                   "Hubbard chain (Gaussian-filter LCU vs exact filter).",
    "gsp-xxz": "Ground-state preparation sweep for the q-deformed XXZ chain "
               "comparing hs, geCosM, and gap-amplified hs schedules.",
    "gse-hubbard": "Ground-state energy-error sweep for the Hubbard chain, "
                   "plus a table of spectral gaps and trial overlaps.",
    "ldos-hubbard": "Local density of states of the Hubbard chain via the "
                    "Lehmann sum and exact/LCU resolvents.",
    "resolvent-certify": "Operator-norm certification of the resolvent LCU "
                         "against the exact broadened resolvent on a frequency grid.",
}


class ConfigError(ValueError):
    """Raised when a config file cannot be parsed into experiment configs."""


@dataclass(frozen=True)
class ExperimentConfig:
    """All tunables of one experiment run; unset keys use these defaults."""

    experiment: str
    sites: tuple[int, ...]
    methods: tuple[str, ...] = ("hs",)
    modes: tuple[str, ...] = GREENS_MODES
    trial: str = "neel"
    hopping: float = 1.0
    interaction: float = 8.0
    mu: float = 0.0
    q: float = 1.0
    eps: float = 0.01
    points: int = 30
    eps_prime: float = 0.05
    broadening: float = 0.1
    site: int = 0
    omega_min: float = -10.0
    omega_max: float = 10.0
    omega_count: int = 801


_DEFAULTS: dict[str, ExperimentConfig] = {
    "gsp-hubbard": ExperimentConfig(experiment="gsp-hubbard", sites=(2, 3, 4, 5)),
    "gse-hubbard": ExperimentConfig(experiment="gse-hubbard", sites=(2, 3, 4, 5)),
    "gsp-xxz": ExperimentConfig(experiment="gsp-xxz", sites=(4, 6, 8, 10),
                                methods=SWEEP_METHODS, trial="block"),
    "ldos-hubbard": ExperimentConfig(experiment="ldos-hubbard", sites=(2, 3, 4, 5)),
    "resolvent-certify": ExperimentConfig(experiment="resolvent-certify", sites=(2, 3),
                                          omega_min=0.0, omega_max=1.0),
}

_INT_LIST_KEYS = {"sites"}
_STR_LIST_KEYS = {"methods", "modes"}
_INT_KEYS = {"points", "site", "omega_count"}
_STR_KEYS = {"trial"}
_FLOAT_KEYS = {"hopping", "interaction", "mu", "q", "eps", "eps_prime",
               "broadening", "omega_min", "omega_max"}


def default_config(experiment: str) -> ExperimentConfig:
    """The built-in defaults for a named experiment."""
    if experiment not in _DEFAULTS:
        raise ConfigError(f"unknown experiment {experiment!r}; "
                          f"known: {', '.join(sorted(EXPERIMENTS))}")
    return _DEFAULTS[experiment]


def _parse_value(key: str, raw: str):
    try:
        if key in _INT_LIST_KEYS:
            return tuple(int(part) for part in raw.replace(",", " ").split())
        if key in _STR_LIST_KEYS:
            return tuple(part for part in raw.replace(",", " ").split())
        if key in _INT_KEYS:
            return int(raw)
        if key in _FLOAT_KEYS:
            return float(raw)
        if key in _STR_KEYS:
            return raw.strip()
    except ValueError as exc:
        raise ConfigError(f"bad value for {key!r}: {raw!r}") from exc
    raise ConfigError(f"unknown config key {key!r}")


def parse_config_text(text: str) -> list[ExperimentConfig]:
    """Parse a config document into one ExperimentConfig per section, in order."""
    parser = configparser.ConfigParser(interpolation=None)
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"config syntax error: {exc}") from exc
    configs = []
    for section in parser.sections():
        base = default_config(section)
        overrides = {key: _parse_value(key, raw) for key, raw in parser[section].items()}
        configs.append(ExperimentConfig(**{**_asdict_shallow(base), **overrides}))
    if not configs:
        raise ConfigError("config defines no experiment sections")
    return configs


def parse_config(path: str) -> list[ExperimentConfig]:
    with open(path, encoding="utf-8") as handle:
        return parse_config_text(handle.read())


def _asdict_shallow(cfg: ExperimentConfig) -> dict:
    return {f.name: getattr(cfg, f.name) for f in fields(cfg)}


def config_echo(cfg: ExperimentConfig) -> dict:
    """JSON-serializable parameter echo for manifests."""
    echo = _asdict_shallow(cfg)
    return {key: list(val) if isinstance(val, tuple) else val
            for key, val in echo.items()}


def hilbert_dimensions(cfg: ExperimentConfig) -> list[int]:
    """Hilbert-space dimensions the run would touch (amplified space included)."""
    dims = []
    for sites in cfg.sites:
        if cfg.experiment == "gsp-xxz":
            dim = 2 ** sites
            if "hs+gapamp" in cfg.methods:
                dim = max(dim, 2 ** sites * sites)
            dims.append(dim)
        else:
            dims.append(4 ** sites)
    return dims


@dataclass(frozen=True)
class Diagnostic:
    level: str  # "error" | "warning"
    message: str


def _diag_errors(cfg: ExperimentConfig) -> Iterator[str]:
    if not cfg.sites:
        yield "sites list is empty"
    if any(sites < 2 for sites in cfg.sites):
        yield "every chain length must be at least 2"
    if not 0 < cfg.eps < 1:
        yield "eps must lie in (0, 1)"
    if not 0 < cfg.eps_prime < 1:
        yield "eps_prime must lie in (0, 1)"
    if cfg.broadening <= 0:
        yield "broadening must be positive (resolvent precondition)"
    if cfg.points < 2:
        yield "points must be at least 2"
    if cfg.omega_count < 2:
        yield "omega_count must be at least 2"
    if cfg.omega_min >= cfg.omega_max:
        yield "omega_min must be below omega_max"
    unknown = set(cfg.methods) - set(SWEEP_METHODS)
    if unknown:
        yield f"unknown methods: {', '.join(sorted(unknown))}"
    unknown = set(cfg.modes) - set(GREENS_MODES)
    if unknown:
        yield f"unknown greens modes: {', '.join(sorted(unknown))}"
    if cfg.experiment in ("gsp-hubbard", "gse-hubbard") and "hs+gapamp" in cfg.methods:
        yield ("hs+gapamp requires a sum of projector terms; "
               "it is available for gsp-xxz only")
    if cfg.experiment == "ldos-hubbard" and cfg.sites and cfg.site >= min(cfg.sites):
        yield f"site {cfg.site} is outside the smallest chain (L={min(cfg.sites)})"
    if cfg.trial not in ("neel", "block", "ground"):
        yield f"unknown trial state {cfg.trial!r}"


def validate_config(cfg: ExperimentConfig) -> list[Diagnostic]:
    """Hard errors plus resource warnings for one experiment config."""
    diagnostics = [Diagnostic("error", msg) for msg in _diag_errors(cfg)]
    worst = max(hilbert_dimensions(cfg), default=0)
    if worst > DIMENSION_LIMIT:
        diagnostics.append(Diagnostic(
            "warning",
            f"resource limit: largest Hilbert dimension {worst} exceeds "
            f"{DIMENSION_LIMIT}; run refuses without --override-size"))
    return diagnostics
