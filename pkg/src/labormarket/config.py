"""Run configuration: INI text with ``[run]``, ``[market]``, ``[macro]``,
``[sweep]`` and ``[fit]`` sections.

Example::

    [run]
    mode = gamma-sweep
    seed = 7
    trials = 5

    [market]
    a = 10
    v = 100

    [sweep]
    start = 1
    stop = 30
    count = 12
    scale = log
"""
from __future__ import annotations

import configparser
from dataclasses import dataclass
from typing import Any, Callable

import numpy as np

from .market import MarketParams
from .neugart import MacroState, NeugartParams, default_initial_state

MODES = ("simulate", "beveridge", "gamma-sweep", "neugart", "coupled", "fit")

# (K, N, v, horizon) defaults: distribution runs use the large market
LARGE_MARKET = {"K": 1000, "N": 10000, "v": 30, "horizon": 10000}
SMALL_MARKET = {"K": 50, "N": 500, "v": 10, "horizon": 2000}


class ConfigError(ValueError):
    """Invalid run configuration; the message names the offending key."""


@dataclass(frozen=True)
class GridSpec:
    start: float
    stop: float
    count: int
    scale: str = "linear"

    def values(self) -> np.ndarray:
        if self.scale == "log":
            return np.geomspace(self.start, self.stop, self.count)
        return np.linspace(self.start, self.stop, self.count)

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        """Parse ``start:stop:count[:log]``."""
        parts = text.split(":")
        if len(parts) not in (3, 4):
            raise ConfigError(f"grid must be start:stop:count[:log], got {text!r}")
        scale = parts[3] if len(parts) == 4 else "linear"
        try:
            spec = cls(float(parts[0]), float(parts[1]), int(parts[2]), scale)
        except ValueError as exc:
            raise ConfigError(f"grid {text!r}: {exc}") from exc
        spec.validate("sweep")
        return spec

    def validate(self, where: str) -> None:
        if self.count < 1:
            raise ConfigError(f"{where}.count must be >= 1, got {self.count}")
        if self.scale not in ("linear", "log"):
            raise ConfigError(f"{where}.scale must be 'linear' or 'log', got {self.scale!r}")
        if self.scale == "log" and (self.start <= 0 or self.stop <= 0):
            raise ConfigError(f"{where}: log grid needs positive bounds")


@dataclass(frozen=True)
class MacroRun:
    params: NeugartParams
    initial: MacroState
    horizon: int = 100_000
    burn_in: int = 1000
    pi0: float | None = None


@dataclass(frozen=True)
class FitSpec:
    input: str | None = None
    b_range: tuple[float, float] | None = None
    grid: int = 200


@dataclass(frozen=True)
class RunConfig:
    mode: str
    seed: int = 0
    trials: int = 5
    output_path: str | None = None
    workers: int = 1
    market: MarketParams | None = None
    macro: MacroRun | None = None
    sweep: GridSpec | None = None
    fit: FitSpec | None = None


_ALLOWED = {
    "run": {"mode", "seed", "trials", "output", "workers"},
    "market": {"K", "N", "v", "quotas", "a", "gamma", "beta_history", "horizon", "burn_in"},
    "macro": {"xi", "d", "c1", "c2", "mu", "Gamma", "delta", "m", "Js",
              "U0", "pi0", "pi_e0", "horizon", "burn_in"},
    "sweep": {"start", "stop", "count", "scale"},
    "fit": {"input", "b_lo", "b_hi", "grid"},
}

_SECTIONS_FOR = {
    "simulate": {"market"},
    "beveridge": {"market", "sweep"},
    "gamma-sweep": {"market", "sweep"},
    "neugart": {"macro"},
    "coupled": {"market", "macro"},
    "fit": {"fit"},
}
# sections that may be omitted and filled entirely from defaults
_DEFAULTABLE = {"market", "macro", "fit"}


def _floats(text: str) -> tuple[float, ...]:
    return tuple(float(x) for x in text.replace(",", " ").split())


def _ints(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.replace(",", " ").split())


def _get(section: dict[str, str], key: str, conv: Callable[[str], Any], where: str, default=None):
    if key not in section:
        return default
    try:
        return conv(section[key])
    except ValueError as exc:
        raise ConfigError(f"{where}.{key}: cannot parse {section[key]!r} ({exc})") from exc


def load_sections(text: str) -> dict[str, dict[str, str]]:
    cp = configparser.ConfigParser(interpolation=None)
    cp.optionxform = str  # keep K, N, Gamma case-sensitive
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from exc
    return {name: dict(cp[name]) for name in cp.sections()}


def parse_config(
    text: str,
    mode: str | None = None,
    overrides: dict[str, dict[str, str]] | None = None,
) -> RunConfig:
    """Build a validated ``RunConfig``; ``mode`` and ``overrides`` win over the text."""
    sections = load_sections(text)
    for name, values in (overrides or {}).items():
        sections.setdefault(name, {}).update(values)

    for name, values in sections.items():
        if name not in _ALLOWED:
            raise ConfigError(f"unknown section [{name}]")
        for key in values:
            if key not in _ALLOWED[name]:
                raise ConfigError(f"unknown key {name}.{key}")

    run = sections.get("run", {})
    mode = mode or run.get("mode")
    if mode is None:
        raise ConfigError("run.mode is required")
    if mode not in MODES:
        raise ConfigError(f"run.mode must be one of {', '.join(MODES)}, got {mode!r}")
    for name in _SECTIONS_FOR[mode] - _DEFAULTABLE:
        if name not in sections:
            raise ConfigError(f"mode {mode!r} requires a [{name}] section")

    seed = _get(run, "seed", int, "run", 0)
    if not 0 <= seed < 2**64:
        raise ConfigError(f"run.seed must be an unsigned 64-bit integer, got {seed}")
    trials = _get(run, "trials", int, "run", 5)
    if trials < 1:
        raise ConfigError(f"run.trials must be >= 1, got {trials}")
    workers = _get(run, "workers", int, "run", 1)
    if workers < 1:
        raise ConfigError(f"run.workers must be >= 1, got {workers}")

    needs = _SECTIONS_FOR[mode]
    market = _market(sections.get("market", {}), mode, seed) if "market" in needs else None
    macro = _macro(sections.get("macro", {})) if "macro" in needs else None
    sweep = None
    if "sweep" in needs:
        s = sections["sweep"]
        for key in ("start", "stop", "count"):
            if key not in s:
                raise ConfigError(f"sweep.{key} is required")
        sweep = GridSpec(
            _get(s, "start", float, "sweep"),
            _get(s, "stop", float, "sweep"),
            _get(s, "count", int, "sweep"),
            s.get("scale", "linear"),
        )
        sweep.validate("sweep")
    fit = _fit(sections.get("fit", {})) if "fit" in needs else None

    return RunConfig(
        mode=mode, seed=seed, trials=trials, output_path=run.get("output"),
        workers=workers, market=market, macro=macro, sweep=sweep, fit=fit,
    )


def _market(s: dict[str, str], mode: str, seed: int) -> MarketParams:
    base = LARGE_MARKET if mode == "simulate" else SMALL_MARKET
    kw: dict[str, Any] = {
        "K": _get(s, "K", int, "market", base["K"]),
        "N": _get(s, "N", int, "market", base["N"]),
        "v": _get(s, "v", int, "market", base["v"]),
        "a": _get(s, "a", float, "market", 1.0),
        "gamma": _get(s, "gamma", float, "market", 1.0),
        "beta_history": _get(s, "beta_history", _floats, "market", (1.0,)),
        "horizon": _get(s, "horizon", int, "market", base["horizon"]),
        "burn_in": _get(s, "burn_in", int, "market", 0),
        "quotas": _get(s, "quotas", _ints, "market", None),
        "seed": seed,
    }
    try:
        return MarketParams(**kw)
    except ValueError as exc:
        raise ConfigError(f"market: {exc}") from exc


def _macro(s: dict[str, str]) -> MacroRun:
    kw = {}
    for key in ("xi", "d", "c1", "c2", "mu", "Gamma", "delta", "m"):
        val = _get(s, key, float, "macro")
        if val is not None:
            kw[key] = val
    try:
        params = NeugartParams(**kw)
        js = s.get("Js", "auto").strip()
        params = params.at_fixed_point() if js == "auto" else NeugartParams(**kw, Js=float(js))
        start = default_initial_state(params)
    except ValueError as exc:
        raise ConfigError(f"macro: {exc}") from exc
    U0 = _get(s, "U0", float, "macro", start.U)
    pi0 = _get(s, "pi0", float, "macro", None)
    pi_e0 = _get(s, "pi_e0", float, "macro", None)
    initial = MacroState(
        U0,
        start.pi if pi0 is None else pi0,
        (start.pi if pi0 is None else pi0) if pi_e0 is None else pi_e0,
    )
    horizon = _get(s, "horizon", int, "macro", 100_000)
    burn_in = _get(s, "burn_in", int, "macro", 1000)
    if horizon < 1 or burn_in < 0:
        raise ConfigError("macro.horizon must be >= 1 and macro.burn_in >= 0")
    return MacroRun(params, initial, horizon, burn_in, pi0)


def _fit(s: dict[str, str]) -> FitSpec:
    lo = _get(s, "b_lo", float, "fit")
    hi = _get(s, "b_hi", float, "fit")
    if (lo is None) != (hi is None):
        raise ConfigError("fit.b_lo and fit.b_hi must be given together")
    if lo is not None and not hi > lo:
        raise ConfigError(f"fit: b_hi must exceed b_lo, got ({lo}, {hi})")
    grid = _get(s, "grid", int, "fit", 200)
    if grid < 2:
        raise ConfigError(f"fit.grid must be >= 2, got {grid}")
    return FitSpec(s.get("input"), None if lo is None else (lo, hi), grid)
