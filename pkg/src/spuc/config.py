"""Crystal and run configuration files (INI key-value text)."""
from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path

import numpy as np

from .dispersion import DispersionModel, DomainError, SellmeierSet
from .phasematch import CrystalSetup, Process


class ConfigError(ValueError):
    """Bad or missing configuration key; ``key`` names the culprit."""

    def __init__(self, key, message):
        super().__init__(f"{key}: {message}")
        self.key = key


@dataclass(frozen=True)
class RunConfig:
    setup: CrystalSetup
    process: Process
    pump_um: float
    pump_intensity: float
    signal_um: float
    phi_deg: float
    lambda_grid: tuple
    phi_grid: tuple
    format: str
    spdc_pump_um: float
    spuc_pump_um: float
    out: str | None = None

    def wavelengths(self):
        return grid(*self.lambda_grid)

    def azimuths(self):
        return grid(*self.phi_grid)


def default_config_path():
    return resources.files("spuc") / "data" / "bbo.ini"


def grid(lo, hi, step):
    """Inclusive arithmetic grid; values rounded to 12 decimals."""
    if not step > 0:
        raise ConfigError("step", f"grid step must be positive, got {step}")
    if hi < lo:
        raise ConfigError("range", f"grid maximum {hi} is below minimum {lo}")
    n = int(math.floor((hi - lo) / step + 1e-9))
    return [float(v) for v in np.round(lo + step * np.arange(n + 1), 12)]


def parse_range(text, key="range"):
    parts = str(text).split(":")
    if len(parts) != 3:
        raise ConfigError(key, f"expected MIN:MAX:STEP, got {text!r}")
    try:
        lo, hi, step = (float(p) for p in parts)
    except ValueError:
        raise ConfigError(key, f"non-numeric range {text!r}") from None
    try:
        grid(lo, hi, step)
    except ConfigError as exc:
        raise ConfigError(key, str(exc)) from None
    return lo, hi, step


def _get(section, key, conv=float):
    if key not in section:
        raise ConfigError(key, f"missing key in [{section.name}]")
    raw = section[key]
    try:
        return conv(raw)
    except (ValueError, TypeError):
        raise ConfigError(key, f"cannot parse {raw!r}") from None


def _floats(n):
    def conv(text):
        vals = [float(v) for v in text.replace(",", " ").split()]
        if len(vals) != n:
            raise ValueError(text)
        return vals
    return conv


def load_crystal(parser) -> CrystalSetup:
    if "crystal" not in parser:
        raise ConfigError("crystal", "missing [crystal] section")
    sec = parser["crystal"]
    o = _get(sec, "ordinary", _floats(4))
    e = _get(sec, "extraordinary", _floats(4))
    window = tuple(_get(sec, "window_um", _floats(2)))
    try:
        model = DispersionModel(SellmeierSet(*o), SellmeierSet(*e), window, sec.get("name", ""))
        return CrystalSetup(
            cut_angle=math.radians(_get(sec, "cut_angle_deg")),
            length=_get(sec, "length_mm") * 1000.0,
            model=model,
            coupling=_get(sec, "coupling") if "coupling" in sec else 1e-8,
        )
    except DomainError as exc:
        raise ConfigError("crystal", str(exc)) from None


def read_parser(path=None) -> configparser.ConfigParser:
    parser = configparser.ConfigParser()
    source = default_config_path() if path is None else Path(path)
    try:
        text = source.read_text()
    except OSError as exc:
        raise ConfigError("config", f"cannot read {source}: {exc.strerror}") from None
    try:
        parser.read_string(text, source=str(source))
    except configparser.Error as exc:
        raise ConfigError("config", str(exc).splitlines()[0]) from None
    return parser


def load_run(path=None, **overrides) -> RunConfig:
    """Read a config file (default: packaged BBO file) and apply overrides.

    Override keys are RunConfig field names; ``None`` values are ignored.
    """
    parser = read_parser(path)
    setup = load_crystal(parser)
    if "run" not in parser:
        raise ConfigError("run", "missing [run] section")
    sec = parser["run"]

    def proc(text):
        return Process(text.strip().lower())

    cfg = RunConfig(
        setup=setup,
        process=_get(sec, "process", proc),
        pump_um=_get(sec, "pump_um"),
        pump_intensity=_get(sec, "pump_intensity"),
        signal_um=_get(sec, "signal_um"),
        phi_deg=_get(sec, "phi_deg"),
        lambda_grid=_get(sec, "lambda_range", lambda t: parse_range(t, "lambda_range")),
        phi_grid=_get(sec, "phi_range", lambda t: parse_range(t, "phi_range")),
        format=_get(sec, "format", str).strip().lower(),
        spdc_pump_um=_get(sec, "spdc_pump_um"),
        spuc_pump_um=_get(sec, "spuc_pump_um"),
    )
    cfg = replace(cfg, **{k: v for k, v in overrides.items() if v is not None})
    validate(cfg)
    return cfg


def validate(cfg: RunConfig):
    if cfg.format not in ("csv", "json"):
        raise ConfigError("format", f"expected csv or json, got {cfg.format!r}")
    if not cfg.pump_intensity > 0:
        raise ConfigError("pump_intensity", "must be positive")
    lo, hi = cfg.setup.model.window
    for key in ("pump_um", "signal_um", "spdc_pump_um", "spuc_pump_um"):
        v = getattr(cfg, key)
        if not lo <= v <= hi:
            raise ConfigError(key, f"{v} um outside validity window [{lo}, {hi}] um")
    lams = cfg.wavelengths()
    if lams[0] < lo or lams[-1] > hi:
        raise ConfigError("lambda_range", f"grid leaves validity window [{lo}, {hi}] um")
