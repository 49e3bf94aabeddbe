"""Run configuration: INI files with sections, CLI overrides, and presets.

Angles stay in degrees inside :class:`RunConfig`; the single conversion to
radians happens in :meth:`RunConfig.geometry`.
"""
from __future__ import annotations

import configparser
import io
import math
from dataclasses import dataclass, field, fields, replace
from importlib import resources
from pathlib import Path

from .errors import ConfigError
from .kinematics import Geometry, Mode

SWEEP_VARIABLES = ("theta_f", "e0", "omega", "kinetic_energy", "s")
SERIES_VARIABLES = ("theta_i", "theta_f", "e0", "omega", "kinetic_energy")
FORMATS = ("csv", "json")

# (section, key) -> RunConfig attribute
_LAYOUT = {
    "run": {"mode": "mode", "kinetic_energy_ev": "kinetic_energy", "convention": "convention",
            "method": "method"},
    "laser": {"omega_ev": "omega", "e0": "e0"},
    "geometry": {"theta_i_deg": "theta_i", "theta_f_deg": "theta_f", "phi_i_deg": "phi_i",
                 "phi_f_deg": "phi_f"},
    "sums": {"smin": "smin", "smax": "smax", "nmin": "nmin", "nmax": "nmax",
             "auto_extend": "auto_extend"},
    "sweep": {"variable": "sweep_variable", "start": "sweep_start", "stop": "sweep_stop",
              "count": "sweep_count", "spacing": "sweep_spacing", "values": "sweep_values",
              "series_variable": "series_variable", "series_values": "series_values"},
    "table1": {"e0_values": "table_e0", "modes": "table_modes", "tolerance": "table_tolerance",
               "electron_dressed": "ref_electron", "both_dressed": "ref_both"},
    "output": {"path": "output", "format": "format", "threads": "threads"},
}


@dataclass(frozen=True)
class RunConfig:
    mode: str = "electron_dressed"
    kinetic_energy: float = 1e6
    convention: str = "effective"
    method: str = "closed_form"
    omega: float = 1.17
    e0: float = 1e5
    theta_i: float = 15.0
    theta_f: float = 0.0
    phi_i: float | None = None
    phi_f: float | None = None
    smin: int | None = None
    smax: int = 10
    nmin: int | None = None
    nmax: int = 10
    auto_extend: bool = False
    sweep_variable: str | None = None
    sweep_start: float | None = None
    sweep_stop: float | None = None
    sweep_count: int = 1
    sweep_spacing: str = "linear"
    sweep_values: tuple = ()
    series_variable: str | None = None
    series_values: tuple = ()
    table_e0: tuple = ()
    table_modes: tuple = ()
    table_tolerance: float = 0.02
    ref_electron: tuple = ()
    ref_both: tuple = ()
    output: str | None = None
    format: str = "csv"
    threads: int = 1

    def validate(self) -> RunConfig:
        try:
            Mode(self.mode)
        except ValueError:
            raise ConfigError(f"unknown mode {self.mode!r}", field="mode") from None
        if self.kinetic_energy <= 0:
            raise ConfigError("kinetic energy must be positive", field="kinetic_energy_ev")
        if self.omega <= 0:
            raise ConfigError("photon energy must be positive", field="omega_ev")
        if self.e0 < 0:
            raise ConfigError("field strength must be non-negative", field="e0")
        if not 0.0 <= self.theta_i <= 180.0:
            raise ConfigError("theta_i must lie in [0, 180]", field="theta_i_deg")
        if not -180.0 <= self.theta_f <= 180.0:
            raise ConfigError("theta_f must lie in [-180, 180]", field="theta_f_deg")
        if self.convention not in ("effective", "free"):
            raise ConfigError(f"unknown convention {self.convention!r}", field="convention")
        if self.method not in ("closed_form", "trace"):
            raise ConfigError(f"unknown method {self.method!r}", field="method")
        lo, hi = self.s_range
        if lo > hi:
            raise ConfigError("smin must not exceed smax", field="smin")
        lo, hi = self.n_range
        if lo > hi:
            raise ConfigError("nmin must not exceed nmax", field="nmin")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}", field="format")
        if self.threads < 1:
            raise ConfigError("threads must be >= 1", field="threads")
        if self.sweep_variable is not None:
            if self.sweep_variable not in SWEEP_VARIABLES:
                raise ConfigError(f"sweep variable must be one of {SWEEP_VARIABLES}", field="variable")
            if not self.sweep_values:
                if self.sweep_start is None or self.sweep_stop is None:
                    raise ConfigError("sweep needs start and stop, or explicit values", field="start")
                if self.sweep_variable == "s" and self.sweep_start > self.sweep_stop:
                    raise ConfigError("s sweeps need start <= stop", field="start")
                if self.sweep_count < 1:
                    raise ConfigError("sweep count must be >= 1", field="count")
                if self.sweep_spacing not in ("linear", "log"):
                    raise ConfigError("spacing must be linear or log", field="spacing")
                if self.sweep_spacing == "log" and (self.sweep_start <= 0 or self.sweep_stop <= 0):
                    raise ConfigError("log sweeps need positive bounds", field="start")
        if self.series_variable is not None and self.series_variable not in SERIES_VARIABLES:
            raise ConfigError(f"series variable must be one of {SERIES_VARIABLES}", field="series_variable")
        if self.series_values and self.series_variable is None:
            raise ConfigError("series values given without a series variable", field="series_values")
        return self

    @property
    def s_range(self) -> tuple[int, int]:
        return (-self.smax if self.smin is None else self.smin), self.smax

    @property
    def n_range(self) -> tuple[int, int]:
        return (-self.nmax if self.nmin is None else self.nmin), self.nmax

    def geometry(self) -> Geometry:
        return Geometry.from_degrees(self.theta_i, self.theta_f, self.phi_i, self.phi_f)

    def sweep_grid(self) -> list:
        """Grid points of the sweep variable, in output order."""
        if self.sweep_values:
            return list(self.sweep_values)
        n = self.sweep_count
        a, b = self.sweep_start, self.sweep_stop
        if self.sweep_variable == "s":
            return list(range(int(a), int(b) + 1))
        if self.sweep_spacing == "log":
            la, lb = math.log10(a), math.log10(b)
            return [10.0 ** v for v in _linspace(la, lb, n)]
        return _linspace(a, b, n)


def _linspace(a, b, n):
    if n == 1:
        return [float(a)]
    return [float(a + (b - a) * i / (n - 1)) for i in range(n)]


_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _convert(attr: str, raw: str, line=None, key=None):
    kind = _FIELD_TYPES[attr]
    text = raw.strip()
    try:
        if kind == "tuple":
            items = text.replace(",", " ").split()
            if attr == "table_modes":
                return tuple(items)
            if attr == "sweep_values":
                return tuple(int(v) if v.lstrip("+-").isdigit() else float(v) for v in items)
            return tuple(float(v) for v in items)
        if text.lower() in ("", "none") and "None" in kind:
            return None
        if kind.startswith("bool"):
            if text.lower() in ("1", "true", "yes", "on"):
                return True
            if text.lower() in ("0", "false", "no", "off"):
                return False
            raise ValueError(f"not a boolean: {text!r}")
        if kind.startswith("int"):
            return int(text)
        if kind.startswith("float"):
            return float(text)
        return text
    except ValueError as exc:
        raise ConfigError(str(exc), field=key or attr, line=line) from None


class _Parser(configparser.ConfigParser):
    def optionxform(self, name):
        return name.lower()


def _key_lines(text: str) -> dict:
    """(section, key) -> 1-based line number, for diagnostics."""
    out, section = {}, None
    for i, line in enumerate(text.splitlines(), start=1):
        s = line.strip()
        if s.startswith("[") and s.endswith("]"):
            section = s[1:-1].strip().lower()
        elif "=" in s and not s.startswith(("#", ";")):
            out[(section, s.split("=", 1)[0].strip().lower())] = i
    return out


def parse_text(text: str, base: RunConfig | None = None) -> RunConfig:
    parser = _Parser(interpolation=None)
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}", line=getattr(exc, "lineno", None)) from None
    lines = _key_lines(text)
    values = {}
    for section in parser.sections():
        sec = section.lower()
        if sec not in _LAYOUT:
            raise ConfigError(f"unknown section [{section}]", line=lines.get((sec, None)))
        for key, raw in parser.items(section):
            attr = _LAYOUT[sec].get(key)
            line = lines.get((sec, key))
            if attr is None:
                raise ConfigError(f"unknown key in [{section}]", field=key, line=line)
            values[attr] = _convert(attr, raw, line, key)
    try:
        return replace(base or RunConfig(), **values).validate()
    except ConfigError as exc:
        if exc.line is None and exc.field is not None:
            hits = [n for (_, key), n in lines.items() if key == exc.field]
            if hits:
                raise ConfigError(str(exc).split("] ", 1)[-1], field=exc.field, line=hits[0]) from None
        raise


def load(path: str | Path, base: RunConfig | None = None) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    return parse_text(text, base)


def preset_names() -> list[str]:
    root = resources.files("emulaser") / "presets"
    return sorted(p.name[:-4] for p in root.iterdir() if p.name.endswith(".ini"))


def load_preset(name: str) -> RunConfig:
    res = resources.files("emulaser") / "presets" / f"{name}.ini"
    if not res.is_file():
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(preset_names())}")
    return parse_text(res.read_text())


def _fmt(value) -> str:
    if isinstance(value, tuple):
        return " ".join(_fmt(v) for v in value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def serialize(config: RunConfig) -> str:
    """INI text that :func:`parse_text` maps back to ``config``."""
    defaults = RunConfig()
    parser = _Parser(interpolation=None)
    for section, keys in _LAYOUT.items():
        for key, attr in keys.items():
            value = getattr(config, attr)
            if value is None or value == () or value == getattr(defaults, attr):
                continue
            if not parser.has_section(section):
                parser.add_section(section)
            parser.set(section, key, _fmt(value))
    buf = io.StringIO()
    parser.write(buf)
    return buf.getvalue()


def with_overrides(config: RunConfig, **overrides) -> RunConfig:
    """Apply CLI flags; ``None`` means not given."""
    given = {k: v for k, v in overrides.items() if v is not None}
    return replace(config, **given).validate()
