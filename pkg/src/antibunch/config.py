"""Flat key-value run configuration with per-command schemas.

Config files contain `key = value` lines (`#` starts a comment).  Every
command has a fixed key set; unknown keys are rejected with the file
position, and type errors name the offending key.  Command-line
`--set key=value` overrides are applied on top of the file.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

__all__ = ["ConfigError", "Field", "SCHEMAS", "load_config_file", "resolve"]


class ConfigError(Exception):
    """Invalid run configuration (maps to exit code 2)."""


def _float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in str(text).split(",") if x.strip())
    except ValueError as exc:
        raise ValueError(f"not a comma-separated float list: {text!r}") from exc


def _geometry(text: str) -> str:
    value = str(text).strip().upper()
    if value not in ("A", "B"):
        raise ValueError(f"geometry must be A or B, got {text!r}")
    return value


@dataclass(frozen=True)
class Field:
    ftype: Callable[[str], Any]
    default: Any
    help: str


SCHEMAS: dict[str, dict[str, Field]] = {
    "analytic": {
        "omega": Field(float, 1.0, "Rabi frequency [gamma_ref]"),
        "delta12_list": Field(_float_list, (0.0, 2.0, 10.0),
                              "interaction strengths [gamma_ref]"),
        "t_max": Field(float, 50.0, "end time [1/gamma_ref]"),
        "dt_out": Field(float, 0.01, "output sampling step [1/gamma_ref]"),
    },
    "g2": {
        "omega": Field(float, 1.0, "Rabi frequency of driven atoms [gamma_ref]"),
        "delta": Field(float, 0.0, "laser detuning [gamma_ref]"),
        "delta12": Field(float, 0.0, "dipole-dipole strength [gamma_ref]"),
        "gamma12": Field(float, 0.0, "collective decay correction [gamma_ref]"),
        "gamma": Field(float, 1.0, "single-atom decay rate [gamma_ref]"),
        "t1": Field(float, 2e5, "one-atom trajectory length [1/gamma_ref]"),
        "t2": Field(float, 1e5, "two-atom trajectory length [1/gamma_ref]"),
        "dt": Field(float, 1e-3, "time step [1/gamma_ref]"),
        "bin_width": Field(float, 0.05, "correlation bin width [1/gamma_ref]"),
        "tau_max": Field(float, 20.0, "correlation range [1/gamma_ref]"),
        "mu": Field(float, 1.0, "mean atom number of the Poisson mixture"),
    },
    "sweep": {
        "delta12_list": Field(_float_list, (0.0, 1.0, 2.0, 5.0, 10.0),
                              "interaction strengths [gamma_ref]"),
        "gamma12_list": Field(_float_list, (0.0,),
                              "collective decay corrections [gamma_ref]"),
        "omega": Field(float, 1.0, "Rabi frequency [gamma_ref]"),
        "gamma": Field(float, 1.0, "single-atom decay rate [gamma_ref]"),
        "t1": Field(float, 2e5, "one-atom trajectory length [1/gamma_ref]"),
        "t2": Field(float, 1e5, "two-atom trajectory length [1/gamma_ref]"),
        "dt": Field(float, 1e-3, "time step [1/gamma_ref]"),
        "bin_width": Field(float, 0.05, "correlation bin width [1/gamma_ref]"),
        "tau_max": Field(float, 20.0, "correlation range [1/gamma_ref]"),
    },
    "tip-map": {
        "r_tip_nm": Field(float, 100.0, "sphere radius [nm]"),
        "epsilon": Field(float, 2.1, "relative permittivity"),
        "wavelength_nm": Field(float, 780.0, "transition wavelength [nm]"),
        "geometry": Field(_geometry, "A", "pair offset direction: A = z, B = y"),
        "r_min_nm": Field(float, 100.0, "first-atom radius, grid start [nm]"),
        "r_max_nm": Field(float, 500.0, "first-atom radius, grid end [nm]"),
        "n_r": Field(int, 41, "radial grid points"),
        "theta_min_deg": Field(float, 0.0, "polar angle, grid start [deg]"),
        "theta_max_deg": Field(float, 180.0, "polar angle, grid end [deg]"),
        "n_theta": Field(int, 61, "angular grid points"),
        "r12_nm": Field(float, 50.0, "fixed interatomic distance [nm]"),
    },
    "tip-experiment": {
        "r_tip_nm": Field(float, 100.0, "sphere radius [nm]"),
        "epsilon": Field(float, 2.1, "relative permittivity"),
        "wavelength_nm": Field(float, 780.0, "transition wavelength [nm]"),
        "r_inner_nm": Field(float, 100.0, "sampling shell inner radius [nm]"),
        "r_outer_nm": Field(float, 200.0, "sampling shell outer radius [nm]"),
        "n_one": Field(int, 20, "number of one-atom realizations"),
        "n_two": Field(int, 10, "number of two-atom realizations"),
        "duration": Field(float, 1e4, "trajectory length [1/gamma0]"),
        "dt": Field(float, 1e-3, "time step [1/gamma0]"),
        "bin_width": Field(float, 0.05, "correlation bin width [1/gamma0]"),
        "tau_max": Field(float, 20.0, "correlation range [1/gamma0]"),
        "drive_scale": Field(float, 1.0, "Rabi calibration multiplier"),
    },
}


def load_config_file(path: str) -> dict[str, str]:
    """Read `key = value` lines; returns raw string values."""
    values: dict[str, str] = {}
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    for lineno, line in enumerate(lines, start=1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        if "=" not in text:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
        key, value = (part.strip() for part in text.split("=", 1))
        if not key:
            raise ConfigError(f"{path}:{lineno}: empty key")
        if key in values:
            raise ConfigError(f"{path}:{lineno}: duplicate key {key!r}")
        values[key] = value
    return values


def resolve(
    command: str,
    file_values: dict[str, str] | None = None,
    overrides: list[str] | None = None,
    source: str = "<config>",
) -> dict[str, Any]:
    """Merge defaults, file values and overrides into a typed config dict."""
    schema = SCHEMAS[command]
    resolved: dict[str, Any] = {k: f.default for k, f in schema.items()}

    def apply(key: str, raw: str, where: str) -> None:
        if key not in schema:
            raise ConfigError(f"{where}: unknown key {key!r} for command {command!r}")
        try:
            resolved[key] = schema[key].ftype(raw)
        except ValueError as exc:
            raise ConfigError(f"{where}: key {key!r}: {exc}") from exc

    for key, raw in (file_values or {}).items():
        apply(key, raw, source)
    for item in overrides or []:
        if "=" not in item:
            raise ConfigError(f"--set {item!r}: expected key=value")
        key, raw = (part.strip() for part in item.split("=", 1))
        apply(key, raw, f"--set {key}")
    return resolved
