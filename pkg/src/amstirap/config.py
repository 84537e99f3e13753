"""Run configuration: file parsing, unit resolution, flag overrides.

Configuration files are TOML.  Any physical quantity may be a bare number
(already in internal units: rad/us for frequencies, us for times) or a
string with an explicit unit suffix:

    frequencies:  "2.1 MHz", "21.328 kHz", "-1.4 gamma_b", "-0.5 omega0"
    times:        "2380.95 us", "2.381 ms", "3.77 tau"

Relative suffixes (tau, gamma_b, omega0) resolve against the final values
of those base quantities, including any overrides.  Every value that a run
actually used is recorded in its manifest in internal units; a manifest can
be re-ingested as a configuration file and reproduces the run byte for byte.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .errors import ConfigError, DomainError
from .integrate import DEFAULT_ABSTOL, DEFAULT_RELTOL, DEFAULT_SAMPLES
from .model import SystemParams, rb87_params

__all__ = ["RunConfig", "parse_config", "parse_quantity"]

_QUANTITY_RE = re.compile(r"^\s*([-+]?[0-9.]+(?:[eE][-+]?[0-9]+)?)\s*([A-Za-z_0-9]*)\s*$")

_FREQ_SUFFIXES = {"mhz": 1.0, "khz": 1e-3, "rad_per_us": 1.0}
_TIME_SUFFIXES = {"us": 1.0, "ms": 1e3}
_REL_FREQ_SUFFIXES = ("gamma_b", "omega0")
_REL_TIME_SUFFIXES = ("tau",)

_PARAM_KEYS = (
    "omega0",
    "tau",
    "t1",
    "t2",
    "delta1",
    "gamma_b",
    "lambda_aa",
    "lambda_ag",
    "lambda_gg",
)
_KIND = {
    "omega0": "frequency",
    "tau": "time",
    "t1": "time",
    "t2": "time",
    "delta1": "frequency",
    "gamma_b": "frequency",
    "lambda_aa": "frequency",
    "lambda_ag": "frequency",
    "lambda_gg": "frequency",
}
# Alternate spellings that express a value relative to a base quantity; each
# conflicts with its absolute twin when both are present.
_ALTERNATES = {
    "delta1_over_gamma_b": ("delta1", "gamma_b"),
    "t1_over_tau": ("t1", "tau"),
    "t2_over_tau": ("t2", "tau"),
}

_SECTION_SCHEMA: dict[str, dict[str, str]] = {
    "map": {
        "ratio_min": "number",
        "ratio_max": "number",
        "ratio_count": "number",
        "detuning_min": "number",
        "detuning_max": "number",
        "detuning_count": "number",
        "include_gamma_b": "bool",
        "jacobian": "str",
    },
    "sweep": {
        "delta1_min": "frequency",
        "delta1_max": "frequency",
        "delta1_count": "number",
        "delta1_values": "list:frequency",
        "t1_values": "list:time",
    },
    "optimize": {
        "delta1_min": "frequency",
        "delta1_max": "frequency",
        "delay_min": "time",
        "delay_max": "time",
        "budget": "number",
        "coarse": "number",
    },
    "cpt": {
        "ratio_min": "number",
        "ratio_max": "number",
        "ratio_count": "number",
    },
}


def parse_quantity(
    value: Any,
    kind: str,
    name: str,
    context: dict[str, float],
) -> float:
    """Resolve one configuration value to internal units.

    ``kind`` is "frequency", "time", or "number"; ``context`` supplies the
    base values for relative suffixes.
    """
    if isinstance(value, bool):
        raise ConfigError(f"field {name!r}: expected a quantity, got a boolean")
    if isinstance(value, (int, float)):
        return float(value)
    if not isinstance(value, str):
        raise ConfigError(f"field {name!r}: expected number or 'value unit' string")
    match = _QUANTITY_RE.match(value)
    if match is None:
        raise ConfigError(f"field {name!r}: cannot parse quantity {value!r}")
    magnitude = float(match.group(1))
    suffix = match.group(2).lower()
    if suffix == "":
        return magnitude
    if kind == "number":
        raise ConfigError(f"field {name!r}: dimensionless value cannot carry unit {suffix!r}")
    if kind == "frequency":
        if suffix in _FREQ_SUFFIXES:
            return magnitude * _FREQ_SUFFIXES[suffix]
        if suffix in _REL_FREQ_SUFFIXES:
            if suffix == name:
                raise ConfigError(f"field {name!r} cannot be given relative to itself")
            return magnitude * context[suffix]
        raise ConfigError(
            f"field {name!r}: unit {suffix!r} is not a frequency unit "
            f"(use MHz, kHz, gamma_b, or omega0)"
        )
    if kind == "time":
        if suffix in _TIME_SUFFIXES:
            return magnitude * _TIME_SUFFIXES[suffix]
        if suffix in _REL_TIME_SUFFIXES:
            return magnitude * context[suffix]
        raise ConfigError(
            f"field {name!r}: unit {suffix!r} is not a time unit (use us, ms, or tau)"
        )
    raise ConfigError(f"field {name!r}: unknown quantity kind {kind!r}")


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved configuration for one CLI run."""

    params: SystemParams
    reltol: float = DEFAULT_RELTOL
    abstol: float = DEFAULT_ABSTOL
    samples: int = DEFAULT_SAMPLES
    t_end: float | None = None
    threads: int | None = None
    map_options: dict = field(default_factory=dict)
    sweep_options: dict = field(default_factory=dict)
    optimize_options: dict = field(default_factory=dict)
    cpt_options: dict = field(default_factory=dict)

    def map_axes(self) -> tuple[np.ndarray, np.ndarray]:
        o = self.map_options
        return (
            np.linspace(
                o.get("ratio_min", 0.01), o.get("ratio_max", 3.0),
                int(o.get("ratio_count", 200)),
            ),
            np.linspace(
                o.get("detuning_min", -1.5), o.get("detuning_max", 1.5),
                int(o.get("detuning_count", 200)),
            ),
        )

    def sweep_axes(self) -> tuple[np.ndarray, np.ndarray]:
        o = self.sweep_options
        gb = self.params.gamma_b
        tau = self.params.tau
        if "delta1_values" in o:
            delta1 = np.asarray(o["delta1_values"], dtype=float)
        else:
            scale = gb if gb > 0 else 1.0
            delta1 = np.linspace(
                o.get("delta1_min", -3.0 * scale),
                o.get("delta1_max", 1.0 * scale),
                int(o.get("delta1_count", 41)),
            )
        if "t1_values" in o:
            t1 = np.asarray(o["t1_values"], dtype=float)
        else:
            t1 = np.array([3.0 * tau, 3.77 * tau, 4.5 * tau])
        return delta1, t1

    def cpt_ratios(self) -> np.ndarray:
        o = self.cpt_options
        return np.linspace(
            o.get("ratio_min", 0.0), o.get("ratio_max", 10.0),
            int(o.get("ratio_count", 101)),
        )


def _load_file(path: Path) -> dict:
    try:
        text = path.read_bytes()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if path.suffix.lower() == ".json":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"cannot parse JSON config {path}: {exc}") from exc
    else:
        try:
            data = tomllib.loads(text.decode("utf-8"))
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"cannot parse TOML config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"config {path} must contain a table of settings")
    return data


_MANIFEST_INFO_KEYS = {
    "subcommand",
    "tool",
    "version",
    "wall_time_s",
    "outputs",
}


def parse_config(
    path: str | Path | None = None,
    overrides: dict[str, Any] | None = None,
) -> RunConfig:
    """Build a validated RunConfig from an optional file plus overrides.

    ``overrides`` (typically CLI flags) win over file values.  An empty call
    yields the default 87Rb parameter set.  Raises :class:`ConfigError` on
    unknown fields, unit errors, or conflicting alternate spellings.
    """
    data: dict[str, Any] = {}
    if path is not None:
        data = dict(_load_file(Path(path)))
    for key in list(data):
        if key in _MANIFEST_INFO_KEYS or key.startswith("result_"):
            data.pop(key)
    # Manifests record section values under flat dotted keys
    # ("map.ratio_count"); fold those back into their section tables.
    for key in list(data):
        if "." in key:
            section, sub = key.split(".", 1)
            value = data.pop(key)
            table = data.setdefault(section, {})
            if not isinstance(table, dict):
                raise ConfigError(
                    f"field {key!r} conflicts with non-table field {section!r}"
                )
            table[sub] = value

    sections = {}
    for section in ("map", "sweep", "optimize", "cpt"):
        raw = data.pop(section, {})
        if not isinstance(raw, dict):
            raise ConfigError(f"section [{section}] must be a table")
        sections[section] = dict(raw)

    if overrides:
        for key, value in overrides.items():
            if value is None:
                continue
            data[key] = value

    for alt, (target, base) in _ALTERNATES.items():
        if alt in data:
            if target in data:
                raise ConfigError(
                    f"conflicting fields: {target!r} and {alt!r} both given"
                )
            data[f"__alt_{target}"] = (data.pop(alt), base)

    defaults = rb87_params()
    known = set(_PARAM_KEYS) | {
        "reltol", "abstol", "samples", "t_end", "threads",
    } | {f"__alt_{t}" for t, _ in _ALTERNATES.values()}
    unknown = [k for k in data if k not in known]
    if unknown:
        raise ConfigError(f"unknown configuration field(s): {', '.join(sorted(unknown))}")

    # Base quantities first, so relative suffixes can refer to them.
    context: dict[str, float] = {}
    omega0 = parse_quantity(data.get("omega0", defaults.omega0), "frequency", "omega0", context)
    context["omega0"] = omega0
    tau = parse_quantity(data.get("tau", defaults.tau), "time", "tau", context)
    context["tau"] = tau
    gamma_b = parse_quantity(data.get("gamma_b", defaults.gamma_b), "frequency", "gamma_b", context)
    context["gamma_b"] = gamma_b

    def resolve(key: str, default: float) -> float:
        alt = data.get(f"__alt_{key}")
        if alt is not None:
            raw, base = alt
            return parse_quantity(raw, "number", key, context) * context[base]
        if key in data:
            return parse_quantity(data[key], _KIND[key], key, context)
        return default

    tau_scale = tau / defaults.tau
    gamma_scale = gamma_b / defaults.gamma_b if defaults.gamma_b else 1.0
    try:
        params = SystemParams(
            omega0=omega0,
            tau=tau,
            t1=resolve("t1", defaults.t1 * tau_scale),
            t2=resolve("t2", defaults.t2 * tau_scale),
            delta1=resolve("delta1", defaults.delta1 * gamma_scale),
            gamma_b=gamma_b,
            lambda_aa=resolve("lambda_aa", defaults.lambda_aa),
            lambda_ag=resolve("lambda_ag", defaults.lambda_ag),
            lambda_gg=resolve("lambda_gg", defaults.lambda_gg),
        )
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc

    reltol = parse_quantity(data.get("reltol", DEFAULT_RELTOL), "number", "reltol", context)
    abstol = parse_quantity(data.get("abstol", DEFAULT_ABSTOL), "number", "abstol", context)
    if not (reltol > 0 and abstol > 0):
        raise ConfigError("tolerances must be positive")
    samples = int(parse_quantity(data.get("samples", DEFAULT_SAMPLES), "number", "samples", context))
    if samples < 2:
        raise ConfigError("samples must be at least 2")
    t_end = data.get("t_end")
    if t_end is not None:
        t_end = parse_quantity(t_end, "time", "t_end", context)
    threads = data.get("threads")
    if threads is not None:
        threads = int(threads)
        if threads < 1:
            raise ConfigError("threads must be a positive integer")

    for section_name, section in sections.items():
        schema = _SECTION_SCHEMA[section_name]
        for key, value in list(section.items()):
            if key not in schema:
                raise ConfigError(f"unknown field {key!r} in section [{section_name}]")
            kind = schema[key]
            label = f"{section_name}.{key}"
            if kind in ("bool", "str"):
                continue  # taken verbatim
            if kind.startswith("list:"):
                item_kind = kind.split(":", 1)[1]
                section[key] = [
                    parse_quantity(v, item_kind, label, context) for v in value
                ]
            else:
                section[key] = parse_quantity(value, kind, label, context)

    return RunConfig(
        params=params,
        reltol=reltol,
        abstol=abstol,
        samples=samples,
        t_end=t_end,
        threads=threads,
        map_options=sections["map"],
        sweep_options=sections["sweep"],
        optimize_options=sections["optimize"],
        cpt_options=sections["cpt"],
    )
