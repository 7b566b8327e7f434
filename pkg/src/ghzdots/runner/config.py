"""Flat ``key = value`` run configuration."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields, replace

from ..model import SystemParams

SWEEP_AXES = ("omega_rabi", "delta", "eta", "phi", "tau")
OUTPUTS = ("csv", "svg")
SOLVERS = ("spectral", "oracle")

_PARAM_KEYS = {f.name for f in fields(SystemParams)}
_RUN_KEYS = {"sweep", "outputs", "output_prefix", "validate", "emit_scaled_time", "solver"}


class ConfigError(ValueError):
    pass


class ParseError(ConfigError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class ValidationError(ConfigError):
    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}")
        self.key = key


@dataclass(frozen=True)
class Sweep:
    axis: str
    values: tuple

    def __post_init__(self):
        if self.axis not in SWEEP_AXES:
            raise ValidationError("sweep", f"cannot sweep {self.axis!r}; choose from {', '.join(SWEEP_AXES)}")
        if not self.values:
            raise ValidationError("sweep", "needs at least one value")
        if not all(math.isfinite(v) for v in self.values):
            raise ValidationError("sweep", "values must be finite")


@dataclass(frozen=True)
class RunConfig:
    params: SystemParams = field(default_factory=SystemParams)
    sweep: Sweep | None = None
    outputs: frozenset = frozenset({"csv"})
    output_prefix: str = "run"
    validate: bool = False
    emit_scaled_time: bool = False
    solver: str = "spectral"

    def __post_init__(self):
        bad = set(self.outputs) - set(OUTPUTS)
        if bad:
            raise ValidationError("outputs", f"unknown output {sorted(bad)[0]!r}")
        if self.solver not in SOLVERS:
            raise ValidationError("solver", f"must be one of {', '.join(SOLVERS)}")
        self.members()  # rejects swept values that break SystemParams

    def members(self) -> list[SystemParams]:
        """Parameter sets in sweep order; a single member without a sweep."""
        if self.sweep is None:
            return [self.params]
        out = []
        for value in self.sweep.values:
            try:
                out.append(replace(self.params, **{self.sweep.axis: value}))
            except ValueError as exc:
                raise ValidationError("sweep", f"{self.sweep.axis}={value!r}: {exc}") from None
        return out


def _float(key, text):
    try:
        value = float(text)
    except ValueError:
        raise ValidationError(key, f"not a number: {text!r}") from None
    if not math.isfinite(value):
        raise ValidationError(key, "must be finite")
    return value


def _bool(key, text):
    lowered = text.lower()
    if lowered in ("true", "yes", "1", "on"):
        return True
    if lowered in ("false", "no", "0", "off"):
        return False
    raise ValidationError(key, f"expected true/false, got {text!r}")


def _list(text):
    return [item.strip() for item in text.split(",") if item.strip()]


def _complex(key, text):
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise ValidationError(key, f"not a complex number: {text!r}") from None


def parse_config(text: str) -> RunConfig:
    """Parse and validate a run configuration.

    One ``key = value`` per line, ``#`` starts a comment, lists are comma
    separated. A sweep reads ``sweep = <axis>: v1, v2, ...``. Unknown keys,
    duplicate keys and malformed lines are errors.
    """
    raw = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(lineno, f"expected 'key = value', got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ParseError(lineno, "missing key")
        if key not in _PARAM_KEYS and key not in _RUN_KEYS:
            raise ValidationError(key, f"unknown key (line {lineno})")
        if key in raw:
            raise ParseError(lineno, f"duplicate key {key!r}")
        raw[key] = value

    param_kwargs = {}
    for key, value in raw.items():
        if key == "initial_state":
            param_kwargs[key] = value
        elif key == "initial_amplitudes":
            param_kwargs[key] = tuple(_complex(key, v) for v in _list(value))
        elif key in _PARAM_KEYS:
            param_kwargs[key] = _float(key, value)
    try:
        params = SystemParams(**param_kwargs)
    except ValueError as exc:
        message = str(exc)
        key = next((k for k in param_kwargs if message.startswith(k)), "params")
        raise ValidationError(key, message) from None

    run_kwargs = {}
    if "sweep" in raw:
        axis, sep, values = raw["sweep"].partition(":")
        if not sep:
            raise ValidationError("sweep", "expected '<axis>: v1, v2, ...'")
        run_kwargs["sweep"] = Sweep(axis.strip(), tuple(_float("sweep", v) for v in _list(values)))
    if "outputs" in raw:
        run_kwargs["outputs"] = frozenset(_list(raw["outputs"]))
    if "output_prefix" in raw:
        run_kwargs["output_prefix"] = raw["output_prefix"]
    for key in ("validate", "emit_scaled_time"):
        if key in raw:
            run_kwargs[key] = _bool(key, raw[key])
    if "solver" in raw:
        run_kwargs["solver"] = raw["solver"]
    return RunConfig(params=params, **run_kwargs)
