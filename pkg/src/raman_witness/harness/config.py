"""Scan configuration: a flat ``key = value`` text file.

Blank lines and ``#`` comments are ignored. Unknown keys are errors.
Lists are comma separated; phases accept ``pi`` expressions such as
``0, pi/2, pi``. Every missing key falls back to the default (``paper``) preset.
"""
from __future__ import annotations

import math
import re
import warnings
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

import numpy as np

from ..model import CoherentInputs, Frame, ParameterError, Process, RamanParams, validate_params
from ..modes import ALL_CRITERIA, ALL_PAIRS, Criterion, ModePair
from ..witnesses import F3_LINEAR, F3_SQUARED, FORM_EXPANSION, FORM_CLOSED

PRESETS = ("paper", "spontaneous", "partial-b", "partial-c", "partial-d")


class ConfigError(ValueError):
    pass


class ParseError(ConfigError):
    def __init__(self, message: str, line: int | None = None, key: str | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if key is not None:
            where.append(f"field {key!r}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
        self.line = line
        self.key = key


class ValidationError(ConfigError):
    pass


@dataclass(frozen=True)
class OracleConfig:
    cutoffs: tuple[int, int, int, int] = (14, 14, 14, 14)
    alpha_scale: float = 0.1
    tol: float = 1e-10


@dataclass(frozen=True)
class ScanConfig:
    params: RamanParams = field(default_factory=RamanParams)
    amplitudes: tuple[complex, complex, complex, complex] = (10.0, 8.0, 0.01, 1.0)
    process: Process = Process.STIMULATED
    t_min: float = 0.0
    t_max: float = 1e-6
    t_steps: int = 400
    phi_set: tuple[float, ...] = (0.0, math.pi / 2, math.pi)
    criteria: tuple[Criterion, ...] = ALL_CRITERIA
    pairs: tuple[ModePair, ...] = ALL_PAIRS
    form: str = FORM_CLOSED
    f3_reading: str = F3_SQUARED
    oracle: OracleConfig | None = None
    output_dir: str | None = None
    output_format: str = "both"

    def times(self) -> np.ndarray:
        """Uniform grid; left-open at zero so ``t = 0`` is never a sample."""
        if self.t_min == 0:
            return np.linspace(0.0, self.t_max, self.t_steps + 1)[1:]
        return np.linspace(self.t_min, self.t_max, self.t_steps)

    def inputs(self, phi: float) -> CoherentInputs:
        """Initial amplitudes with the pump phase set to ``phi``."""
        a1, a2, a3, a4 = self.amplitudes
        return CoherentInputs(abs(a1) * np.exp(-1j * phi), a2, a3, a4)

    def echo(self) -> dict:
        """Plain-data view of the configuration, for provenance blocks."""
        p = self.params
        out = {
            "g": p.g, "chi": p.chi, "d_omega1": p.d_omega1, "d_omega2": p.d_omega2,
            "frame": p.frame.value,
            "omegas": list(p.omegas) if p.omegas is not None else None,
            "amplitudes": [_fmt_complex(x) for x in self.amplitudes],
            "process": self.process.value,
            "t_min": self.t_min, "t_max": self.t_max, "t_steps": self.t_steps,
            "phi": list(self.phi_set),
            "criteria": [c.value for c in self.criteria],
            "pairs": [p_.label for p_ in self.pairs],
            "form": self.form, "f3_reading": self.f3_reading,
        }
        if self.oracle is not None:
            out["oracle"] = {"cutoffs": list(self.oracle.cutoffs),
                             "alpha_scale": self.oracle.alpha_scale, "tol": self.oracle.tol}
        return out


def _fmt_complex(z) -> float | str:
    z = complex(z)
    return z.real if z.imag == 0 else repr(z)


def preset(name: str = "paper") -> ScanConfig:
    """Reference parameters, optionally specialised to a (partially) spontaneous process."""
    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    cfg = ScanConfig()
    a1, a2, a3, a4 = cfg.amplitudes
    if name == "spontaneous":
        return replace(cfg, amplitudes=(a1, 0.0, 0.0, 0.0), process=Process.SPONTANEOUS)
    if name.startswith("partial-"):
        keep = "bcd".index(name[-1])
        amps = [0.0, 0.0, 0.0]
        amps[keep] = (a2, a3, a4)[keep]
        return replace(cfg, amplitudes=(a1, *amps), process=Process.PARTIALLY_SPONTANEOUS)
    return cfg


_PHASE_TOKEN = re.compile(r"^\s*([+-]?\d*\.?\d*(?:e[+-]?\d+)?)\s*\*?\s*(pi)?\s*(?:/\s*(\d+(?:\.\d*)?))?\s*$",
                          re.IGNORECASE)


def parse_phase(text: str) -> float:
    """``"pi/2"`` -> 1.5707..., ``"0.3"`` -> 0.3, ``"3pi/4"`` -> 2.356..."""
    m = _PHASE_TOKEN.match(text)
    if not m or (not m.group(1) and not m.group(2)):
        raise ValueError(f"cannot read phase {text!r}")
    coef_text, has_pi, denom = m.groups()
    if coef_text in ("", "+", "-"):
        coef = -1.0 if coef_text == "-" else 1.0
    else:
        coef = float(coef_text)
    value = coef * (math.pi if has_pi else 1.0)
    if denom:
        value /= float(denom)
    return value


def _floats(text):
    return [float(x) for x in text.split(",") if x.strip()]


_SCALARS = {
    "g": float, "chi": float, "d_omega1": float, "d_omega2": float,
    "omega_a": float, "omega_b": float, "omega_c": float, "omega_d": float,
    "alpha1": complex, "alpha2": complex, "alpha3": complex, "alpha4": complex,
    "t_min": float, "t_max": float, "t_steps": int,
    "oracle_alpha_scale": float, "oracle_tol": float,
}
_KEYS = set(_SCALARS) | {"frame", "process", "preset", "phi", "criteria", "pairs", "form",
                         "f3_reading", "oracle_cutoffs", "output_dir", "output_format"}


def parse_text(text: str) -> dict[str, object]:
    """Parse config text into typed values, without applying defaults."""
    values: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError("expected 'key = value'", lineno)
        key, _, val = (s.strip() for s in line.partition("="))
        if key not in _KEYS:
            raise ParseError("unknown field", lineno, key)
        if key in values:
            raise ParseError("duplicate field", lineno, key)
        try:
            values[key] = _convert(key, val)
        except (ValueError, KeyError) as exc:
            raise ParseError(f"bad value {val!r} ({exc})", lineno, key) from None
    return values


def _convert(key: str, val: str):
    if key in _SCALARS:
        kind = _SCALARS[key]
        if kind is complex:
            return complex(val.replace(" ", "").replace("i", "j"))
        if kind is int:
            return int(val)
        return float(val)
    if key == "frame":
        return Frame(val.lower())
    if key == "process":
        return Process(val.lower())
    if key == "preset":
        if val not in PRESETS:
            raise ValueError(f"choose from {', '.join(PRESETS)}")
        return val
    if key == "phi":
        return tuple(parse_phase(x) for x in val.split(",") if x.strip())
    if key == "criteria":
        lookup = {c.value.lower(): c for c in Criterion}
        return tuple(lookup[x.strip().lower()] for x in val.split(",") if x.strip())
    if key == "pairs":
        return tuple(ModePair(x.strip()) for x in val.split(",") if x.strip())
    if key == "form":
        if val not in (FORM_CLOSED, FORM_EXPANSION):
            raise ValueError(f"form must be {FORM_CLOSED} or {FORM_EXPANSION}")
        return val
    if key == "f3_reading":
        if val not in (F3_SQUARED, F3_LINEAR):
            raise ValueError(f"f3_reading must be {F3_SQUARED} or {F3_LINEAR}")
        return val
    if key == "oracle_cutoffs":
        cut = [int(x) for x in val.split(",") if x.strip()]
        if len(cut) == 1:
            cut *= 4
        if len(cut) != 4:
            raise ValueError("give one cutoff or four")
        return tuple(cut)
    if key == "output_format":
        if val not in ("csv", "json", "both"):
            raise ValueError("output_format must be csv, json or both")
        return val
    return val  # output_dir


def build_config(values: dict[str, object] | None = None) -> ScanConfig:
    """Fill defaults from the chosen preset, apply ``values``, validate."""
    values = dict(values or {})
    cfg = preset(values.pop("preset", "paper"))
    p = cfg.params
    param_kw = {k: values.pop(k) for k in ("g", "chi", "d_omega1", "d_omega2") if k in values}
    if "frame" in values:
        param_kw["frame"] = values.pop("frame")
    omegas = [values.pop(k, None) for k in ("omega_a", "omega_b", "omega_c", "omega_d")]
    if any(w is not None for w in omegas):
        if any(w is None for w in omegas):
            raise ValidationError("omega_a..omega_d must be given together")
        param_kw["omegas"] = tuple(omegas)
    p = replace(p, **param_kw)

    amps = list(cfg.amplitudes)
    for i in range(4):
        key = f"alpha{i + 1}"
        if key in values:
            amps[i] = values.pop(key)

    oracle_kw = {}
    if "oracle_cutoffs" in values:
        oracle_kw["cutoffs"] = values.pop("oracle_cutoffs")
    if "oracle_alpha_scale" in values:
        oracle_kw["alpha_scale"] = values.pop("oracle_alpha_scale")
    if "oracle_tol" in values:
        oracle_kw["tol"] = values.pop("oracle_tol")
    oracle = replace(cfg.oracle or OracleConfig(), **oracle_kw) if oracle_kw else cfg.oracle

    known = {f.name for f in fields(ScanConfig)}
    rest = {}
    for key, val in values.items():
        name = {"phi": "phi_set"}.get(key, key)
        if name not in known:
            raise ParseError("unknown field", key=key)
        rest[name] = val
    cfg = replace(cfg, params=p, amplitudes=tuple(amps), oracle=oracle, **rest)
    return validate_config(cfg)


def validate_config(cfg: ScanConfig) -> ScanConfig:
    try:
        validate_params(cfg.params)
    except ParameterError as exc:
        raise ValidationError(f"params: {exc}") from None
    if not (cfg.t_min >= 0 and cfg.t_min < cfg.t_max):
        raise ValidationError("need 0 <= t_min < t_max")
    if cfg.t_steps < 2:
        raise ValidationError("t_steps must be >= 2")
    gt = max(abs(cfg.params.g), abs(cfg.params.chi)) * cfg.t_max
    if gt > 0.5 + 1e-12:
        raise ValidationError(f"max(g, chi) * t_max = {gt:.3g} exceeds 0.5")
    if gt > 0.1 + 1e-12:
        warnings.warn(f"max(g, chi) * t_max = {gt:.3g} is above the perturbative range 0.1",
                      stacklevel=2)
    if not cfg.phi_set:
        raise ValidationError("phi list is empty")
    if not cfg.criteria:
        raise ValidationError("criteria list is empty")
    if not cfg.pairs:
        raise ValidationError("pairs list is empty")
    if len(set(cfg.pairs)) != len(cfg.pairs) or len(set(cfg.criteria)) != len(cfg.criteria):
        raise ValidationError("pairs and criteria must not repeat")
    if any(not np.isfinite(abs(x)) for x in cfg.amplitudes):
        raise ValidationError("amplitudes must be finite")
    inputs = cfg.inputs(cfg.phi_set[0])
    if cfg.process is not Process.STIMULATED and inputs.process() is not cfg.process:
        raise ValidationError(
            f"amplitudes describe a {inputs.process().value} process, config says {cfg.process.value}")
    if cfg.oracle is not None:
        if any(n < 0 for n in cfg.oracle.cutoffs):
            raise ValidationError("oracle cutoffs must be non-negative")
        if not cfg.oracle.tol > 0:
            raise ValidationError("oracle tol must be positive")
    return cfg


def load_config(path: str | Path) -> ScanConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from None
    return build_config(parse_text(text))
