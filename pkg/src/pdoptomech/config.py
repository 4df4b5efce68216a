"""Flat ``key = value`` scenario files.

A scenario file holds one ``key = value`` pair per line; ``#`` starts a
comment. Frequencies and rates are in units of the mechanical frequency.
Complex numbers are written as ``re+imi`` (for example ``3.125-2.5i``).
``validate_config`` returns a :class:`ScenarioConfig` with every default
filled in, and :meth:`ScenarioConfig.to_text` writes it back in the same
format.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace

from .errors import ConfigError

__all__ = [
    "ScenarioConfig",
    "REQUIRED_KEYS",
    "parse_complex",
    "format_value",
    "validate_config",
    "load_config",
]

REQUIRED_KEYS = ("mode",)

MODES = ("cooling", "transduction", "teleportation")
FRAMES = ("dressed", "lab")
PD_POLICIES = ("none", "optimal", "explicit")
MATCHINGS = ("standard", "modified", "explicit")
ROOTS = ("primary", "alternate")
SPACINGS = ("linear", "log")
COOLING_SWEEPS = ("omega", "kappa1", "cooperativity", "delta1", "g1", "gamma")

def parse_complex(text: str) -> complex:
    """Parse ``re+imi`` literals such as ``3.125-2.5i``, ``-0.5i``, ``i`` or ``2``."""
    t = text.strip()
    if not t or any(c.isspace() for c in t):
        raise ValueError(f"not a complex literal: {text!r}")
    if t.endswith("i"):
        body = t[:-1]
        # split at the last sign that is not part of an exponent
        cut = next((k for k in range(len(body) - 1, 0, -1)
                    if body[k] in "+-" and body[k - 1] not in "eE"), 0)
        re_text, im_text = body[:cut], body[cut:]
        im = {"": 1.0, "+": 1.0, "-": -1.0}.get(im_text)
        if im is None:
            im = float(im_text)
        value = complex(float(re_text) if re_text else 0.0, im)
    else:
        value = complex(float(t), 0.0)
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ValueError(f"complex literal must be finite: {text!r}")
    return value


def format_value(v) -> str:
    """Text form used in resolved-config echoes.

    Floats use the shortest repr that round-trips, so an echoed config
    reproduces the run exactly.
    """
    if v is None:
        return "auto"
    if isinstance(v, complex):
        re_part, im_part = float(v.real), float(v.imag)
        sign = "" if math.copysign(1.0, im_part) < 0 else "+"
        return f"{re_part!r}{sign}{im_part!r}i"
    if isinstance(v, float):
        return repr(float(v))
    return str(v)


@dataclass(frozen=True)
class ScenarioConfig:
    """A fully resolved scenario.

    Fields that are ``None`` are resolved at run time: ``g1`` from the
    cooperativity (cooling) or the matching rule (transduction), and the
    frequency sweep bounds from the operating point. ``bath2_vartheta`` of
    ``None`` means the noise-minimizing phase.
    """

    mode: str
    frame: str = "dressed"
    pd: str = "none"
    omega_m: float = 1.0
    gamma: float = 0.0
    delta1: float = 1.0
    kappa1: float = 5.0
    g1: float | None = None
    lambda1: complex = 0j
    cooperativity: float = 10.0
    delta2: float = 1.0
    kappa2: float = 5.0
    g2: float = 0.0
    lambda2: complex = 0j
    matching: str = "modified"
    root: str = "primary"
    bath2_s: float = 0.0
    bath2_vartheta: float | None = None
    teleport_r: float = 0.0
    sweep_variable: str = "omega"
    sweep_start: float | None = None
    sweep_stop: float | None = None
    sweep_count: int = 2001
    sweep_spacing: str = "linear"
    output: str = "out.csv"

    def to_text(self) -> str:
        """Serialize every field, one ``key = value`` per line."""
        lines = []
        for f in fields(self):
            v = getattr(self, f.name)
            text = "optimal" if f.name == "bath2_vartheta" and v is None else format_value(v)
            lines.append(f"{f.name} = {text}")
        return "\n".join(lines) + "\n"


_MODE_DEFAULTS = {
    "cooling": dict(pd="none", gamma=1e-5, g2=0.0, sweep_variable="omega",
                    sweep_count=2001, sweep_spacing="linear", output="cooling.csv"),
    "transduction": dict(pd="optimal", gamma=0.0, g2=0.1, sweep_variable="omega",
                         sweep_count=2001, sweep_spacing="linear", output="transduction.csv"),
    "teleportation": dict(pd="optimal", gamma=0.0, g2=0.1, sweep_variable="omega",
                          sweep_count=2001, sweep_spacing="linear", output="teleportation.csv"),
}

_FIELD_TYPES = {
    "mode": "choice", "frame": "choice", "pd": "choice", "matching": "choice",
    "root": "choice", "sweep_spacing": "choice", "sweep_variable": "choice",
    "omega_m": "float", "gamma": "float", "delta1": "float", "kappa1": "float",
    "g1": "float?", "lambda1": "complex", "cooperativity": "float",
    "delta2": "float", "kappa2": "float", "g2": "float", "lambda2": "complex",
    "bath2_s": "float", "bath2_vartheta": "phase", "teleport_r": "float",
    "sweep_start": "float?", "sweep_stop": "float?", "sweep_count": "int",
    "output": "str",
}

_CHOICES = {
    "mode": MODES, "frame": FRAMES, "pd": PD_POLICIES, "matching": MATCHINGS,
    "root": ROOTS, "sweep_spacing": SPACINGS, "sweep_variable": COOLING_SWEEPS,
}


def _convert(key: str, raw: str, lineno: int):
    kind = _FIELD_TYPES[key]
    where = f"line {lineno}, field {key!r}"
    try:
        if kind == "choice":
            if raw not in _CHOICES[key]:
                raise ValueError(f"expected one of {', '.join(_CHOICES[key])}")
            return raw
        if kind == "float":
            return float(raw)
        if kind == "float?":
            return None if raw == "auto" else float(raw)
        if kind == "phase":
            return None if raw == "optimal" else float(raw)
        if kind == "complex":
            return parse_complex(raw)
        if kind == "int":
            return int(raw)
        return raw
    except ValueError as exc:
        raise ConfigError(f"{where}: cannot parse {raw!r}: {exc}") from None


def _check(cfg: ScenarioConfig, where: dict):
    def fail(key, msg):
        loc = f"line {where[key]}, " if key in where else ""
        raise ConfigError(f"{loc}field {key!r}: {msg}")

    for key in ("omega_m", "kappa1", "kappa2"):
        if not getattr(cfg, key) > 0:
            fail(key, "must be positive")
    for key in ("gamma", "g2", "bath2_s", "teleport_r", "cooperativity"):
        if getattr(cfg, key) < 0:
            fail(key, "must be non-negative")
    if cfg.g1 is not None and cfg.g1 < 0:
        fail("g1", "must be non-negative")
    if cfg.sweep_count < 2:
        fail("sweep_count", "must be at least 2")
    if cfg.frame == "dressed" and cfg.pd == "explicit":
        fail("pd", "an explicit drive needs frame = lab")
    if cfg.frame == "lab" and cfg.pd == "optimal" and cfg.mode != "cooling":
        fail("pd", "the optimal transducer drive is designed in the dressed frame")
    if cfg.pd != "explicit":
        for key in ("lambda1", "lambda2"):
            if getattr(cfg, key) != 0 and key in where:
                fail(key, "drive amplitudes are only read with pd = explicit")
    if cfg.mode == "cooling":
        if cfg.sweep_variable != "omega" and (cfg.sweep_start is None or cfg.sweep_stop is None):
            fail("sweep_variable", "parameter sweeps need numeric sweep_start and sweep_stop")
        if cfg.teleport_r != 0 or cfg.bath2_s != 0:
            fail("bath2_s" if cfg.bath2_s else "teleport_r", "not used in cooling mode")
    else:
        if cfg.sweep_variable != "omega":
            fail("sweep_variable", f"{cfg.mode} sweeps frequency only")
        if cfg.gamma != 0:
            fail("gamma", "transducer scenarios neglect mechanical loss (gamma = 0)")
        if cfg.frame == "dressed":
            if cfg.matching == "explicit" and cfg.g1 is None:
                fail("g1", "explicit matching needs g1")
            for key in ("delta1", "delta2"):
                if getattr(cfg, key) != cfg.omega_m:
                    fail(key, "dressed transducer designs are resonant (delta = omega_m)")
            if cfg.matching != "explicit" and cfg.g1 is not None:
                fail("g1", f"g1 is set by {cfg.matching} matching; use matching = explicit")
        elif cfg.g1 is None:
            fail("g1", "lab-frame transducers need g1")
        if cfg.mode == "transduction" and cfg.teleport_r != 0:
            fail("teleport_r", "only used in teleportation mode")
    if cfg.sweep_spacing == "log":
        for key in ("sweep_start", "sweep_stop"):
            v = getattr(cfg, key)
            if v is not None and v <= 0:
                fail(key, "log spacing needs positive bounds")
    if (cfg.sweep_start is None) != (cfg.sweep_stop is None):
        fail("sweep_start", "give both sweep bounds or neither")
    if cfg.sweep_start is not None and not cfg.sweep_start < cfg.sweep_stop:
        fail("sweep_stop", "must exceed sweep_start")


def validate_config(text: str) -> ScenarioConfig:
    """Parse scenario text into a resolved :class:`ScenarioConfig`.

    Raises:
        ConfigError: with the offending line and field, for unknown or
            repeated keys, unparsable values, missing required keys and
            inconsistent combinations.
    """
    values, where = {}, {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {body!r}")
        key, raw = (part.strip() for part in body.split("=", 1))
        if key not in _FIELD_TYPES:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"line {lineno}: key {key!r} repeated (first on line {where[key]})")
        if not raw:
            raise ConfigError(f"line {lineno}, field {key!r}: empty value")
        values[key] = _convert(key, raw, lineno)
        where[key] = lineno
    missing = [k for k in REQUIRED_KEYS if k not in values]
    if missing:
        raise ConfigError(f"missing required key(s): {', '.join(missing)}")
    defaults = _MODE_DEFAULTS[values["mode"]]
    cfg = replace(ScenarioConfig(mode=values["mode"]), **{**defaults, **values})
    _check(cfg, where)
    return cfg


def load_config(path) -> ScenarioConfig:
    with open(path, encoding="utf-8") as fh:
        return validate_config(fh.read())
