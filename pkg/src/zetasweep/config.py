"""Flat key-value run configuration: parsing, validation, serialization.

The format is line-oriented text, one `key = value` pair per line, dotted
lowercase keys, `#` comments.  Values are strings, integers, reals (17
significant digits on output), complex literals `a+bi`, or exact rational
complex literals `p/q+r/si` for exponential-polynomial coefficients.  Unknown
and duplicate keys are rejected, and every numeric field is checked against
the preconditions of the module it feeds before any evaluation starts.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConfigError, GeometryError
from .kernels import EvalPrecision, RationalPolynomial
from .orbit import ContinuousShift, DiscreteShift, ShiftSpec, Subject
from .space import CompactPatch, Disc, Rectangle, StripDomain, build_patch
from .targets import TargetFunction
from .experiments import JointComponent, JointSpec

SCHEMA_VERSION = 1

COMMANDS = ("eval", "sweep", "orbit", "density", "recur", "gdelta", "joint")

_SUBJECT_KINDS = ("riemann", "hurwitz", "log_riemann")
_TARGET_KINDS = ("polynomial", "exp_polynomial", "zeta_shift", "hurwitz_shift")


def _fmt_float(x: float) -> str:
    return format(float(x), ".17g")


def _fmt_complex(z: complex) -> str:
    sign = "+" if z.imag >= 0 else "-"
    return f"{_fmt_float(z.real)}{sign}{_fmt_float(abs(z.imag))}i"


def _fmt_fraction_complex(c: tuple[Fraction, Fraction]) -> str:
    re_, im = c
    sign = "+" if im >= 0 else "-"
    return f"{re_}{sign}{abs(im)}i"


_FLOAT_PAT = r"[0-9]*\.?[0-9]+(?:[eE][+-]?[0-9]+)?"
_COMPLEX_RE = re.compile(
    rf"^(?P<re>[+-]?{_FLOAT_PAT})(?P<sign>[+-])(?P<im>{_FLOAT_PAT})i$")
_FRACTION_COMPLEX_RE = re.compile(
    r"^(?P<re>[+-]?\d+(?:/\d+)?)(?P<sign>[+-])(?P<im>\d+(?:/\d+)?)i$")


def _parse_complex(text: str) -> complex:
    m = _COMPLEX_RE.match(text)
    if m:
        im = float(m.group("im"))
        return complex(float(m.group("re")),
                       im if m.group("sign") == "+" else -im)
    try:
        return complex(float(text), 0.0)
    except ValueError:
        raise ConfigError(f"invalid complex literal {text!r}") from None


def _parse_fraction_complex(text: str) -> tuple[Fraction, Fraction]:
    m = _FRACTION_COMPLEX_RE.match(text)
    if m:
        im = Fraction(m.group("im"))
        return (Fraction(m.group("re")),
                im if m.group("sign") == "+" else -im)
    try:
        return (Fraction(text), Fraction(0))
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"invalid rational complex literal {text!r}") from None


def _parse_typed(key: str, kind, text: str):
    if isinstance(kind, tuple):  # ("enum", options)
        if text not in kind[1]:
            raise ConfigError(f"{key}: expected one of {kind[1]}, got {text!r}")
        return text
    if kind == "int":
        try:
            return int(text)
        except ValueError:
            raise ConfigError(f"{key}: invalid integer {text!r}") from None
    if kind == "float":
        try:
            value = float(text)
        except ValueError:
            raise ConfigError(f"{key}: invalid real {text!r}") from None
        return value
    if kind == "complex":
        return _parse_complex(text)
    if kind == "fraction_complex":
        return _parse_fraction_complex(text)
    if kind == "str":
        return text
    raise AssertionError(f"unknown schema type {kind}")


def _fmt_typed(value) -> str:
    if isinstance(value, bool):
        raise AssertionError("booleans are not part of the config grammar")
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return _fmt_float(value)
    if isinstance(value, complex):
        return _fmt_complex(value)
    if isinstance(value, tuple):
        return _fmt_fraction_complex(value)
    if isinstance(value, str):
        if "\n" in value:
            raise ConfigError("string values must be single-line")
        return value
    raise AssertionError(f"unserializable config value {value!r}")


def _subject_keys(prefix: str) -> dict:
    return {
        f"{prefix}subject.kind": ("enum", _SUBJECT_KINDS),
        f"{prefix}subject.alpha": "float",
    }


def _patch_keys(prefix: str) -> dict:
    return {
        f"{prefix}patch.shape": ("enum", ("rectangle", "disc")),
        f"{prefix}patch.sigma1": "float",
        f"{prefix}patch.sigma2": "float",
        f"{prefix}patch.t1": "float",
        f"{prefix}patch.t2": "float",
        f"{prefix}patch.center": "complex",
        f"{prefix}patch.radius": "float",
        f"{prefix}patch.grid_step": "float",
        f"{prefix}strip_lo": "float",
        f"{prefix}strip_hi": "float",
    }


def _target_keys(prefix: str) -> tuple[dict, list]:
    exact = {
        f"{prefix}target.kind": ("enum", _TARGET_KINDS),
        f"{prefix}target.tau0": "float",
        f"{prefix}target.alpha": "float",
    }
    patterns = [
        (re.compile(rf"^{re.escape(prefix)}target\.coeffs\.\d+$"), "complex"),
        (re.compile(rf"^{re.escape(prefix)}target\.p\.\d+$"), "fraction_complex"),
    ]
    return exact, patterns


_SHIFT_CONTINUOUS = {
    "shift.t_max": "float",
    "shift.step": "float",
    "shift.t_start": "float",
}
_SHIFT_ANY = {
    "shift.mode": ("enum", ("continuous", "discrete")),
    "shift.h": "float",
    "shift.n_max": "int",
    **_SHIFT_CONTINUOUS,
}

_BASE_KEYS = {
    "schema_version": "int",
    "command": ("enum", COMMANDS),
    "out": "str",
    "threads": "int",
    "prec.shift_terms": "int",
    "prec.bernoulli_order": "int",
    "prec.target_tol": "float",
}


def _schema_for(command: str) -> tuple[dict, list]:
    exact = dict(_BASE_KEYS)
    patterns: list = []
    if command == "eval":
        exact.update(_subject_keys(""))
        exact["eval.s"] = "complex"
    elif command in ("sweep", "orbit"):
        exact.update(_subject_keys(""))
        exact.update(_patch_keys(""))
        t_exact, t_patterns = _target_keys("")
        exact.update(t_exact)
        patterns.extend(t_patterns)
        exact.update(_SHIFT_ANY)
    elif command == "density":
        exact.update(_subject_keys(""))
        exact.update(_patch_keys(""))
        t_exact, t_patterns = _target_keys("")
        exact.update(t_exact)
        patterns.extend(t_patterns)
        exact.update(_SHIFT_CONTINUOUS)
        exact["epsilon"] = "float"
        patterns.append((re.compile(r"^density\.h\.\d+$"), "float"))
    elif command == "recur":
        exact.update(_subject_keys(""))
        exact.update(_patch_keys(""))
        exact.update(_SHIFT_CONTINUOUS)
        exact["epsilon"] = "float"
        patterns.append((re.compile(r"^recur\.h\.\d+$"), "float"))
    elif command == "gdelta":
        exact.update({
            "gdelta.t0": "float",
            "gdelta.m_max": "int",
            "gdelta.n_max": "int",
            "gdelta.grid_step": "float",
        })
    elif command == "joint":
        exact["joint.count"] = "int"
        exact["epsilon"] = "float"
        exact.update(_SHIFT_CONTINUOUS)
        patterns.append((re.compile(r"^joint\.\d+\.subject\.kind$"),
                         ("enum", _SUBJECT_KINDS)))
        patterns.append((re.compile(r"^joint\.\d+\.subject\.alpha$"), "float"))
        patterns.append((re.compile(r"^joint\.\d+\.h$"), "float"))
        for key, kind in _patch_keys("joint.0.").items():
            generic = key.replace("joint.0.", r"joint\.\d+\.")
            patterns.append((re.compile(f"^{generic}$"), kind))
        t_exact, _ = _target_keys("joint.0.")
        for key, kind in t_exact.items():
            generic = key.replace("joint.0.", r"joint\.\d+\.")
            patterns.append((re.compile(f"^{generic}$"), kind))
        patterns.append((re.compile(r"^joint\.\d+\.target\.coeffs\.\d+$"),
                         "complex"))
        patterns.append((re.compile(r"^joint\.\d+\.target\.p\.\d+$"),
                         "fraction_complex"))
    return exact, patterns


@dataclass(frozen=True)
class RunConfig:
    """A validated run configuration; `values` is canonically sorted."""

    command: str
    values: tuple[tuple[str, object], ...]

    def get(self, key: str, default=None):
        for k, v in self.values:
            if k == key:
                return v
        return default

    def has(self, key: str) -> bool:
        return any(k == key for k, _ in self.values)

    def indexed(self, base: str) -> list:
        """Values of contiguous keys base.0, base.1, ... in index order."""
        found = {}
        prefix = base + "."
        for k, v in self.values:
            if k.startswith(prefix) and k[len(prefix):].isdigit():
                found[int(k[len(prefix):])] = v
        if sorted(found) != list(range(len(found))):
            raise ConfigError(f"indices under {base} must be contiguous from 0")
        return [found[i] for i in range(len(found))]


def parse_config(text: str) -> RunConfig:
    """Parse and fully validate a configuration; raises ConfigError."""
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected `key = value`")
        key, _, value = stripped.partition("=")
        key, value = key.strip(), value.strip()
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        if key in raw:
            raise ConfigError(f"line {lineno}: duplicate key {key}")
        raw[key] = value

    if "command" not in raw:
        raise ConfigError("missing required key: command")
    command = raw["command"]
    if command not in COMMANDS:
        raise ConfigError(f"unknown command {command!r}")
    exact, patterns = _schema_for(command)

    typed: dict[str, object] = {}
    for key, value in raw.items():
        kind = exact.get(key)
        if kind is None:
            kind = next((k for rx, k in patterns if rx.match(key)), None)
        if kind is None:
            raise ConfigError(f"unknown key {key!r} for command {command}")
        typed[key] = _parse_typed(key, kind, value)

    if typed.get("schema_version") != SCHEMA_VERSION:
        raise ConfigError(f"schema_version must be {SCHEMA_VERSION}")

    config = RunConfig(command, tuple(sorted(typed.items())))
    _validate(config)
    return config


def serialize_config(config: RunConfig) -> str:
    return "".join(f"{k} = {_fmt_typed(v)}\n" for k, v in config.values)


def _require(config: RunConfig, *keys: str) -> None:
    missing = [k for k in keys if not config.has(k)]
    if missing:
        raise ConfigError(f"missing required keys: {', '.join(missing)}")


def build_precision(config: RunConfig) -> EvalPrecision:
    kwargs = {}
    if config.has("prec.shift_terms"):
        kwargs["shift_terms"] = config.get("prec.shift_terms")
    if config.has("prec.bernoulli_order"):
        kwargs["bernoulli_order"] = config.get("prec.bernoulli_order")
    if config.has("prec.target_tol"):
        kwargs["target_tol"] = config.get("prec.target_tol")
    try:
        return EvalPrecision(**kwargs)
    except ValueError as exc:
        raise ConfigError(f"prec: {exc}") from None


def build_subject(config: RunConfig, prefix: str = "") -> Subject:
    _require(config, f"{prefix}subject.kind")
    kind = config.get(f"{prefix}subject.kind")
    alpha = config.get(f"{prefix}subject.alpha")
    if kind == "hurwitz":
        if alpha is None:
            raise ConfigError(f"{prefix}subject.alpha required for hurwitz")
        try:
            return Subject.hurwitz(alpha)
        except ValueError as exc:
            raise ConfigError(f"{prefix}subject.alpha: {exc}") from None
    if alpha is not None:
        raise ConfigError(f"{prefix}subject.alpha only applies to hurwitz")
    return Subject.riemann() if kind == "riemann" else Subject.log_riemann()


def build_patch_spec(config: RunConfig, prefix: str = "") -> CompactPatch:
    _require(config, f"{prefix}patch.shape", f"{prefix}patch.grid_step")
    strip = StripDomain(config.get(f"{prefix}strip_lo", 0.5),
                        config.get(f"{prefix}strip_hi", 1.0))
    shape_kind = config.get(f"{prefix}patch.shape")
    try:
        if shape_kind == "rectangle":
            _require(config, f"{prefix}patch.sigma1", f"{prefix}patch.sigma2",
                     f"{prefix}patch.t1", f"{prefix}patch.t2")
            shape = Rectangle(config.get(f"{prefix}patch.sigma1"),
                              config.get(f"{prefix}patch.sigma2"),
                              config.get(f"{prefix}patch.t1"),
                              config.get(f"{prefix}patch.t2"))
        else:
            _require(config, f"{prefix}patch.center", f"{prefix}patch.radius")
            shape = Disc(config.get(f"{prefix}patch.center"),
                         config.get(f"{prefix}patch.radius"))
        return build_patch(shape, config.get(f"{prefix}patch.grid_step"), strip)
    except (GeometryError, ValueError) as exc:
        raise ConfigError(f"{prefix}patch: {exc}") from None


def build_target_spec(config: RunConfig, prefix: str = "") -> TargetFunction:
    _require(config, f"{prefix}target.kind")
    kind = config.get(f"{prefix}target.kind")
    try:
        if kind == "polynomial":
            coeffs = config.indexed(f"{prefix}target.coeffs")
            if not coeffs:
                raise ConfigError(f"{prefix}target.coeffs.0 required")
            return TargetFunction.polynomial(coeffs)
        if kind == "exp_polynomial":
            fractions = config.indexed(f"{prefix}target.p")
            if not fractions:
                raise ConfigError(f"{prefix}target.p.0 required")
            return TargetFunction.exp_polynomial(RationalPolynomial(fractions))
        if kind == "zeta_shift":
            _require(config, f"{prefix}target.tau0")
            return TargetFunction.zeta_shift(config.get(f"{prefix}target.tau0"))
        _require(config, f"{prefix}target.tau0", f"{prefix}target.alpha")
        return TargetFunction.hurwitz_shift(config.get(f"{prefix}target.alpha"),
                                            config.get(f"{prefix}target.tau0"))
    except ValueError as exc:
        raise ConfigError(f"{prefix}target: {exc}") from None


def build_shift_spec(config: RunConfig, require_mode: str | None = None
                     ) -> ShiftSpec:
    mode = config.get("shift.mode", "continuous")
    if require_mode is not None and mode != require_mode:
        raise ConfigError(f"shift.mode must be {require_mode} for this command")
    try:
        if mode == "continuous":
            _require(config, "shift.t_max", "shift.step")
            return ContinuousShift(config.get("shift.t_max"),
                                   config.get("shift.step"),
                                   config.get("shift.t_start", 0.0))
        _require(config, "shift.h", "shift.n_max")
        return DiscreteShift(config.get("shift.h"), config.get("shift.n_max"))
    except ValueError as exc:
        raise ConfigError(f"shift: {exc}") from None


def build_h_list(config: RunConfig, base: str, t_max: float) -> list[float]:
    hs = config.indexed(base)
    for h in hs:
        if not 0 < h <= t_max:
            raise ConfigError(f"{base}: entries must satisfy 0 < h <= t_max")
    return hs


def build_joint_spec(config: RunConfig) -> JointSpec:
    _require(config, "joint.count", "epsilon")
    count = config.get("joint.count")
    if count < 1:
        raise ConfigError("joint.count must be at least 1")
    components, shifts = [], []
    for idx in range(count):
        prefix = f"joint.{idx}."
        subject = build_subject(config, prefix)
        patch = build_patch_spec(config, prefix)
        target = build_target_spec(config, prefix)
        h = config.get(f"{prefix}h")
        if h is None:
            raise ConfigError(f"{prefix}h required")
        components.append(JointComponent(subject, patch.strip, patch, target))
        shifts.append(h)
    try:
        return JointSpec(tuple(components), tuple(shifts),
                         config.get("epsilon"))
    except ValueError as exc:
        raise ConfigError(f"joint: {exc}") from None


def _validate(config: RunConfig) -> None:
    command = config.command
    build_precision(config)
    if config.has("threads") and config.get("threads") < 1:
        raise ConfigError("threads must be at least 1")

    if command == "eval":
        build_subject(config)
        _require(config, "eval.s")
        if abs(config.get("eval.s") - 1.0) < 1e-12:
            raise ConfigError("eval.s sits on the pole s = 1")
    elif command in ("sweep", "orbit"):
        build_subject(config)
        build_patch_spec(config)
        build_target_spec(config)
        build_shift_spec(config,
                         "continuous" if command == "sweep" else "discrete")
    elif command in ("density", "recur"):
        build_subject(config)
        build_patch_spec(config)
        shift = build_shift_spec(config, "continuous")
        if command == "density":
            build_target_spec(config)
            hs = build_h_list(config, "density.h", shift.t_max)
            if not hs:
                raise ConfigError("density.h.0 required")
        else:
            build_h_list(config, "recur.h", shift.t_max)
        epsilon = config.get("epsilon")
        if epsilon is None or not epsilon > 0:
            raise ConfigError("epsilon must be present and positive")
    elif command == "gdelta":
        _require(config, "gdelta.t0", "gdelta.m_max", "gdelta.n_max")
        if not config.get("gdelta.t0") > 0:
            raise ConfigError("gdelta.t0 must be positive")
        if config.get("gdelta.m_max") < 1 or config.get("gdelta.n_max") < 1:
            raise ConfigError("gdelta.m_max and gdelta.n_max must be >= 1")
        if config.has("gdelta.grid_step") and not config.get("gdelta.grid_step") > 0:
            raise ConfigError("gdelta.grid_step must be positive")
    elif command == "joint":
        build_joint_spec(config)
        build_shift_spec(config, "continuous")
        if not config.get("epsilon") > 0:
            raise ConfigError("epsilon must be positive")


def config_from_pairs(pairs: dict[str, object]) -> RunConfig:
    """Build a RunConfig from already-typed values (library-side entry)."""
    command = pairs.get("command")
    if command not in COMMANDS:
        raise ConfigError(f"unknown command {command!r}")
    config = RunConfig(command, tuple(sorted(pairs.items())))
    text = serialize_config(config)
    return parse_config(text)
