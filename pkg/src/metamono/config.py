"""Run configuration: defaults layered under file, environment, flags.

Config files are plain ``key=value`` lines ('#' comments allowed); the
same keys can come from the environment with the METAMONO_ prefix,
dots replaced by an underscore (METAMONO_QUAD_NR sets quad.nr), and
from CLI flags, in increasing priority.
"""

import os
from dataclasses import dataclass, field

from .errors import ConfigurationError

ENV_PREFIX = "METAMONO_"

DEFAULT_TOLERANCES = {
    "bessel_recurrence": 1e-11,
    "bessel_zero": 1e-12,
    "kernel_ratio_band": 0.2,
    "kernel_abs": 1e-5,
    "orthogonality": 1e-8,
    "norm_rel": 1e-8,
    "norm_pair": 1e-10,
    "cross_abs": 1e-8,
    "completeness_rel": 1e-3,
    "gram_schmidt": 1e-8,
    "evolution_dirac": 1e-5,
    "evolution_derivative": 1e-8,
    "evolution_wave": 5e-5,
    "negative_control": 1e-2,
    "symmetry": 1e-10,
}

_INT_KEYS = {
    "quad.nr": "quad_nr",
    "quad.ntheta": "quad_ntheta",
    "bessel.n_max": "bessel_n_max",
    "bessel.m_max": "bessel_m_max",
}
_FLOAT_KEYS = {"fd.h1": "fd_h1", "fd.h2": "fd_h2"}
_STR_KEYS = {"out.dir": "out_dir"}


@dataclass
class RunConfig:
    quad_nr: int = 200
    quad_ntheta: int = 256
    bessel_n_max: int = 32
    bessel_m_max: int = 64
    fd_h1: float = 1e-4
    fd_h2: float = 1e-3
    out_dir: str = "."
    tol: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))

    def validate(self):
        if self.quad_nr < 2:
            raise ConfigurationError("quad.nr must be >= 2")
        if self.quad_ntheta < 4:
            raise ConfigurationError("quad.ntheta must be >= 4")
        if not 0 <= self.bessel_n_max <= 64:
            raise ConfigurationError("bessel.n_max must be in [0, 64]")
        if self.bessel_m_max < 1:
            raise ConfigurationError("bessel.m_max must be >= 1")
        if not self.fd_h1 > 0.0 or not self.fd_h2 > 0.0:
            raise ConfigurationError("finite-difference steps must be positive")
        for name, value in self.tol.items():
            if name not in DEFAULT_TOLERANCES:
                raise ConfigurationError("unknown tolerance %r" % name)
            if not value >= 1e-14:
                raise ConfigurationError(
                    "tolerance %s=%g below the 1e-14 floor" % (name, value)
                )
        return self

    def as_key_values(self):
        """The flat key -> value view used for reports and echoing."""
        out = {}
        for key, attr in {**_INT_KEYS, **_FLOAT_KEYS, **_STR_KEYS}.items():
            out[key] = getattr(self, attr)
        for name, value in sorted(self.tol.items()):
            out["tol." + name] = value
        return out


def parse_config_text(text, source="<config>"):
    """key=value lines to a flat dict of strings."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(
                "%s:%d: expected key=value, got %r" % (source, lineno, raw.strip())
            )
        key, _, value = line.partition("=")
        out[key.strip()] = value.strip()
    return out


def _env_pairs(environ):
    for name, value in environ.items():
        if not name.startswith(ENV_PREFIX):
            continue
        tail = name[len(ENV_PREFIX):].lower()
        if "_" not in tail:
            raise ConfigurationError("malformed override variable %s" % name)
        head, _, rest = tail.partition("_")
        yield head + "." + rest, value


def _apply(cfg_kwargs, tol, key, value, source):
    try:
        if key in _INT_KEYS:
            cfg_kwargs[_INT_KEYS[key]] = int(value)
        elif key in _FLOAT_KEYS:
            cfg_kwargs[_FLOAT_KEYS[key]] = float(value)
        elif key in _STR_KEYS:
            cfg_kwargs[_STR_KEYS[key]] = str(value)
        elif key.startswith("tol."):
            tol[key[4:]] = float(value)
        else:
            raise ConfigurationError("unknown config key %r (%s)" % (key, source))
    except ValueError:
        raise ConfigurationError(
            "bad value %r for config key %r (%s)" % (value, key, source)
        )


def load_config(path=None, environ=None, overrides=None):
    """Layer defaults < file < environment < explicit overrides."""
    cfg_kwargs = {}
    tol = dict(DEFAULT_TOLERANCES)
    if path is not None:
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigurationError("cannot read config %s: %s" % (path, exc))
        for key, value in parse_config_text(text, source=str(path)).items():
            _apply(cfg_kwargs, tol, key, value, str(path))
    environ = os.environ if environ is None else environ
    for key, value in _env_pairs(environ):
        _apply(cfg_kwargs, tol, key, value, "environment")
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        _apply(cfg_kwargs, tol, key, str(value), "flags")
    return RunConfig(tol=tol, **cfg_kwargs).validate()
