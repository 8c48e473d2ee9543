"""Flat ``key = value`` experiment configs.

One key per line, ``#`` starts a comment, list values are comma separated::

    packet = constant, cosine-bridge
    a = -1
    b = 1
    n = 2
    t = 0.05
    x_start = 10
    x_end = 20
    n_x = 201
"""

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

KEYS = ("packet", "a", "b", "amplitude", "n", "k_modes", "xi", "t", "x_start", "x_end", "n_x",
        "method", "mode", "order", "output", "samples")


class ConfigError(ValueError):
    def __init__(self, key, message):
        self.key = key
        super().__init__(f"config key {key!r}: {message}")


@dataclass
class ExperimentConfig:
    raw: dict = field(default_factory=dict)
    base_dir: Path = Path(".")

    def has(self, key):
        return key in self.raw

    def text(self, key, default=None):
        if key not in self.raw:
            if default is None:
                raise ConfigError(key, "missing")
            return default
        return self.raw[key]

    def texts(self, key, default=None):
        return [s.strip() for s in self.text(key, default).split(",") if s.strip()]

    def floats(self, key, default=None):
        try:
            vals = [float(s) for s in self.texts(key, default)]
        except ValueError:
            raise ConfigError(key, "expected number(s)") from None
        if any(math.isnan(v) for v in vals):
            raise ConfigError(key, "NaN not allowed")
        return vals

    def number(self, key, default=None):
        vals = self.floats(key, None if default is None else repr(default))
        if len(vals) != 1:
            raise ConfigError(key, "expected a single number")
        return vals[0]

    def ints(self, key, default=None):
        try:
            return [int(s) for s in self.texts(key, default)]
        except ValueError:
            raise ConfigError(key, "expected integer(s)") from None

    def times(self):
        if "t" not in self.raw or not self.texts("t", ""):
            raise ConfigError("t", "at least one time is required")
        ts = self.floats("t")
        if any(not (v > 0) or math.isinf(v) for v in ts):
            raise ConfigError("t", "all times must be finite and > 0")
        return ts

    def grid(self):
        x0 = self.number("x_start")
        x1 = self.number("x_end")
        n = self.ints("n_x")
        if len(n) != 1 or n[0] < 2:
            raise ConfigError("n_x", "need a single integer >= 2")
        if not (math.isfinite(x0) and math.isfinite(x1)) or not x1 > x0:
            raise ConfigError("x_end", "grid must be strictly increasing (x_end > x_start)")
        return np.linspace(x0, x1, n[0])

    def modes(self):
        """``k_modes = coef@k; coef@k`` with ``coef`` any Python complex literal."""
        out = []
        for item in self.text("k_modes").split(";"):
            item = item.strip()
            if not item:
                continue
            try:
                c, k = item.split("@")
                out.append((complex(c.strip().replace(" ", "")), float(k)))
            except ValueError:
                raise ConfigError("k_modes", f"cannot parse mode {item!r} (use coef@k)") from None
        return out

    def path(self, key):
        p = Path(self.text(key))
        return p if p.is_absolute() else self.base_dir / p


def parse_config(text, base_dir="."):
    raw = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(line, f"line {lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in KEYS:
            raise ConfigError(key, f"line {lineno}: unknown key (known: {', '.join(KEYS)})")
        if key in raw:
            raise ConfigError(key, f"line {lineno}: duplicate key")
        raw[key] = value
    return ExperimentConfig(raw, Path(base_dir))


def load_config(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError("config", f"cannot read {path}: {exc.strerror}") from None
    return parse_config(text, path.parent)
