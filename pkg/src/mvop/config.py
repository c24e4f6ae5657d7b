"""Key-value config files describing a weight and run parameters.

The format is one `key = value` pair per line, with `#` comments and
blank lines ignored.  Keys are case-insensitive.  Vector values are
whitespace or comma separated; matrices are given row-major with `;`
between rows.

Keys:
    family   one of scalar, hermite, pearson, freud, custom
    v        potential coefficients, constant first (scalar, custom)
    alpha    ladder vector (hermite) or scalar parameter (freud)
    beta     scalar parameter (freud)
    t        deformation parameter (freud), default 0
    N        matrix dimension (pearson, freud, custom)
    a        entries of A, row-major with `;` rows (custom)
    n_max    default truncation degree for commands, optional
"""

from __future__ import annotations

import numpy as np

from .weights import (ExponentialWeight, freud_weight, hermite_alpha_weight,
                      pearson_hermite_weight, scalar_weight)

__all__ = ["ConfigError", "parse_config", "load_config",
           "weight_from_config", "config_n_max"]

FAMILIES = ("scalar", "hermite", "pearson", "freud", "custom")


class ConfigError(Exception):
    """Malformed or incomplete configuration."""


def parse_config(text: str) -> dict:
    """Parse `key = value` lines into a string-valued dict."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        key = key.strip().lower()
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        if key in out:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        out[key] = value.strip()
    return out


def load_config(path) -> dict:
    try:
        with open(path) as fh:
            return parse_config(fh.read())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc


def _require(cfg: dict, key: str, family: str) -> str:
    if key not in cfg or not cfg[key]:
        raise ConfigError(f"family {family!r} requires the key {key!r}")
    return cfg[key]


def _floats(value: str, key: str) -> np.ndarray:
    try:
        return np.array([float(tok) for tok in value.replace(",", " ").split()])
    except ValueError as exc:
        raise ConfigError(f"key {key!r}: {exc}") from exc


def _float(value: str, key: str) -> float:
    try:
        return float(value)
    except ValueError as exc:
        raise ConfigError(f"key {key!r}: {exc}") from exc


def _int(value: str, key: str) -> int:
    try:
        return int(value)
    except ValueError as exc:
        raise ConfigError(f"key {key!r}: {exc}") from exc


def _matrix(value: str, key: str, dim: int) -> np.ndarray:
    rows = [_floats(row, key) for row in value.split(";")]
    if len(rows) != dim or any(r.size != dim for r in rows):
        raise ConfigError(f"key {key!r}: expected {dim} rows of {dim} entries")
    return np.array(rows)


def weight_from_config(cfg: dict) -> ExponentialWeight:
    """Build the weight a parsed config describes."""
    family = _require(cfg, "family", "<any>").lower()
    if family not in FAMILIES:
        raise ConfigError(f"unknown family {cfg['family']!r}, "
                          f"expected one of {', '.join(FAMILIES)}")
    try:
        if family == "scalar":
            return scalar_weight(_floats(_require(cfg, "v", family), "v"))
        if family == "hermite":
            return hermite_alpha_weight(_floats(_require(cfg, "alpha", family), "alpha"))
        if family == "pearson":
            return pearson_hermite_weight(_int(_require(cfg, "n", family), "N"))
        if family == "freud":
            return freud_weight(
                _int(_require(cfg, "n", family), "N"),
                _float(_require(cfg, "alpha", family), "alpha"),
                _float(_require(cfg, "beta", family), "beta"),
                _float(cfg.get("t", "0"), "t"))
        dim = _int(_require(cfg, "n", family), "N")
        return ExponentialWeight(
            _floats(_require(cfg, "v", family), "v"),
            _matrix(_require(cfg, "a", family), "a", dim),
            meta={"family": "custom"})
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def config_n_max(cfg: dict, override: int | None, default: int = 8) -> int:
    if override is not None:
        return override
    if "n_max" in cfg:
        return _int(cfg["n_max"], "n_max")
    return default
