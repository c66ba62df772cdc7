"""Flat ``key = value`` config files and their JSON equivalent."""
from __future__ import annotations

import json
import math
from pathlib import Path


class ConfigError(ValueError):
    pass


def fmt(value) -> str:
    """CSV cell: 9 significant digits, ``inf``/``nan`` spelled out, no negative zero."""
    if isinstance(value, bool):
        return "1" if value else "0"
    v = float(value)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return format(v + 0.0, ".9g")


def parse_number(text: str, where: str = "") -> float:
    t = text.strip().lower()
    if t in ("inf", "+inf", "infinity", "unbounded"):
        return math.inf
    try:
        return float(t)
    except ValueError:
        raise ConfigError(f"{where}: expected a number, got {text!r}") from None


def parse_keyvalue(text: str, source: str = "<config>") -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment.  Values stay strings."""
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigError(f"{source}:{lineno}: empty key")
        if key in out:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}")
        out[key] = value
    return out


def load_config(path: str | Path) -> tuple[dict, str]:
    """Read a config file, returning ``(mapping, kind)`` with kind ``'json'`` or ``'kv'``."""
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {str(p)!r}: {exc.strerror or exc}") from None
    if p.suffix.lower() == ".json" or text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{p}:{exc.lineno}: invalid JSON ({exc.msg})") from None
        if not isinstance(data, dict):
            raise ConfigError(f"{p}: top level must be an object")
        return data, "json"
    return parse_keyvalue(text, str(p)), "kv"
