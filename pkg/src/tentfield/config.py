from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, replace
from pathlib import Path
from typing import Any, Callable

from platformdirs import user_config_path

DEFAULT_MAX_PN = 2**20
DEFAULT_FORMAT = "text"
DEFAULT_SAMPLES = 1000
OUTPUT_FORMATS = ("csv", "json", "svg", "text")


@dataclass(frozen=True)
class Config:
    max_pn: int = DEFAULT_MAX_PN  # desk-scale cap on p**n, enforced by the CLI only
    default_format: str = DEFAULT_FORMAT
    element_symbol: str = "a"  # rendering symbol for the primitive element
    samples: int = DEFAULT_SAMPLES


def config_path(path_override: str | Path | None = None) -> Path:
    if path_override is not None:
        return Path(path_override).expanduser()
    if env := os.getenv("TENTFIELD_CONFIG_PATH"):
        return Path(env).expanduser()
    return user_config_path("tentfield") / "config.json"


def _is_int_at_least(value: Any, minimum: int) -> bool:
    return isinstance(value, int) and not isinstance(value, bool) and value >= minimum


# A field that fails its check falls back to its default; the other fields are kept.
_FIELD_CHECKS: dict[str, Callable[[Any], bool]] = {
    "max_pn": lambda v: _is_int_at_least(v, 2),
    "default_format": lambda v: isinstance(v, str) and v in OUTPUT_FORMATS,
    "element_symbol": lambda v: isinstance(v, str) and bool(v.strip()),
    "samples": lambda v: _is_int_at_least(v, 1),
}


def load_config(path_override: str | Path | None = None) -> Config:
    path = config_path(path_override)
    if not path.exists():
        return Config()

    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError):
        return Config()
    if not isinstance(raw, dict):
        return Config()

    valid: dict[str, Any] = {k: v for k, v in raw.items() if k in _FIELD_CHECKS and _FIELD_CHECKS[k](v)}
    return Config(**valid)


def apply_env(cfg: Config) -> Config:
    # Env overrides the config file; CLI flags override both (see cli._settings).
    raw = os.getenv("TENTFIELD_MAX_PN")
    if raw is None or not raw.strip():
        return cfg
    try:
        max_pn = int(raw.strip())
    except ValueError:
        return cfg
    if max_pn < 2:
        return cfg
    return replace(cfg, max_pn=max_pn)


def save_config(cfg: Config, path_override: str | Path | None = None) -> Path:
    path = config_path(path_override)
    path.parent.mkdir(parents=True, exist_ok=True)

    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(asdict(cfg), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    tmp.replace(path)
    return path
