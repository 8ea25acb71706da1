"""Gateway configuration with flags > environment > config file precedence."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Any, Mapping

ENV_PREFIX = "PRECEPTOR_"


@dataclass(frozen=True)
class GatewayConfig:
    data_dir: str = "data"
    rules_path: str | None = None
    scenarios_dir: str | None = None
    classifier_url: str | None = None
    classifier_timeout_ms: int = 2000
    classifier_breaker_threshold: int = 3
    classifier_cooldown_s: float = 60.0
    hint_cooldown_s: float | None = None
    host: str = "127.0.0.1"
    port: int = 8000


_COERCERS = {int: int, float: float, str: str}


def _coerce(name: str, value: Any, annotation: str) -> Any:
    if value is None:
        return None
    if "int" in annotation:
        return int(value)
    if "float" in annotation:
        return float(value)
    return str(value)


def resolve_config(
    flags: Mapping[str, Any] | None = None,
    env: Mapping[str, str] | None = None,
    config_file: str | Path | None = None,
) -> GatewayConfig:
    """Merge defaults, config file, environment, and flags, in that order."""
    env = os.environ if env is None else env
    merged: dict[str, Any] = {}

    if config_file:
        doc = json.loads(Path(config_file).read_text(encoding="utf-8"))
        if not isinstance(doc, dict):
            raise ValueError("config file must contain a JSON object")
        merged.update(doc)

    for f in fields(GatewayConfig):
        env_key = ENV_PREFIX + f.name.upper()
        if env_key in env:
            merged[f.name] = env[env_key]

    if flags:
        for name, value in flags.items():
            if value is not None:
                merged[name] = value

    known = {f.name: f for f in fields(GatewayConfig)}
    kwargs = {}
    for name, value in merged.items():
        if name not in known:
            continue
        kwargs[name] = _coerce(name, value, str(known[name].type))
    return GatewayConfig(**kwargs)
