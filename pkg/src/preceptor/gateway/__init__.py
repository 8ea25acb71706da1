"""Unified entry point: HTTP/WebSocket API and command-line tools."""

from .app import build_supervisor, create_app, create_app_from_config, load_rule_base
from .cli import main, read_transcript
from .config import GatewayConfig, resolve_config

__all__ = [
    "GatewayConfig",
    "build_supervisor",
    "create_app",
    "create_app_from_config",
    "load_rule_base",
    "main",
    "read_transcript",
    "resolve_config",
]
