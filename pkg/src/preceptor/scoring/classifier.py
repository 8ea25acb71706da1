"""HTTP client for an external scoring classifier, with a circuit breaker.

The wire contract: POST {base}/score with a JSON body naming the session,
event text, target agent, context excerpt, and requested criteria; the
response carries {"scores": {criterion: number, ...}}. Any transport error,
timeout, or malformed body counts as a failure; after a run of consecutive
failures the breaker opens and the client stands down for a cool-down.
"""

from __future__ import annotations

import logging
import threading
import time
from dataclasses import dataclass, field
from typing import Callable

import httpx

from ..types import CRITERIA

logger = logging.getLogger(__name__)

DEFAULT_TIMEOUT_MS = 2000
DEFAULT_BREAKER_THRESHOLD = 3
DEFAULT_COOLDOWN_S = 60.0


@dataclass(frozen=True)
class ClassifierConfig:
    url: str
    timeout_ms: int = DEFAULT_TIMEOUT_MS
    breaker_threshold: int = DEFAULT_BREAKER_THRESHOLD
    cooldown_s: float = DEFAULT_COOLDOWN_S


@dataclass(frozen=True)
class ClassifierRequest:
    session_id: str
    text: str
    target_agent: str
    context: tuple[str, ...] = ()
    criteria: tuple[str, ...] = CRITERIA

    def as_json(self) -> dict:
        return {
            "session_id": self.session_id,
            "text": self.text,
            "target_agent": self.target_agent,
            "context": list(self.context),
            "criteria": list(self.criteria),
        }


@dataclass(frozen=True)
class ClassifierResponse:
    scores: dict[str, float]
    labels: dict[str, str] = field(default_factory=dict)
    latency_s: float = 0.0


class ExternalClassifier:
    """Thread-safe scoring client; ``score`` returns None on any failure."""

    def __init__(
        self,
        config: ClassifierConfig,
        *,
        transport: httpx.BaseTransport | None = None,
        clock: Callable[[], float] = time.monotonic,
    ):
        self._config = config
        self._clock = clock
        self._lock = threading.Lock()
        self._consecutive_failures = 0
        self._opened_at: float | None = None
        self._client = httpx.Client(
            base_url=config.url.rstrip("/"),
            timeout=config.timeout_ms / 1000.0,
            transport=transport,
        )

    @property
    def config(self) -> ClassifierConfig:
        return self._config

    def available(self) -> bool:
        """False while the breaker is open and the cool-down has not elapsed."""
        with self._lock:
            if self._opened_at is None:
                return True
            if self._clock() - self._opened_at >= self._config.cooldown_s:
                # Half-open: let the next request probe the endpoint.
                self._opened_at = None
                self._consecutive_failures = 0
                return True
            return False

    def score(self, request: ClassifierRequest) -> ClassifierResponse | None:
        if not self.available():
            return None
        started = self._clock()
        try:
            response = self._client.post("/score", json=request.as_json())
            response.raise_for_status()
            body = response.json()
            scores = self._parse_scores(body)
        except (httpx.HTTPError, ValueError, TypeError, KeyError) as exc:
            logger.warning("classifier request failed: %s", exc)
            self._record_failure()
            return None
        self._record_success()
        labels = body.get("labels") if isinstance(body.get("labels"), dict) else {}
        return ClassifierResponse(
            scores=scores, labels=labels, latency_s=self._clock() - started
        )

    def _parse_scores(self, body: dict) -> dict[str, float]:
        raw = body["scores"]
        if not isinstance(raw, dict):
            raise TypeError("scores must be an object")
        scores: dict[str, float] = {}
        for criterion in CRITERIA:
            value = raw[criterion]
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise TypeError(f"score for {criterion} must be a number")
            clamped = min(1.0, max(0.0, float(value)))
            if clamped != value:
                logger.warning(
                    "classifier returned %s=%s, clamped to %s", criterion, value, clamped
                )
            scores[criterion] = clamped
        return scores

    def _record_failure(self) -> None:
        with self._lock:
            self._consecutive_failures += 1
            if self._consecutive_failures >= self._config.breaker_threshold:
                self._opened_at = self._clock()
                logger.warning(
                    "classifier breaker opened after %d consecutive failures",
                    self._consecutive_failures,
                )

    def _record_success(self) -> None:
        with self._lock:
            self._consecutive_failures = 0
            self._opened_at = None

    def close(self) -> None:
        self._client.close()
