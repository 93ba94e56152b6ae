"""HTTP clients for remote scorer services.

Wire protocol: POST {endpoint}/score with {"instruction", "response"} ->
{"score": decimal}; POST {endpoint}/judge with {"instruction",
"response_1", "response_2"} -> {"preference": "1"|"2"}. Timeout and auth
token come from WQBENCH_REMOTE_TIMEOUT (seconds) and WQBENCH_REMOTE_TOKEN.
"""

from __future__ import annotations

import os
import time

import httpx

from wqbench._http import post_json
from wqbench.corpus.types import PreferencePair
from wqbench.scoring.scorers import Scorer
from wqbench.scoring.types import (
    ProtocolViolationError,
    ScoreResult,
    ScorerSpec,
)


def make_client(endpoint: str) -> httpx.Client:
    timeout = float(os.environ.get("WQBENCH_REMOTE_TIMEOUT", "30"))
    headers = {}
    token = os.environ.get("WQBENCH_REMOTE_TOKEN")
    if token:
        headers["Authorization"] = f"Bearer {token}"
    return httpx.Client(base_url=endpoint, timeout=timeout, headers=headers)


class RemoteScalarScorer(Scorer):
    def __init__(self, spec: ScorerSpec):
        super().__init__(spec)
        self._client = make_client(spec.endpoint)

    def score(self, instruction: str, response: str) -> ScoreResult:
        self.n_backend_calls += 1
        start = time.monotonic()
        payload = post_json(
            self._client, "/score", {"instruction": instruction, "response": response}
        )
        latency_ms = int((time.monotonic() - start) * 1000)
        try:
            value = float(payload["score"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ProtocolViolationError(f"malformed score payload: {payload!r}") from exc
        if not 1.0 <= value <= 10.0:
            raise ProtocolViolationError(f"score {value} outside [1, 10]")
        return ScoreResult(score=value, scorer_id=self.scorer_id, latency_ms=latency_ms)


class RemotePairwiseScorer(Scorer):
    scalar_capable = False
    pairwise_capable = True

    def __init__(self, spec: ScorerSpec):
        super().__init__(spec)
        self._client = make_client(spec.endpoint)

    def judge_native(self, pair: PreferencePair) -> int:
        self.n_backend_calls += 1
        payload = post_json(
            self._client,
            "/judge",
            {
                "instruction": pair.instruction,
                "response_1": pair.response_1.response,
                "response_2": pair.response_2.response,
            },
        )
        preference = payload.get("preference")
        if preference not in ("1", "2"):
            raise ProtocolViolationError(f"malformed judge payload: {payload!r}")
        return int(preference)
