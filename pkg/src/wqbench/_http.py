"""Shared HTTP POST-with-retries used by remote scorer and generator clients.

Policy: 3 attempts with exponential backoff starting at 250 ms. 5xx and
transport errors retry; any other non-200 status is a protocol violation.
"""

from __future__ import annotations

import time

import httpx

from wqbench.scoring.types import ProtocolViolationError, RetryExhaustedError

MAX_ATTEMPTS = 3
BACKOFF_START_S = 0.25


def post_json(client: httpx.Client, path: str, body: dict) -> dict:
    last_error: Exception | None = None
    for attempt in range(MAX_ATTEMPTS):
        if attempt:
            time.sleep(BACKOFF_START_S * 2 ** (attempt - 1))
        try:
            response = client.post(path, json=body)
        except httpx.HTTPError as exc:
            last_error = exc
            continue
        if response.status_code >= 500:
            last_error = ProtocolViolationError(f"server error {response.status_code}")
            continue
        if response.status_code != 200:
            raise ProtocolViolationError(
                f"unexpected status {response.status_code}: {response.text[:200]}"
            )
        try:
            return response.json()
        except ValueError as exc:
            raise ProtocolViolationError(f"non-JSON response: {exc}") from exc
    raise RetryExhaustedError(
        f"{MAX_ATTEMPTS} attempts to {path} failed; last error: {last_error}"
    )
