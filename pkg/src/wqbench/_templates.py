"""Loader for the golden prompt templates shipped under wqbench/templates/.

Placeholders like {paragraph_1} are substituted by literal token replacement,
never str.format, so the templates can contain raw JSON braces.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources


@lru_cache(maxsize=None)
def load(name: str) -> str:
    """Return the exact text of a template file (no stripping)."""
    return (
        resources.files("wqbench").joinpath("templates").joinpath(name).read_text("utf-8")
    )


def fill(template: str, **tokens: str) -> str:
    """Substitute {token} placeholders by literal replacement."""
    out = template
    for key, value in tokens.items():
        out = out.replace("{" + key + "}", value)
    return out
