"""Prompt builders backed by the golden templates in wqbench/templates/."""

from __future__ import annotations

import json
import math

from wqbench._templates import fill, load


def build_p_messages(paragraph_1: str, paragraph_2: str) -> tuple[str, str]:
    """System and user texts for a pairwise comparison prompt."""
    system = load("p_system.txt")
    user = fill(load("p_user.txt"), paragraph_1=paragraph_1, paragraph_2=paragraph_2)
    return system, user


def build_r_messages(paragraph: str) -> tuple[str, str]:
    """System and user texts for a scalar scoring prompt."""
    system = load("r_system.txt")
    user = fill(load("r_user.txt"), paragraph=paragraph)
    return system, user


def p_completion(label: int) -> str:
    if label not in (1, 2):
        raise ValueError(f"preference label must be 1 or 2, got {label}")
    return json.dumps({"preference": str(label)})


def round_score(score: float) -> int:
    """Nearest integer, ties rounding half away from zero (scores are positive)."""
    if not 1.0 <= score <= 10.0:
        raise ValueError(f"score {score} outside [1, 10]")
    return int(math.floor(score + 0.5))


def r_completion(score: float) -> str:
    return json.dumps({"score": str(round_score(score))})


def build_mirror_prompt(n_words: int, author: str, voice: str, plot: str) -> str:
    """Instantiate the synthetic-mirror generation prompt."""
    if n_words <= 0:
        raise ValueError("n_words must be positive")
    for name, value in (("author", author), ("voice", voice), ("plot", plot)):
        if not value:
            raise ValueError(f"{name} must be non-empty")
    return fill(
        load("mirror_prompt.txt"),
        n_words=str(n_words),
        author=author,
        voice=voice,
        plot=plot,
    )
