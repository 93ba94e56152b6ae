"""Reference-order balancing for preference pairs."""

from __future__ import annotations

import random
from dataclasses import replace

from wqbench.corpus.types import PreferencePair

SWAP_SUFFIX = ":rev"


class AlreadyBalancedError(ValueError):
    """Duplicate-mode input already contains both orders of every pair."""


def swap_pair(pair: PreferencePair) -> PreferencePair:
    """Swap response order and remap the label; an involution (id-suffix toggles)."""
    new_id = (
        pair.id[: -len(SWAP_SUFFIX)]
        if pair.id.endswith(SWAP_SUFFIX)
        else pair.id + SWAP_SUFFIX
    )
    return replace(
        pair,
        id=new_id,
        response_1=pair.response_2,
        response_2=pair.response_1,
        gold_label=3 - pair.gold_label,
    )


def _order_key(pair: PreferencePair) -> tuple:
    return (pair.response_1.id, pair.response_2.id, pair.gold_label)


def balance_orders(
    pairs: list[PreferencePair], mode: str, seed: int = 0
) -> list[PreferencePair]:
    """Balance which response appears first across a pair list.

    duplicate: emit each pair in both orders (2x size). Input that already
    contains the mirrored order of every pair is flagged as pre-duplicated
    instead of being doubled again.

    shuffle-balance: keep one order per pair (same size) but swap a
    seed-chosen subset so the two labels differ in count by at most one.
    """
    if not pairs:
        raise ValueError("balance_orders requires a non-empty pair list")

    if mode == "duplicate":
        keys = {_order_key(p) for p in pairs}
        mirrored = {
            (p.response_2.id, p.response_1.id, 3 - p.gold_label) for p in pairs
        }
        if keys == mirrored:
            raise AlreadyBalancedError(
                "input already contains both orders of every pair"
            )
        out = []
        for pair in pairs:
            out.append(pair)
            out.append(swap_pair(pair))
        return out

    if mode == "shuffle-balance":
        rng = random.Random(seed)
        indices = list(range(len(pairs)))
        rng.shuffle(indices)
        n_label_1 = (len(pairs) + 1) // 2
        target = {}
        for rank, idx in enumerate(indices):
            target[idx] = 1 if rank < n_label_1 else 2
        return [
            pair if pair.gold_label == target[i] else swap_pair(pair)
            for i, pair in enumerate(pairs)
        ]

    raise ValueError(f"unknown balance mode: {mode!r}")
