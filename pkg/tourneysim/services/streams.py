from __future__ import annotations

import hashlib

import numpy as np


def _tag_key(tag: str) -> int:
    """64-bit key of a configuration tag."""
    return int.from_bytes(hashlib.blake2b(tag.encode("utf-8"), digest_size=8).digest(), "little")


def derive_stream(
    master_seed: int,
    config_tag: str,
    draw_index: int,
    scenario_index: int,
) -> np.random.Generator:
    """Independent random stream for one (configuration, draw, scenario) cell.

    The tuple is folded into a SeedSequence spawn key, so streams depend only
    on the tuple and never on the order in which cells are computed.

    Raises:
        ValueError: If the seed or an index is negative
    """
    if master_seed < 0 or draw_index < 0 or scenario_index < 0:
        raise ValueError("seed and indices must be non-negative")
    seq = np.random.SeedSequence(
        entropy=master_seed,
        spawn_key=(_tag_key(config_tag), draw_index, scenario_index),
    )
    return np.random.Generator(np.random.PCG64(seq))


def draw_stream(master_seed: int, config_tag: str, draw_index: int) -> np.random.Generator:
    """Stream used to sample the draw itself."""
    return derive_stream(master_seed, f"{config_tag}:draw", draw_index, 0)
