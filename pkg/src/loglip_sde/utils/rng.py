"""Counter-based random streams keyed by the seed lineage.

Every stream is a Philox generator whose key is a hash of ``(seed, trial, level, tag)``.
The numbers a trial consumes therefore depend only on its key and their position in the
stream, never on the order in which trials are scheduled.
"""

import hashlib

import numpy as np


def stream_key(seed: int, trial: int = 0, level: int = 0, tag: str = "") -> int:
    """128-bit Philox key for a seed lineage."""
    digest = hashlib.blake2b(
        f"{int(seed)}:{int(trial)}:{int(level)}:{tag}".encode(), digest_size=16
    ).digest()
    return int.from_bytes(digest, "little")


def generator(seed: int, trial: int = 0, level: int = 0, tag: str = "") -> np.random.Generator:
    """Generator for one stream of the lineage."""
    return np.random.Generator(np.random.Philox(key=stream_key(seed, trial, level, tag)))
