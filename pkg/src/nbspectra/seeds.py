"""Reproducible seeding: a 64-bit master seed plus stable per-trial derivation.

Trial seeds are derived with a keyed hash rather than Python's builtin
``hash`` (which is salted per process) so that (master, i) -> seed_i is
identical across runs, platforms, and interpreter versions.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

_U64 = (1 << 64) - 1


def stable_hash(master: int, trial: int) -> int:
    """Map (master, trial) to a 64-bit unsigned integer, stably."""
    h = hashlib.blake2b(digest_size=8)
    h.update((master & _U64).to_bytes(8, "little"))
    h.update((trial & _U64).to_bytes(8, "little"))
    return int.from_bytes(h.digest(), "little")


@dataclass(frozen=True)
class Seed:
    """Master seed for one sampling call; derive trial seeds via :meth:`trial`."""

    master: int

    def __post_init__(self) -> None:
        if not 0 <= self.master <= _U64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.master}")

    def trial(self, i: int) -> "Seed":
        """Seed for the i-th independent trial under this master seed."""
        return Seed(stable_hash(self.master, i))

    def generator(self) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64(self.master))


def as_seed(seed: "int | Seed") -> Seed:
    return seed if isinstance(seed, Seed) else Seed(int(seed))
