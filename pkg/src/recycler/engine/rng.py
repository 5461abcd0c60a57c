"""
Providing the seeded random source.

Streams come from numpy's PCG64 bit generator seeded through `SeedSequence`. Run `i`
of a multi-run job uses `SeedSequence(entropy=seed, spawn_key=(i,))`, so any run can
be replayed in isolation. Ports to other runtimes may reproduce these streams or
substitute their own; only distributions are compared across ports.
"""

from typing import Self

import numpy as np

SEED_BITS = 64


class RandomSource:
    """
    Read-once source of uniform draws.

    Draws are consumed as they are produced; nothing is buffered or replayable.
    """

    seed: int
    """
    The 64-bit seed.
    """

    spawn_key: tuple[int, ...]
    """
    Stream-split path below `seed`.
    """

    _generator: np.random.Generator

    def __init__(self, seed: int, spawn_key: tuple[int, ...] = ()) -> None:
        """
        Initialize the source.

        Args:
            seed (int): A seed in [0, 2^64).
            spawn_key (tuple[int, ...], optional): Stream-split path. Defaults to the root stream.
        """

        if not 0 <= seed < 1 << SEED_BITS:
            raise ValueError(f"Seed '{seed}' should fit in {SEED_BITS} unsigned bits.")

        self.seed = seed
        self.spawn_key = spawn_key

        sequence = np.random.SeedSequence(entropy=seed, spawn_key=spawn_key)
        self._generator = np.random.Generator(np.random.PCG64(sequence))

    def spawn(self, index: int) -> Self:
        """
        Independent child stream number `index`.

        Args:
            index (int): The child number (value >= 0).

        Returns:
            Self: A new source whose stream depends only on (seed, spawn_key, index).
        """

        if index < 0:
            raise ValueError(f"Stream index '{index}' should not be negative.")

        return type(self)(self.seed, (*self.spawn_key, index))

    def uniform(self) -> float:
        """
        A draw from [0, 1).
        """

        return float(self._generator.random())

    def uniform_int(self, k: int) -> int:
        """
        A draw from {0, ..., k-1}, exactly uniform.
        """

        if k < 1:
            raise ValueError(f"Range size '{k}' should be a positive value.")

        return int(self._generator.integers(k))

    def bernoulli(self, p: float) -> bool:
        """
        True with probability `p`.
        """

        return self.uniform() < p
