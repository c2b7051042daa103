"""Symbol-count compositions (types) of fixed-length sequences."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence


class CompositionError(ValueError):
    """A sequence does not carry the symbol counts its codec requires."""


@dataclass(frozen=True)
class Composition:
    """Occurrence counts of each alphabet symbol in a length-n block.

    ``counts[i]`` is how often ``alphabet[i]`` occurs; the alphabet defaults
    to the 1-based symbol indices.  All counts are nonnegative and their sum
    is the block length n.
    """

    counts: tuple[int, ...]
    amplitudes: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
        if not self.counts:
            raise ValueError("composition needs at least one symbol")
        if any(c < 0 for c in self.counts):
            raise ValueError("counts must be nonnegative")
        if self.amplitudes is not None:
            amps = tuple(self.amplitudes)
            if len(amps) != len(self.counts):
                raise ValueError("alphabet size must match number of counts")
            if len(set(amps)) != len(amps):
                raise ValueError("alphabet symbols must be distinct")
            object.__setattr__(self, "amplitudes", amps)

    @property
    def n(self) -> int:
        return sum(self.counts)

    @property
    def m(self) -> int:
        return len(self.counts)

    @property
    def alphabet(self) -> tuple:
        if self.amplitudes is not None:
            return self.amplitudes
        return tuple(range(1, self.m + 1))

    def probabilities(self) -> tuple[float, ...]:
        n = self.n
        return tuple(c / n for c in self.counts)

    def entropy_bits(self) -> float:
        """Entropy in bits/symbol of the empirical distribution counts/n."""
        n = self.n
        return -sum(c / n * math.log2(c / n) for c in self.counts if c)

    def counts_of(self, sequence: Iterable) -> tuple[int, ...]:
        """Occurrence counts of this alphabet within ``sequence``."""
        index = {sym: i for i, sym in enumerate(self.alphabet)}
        got = [0] * self.m
        length = 0
        for sym in sequence:
            length += 1
            try:
                got[index[sym]] += 1
            except KeyError:
                raise CompositionError(f"symbol {sym!r} not in alphabet") from None
        if length != self.n:
            raise CompositionError(f"sequence length {length}, expected {self.n}")
        return tuple(got)

    def check_sequence(self, sequence: Sequence) -> None:
        """Raise CompositionError unless ``sequence`` realises these counts."""
        got = self.counts_of(sequence)
        if got != self.counts:
            raise CompositionError(f"sequence composition {got} != {self.counts}")
