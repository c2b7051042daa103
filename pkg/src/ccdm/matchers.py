"""Invertible fixed-length distribution matchers.

Two matchers live here.  ``BinaryCodec`` is the subset-ranking matcher for
two-symbol outputs: k uniform input bits are read as an integer rank, the
rank is unranked to the positions of the marked symbol, and demapping ranks
those positions back.  ``nb_enum_map``/``nb_enum_demap`` form a reference
nonbinary matcher that indexes all sequences of a composition in
lexicographic order; it is the oracle/baseline path, not a throughput path.

Mapping serialism is min(w, n - w): when the marked symbol fills more than
half the block the codec unranks the complementary positions instead and
relabels, which leaves the input-to-output bijection unchanged.  Demapping
uses the colex rank sum (directly, or through the reflection dual for lex
order), so it executes no data-dependent loop at all.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .composition import Composition, CompositionError
from .exactint import binomial, floor_log2_pow2, multinomial
from .subsetrank import (
    LoopCounts,
    Order,
    colex_rank,
    complement_subset,
    dual_subset,
    sequence_from_subset,
    subset_from_sequence,
    unrank_counted,
    validate_subset,
)

__all__ = [
    "BinaryCodec",
    "sr_map",
    "sr_demap",
    "nb_input_length",
    "nb_enum_map",
    "nb_enum_demap",
]


def bits_to_int(bits: str) -> int:
    """MSB-first bit string to integer; the empty string is 0."""
    if not bits:
        return 0
    if any(b not in "01" for b in bits):
        raise ValueError(f"not a bit string: {bits!r}")
    return int(bits, 2)


def int_to_bits(value: int, k: int) -> str:
    """Integer to MSB-first bit string of fixed length k."""
    if value < 0 or value >= 1 << max(k, 1):
        if not (k == 0 and value == 0):
            raise ValueError(f"value {value} does not fit in {k} bits")
    return format(value, f"0{k}b") if k else ""


@dataclass(frozen=True)
class BinaryCodec:
    """Fixed-length matcher between k-bit words and weight-w binary blocks.

    n: output block length.
    w: occurrences of the marked symbol (``symbols[0]``) in every output.
    order: subset order indexed by the input rank.
    symbols: (marked, other) output alphabet.
    """

    n: int
    w: int
    order: Order = "lex"
    symbols: tuple = ("1", "0")

    def __post_init__(self):
        if not 0 <= self.w <= self.n:
            raise ValueError(f"need 0 <= w <= n, got w={self.w}, n={self.n}")
        if self.order not in ("lex", "colex"):
            raise ValueError(f"unknown order: {self.order!r}")
        marked, other = self.symbols
        if marked == other:
            raise ValueError("the two output symbols must differ")

    @property
    def size(self) -> int:
        """Number of weight-w blocks, C(n, w)."""
        return binomial(self.n, self.w)

    @property
    def k(self) -> int:
        """Input length in bits: floor(log2 C(n, w))."""
        return floor_log2_pow2(self.size)

    @property
    def complement_active(self) -> bool:
        """True when unranking targets the other symbol's n - w positions."""
        return self.w > self.n - self.w

    # -- rank <-> marked positions ------------------------------------------

    def map_positions_counted(self, bits: str) -> tuple[tuple[int, ...], LoopCounts]:
        """Marked-symbol positions for an input word, plus loop counters."""
        if len(bits) != self.k:
            raise ValueError(f"input has {len(bits)} bits, codec expects {self.k}")
        r = bits_to_int(bits)
        if self.complement_active:
            # The complement bijection reverses either subset order, so the
            # mirrored rank keeps images aligned with the w-subset order.
            other, counts = unrank_counted(
                self.size - 1 - r, self.n, self.n - self.w, self.order
            )
            return complement_subset(other, self.n), counts
        subset, counts = unrank_counted(r, self.n, self.w, self.order)
        return subset, counts

    def map_positions(self, bits: str) -> tuple[int, ...]:
        return self.map_positions_counted(bits)[0]

    def demap_positions_counted(self, positions: Sequence[int]) -> tuple[str, LoopCounts]:
        """Input word whose image puts the marked symbol at ``positions``."""
        subset = validate_subset(positions, self.n)
        if len(subset) != self.w:
            raise CompositionError(
                f"sequence weight {len(subset)}, codec expects {self.w}"
            )
        if self.complement_active:
            subset = complement_subset(subset, self.n)
            mirrored = True
        else:
            mirrored = False
        # Loop-free ranking: colex is a direct sum, lex goes through the
        # reflection dual.  Both run len(subset) independent summands.
        if self.order == "colex":
            r = colex_rank(subset, self.n)
        else:
            r = self.size - 1 - colex_rank(dual_subset(subset, self.n), self.n)
        if mirrored:
            r = self.size - 1 - r
        if r >= 1 << self.k:
            raise ValueError(
                f"sequence rank {r} lies outside the {self.k}-bit codebook"
            )
        return int_to_bits(r, self.k), LoopCounts(serial=0, inner=len(subset))

    def demap_positions(self, positions: Sequence[int]) -> str:
        return self.demap_positions_counted(positions)[0]

    # -- bit word <-> symbol sequence ---------------------------------------

    def map_counted(self, bits: str):
        positions, counts = self.map_positions_counted(bits)
        return sequence_from_subset(positions, self.n, self.symbols), counts

    def map(self, bits: str):
        """Map a k-bit word to its length-n, weight-w output block."""
        return self.map_counted(bits)[0]

    def demap_counted(self, sequence):
        if len(sequence) != self.n:
            raise CompositionError(
                f"sequence length {len(sequence)}, codec expects {self.n}"
            )
        marked, other = self.symbols
        positions = subset_from_sequence(sequence, marked)
        others = sum(1 for sym in sequence if sym == other)
        if len(positions) + others != self.n:
            raise CompositionError("sequence contains symbols outside the alphabet")
        return self.demap_positions_counted(positions)

    def demap(self, sequence) -> str:
        """Recover the input word from a weight-w output block."""
        return self.demap_counted(sequence)[0]


def sr_map(codec: BinaryCodec, bits: str):
    return codec.map(bits)


def sr_demap(codec: BinaryCodec, sequence) -> str:
    return codec.demap(sequence)


# -- nonbinary enumerative reference matcher --------------------------------


def nb_input_length(c: Composition) -> int:
    """Input bits of the nonbinary matcher: floor(log2 of the sequence count)."""
    return floor_log2_pow2(multinomial(c.counts))


def _prefix_count(total_sequences: int, count: int, remaining: int) -> int:
    # Sequences that continue with a symbol currently occurring `count`
    # times: N * count / remaining, an exact integer division.
    return total_sequences * count // remaining


def nb_enum_map(c: Composition, bits: str) -> tuple:
    """Unrank a bit word into the composition's sequence of that rank.

    Sequences are ordered lexicographically by alphabet index (first symbol
    most significant).
    """
    k = nb_input_length(c)
    if len(bits) != k:
        raise ValueError(f"input has {len(bits)} bits, matcher expects {k}")
    r = bits_to_int(bits)
    counts = list(c.counts)
    remaining = c.n
    live = multinomial(counts)
    alphabet = c.alphabet
    out = []
    while remaining:
        for idx, count in enumerate(counts):
            if not count:
                continue
            with_idx = _prefix_count(live, count, remaining)
            if r < with_idx:
                out.append(alphabet[idx])
                live = with_idx
                counts[idx] -= 1
                remaining -= 1
                break
            r -= with_idx
        else:
            raise AssertionError("rank exhausted the sequence space")
    return tuple(out)


def nb_enum_demap(c: Composition, sequence) -> str:
    """Rank a constant-composition sequence back into its bit word."""
    c.check_sequence(sequence)
    index = {sym: i for i, sym in enumerate(c.alphabet)}
    counts = list(c.counts)
    remaining = c.n
    live = multinomial(counts)
    r = 0
    for sym in sequence:
        idx = index[sym]
        for j in range(idx):
            r += _prefix_count(live, counts[j], remaining)
        live = _prefix_count(live, counts[idx], remaining)
        counts[idx] -= 1
        remaining -= 1
    k = nb_input_length(c)
    if r >= 1 << k:
        raise ValueError(f"sequence rank {r} lies outside the {k}-bit codebook")
    return int_to_bits(r, k)
