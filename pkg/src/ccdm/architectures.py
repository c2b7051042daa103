"""Parallel matcher architectures over a nonbinary amplitude alphabet.

The parallel-amplitude architecture (``PaPlan``) peels one amplitude off at
a time: the arrangement count of a composition factors into a chain of
binomial coefficients, one per amplitude, and each factor becomes an
independent binary matcher that places its amplitude into the positions
still unoccupied.  The factor order changes how many whole input bits
survive the per-factor power-of-two flooring, so a one-time exhaustive
search over orderings recovers most or all of the single-matcher input
length.

The bit-level architecture (``BlPlan``) is the baseline it is compared
against: the amplitude index is split into its binary digits and one binary
matcher shapes each digit level across the whole block, which constrains
the target to product distributions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .composition import Composition, CompositionError
from .exactint import binomial, floor_log2_pow2, multinomial
from .matchers import BinaryCodec
from .shaping import AmplitudePmf, quantize_pmf
from .subsetrank import LoopCounts, Order

__all__ = [
    "Composition",
    "PaStage",
    "PaPlan",
    "pa_split",
    "pa_best_ordering",
    "pa_map",
    "pa_demap",
    "pa_map_worst_counts",
    "combine_stage_positions",
    "BlLevel",
    "BlPlan",
    "bl_factorize",
    "bl_map",
    "bl_demap",
    "bl_realized_pmf",
    "parallelization_factor",
]

ORDER_SEARCH_MAX_M = 10


@dataclass(frozen=True)
class PaStage:
    """One per-amplitude binary sub-problem of a parallel-amplitude plan."""

    amplitude: object
    length: int
    weight: int
    codec: BinaryCodec

    @property
    def binomial_value(self) -> int:
        return binomial(self.length, self.weight)

    @property
    def k(self) -> int:
        return self.codec.k


@dataclass(frozen=True)
class PaPlan:
    """An amplitude ordering with its per-stage binary matchers.

    The first m - 1 amplitudes of the ordering get a stage each; the final
    amplitude simply fills whatever positions remain (its binomial factor is
    1 and carries no bits).  ``optimal_orderings`` is set by the ordering
    search and counts the distinct count sequences achieving ``total_k``.
    """

    composition: Composition
    ordering: tuple[int, ...]
    stages: tuple[PaStage, ...]
    optimal_orderings: int | None = None

    @property
    def total_k(self) -> int:
        return sum(stage.k for stage in self.stages)

    @property
    def fill_amplitude(self):
        return self.composition.alphabet[self.ordering[-1] - 1]

    @property
    def chunk_lengths(self) -> tuple[int, ...]:
        return tuple(stage.k for stage in self.stages)


def _check_ordering(ordering: Sequence[int], m: int) -> tuple[int, ...]:
    ordering = tuple(int(i) for i in ordering)
    if sorted(ordering) != list(range(1, m + 1)):
        raise ValueError(f"ordering must be a permutation of 1..{m}: {ordering}")
    return ordering


def pa_split(c: Composition, ordering: Sequence[int] | None = None,
             order: Order = "lex") -> PaPlan:
    """Build the per-amplitude stages for one ordering (default natural).

    Stage i places the ordering's i-th amplitude into the positions left
    over by stages 1..i-1, so its sub-problem is C(remaining, count); the
    product of the stage binomials is always the full arrangement count.
    """
    if ordering is None:
        ordering = tuple(range(1, c.m + 1))
    ordering = _check_ordering(ordering, c.m)
    stages = []
    remaining = c.n
    for amp_index in ordering[:-1]:
        count = c.counts[amp_index - 1]
        stages.append(
            PaStage(
                amplitude=c.alphabet[amp_index - 1],
                length=remaining,
                weight=count,
                codec=BinaryCodec(remaining, count, order),
            )
        )
        remaining -= count
    return PaPlan(composition=c, ordering=ordering, stages=tuple(stages))


def _ordering_total_k(counts: Sequence[int], n: int) -> int:
    total = 0
    remaining = n
    for count in counts[:-1]:
        total += floor_log2_pow2(binomial(remaining, count))
        remaining -= count
    return total


def pa_best_ordering(c: Composition, order: Order = "lex") -> PaPlan:
    """Exhaustive ordering search maximising the aggregate input length.

    All distinct orderings of the count multiset are scored (at most m!);
    ties go to the lexicographically smallest count sequence.  Amplitudes
    sharing a count are placed lowest-index first.
    """
    if c.m > ORDER_SEARCH_MAX_M:
        raise ValueError(
            f"exhaustive ordering search supports at most {ORDER_SEARCH_MAX_M} amplitudes"
        )
    n = c.n
    best_counts = None
    best_k = -1
    optimal = 0
    for perm in sorted(set(itertools.permutations(c.counts))):
        total = _ordering_total_k(perm, n)
        if total > best_k:
            best_k = total
            best_counts = perm
            optimal = 1
        elif total == best_k:
            optimal += 1
    unused = list(range(1, c.m + 1))
    ordering = []
    for count in best_counts:
        pick = next(i for i in unused if c.counts[i - 1] == count)
        unused.remove(pick)
        ordering.append(pick)
    plan = pa_split(c, tuple(ordering), order)
    return PaPlan(
        composition=plan.composition,
        ordering=plan.ordering,
        stages=plan.stages,
        optimal_orderings=optimal,
    )


def combine_stage_positions(n: int, placements, fill) -> tuple:
    """Sequentially merge per-stage placements into one length-n sequence.

    ``placements`` yields (local_positions, symbol) pairs where the local
    positions are 1-based indices into the block positions still free when
    that stage is combined.  Remaining positions get the fill symbol.
    """
    out = [None] * n
    free = list(range(1, n + 1))
    for local_positions, symbol in placements:
        chosen = set(local_positions)
        if len(chosen) != len(local_positions):
            raise ValueError("duplicate positions within one stage")
        if any(not 1 <= p <= len(free) for p in chosen):
            raise ValueError("stage position outside the remaining free slots")
        surviving = []
        for local, global_pos in enumerate(free, start=1):
            if local in chosen:
                out[global_pos - 1] = symbol
            else:
                surviving.append(global_pos)
        free = surviving
    for global_pos in free:
        out[global_pos - 1] = fill
    return tuple(out)


def pa_map(plan: PaPlan, bits: str) -> tuple:
    """Map an input word to a shaped sequence with the plan's composition.

    The word is cut into per-stage chunks, every stage codec is evaluated
    on its own chunk (these calls are mutually independent), and the
    resulting position sets are combined sequentially.
    """
    if len(bits) != plan.total_k:
        raise ValueError(f"input has {len(bits)} bits, plan expects {plan.total_k}")
    placements = []
    offset = 0
    for stage in plan.stages:
        chunk = bits[offset : offset + stage.k]
        offset += stage.k
        placements.append((stage.codec.map_positions(chunk), stage.amplitude))
    return combine_stage_positions(plan.composition.n, placements, plan.fill_amplitude)


def pa_demap(plan: PaPlan, sequence) -> str:
    """Recover the input word: peel stages off in order and rank each."""
    plan.composition.check_sequence(sequence)
    free = list(range(1, plan.composition.n + 1))
    chunks = []
    for stage in plan.stages:
        local_positions = []
        surviving = []
        for local, global_pos in enumerate(free, start=1):
            if sequence[global_pos - 1] == stage.amplitude:
                local_positions.append(local)
            else:
                surviving.append(global_pos)
        chunks.append(stage.codec.demap_positions(local_positions))
        free = surviving
    return "".join(chunks)


def pa_map_worst_counts(plan: PaPlan, bits: str) -> tuple[tuple, LoopCounts]:
    """pa_map plus the loop counters of the slowest stage codec.

    Stages run concurrently in a parallel deployment, so the architecture's
    serialism is the worst per-stage count, not the sum.
    """
    if len(bits) != plan.total_k:
        raise ValueError(f"input has {len(bits)} bits, plan expects {plan.total_k}")
    placements = []
    offset = 0
    worst = LoopCounts(serial=0, inner=0)
    for stage in plan.stages:
        chunk = bits[offset : offset + stage.k]
        offset += stage.k
        positions, counts = stage.codec.map_positions_counted(chunk)
        if counts.serial > worst.serial:
            worst = counts
        placements.append((positions, stage.amplitude))
    seq = combine_stage_positions(plan.composition.n, placements, plan.fill_amplitude)
    return seq, worst


# -- bit-level architecture ---------------------------------------------------


@dataclass(frozen=True)
class BlLevel:
    """One binary digit level of the amplitude index."""

    counts: tuple[int, int]
    codec: BinaryCodec

    @property
    def k(self) -> int:
        return self.codec.k

    @property
    def weight(self) -> int:
        return self.counts[1]


@dataclass(frozen=True)
class BlPlan:
    """One binary matcher per digit of the amplitude's natural-binary index.

    Level 1 is the most significant digit.  Each level realises its digit
    counts exactly in every block; the joint amplitude composition varies
    from block to block (only product distributions are reachable).
    """

    n: int
    amplitudes: tuple
    levels: tuple[BlLevel, ...]

    @property
    def total_k(self) -> int:
        return sum(level.k for level in self.levels)

    @property
    def depth(self) -> int:
        return len(self.levels)


def bl_factorize(pmf: AmplitudePmf, n: int, order: Order = "lex") -> BlPlan:
    """Split a target pmf into independently quantized binary digit levels.

    The digit marginals are taken from the unquantized target and each one
    is quantized to its own n-type, so a level's counts can differ by one
    from what the quantized joint distribution would give.
    """
    m = pmf.m
    if m < 2 or m & (m - 1):
        raise ValueError(f"bit-level factorization needs m a power of two, got {m}")
    depth = m.bit_length() - 1
    levels = []
    for level in range(depth):
        shift = depth - 1 - level
        p_one = sum(
            p for i, p in enumerate(pmf.probabilities) if (i >> shift) & 1
        )
        counts = quantize_pmf((1.0 - p_one, p_one), n).counts
        levels.append(
            BlLevel(counts=counts, codec=BinaryCodec(n, counts[1], order))
        )
    return BlPlan(n=n, amplitudes=pmf.amplitudes, levels=tuple(levels))


def bl_map(plan: BlPlan, bits: str) -> tuple:
    """Map an input word by shaping every digit level independently."""
    if len(bits) != plan.total_k:
        raise ValueError(f"input has {len(bits)} bits, plan expects {plan.total_k}")
    offset = 0
    level_bits = []
    for level in plan.levels:
        chunk = bits[offset : offset + level.k]
        offset += level.k
        level_bits.append(level.codec.map(chunk))
    depth = plan.depth
    out = []
    for j in range(plan.n):
        index = 0
        for ell in range(depth):
            index = (index << 1) | (level_bits[ell][j] == "1")
        out.append(plan.amplitudes[index])
    return tuple(out)


def bl_demap(plan: BlPlan, sequence) -> str:
    """Recover the input word by ranking every digit level independently."""
    if len(sequence) != plan.n:
        raise CompositionError(f"sequence length {len(sequence)}, expected {plan.n}")
    index = {sym: i for i, sym in enumerate(plan.amplitudes)}
    try:
        indices = [index[sym] for sym in sequence]
    except KeyError as exc:
        raise CompositionError(f"symbol {exc.args[0]!r} not in alphabet") from None
    depth = plan.depth
    chunks = []
    for ell, level in enumerate(plan.levels):
        shift = depth - 1 - ell
        digits = "".join("1" if (i >> shift) & 1 else "0" for i in indices)
        chunks.append(level.codec.demap(digits))
    return "".join(chunks)


def bl_realized_pmf(plan: BlPlan) -> AmplitudePmf:
    """Product distribution the plan emits: independent digit marginals."""
    depth = plan.depth
    probs = []
    for i in range(len(plan.amplitudes)):
        p = 1.0
        for ell, level in enumerate(plan.levels):
            ones = level.weight / plan.n
            p *= ones if (i >> (depth - 1 - ell)) & 1 else 1.0 - ones
        probs.append(p)
    return AmplitudePmf(tuple(probs), plan.amplitudes)


def parallelization_factor(m: int, scheme: str) -> int:
    """Component matchers running concurrently, relative to one nonbinary DM."""
    if m < 2 or m & (m - 1):
        raise ValueError(f"m must be a power of two >= 2, got {m}")
    if scheme == "pa":
        return m - 1
    if scheme == "bl":
        return m.bit_length() - 1
    raise ValueError(f"unknown scheme: {scheme!r}")
