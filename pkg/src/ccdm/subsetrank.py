"""Rank and unrank fixed-size integer subsets of {1..n} in lexicographic and
colexicographic order.

A w-subset is handled as a sorted ascending tuple of distinct 1-based
integers.  Lex order sorts the ascending lists dictionary-style; colex order
sorts the descending lists dictionary-style.  Ranks run from 0 to
C(n, w) - 1 and are exact integers.

The colex ranking is a plain sum of w independent binomial terms (no
data-dependent loop), which is what makes it attractive as the demapping
direction of a matcher.  Unranking is serial in w: the outer loop advances
one subset element per iteration while the inner scans only move a single
index forward, so the inner work is a parallelisable prefix search.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

from .exactint import binomial

__all__ = [
    "Order",
    "LoopCounts",
    "validate_subset",
    "lex_rank",
    "colex_rank",
    "rank",
    "lex_unrank",
    "colex_unrank",
    "unrank",
    "unrank_counted",
    "dual_subset",
    "complement_subset",
    "subset_from_sequence",
    "sequence_from_subset",
]

Order = Literal["lex", "colex"]


@dataclass(frozen=True)
class LoopCounts:
    """Loop iterations executed by one ranking/unranking call.

    serial: sequential outer-loop iterations (the serialism of the call).
    inner: total inner-scan iterations; these are data-parallel candidates.
    """

    serial: int
    inner: int


def validate_subset(subset: Sequence[int], n: int, w: int | None = None) -> tuple[int, ...]:
    """Check elements are distinct integers in 1..n; return them ascending."""
    elems = tuple(sorted(subset))
    for t in elems:
        if not 1 <= t <= n:
            raise ValueError(f"element out of range: {t} not in 1..{n}")
    if len(set(elems)) != len(elems):
        raise ValueError("subset elements must be distinct")
    if w is not None and len(elems) != w:
        raise ValueError(f"subset has {len(elems)} elements, expected {w}")
    return elems


def _check_order(order: str) -> None:
    if order not in ("lex", "colex"):
        raise ValueError(f"unknown order: {order!r}")


def lex_rank(subset: Sequence[int], n: int) -> int:
    """Rank of a subset within all equally sized subsets, in lex order.

    Counts the subsets that precede the given one: for each element t_i, the
    skipped leading values j contribute C(n - j, w - i) successors each.
    """
    elems = validate_subset(subset, n)
    w = len(elems)
    r = 0
    prev = 0
    for i, t in enumerate(elems, start=1):
        for j in range(prev + 1, t):
            r += binomial(n - j, w - i)
        prev = t
    return r


def colex_rank(subset: Sequence[int], n: int) -> int:
    """Rank in colex order: a closed-form sum over the descending list."""
    elems = validate_subset(subset, n)
    w = len(elems)
    desc = elems[::-1]
    # w independent terms; summing is a reduction, not a sequential loop.
    return sum(binomial(t - 1, w + 1 - i) for i, t in enumerate(desc, start=1))


def rank(subset: Sequence[int], n: int, order: Order = "lex") -> int:
    _check_order(order)
    return lex_rank(subset, n) if order == "lex" else colex_rank(subset, n)


def _check_rank(r: int, n: int, w: int) -> None:
    if w < 0 or w > n:
        raise ValueError(f"invalid subset size: w={w} with n={n}")
    if not 0 <= r < binomial(n, w):
        raise ValueError(f"rank out of range: {r} not in 0..{binomial(n, w) - 1}")


def _lex_unrank_counted(r: int, n: int, w: int) -> tuple[tuple[int, ...], LoopCounts]:
    _check_rank(r, n, w)
    elems = []
    inner = 0
    j = 1
    for i in range(1, w + 1):
        while binomial(n - j, w - i) <= r:
            r -= binomial(n - j, w - i)
            j += 1
            inner += 1
        elems.append(j)
        j += 1
    return tuple(elems), LoopCounts(serial=w, inner=inner)


def _colex_unrank_counted(r: int, n: int, w: int) -> tuple[tuple[int, ...], LoopCounts]:
    _check_rank(r, n, w)
    elems = []
    inner = 0
    j = n
    for i in range(1, w + 1):
        while binomial(j, w + 1 - i) > r:
            j -= 1
            inner += 1
        elems.append(j + 1)
        r -= binomial(j, w + 1 - i)
    return tuple(elems[::-1]), LoopCounts(serial=w, inner=inner)


def lex_unrank(r: int, n: int, w: int) -> tuple[int, ...]:
    """Subset with the given lex rank, as an ascending tuple."""
    return _lex_unrank_counted(r, n, w)[0]


def colex_unrank(r: int, n: int, w: int) -> tuple[int, ...]:
    """Subset with the given colex rank, as an ascending tuple."""
    return _colex_unrank_counted(r, n, w)[0]


def unrank(r: int, n: int, w: int, order: Order = "lex") -> tuple[int, ...]:
    _check_order(order)
    return lex_unrank(r, n, w) if order == "lex" else colex_unrank(r, n, w)


def unrank_counted(
    r: int, n: int, w: int, order: Order = "lex"
) -> tuple[tuple[int, ...], LoopCounts]:
    """Unrank and also report the loop iterations the call executed."""
    _check_order(order)
    if order == "lex":
        return _lex_unrank_counted(r, n, w)
    return _colex_unrank_counted(r, n, w)


def dual_subset(subset: Sequence[int], n: int) -> tuple[int, ...]:
    """Reflect every element t to n + 1 - t.

    Links the two orders: lex_rank(T) + colex_rank(dual(T)) = C(n, w) - 1,
    so either order can be ranked with the other one's machinery.
    """
    elems = validate_subset(subset, n)
    return tuple(n + 1 - t for t in elems[::-1])


def complement_subset(subset: Sequence[int], n: int) -> tuple[int, ...]:
    """The positions of {1..n} not in the subset."""
    inside = set(validate_subset(subset, n))
    return tuple(t for t in range(1, n + 1) if t not in inside)


def subset_from_sequence(sequence: Iterable, marked) -> tuple[int, ...]:
    """1-based positions of ``marked`` within a two-letter sequence."""
    return tuple(i for i, sym in enumerate(sequence, start=1) if sym == marked)


def sequence_from_subset(subset: Sequence[int], n: int, symbols=("1", "0")):
    """Length-n sequence with symbols[0] at the subset positions.

    Returns a string when both symbols are strings, else a tuple.
    """
    marked, other = symbols
    elems = validate_subset(subset, n)
    out = [other] * n
    for t in elems:
        out[t - 1] = marked
    if isinstance(marked, str) and isinstance(other, str):
        return "".join(out)
    return tuple(out)
