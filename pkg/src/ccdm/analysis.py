"""Serialism accounting for matcher algorithms and sweep builders.

The degree of serialism (DoS) of a mapping or demapping algorithm is the
number of sequential loop iterations it executes, ignoring the work inside
each iteration.  Subset-ranking matchers map with min(w, n - w) iterations
and demap with none at all (counted as 1); the arithmetic-coding matcher
model is serial in its input, k iterations mapping and n demapping, taken
as the worst case.  For parallel architectures the component matchers run
concurrently, so the architecture is charged its worst component.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .architectures import (
    BlPlan,
    PaPlan,
    bl_factorize,
    bl_realized_pmf,
    pa_best_ordering,
)
from .composition import Composition
from .exactint import binomial, floor_log2_pow2, multinomial
from .shaping import (
    ChannelPoint,
    air_bmd,
    awgn_capacity,
    mb_pmf,
    mb_select,
    pmf_from_composition,
    quantize_pmf,
    rate_loss,
)

__all__ = [
    "DosReport",
    "dos",
    "dos_reduction",
    "worst_component_serialism",
    "arch_dos_reduction",
    "dos_curve",
    "pasr_reduction_sweep",
    "rate_loss_summary",
    "air_sweep",
]


@dataclass(frozen=True)
class DosReport:
    """Sequential loop iterations of one matcher's map and demap."""

    scheme: str
    map_dos: int
    demap_dos: int

    @property
    def total(self) -> int:
        return self.map_dos + self.demap_dos


def dos(scheme: str, n: int, *, w: int | None = None, k: int | None = None) -> DosReport:
    """Analytic DoS of one matcher.

    ``sr`` needs the weight w; ``ac_model`` needs the input length k.
    """
    if scheme == "sr":
        if w is None:
            raise ValueError("sr serialism needs the weight w")
        if not 0 <= w <= n:
            raise ValueError(f"need 0 <= w <= n, got w={w}, n={n}")
        return DosReport(scheme="sr", map_dos=min(w, n - w), demap_dos=1)
    if scheme == "ac_model":
        if k is None:
            raise ValueError("ac_model serialism needs the input length k")
        return DosReport(scheme="ac_model", map_dos=k, demap_dos=n)
    raise ValueError(f"unknown scheme: {scheme!r}")


def dos_reduction(n: int, w: int) -> Fraction:
    """Combined map+demap serialism ratio of the ac model over subset ranking.

    (k + n) / (min(w, n - w) + 1) with k the input length of the codec, an
    exact rational that is symmetric in w and n - w.
    """
    k = floor_log2_pow2(binomial(n, w))
    return Fraction(k + n, min(w, n - w) + 1)


def worst_component_serialism(plan: PaPlan | BlPlan) -> int:
    """Map serialism of the slowest component matcher in an architecture."""
    if isinstance(plan, PaPlan):
        pairs = [(stage.length, stage.weight) for stage in plan.stages]
    elif isinstance(plan, BlPlan):
        pairs = [(plan.n, level.weight) for level in plan.levels]
    else:
        raise TypeError(f"expected PaPlan or BlPlan, got {type(plan).__name__}")
    if not pairs:
        return 0
    return max(min(w, length - w) for length, w in pairs)


def arch_dos_reduction(plan: PaPlan | BlPlan, nb_k: int, nb_n: int) -> Fraction:
    """Serialism of a reference serial matcher over the architecture's worst
    subset-ranking component, as an exact rational."""
    return Fraction(nb_k + nb_n, worst_component_serialism(plan) + 1)


# -- sweep builders -----------------------------------------------------------


def dos_curve(n: int) -> list[dict]:
    """Reduction-versus-weight rows for a single binary codec of length n.

    Covers w = 1 .. n//2; larger weights mirror these values exactly.
    """
    rows = []
    for w in range(1, n // 2 + 1):
        red = dos_reduction(n, w)
        rows.append(
            {
                "w": w,
                "w_over_n": w / n,
                "k": floor_log2_pow2(binomial(n, w)),
                "sr_map_dos": min(w, n - w),
                "reduction": float(red),
                "reduction_exact": red,
            }
        )
    return rows


def _mb_design(snr_db: float, m: int, n: int, quad_nodes: int):
    """Shared per-grid-point design: pmf selection, quantization, plans."""
    point = ChannelPoint(snr_db, m, quad_nodes=quad_nodes)
    nu = mb_select(point)
    target = mb_pmf(m, nu)
    comp = quantize_pmf(target, n)
    nb_k = floor_log2_pow2(multinomial(comp.counts))
    pa_plan = pa_best_ordering(comp)
    bl_plan = bl_factorize(target, n)
    return point, nu, target, comp, nb_k, pa_plan, bl_plan


def pasr_reduction_sweep(
    m: int, n: int, snr_grid: Sequence[float], quad_nodes: int = 32
) -> list[dict]:
    """Worst-component serialism reduction of the combined parallel-amplitude
    plus subset-ranking scheme against a serial nonbinary matcher model."""
    rows = []
    for snr_db in snr_grid:
        point, nu, target, comp, nb_k, pa_plan, _ = _mb_design(snr_db, m, n, quad_nodes)
        red = arch_dos_reduction(pa_plan, nb_k, n)
        rows.append(
            {
                "snr_db": snr_db,
                "nu": nu,
                "composition": comp.counts,
                "nb_k": nb_k,
                "pa_total_k": pa_plan.total_k,
                "extra_bits": nb_k - pa_plan.total_k,
                "worst_serialism": worst_component_serialism(pa_plan),
                "reduction": float(red),
                "reduction_exact": red,
            }
        )
    return rows


def rate_loss_summary(m: int, n: int, snr_db: float, quad_nodes: int = 32) -> dict:
    """Side-by-side design parameters and rate losses of the three systems."""
    point, nu, target, comp, nb_k, pa_plan, bl_plan = _mb_design(snr_db, m, n, quad_nodes)
    nb_report = rate_loss(comp, nb_k)
    pa_report = rate_loss(comp, pa_plan.total_k)
    bl_entropy = sum(Composition(level.counts).entropy_bits() for level in bl_plan.levels)
    bl_loss = bl_entropy - bl_plan.total_k / n
    return {
        "snr_db": snr_db,
        "m": m,
        "n": n,
        "nu": nu,
        "nb_composition": comp.counts,
        "nb_k": nb_k,
        "nb_rate_loss": nb_report.rate_loss,
        "pa_ordering": pa_plan.ordering,
        "pa_stages": tuple((s.length, s.k, s.weight) for s in pa_plan.stages),
        "pa_total_k": pa_plan.total_k,
        "pa_rate_loss": pa_report.rate_loss,
        "bl_levels": tuple(level.counts for level in bl_plan.levels),
        "bl_level_params": tuple((bl_plan.n, level.k, level.weight) for level in bl_plan.levels),
        "bl_total_k": bl_plan.total_k,
        "bl_rate_loss": bl_loss,
    }


def air_sweep(
    m: int, n: int, snr_grid: Sequence[float], quad_nodes: int = 32
) -> list[dict]:
    """Finite-length achievable rates of the three systems over an SNR grid.

    Every system's rate is the bit-metric-decoding rate evaluated at the
    distribution it actually emits, minus twice its per-1D rate loss (two
    shaped amplitudes per 2D symbol).
    """
    rows = []
    for snr_db in snr_grid:
        point, nu, target, comp, nb_k, pa_plan, bl_plan = _mb_design(
            snr_db, m, n, quad_nodes
        )
        realized = pmf_from_composition(comp)
        air_realized = air_bmd(point, realized)
        nb_loss = rate_loss(comp, nb_k).rate_loss
        pa_loss = rate_loss(comp, pa_plan.total_k).rate_loss
        bl_entropy = sum(
            Composition(level.counts).entropy_bits() for level in bl_plan.levels
        )
        bl_loss = bl_entropy - bl_plan.total_k / n
        air_bl_dist = air_bmd(point, bl_realized_pmf(bl_plan))
        rows.append(
            {
                "snr_db": snr_db,
                "n": n,
                "m": m,
                "nu": nu,
                "capacity": awgn_capacity(snr_db),
                "air_uniform": air_bmd(point, mb_pmf(m, 0.0)),
                "air_asymptotic": air_bmd(point, target),
                "air_nb": air_realized - 2.0 * nb_loss,
                "air_pa": air_realized - 2.0 * pa_loss,
                "air_bl": air_bl_dist - 2.0 * bl_loss,
            }
        )
    return rows
