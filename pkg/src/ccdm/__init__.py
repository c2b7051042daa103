"""Constant-composition distribution matching via subset ranking.

Fixed-length invertible matchers between uniform bits and shaped symbol
blocks, a parallel-amplitude architecture that splits a nonbinary matcher
into per-amplitude binary ones, a bit-level baseline, and the supporting
analysis: exact big-integer combinatorics, Maxwell-Boltzmann shaping with
KL-optimal quantization, AWGN achievable rates for bit-metric decoding, and
serialism accounting.
"""

from .analysis import (
    DosReport,
    arch_dos_reduction,
    dos,
    dos_reduction,
    worst_component_serialism,
)
from .architectures import (
    BlLevel,
    BlPlan,
    PaPlan,
    PaStage,
    bl_demap,
    bl_factorize,
    bl_map,
    bl_realized_pmf,
    combine_stage_positions,
    pa_best_ordering,
    pa_demap,
    pa_map,
    pa_split,
    parallelization_factor,
)
from .composition import Composition, CompositionError
from .exactint import (
    binomial,
    binomial_product,
    factorial_prime_exponents,
    floor_log2_pow2,
    multinomial,
)
from .matchers import (
    BinaryCodec,
    nb_enum_demap,
    nb_enum_map,
    nb_input_length,
    sr_demap,
    sr_map,
)
from .shaping import (
    AmplitudePmf,
    ChannelPoint,
    RateReport,
    air_bmd,
    ask_amplitudes,
    awgn_capacity,
    mb_pmf,
    mb_select,
    pmf_from_composition,
    quantize_pmf,
    rate_loss,
)
from .subsetrank import (
    LoopCounts,
    colex_rank,
    colex_unrank,
    dual_subset,
    lex_rank,
    lex_unrank,
    rank,
    sequence_from_subset,
    subset_from_sequence,
    unrank,
    unrank_counted,
)

__version__ = "0.1.0"
