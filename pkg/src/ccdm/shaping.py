"""Target amplitude distributions, finite-length quantization, rate loss and
AWGN achievable rates.

Amplitudes are the positive odd levels of an ASK constellation; a square QAM
symbol is the product of two independently shaped ASK dimensions with a
uniform sign bit each.  Achievable rates are computed for bit-metric
decoding, i.e. H(X) minus the sum of per-bit-level conditional entropies,
with the constellation scaled to unit average energy per 2D symbol before
noise is applied.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.hermite import hermgauss

from .composition import Composition

__all__ = [
    "AmplitudePmf",
    "RateReport",
    "ChannelPoint",
    "ask_amplitudes",
    "mb_pmf",
    "mb_select",
    "quantize_pmf",
    "pmf_from_composition",
    "rate_loss",
    "awgn_capacity",
    "air_bmd",
]

DEFAULT_SEED = 0x5EED


def ask_amplitudes(m: int) -> tuple[int, ...]:
    """The m positive odd amplitude levels 1, 3, ..., 2m - 1."""
    if m < 1:
        raise ValueError("need at least one amplitude")
    return tuple(range(1, 2 * m, 2))


@dataclass(frozen=True)
class AmplitudePmf:
    """Probability mass function over the positive ASK amplitude levels."""

    probabilities: tuple[float, ...]
    amplitudes: tuple[int, ...] | None = None

    def __post_init__(self):
        probs = tuple(float(p) for p in self.probabilities)
        object.__setattr__(self, "probabilities", probs)
        amps = self.amplitudes
        if amps is None:
            amps = ask_amplitudes(len(probs))
        object.__setattr__(self, "amplitudes", tuple(amps))
        if len(self.amplitudes) != len(probs):
            raise ValueError("one probability per amplitude required")
        if any(p < 0 for p in probs):
            raise ValueError("probabilities must be nonnegative")
        if abs(sum(probs) - 1.0) > 1e-12:
            raise ValueError(f"probabilities sum to {sum(probs)}, not 1")

    @property
    def m(self) -> int:
        return len(self.probabilities)

    def entropy_bits(self) -> float:
        return -sum(p * math.log2(p) for p in self.probabilities if p > 0)

    def mean_square(self) -> float:
        return sum(p * a * a for p, a in zip(self.probabilities, self.amplitudes))


def mb_pmf(m: int, nu: float) -> AmplitudePmf:
    """Maxwell-Boltzmann family P(a) proportional to exp(-nu * a^2).

    nu = 0 is the uniform distribution; growing nu concentrates mass on the
    low-energy amplitudes.
    """
    if nu < 0:
        raise ValueError("nu must be nonnegative")
    amps = ask_amplitudes(m)
    # Rescale by the smallest energy first so large nu stays finite.
    weights = [math.exp(-nu * (a * a - amps[0] * amps[0])) for a in amps]
    total = sum(weights)
    return AmplitudePmf(tuple(x / total for x in weights), amps)


def quantize_pmf(pmf, n: int) -> Composition:
    """Best n-type approximation of a target pmf in Kullback-Leibler sense.

    Minimises D(counts/n || target) over all count vectors summing to n by
    assigning the n units greedily; each unit goes to the symbol with the
    smallest divergence increment, lowest index on ties.  The increments are
    increasing per symbol, so the greedy assignment is exactly optimal.
    """
    if isinstance(pmf, AmplitudePmf):
        probs = pmf.probabilities
        alphabet = pmf.amplitudes
    else:
        probs = tuple(float(p) for p in pmf)
        alphabet = None
    if n < 1:
        raise ValueError("n must be at least 1")

    def increment(i: int, c: int) -> float:
        if probs[i] <= 0.0:
            return math.inf
        target = n * probs[i]
        prev = c * math.log2(c / target) if c else 0.0
        return (c + 1) * math.log2((c + 1) / target) - prev

    counts = [0] * len(probs)
    heap = [(increment(i, 0), i) for i in range(len(probs))]
    heapq.heapify(heap)
    for _ in range(n):
        _, i = heapq.heappop(heap)
        counts[i] += 1
        heapq.heappush(heap, (increment(i, counts[i]), i))
    return Composition(tuple(counts), alphabet)


def pmf_from_composition(c: Composition) -> AmplitudePmf:
    """The empirical amplitude distribution counts/n of a composition."""
    return AmplitudePmf(c.probabilities(), c.alphabet)


@dataclass(frozen=True)
class RateReport:
    """Rate bookkeeping of one fixed-length matcher."""

    entropy_bits: float
    k: int
    n: int

    @property
    def rate_loss(self) -> float:
        """Entropy shortfall H(A) - k/n in bits per 1D amplitude symbol."""
        return self.entropy_bits - self.k / self.n


def rate_loss(c: Composition, k: int) -> RateReport:
    """Rate loss of a matcher emitting composition ``c`` from k input bits."""
    return RateReport(entropy_bits=c.entropy_bits(), k=k, n=c.n)


@dataclass(frozen=True)
class ChannelPoint:
    """One AWGN evaluation point with its numerical budget.

    quad_nodes Gauss-Hermite nodes per real dimension are used unless
    mc_samples is set, in which case a seeded Monte Carlo estimate with that
    many samples is taken instead.
    """

    snr_db: float
    m: int
    quad_nodes: int = 32
    mc_samples: int | None = None
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if not math.isfinite(self.snr_db):
            raise ValueError("snr_db must be finite")


def awgn_capacity(snr_db: float) -> float:
    """AWGN channel capacity log2(1 + SNR) in bits per 2D symbol."""
    return math.log2(1.0 + 10.0 ** (snr_db / 10.0))


def _ask_labels(m: int, labeling: str) -> np.ndarray:
    """Bit labels of the 2m-point ASK constellation, lowest level first."""
    bits = (2 * m - 1).bit_length()
    idx = np.arange(2 * m)
    if labeling == "gray":
        codes = idx ^ (idx >> 1)
    elif labeling == "natural":
        codes = idx
    else:
        raise ValueError(f"unknown labeling: {labeling!r}")
    return (codes[:, None] >> np.arange(bits - 1, -1, -1)[None, :]) & 1


def _ask_points(pmf: AmplitudePmf) -> tuple[np.ndarray, np.ndarray]:
    """Unit-energy-per-2D 1D constellation points and their probabilities."""
    amps = np.asarray(pmf.amplitudes, dtype=float)
    probs = np.asarray(pmf.probabilities, dtype=float)
    scale = 1.0 / math.sqrt(2.0 * pmf.mean_square())
    levels = np.concatenate([-amps[::-1], amps]) * scale
    point_probs = np.concatenate([probs[::-1], probs]) / 2.0
    return levels, point_probs


def _bit_entropies(y: np.ndarray, weights: np.ndarray, sent: np.ndarray,
                   x: np.ndarray, q: np.ndarray, labels: np.ndarray,
                   noise_var: float) -> float:
    """Sum over bit levels of H(B | Y) for 1D observations.

    y[s, j] are observations given symbol s was sent, with weights[s, j]
    summing to one per row; sent marks the rows that carry probability.
    """
    logq = _safe_log(q)
    # log p(y | x') + log q(x') up to a common constant
    ll = logq[None, None, :] - (y[:, :, None] - x[None, None, :]) ** 2 / (2 * noise_var)
    norm = _logsumexp(ll, axis=2)
    total = 0.0
    ln2 = math.log(2.0)
    for b in range(labels.shape[1]):
        ones = labels[:, b] == 1
        l1 = _logsumexp(ll[:, :, ones], axis=2)
        l0 = _logsumexp(ll[:, :, ~ones], axis=2)
        own = np.where(labels[sent, b][:, None] == 1, l1[sent], l0[sent])
        log2_post = (own - norm[sent]) / ln2
        total += -np.sum(q[sent, None] * weights[sent] * log2_post)
    return total


def _safe_log(q: np.ndarray) -> np.ndarray:
    out = np.full(q.shape, -np.inf)
    positive = q > 0
    out[positive] = np.log(q[positive])
    return out


def _logsumexp(a: np.ndarray, axis: int) -> np.ndarray:
    peak = np.max(a, axis=axis, keepdims=True)
    peak = np.where(np.isfinite(peak), peak, 0.0)
    with np.errstate(divide="ignore"):
        return np.log(np.sum(np.exp(a - peak), axis=axis)) + np.squeeze(peak, axis=axis)


def air_bmd(point: ChannelPoint, pmf: AmplitudePmf, labeling: str = "gray") -> float:
    """Bit-metric-decoding achievable rate in bits per 2D symbol.

    The square QAM symbol is the product of two iid shaped ASK dimensions
    with independent per-dimension labels, so H(X) and every bit-level
    conditional entropy split exactly into per-dimension terms; the returned
    value is twice the 1D rate H(A) + 1 - sum_b H(B_b | Y).
    """
    if pmf.m != point.m:
        raise ValueError(f"pmf has {pmf.m} amplitudes, channel point expects {point.m}")
    x, q = _ask_points(pmf)
    labels = _ask_labels(pmf.m, labeling)
    noise_var = 10.0 ** (-point.snr_db / 10.0) / 2.0
    sent = q > 0

    if point.mc_samples is None:
        nodes, gh_weights = hermgauss(point.quad_nodes)
        y = x[:, None] + math.sqrt(2.0 * noise_var) * nodes[None, :]
        weights = np.broadcast_to(gh_weights / math.sqrt(math.pi), y.shape)
        cond = _bit_entropies(y, weights, sent, x, q, labels, noise_var)
    else:
        rng = np.random.default_rng(point.seed)
        logq = _safe_log(q)
        cond = 0.0
        remaining = point.mc_samples
        chunk = 1 << 16
        while remaining:
            batch = min(chunk, remaining)
            idx = rng.choice(len(x), size=batch, p=q)
            y = x[idx] + math.sqrt(noise_var) * rng.standard_normal(batch)
            ll = logq[None, :] - (y[:, None] - x[None, :]) ** 2 / (2 * noise_var)
            norm = _logsumexp(ll, axis=1)
            for b in range(labels.shape[1]):
                ones = labels[:, b] == 1
                l1 = _logsumexp(ll[:, ones], axis=1)
                l0 = _logsumexp(ll[:, ~ones], axis=1)
                own = np.where(labels[idx, b] == 1, l1, l0)
                cond += float(np.sum(norm - own)) / math.log(2.0)
            remaining -= batch
        cond /= point.mc_samples

    air_1d = pmf.entropy_bits() + 1.0 - cond
    return 2.0 * air_1d


def mb_select(point: ChannelPoint, nu_max: float = 2.0) -> float:
    """Shaping parameter nu whose MB pmf maximises the BMD rate at a point.

    Deterministic given the point's budget: a geometric coarse scan is
    refined by golden-section search around the best coarse candidate.
    """

    def score(nu: float) -> float:
        return air_bmd(point, mb_pmf(point.m, nu))

    grid = [0.0] + list(np.geomspace(1e-4, nu_max, 41))
    values = [score(nu) for nu in grid]
    best = int(np.argmax(values))
    lo = grid[max(best - 1, 0)]
    hi = grid[min(best + 1, len(grid) - 1)]
    if hi <= lo:
        return grid[best]

    phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - phi * (b - a)
    d = a + phi * (b - a)
    fc, fd = score(c), score(d)
    for _ in range(60):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - phi * (b - a)
            fc = score(c)
        else:
            a, c, fc = c, d, fd
            d = a + phi * (b - a)
            fd = score(d)
    return (a + b) / 2.0
