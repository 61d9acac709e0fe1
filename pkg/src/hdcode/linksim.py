"""On-off keying over AWGN: modulation, soft ML decoding, and BLER.

Monte Carlo runs are sharded into fixed-size blocks, each with its own
counter-keyed generator, so the estimate is a pure function of (codebook,
channel, trials, seed) no matter how many threads execute the shards.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.special import erfc

from .codebook import Codebook, Codeword, message_order, min_distance
from .oracle import exact_distance_spectrum

SHARD_SIZE = 1 << 14

_U64 = (1 << 64) - 1


@dataclass(frozen=True)
class ChannelParams:
    """AWGN channel at a given Eb/N0; a 1-bit is sent as amplitude sqrt(2*Eb)."""

    ebn0_db: float
    eb: float = 1.0

    def __post_init__(self):
        if not self.eb > 0:
            raise ValueError("eb must be positive")

    @property
    def ebn0(self) -> float:
        return 10.0 ** (self.ebn0_db / 10.0)

    @property
    def n0(self) -> float:
        return self.eb / self.ebn0

    @property
    def amplitude(self) -> float:
        return math.sqrt(2.0 * self.eb)

    @property
    def noise_sigma(self) -> float:
        return math.sqrt(self.n0 / 2.0)


@dataclass(frozen=True)
class BlerEstimate:
    """Monte Carlo block error rate with a 95% interval half-width.

    The point estimate is exactly errors/trials.  The half-width uses the
    rule-of-succession proportion (errors+1)/(trials+2) inside the normal
    approximation so it stays positive when no errors were observed.
    """

    point: float
    trials: int
    errors: int
    ci95_halfwidth: float

    @classmethod
    def from_counts(cls, errors: int, trials: int) -> "BlerEstimate":
        if trials < 1:
            raise ValueError("trials must be >= 1")
        if not 0 <= errors <= trials:
            raise ValueError("errors must lie in [0, trials]")
        smoothed = (errors + 1) / (trials + 2)
        half = 1.96 * math.sqrt(smoothed * (1.0 - smoothed) / trials)
        return cls(point=errors / trials, trials=trials, errors=errors, ci95_halfwidth=half)


def q_function(x):
    """Gaussian tail probability Q(x); accepts scalars or arrays."""
    return 0.5 * erfc(np.asarray(x, dtype=np.float64) / math.sqrt(2.0))


def modulated_matrix(book: Codebook, params: ChannelParams) -> np.ndarray:
    """(2**k, n) array of transmitted amplitudes, row i = message i."""
    if book.m != book.size_target:
        raise ValueError(
            f"modulation requires exactly 2**k = {book.size_target} codewords, got {book.m}"
        )
    order = message_order(book)
    bits = np.array([w.bits for w in order], dtype=np.float64)
    return bits * params.amplitude


def encode(message: int, book: Codebook) -> Codeword:
    """Codeword for a message index; low indexes map to heavy codewords."""
    if book.m != book.size_target:
        raise ValueError(
            f"encoding requires exactly 2**k = {book.size_target} codewords, got {book.m}"
        )
    order = message_order(book)
    if not 0 <= message < len(order):
        raise ValueError(f"message must lie in [0, {len(order)}), got {message}")
    return order[message]


def ml_decode(received: np.ndarray, book: Codebook, params: ChannelParams) -> int:
    """Message index minimizing Euclidean distance; ties go to the lowest index."""
    received = np.asarray(received, dtype=np.float64)
    mod = modulated_matrix(book, params)
    if received.shape != (book.n,):
        raise ValueError(f"received vector must have shape ({book.n},)")
    diffs = mod - received[None, :]
    return int(np.einsum("mn,mn->m", diffs, diffs).argmin())


def _shard_errors(
    mod: np.ndarray, sigma: float, n: int, seed: int, shard_index: int, count: int
) -> int:
    key = np.array([seed & _U64, shard_index], dtype=np.uint64)
    rng = np.random.Generator(np.random.Philox(key=key))
    messages = rng.integers(0, mod.shape[0], size=count)
    received = mod[messages] + rng.normal(0.0, sigma, size=(count, n))
    diffs = received[:, None, :] - mod[None, :, :]
    decoded = np.einsum("tmn,tmn->tm", diffs, diffs).argmin(axis=1)
    return int(np.count_nonzero(decoded != messages))


def simulate_bler(
    book: Codebook, params: ChannelParams, trials: int, seed: int, threads: int = 1
) -> BlerEstimate:
    """Estimate BLER over uniform messages by sharded Monte Carlo.

    Shard i of SHARD_SIZE trials draws from a Philox generator keyed
    (seed, i), so results are identical for any thread count.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if threads < 1:
        raise ValueError("threads must be >= 1")
    if book.m != book.size_target:
        raise ValueError(f"simulation requires exactly 2**k = {book.size_target} codewords")
    mod = modulated_matrix(book, params)
    sigma = params.noise_sigma
    shards = [
        (idx, min(SHARD_SIZE, trials - start))
        for idx, start in enumerate(range(0, trials, SHARD_SIZE))
    ]

    def run(shard: tuple[int, int]) -> int:
        idx, count = shard
        return _shard_errors(mod, sigma, book.n, seed, idx, count)

    if threads == 1 or len(shards) == 1:
        errors = sum(run(s) for s in shards)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            errors = sum(pool.map(run, shards))
    return BlerEstimate.from_counts(errors, trials)


def theoretical_bler_dominant(book: Codebook, params: ChannelParams) -> float:
    """Minimum-distance term of the union bound, averaged over messages.

    Counts the codeword pairs at the codebook's actual minimum distance delta
    and returns (pairs at delta per message) * Q(sqrt(delta * Eb/N0)).
    """
    spectrum = exact_distance_spectrum(book)
    delta = min_distance(book)
    multiplicity = spectrum.total_at(delta)
    return float(multiplicity / book.m * q_function(math.sqrt(delta * params.ebn0)))


def theoretical_bler_union(book: Codebook, params: ChannelParams) -> float:
    """Full pairwise union bound, averaged over messages and clamped to 1."""
    spectrum = exact_distance_spectrum(book)
    totals = spectrum.counts.sum(axis=0)
    dists = np.nonzero(totals)[0]
    dists = dists[dists > 0]
    value = float(
        (totals[dists] * q_function(np.sqrt(dists * params.ebn0))).sum() / book.m
    )
    return min(value, 1.0)
