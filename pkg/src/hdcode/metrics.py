"""Throughput, harvested-energy figures, parameter sweeps, and codebook selection."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .codebook import Codebook, total_ones
from .linksim import (
    ChannelParams,
    simulate_bler,
    theoretical_bler_dominant,
    theoretical_bler_union,
)

MODE_THEORY_DOMINANT = "theory-dominant"
MODE_THEORY_UNION = "theory-union"
MODE_SIM = "sim"
BLER_MODES = (MODE_THEORY_DOMINANT, MODE_THEORY_UNION, MODE_SIM)

DEFAULT_TRIALS = 100_000

_U64 = (1 << 64) - 1


@dataclass(frozen=True)
class EnergyMetrics:
    """Energy figures of a complete codebook, in units of a single 1-bit's energy.

    avg_weight is the mean ones count per codeword; energy_per_bit divides it
    by the k message bits and energy_per_time by the n channel uses.
    """

    avg_weight: float
    energy_per_bit: float
    energy_per_time: float


@dataclass(frozen=True)
class SweepRecord:
    """One (codebook, SNR) evaluation point."""

    codebook_id: str
    n: int
    k: int
    d: int
    snr_db: float
    bler: float
    throughput: float
    energy_per_bit: float
    energy_per_time: float


@dataclass(frozen=True)
class BlerRow:
    snr_db: float
    bler: float
    ci95: float
    trials: int


@dataclass(frozen=True)
class BlerTable:
    """BLER of one codebook over an SNR grid, under one evaluation mode."""

    codebook_id: str
    mode: str
    rows: tuple[BlerRow, ...]

    @property
    def snr_range(self) -> tuple[float, float]:
        return self.rows[0].snr_db, self.rows[-1].snr_db


RULE_MIN_ENERGY = "min-energy-per-time"
RULE_MIN_THROUGHPUT = "min-throughput"
RULE_MAX_BLER = "max-bler"
SELECTION_RULES = (RULE_MIN_ENERGY, RULE_MIN_THROUGHPUT, RULE_MAX_BLER)


@dataclass(frozen=True)
class SelectionRule:
    """One constrained objective.

    min-energy-per-time: maximize throughput s.t. energy_per_time >= threshold.
    min-throughput:      maximize energy_per_time s.t. throughput >= threshold.
    max-bler:            maximize throughput s.t. bler <= threshold.
    """

    kind: str
    threshold: float

    def __post_init__(self):
        if self.kind not in SELECTION_RULES:
            raise ValueError(f"kind must be one of {SELECTION_RULES}, got {self.kind!r}")


@dataclass(frozen=True)
class SelectionDecision:
    """Chosen codebook together with the operating point it was judged at."""

    codebook: Codebook
    codebook_id: str
    snr_db: float
    bler: float
    throughput: float
    energy_per_bit: float
    energy_per_time: float


def throughput(book: Codebook, bler: float) -> float:
    """Information bits delivered per channel use: (k/n) * (1 - BLER)."""
    if not 0.0 <= bler <= 1.0:
        raise ValueError(f"bler must lie in [0, 1], got {bler}")
    return book.k / book.n * (1.0 - bler)


def energy_metrics(book: Codebook, literal_total: bool = False) -> EnergyMetrics:
    """Harvested-energy figures of a complete codebook.

    By default the numerator is the per-codeword average ones count, so
    energy_per_time lies in [0, 1].  literal_total=True puts the codebook's
    raw total in the numerator instead.
    """
    if book.m != book.size_target:
        raise ValueError(f"energy metrics require exactly 2**k = {book.size_target} codewords")
    ones = total_ones(book)
    avg = ones / book.m
    base = float(ones) if literal_total else avg
    return EnergyMetrics(
        avg_weight=avg,
        energy_per_bit=base / book.k,
        energy_per_time=base / book.n,
    )


def _point_seed(seed: int, *key: int) -> int:
    ss = np.random.SeedSequence([seed & _U64, *key])
    return int(ss.generate_state(1, np.uint64)[0])


def _bler_at(
    book: Codebook,
    snr_db: float,
    mode: str,
    trials: int,
    seed: int,
    threads: int,
) -> tuple[float, float, int]:
    """(bler, ci95, trials) of one codebook at one SNR under one mode."""
    params = ChannelParams(ebn0_db=snr_db)
    if mode == MODE_THEORY_DOMINANT:
        return theoretical_bler_dominant(book, params), 0.0, 0
    if mode == MODE_THEORY_UNION:
        return theoretical_bler_union(book, params), 0.0, 0
    if mode == MODE_SIM:
        est = simulate_bler(book, params, trials, seed, threads)
        return est.point, est.ci95_halfwidth, est.trials
    raise ValueError(f"mode must be one of {BLER_MODES}, got {mode!r}")


def bler_table(
    book: Codebook,
    snr_grid: Sequence[float],
    mode: str = MODE_THEORY_DOMINANT,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    threads: int = 1,
    codebook_id: str = "codebook",
) -> BlerTable:
    """Evaluate one codebook across an SNR grid.

    Simulation points get independent seeds derived from (seed, point index),
    so the table is reproducible and insensitive to evaluation order.
    """
    if mode not in BLER_MODES:
        raise ValueError(f"mode must be one of {BLER_MODES}, got {mode!r}")
    grid = sorted(float(s) for s in snr_grid)
    if not grid:
        raise ValueError("snr_grid is empty")
    rows = []
    for idx, snr in enumerate(grid):
        bler, ci, used = _bler_at(book, snr, mode, trials, _point_seed(seed, idx), threads)
        rows.append(BlerRow(snr_db=snr, bler=bler, ci95=ci, trials=used))
    return BlerTable(codebook_id=codebook_id, mode=mode, rows=tuple(rows))


def tradeoff_sweep(
    codebooks: Sequence[Codebook],
    snr_grid: Sequence[float],
    mode: str = MODE_THEORY_DOMINANT,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    threads: int = 1,
    ids: Sequence[str] | None = None,
    literal_total: bool = False,
) -> list[SweepRecord]:
    """Cross every codebook with every SNR point.

    Records are ordered by (codebook position, SNR).  Throughput uses the
    BLER clamped to [0, 1] since the dominant-term approximation can exceed 1
    at very low SNR.
    """
    if mode not in BLER_MODES:
        raise ValueError(f"mode must be one of {BLER_MODES}, got {mode!r}")
    if not codebooks:
        raise ValueError("no codebooks given")
    if ids is None:
        ids = [f"cb{i}_n{b.n}k{b.k}d{b.d}" for i, b in enumerate(codebooks)]
    if len(ids) != len(codebooks):
        raise ValueError("ids must match codebooks one to one")
    if len(set(ids)) != len(ids):
        raise ValueError("codebook ids must be distinct")
    grid = sorted(float(s) for s in snr_grid)
    if not grid:
        raise ValueError("snr_grid is empty")

    points = [
        (bi, book, si, snr)
        for bi, book in enumerate(codebooks)
        for si, snr in enumerate(grid)
    ]

    def evaluate(point: tuple[int, Codebook, int, float]) -> tuple[float, float, int]:
        bi, book, si, snr = point
        return _bler_at(book, snr, mode, trials, _point_seed(seed, bi, si), threads=1)

    if threads > 1 and mode == MODE_SIM:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(evaluate, points))
    else:
        results = [evaluate(p) for p in points]

    records = []
    for (bi, book, _si, snr), (bler, _ci, _used) in zip(points, results):
        energy = energy_metrics(book, literal_total)
        records.append(
            SweepRecord(
                codebook_id=ids[bi],
                n=book.n,
                k=book.k,
                d=book.d,
                snr_db=snr,
                bler=bler,
                throughput=throughput(book, min(bler, 1.0)),
                energy_per_bit=energy.energy_per_bit,
                energy_per_time=energy.energy_per_time,
            )
        )
    return records


def select_codebook(
    library: Sequence[tuple[Codebook, BlerTable]],
    snr_db: float,
    rule: SelectionRule,
    literal_total: bool = False,
) -> SelectionDecision | None:
    """Pick the library codebook best satisfying the rule at the nearest grid SNR.

    Each codebook is judged at its table row closest to snr_db (ties go to the
    lower SNR).  Returns None when no codebook satisfies the constraint.
    Raises if snr_db falls outside any table's grid range, since the nearest
    row would then be an extrapolation.
    """
    if not library:
        raise ValueError("library is empty")
    candidates = []
    for book, table in library:
        lo, hi = table.snr_range
        if not lo <= snr_db <= hi:
            raise ValueError(
                f"snr {snr_db} dB lies outside the tabulated range [{lo}, {hi}] "
                f"of codebook {table.codebook_id!r}"
            )
        row = min(table.rows, key=lambda r: (abs(r.snr_db - snr_db), r.snr_db))
        energy = energy_metrics(book, literal_total)
        decision = SelectionDecision(
            codebook=book,
            codebook_id=table.codebook_id,
            snr_db=row.snr_db,
            bler=row.bler,
            throughput=throughput(book, min(row.bler, 1.0)),
            energy_per_bit=energy.energy_per_bit,
            energy_per_time=energy.energy_per_time,
        )
        candidates.append(decision)

    if rule.kind == RULE_MIN_ENERGY:
        feasible = [c for c in candidates if c.energy_per_time >= rule.threshold]
        objective = lambda c: c.throughput
    elif rule.kind == RULE_MIN_THROUGHPUT:
        feasible = [c for c in candidates if c.throughput >= rule.threshold]
        objective = lambda c: c.energy_per_time
    else:
        feasible = [c for c in candidates if c.bler <= rule.threshold]
        objective = lambda c: c.throughput
    if not feasible:
        return None
    return max(feasible, key=lambda c: (objective(c), c.codebook_id))
