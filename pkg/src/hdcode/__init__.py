"""High-density codebooks: design by genetic local search, evaluation over OOK/AWGN."""

from .codebook import (
    MAX_N,
    Codebook,
    CodebookFormatError,
    Codeword,
    distance_to_codebook,
    finalize,
    hamming_distance,
    lex_successor,
    load_codebook,
    message_order,
    min_distance,
    mutate,
    parse_codebook,
    positions_to_mask,
    save_codebook,
    serialize_codebook,
    total_ones,
)
from .linksim import (
    BlerEstimate,
    ChannelParams,
    encode,
    ml_decode,
    q_function,
    simulate_bler,
    theoretical_bler_dominant,
    theoretical_bler_union,
)
from .metrics import (
    BlerTable,
    EnergyMetrics,
    SelectionDecision,
    SelectionRule,
    SweepRecord,
    bler_table,
    energy_metrics,
    select_codebook,
    throughput,
    tradeoff_sweep,
)
from .oracle import (
    DistanceSpectrum,
    OracleResult,
    exact_distance_spectrum,
    exhaustive_best_codebook,
)
from .search import (
    CodebookWeight,
    DesignConfig,
    GenerationRecord,
    Population,
    SearchReport,
    effective_weight,
    extend_codebook,
    genetic_local_search,
    initial_population,
    local_search,
    parent_probabilities,
    recombination,
    recombine_pair,
    selection,
    stop_check,
)

__version__ = "0.1.0"

__all__ = [
    "MAX_N",
    "Codebook",
    "CodebookFormatError",
    "Codeword",
    "distance_to_codebook",
    "finalize",
    "hamming_distance",
    "lex_successor",
    "load_codebook",
    "message_order",
    "min_distance",
    "mutate",
    "parse_codebook",
    "positions_to_mask",
    "save_codebook",
    "serialize_codebook",
    "total_ones",
    "BlerEstimate",
    "ChannelParams",
    "encode",
    "ml_decode",
    "q_function",
    "simulate_bler",
    "theoretical_bler_dominant",
    "theoretical_bler_union",
    "BlerTable",
    "EnergyMetrics",
    "SelectionDecision",
    "SelectionRule",
    "SweepRecord",
    "bler_table",
    "energy_metrics",
    "select_codebook",
    "throughput",
    "tradeoff_sweep",
    "DistanceSpectrum",
    "OracleResult",
    "exact_distance_spectrum",
    "exhaustive_best_codebook",
    "CodebookWeight",
    "DesignConfig",
    "GenerationRecord",
    "Population",
    "SearchReport",
    "effective_weight",
    "extend_codebook",
    "genetic_local_search",
    "initial_population",
    "local_search",
    "parent_probabilities",
    "recombination",
    "recombine_pair",
    "selection",
    "stop_check",
]
