"""Heads-up poker equity: Monte Carlo, exact enumeration, and a
kilobyte-scale neural approximator trained to replace simulation."""

from .cards import (
    Card,
    CardParseError,
    FULL_DECK,
    HandCategory,
    HandRank,
    InvalidCardsError,
    ShowdownResult,
    Suit,
    compare_showdown,
    evaluate_best,
    format_cards,
    parse_card,
    parse_cards,
)
from .dataset import (
    DatasetFormatError,
    DatasetRecord,
    GenConfig,
    features_matrix,
    generate,
    labels_matrix,
    load_csv,
    save_csv,
    split,
)
from .equity import (
    EquityEstimate,
    GameState,
    InvalidStateError,
    UnsupportedStageError,
    convergence_trace,
    exact_equity,
    simulate_equity,
)
from .features import (
    FeatureExtractor,
    N_FEATURES,
    extract_features,
    feature_names,
    final_category_distribution,
    made_indicators,
    max_suited_count,
    straight_gap,
)
from .model import (
    DEVIATION_BUCKETS,
    EquityNetwork,
    MetricsTable,
    TrainReport,
    evaluate_metrics,
)
from .network import (
    BadMagicError,
    ModelFormatError,
    NetParams,
    TruncatedModelError,
    UnsupportedVersionError,
    init_params,
    load_params,
    save_params,
)

__version__ = "0.1.0"

__all__ = [
    "BadMagicError",
    "Card",
    "CardParseError",
    "DatasetFormatError",
    "DatasetRecord",
    "DEVIATION_BUCKETS",
    "EquityEstimate",
    "EquityNetwork",
    "FeatureExtractor",
    "FULL_DECK",
    "GameState",
    "GenConfig",
    "HandCategory",
    "HandRank",
    "InvalidCardsError",
    "InvalidStateError",
    "MetricsTable",
    "ModelFormatError",
    "N_FEATURES",
    "NetParams",
    "ShowdownResult",
    "Suit",
    "TrainReport",
    "TruncatedModelError",
    "UnsupportedStageError",
    "UnsupportedVersionError",
    "compare_showdown",
    "convergence_trace",
    "evaluate_best",
    "evaluate_metrics",
    "exact_equity",
    "extract_features",
    "feature_names",
    "features_matrix",
    "final_category_distribution",
    "format_cards",
    "generate",
    "init_params",
    "labels_matrix",
    "load_csv",
    "load_params",
    "made_indicators",
    "max_suited_count",
    "parse_card",
    "parse_cards",
    "save_csv",
    "save_params",
    "simulate_equity",
    "split",
    "straight_gap",
    "__version__",
]
