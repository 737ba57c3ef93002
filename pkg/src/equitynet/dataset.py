"""Training-set generation and CSV persistence.

Every record is a pure function of (master_seed, record index): its
Philox stream provides the stage draw, the card deal, and the seed of
the Monte Carlo labeling run. Generation is therefore reproducible
byte-for-byte across runs, chunk sizes, and worker counts.

CSV layout: header `state,f1,...,f29,label_win,label_tie`; the state
column is the space-separated card codes (hole first); floats render
with %.17g so values round-trip exactly.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from multiprocessing import Pool

import numpy as np

from .cards import Card
from .equity import GameState, simulate_equity
from .features import N_FEATURES, extract_features, feature_names
from .rng import floats_01, permutation, raw_words, select_rows

STAGE_BOARD_SIZES = (0, 3, 4, 5)  # preflop, flop, turn, river

# per-record word budget: w0 stage, w1..w7 deal, w8 label seed, w9..11 spare
_WORDS_PER_RECORD = 12

CSV_HEADER = ["state"] + feature_names() + ["label_win", "label_tie"]

_DECK_IDS = np.arange(52, dtype=np.int16)


class DatasetFormatError(ValueError):
    """Raised for malformed dataset CSV files."""


@dataclass(frozen=True)
class DatasetRecord:
    """One training instance: state, its features, and MC labels."""

    state: GameState
    features: tuple[float, ...]
    label_win: float
    label_tie: float


@dataclass(frozen=True)
class GenConfig:
    """Everything that determines dataset content (not execution)."""

    n_records: int
    master_seed: int
    label_rollouts: int = 1000
    stage_mix: tuple[float, float, float, float] = (0.25, 0.25, 0.25, 0.25)

    def __post_init__(self) -> None:
        if self.n_records <= 0:
            raise ValueError(f"n_records must be positive, got {self.n_records}")
        if self.label_rollouts <= 0:
            raise ValueError(f"label_rollouts must be positive, got {self.label_rollouts}")
        if len(self.stage_mix) != 4 or any(p < 0 for p in self.stage_mix):
            raise ValueError(f"stage_mix must be 4 non-negative weights, got {self.stage_mix}")
        if abs(sum(self.stage_mix) - 1.0) > 1e-9:
            raise ValueError(f"stage_mix must sum to 1, got {sum(self.stage_mix)}")


def _record_state(config: GenConfig, index: int) -> tuple[GameState, int]:
    """The game state and label seed for one record index."""
    words = raw_words((config.master_seed, index), 0, _WORDS_PER_RECORD)
    u = float(floats_01(words[:1])[0])
    edges = np.cumsum(config.stage_mix)
    stage_idx = int(np.searchsorted(edges, u, side="right"))
    stage_idx = min(stage_idx, 3)
    board_size = STAGE_BOARD_SIZES[stage_idx]
    # always deal 7 cards so the word layout is stage-independent
    dealt = select_rows(_DECK_IDS, 7, words[None, 1:8])[0]
    cards = [Card.from_id(int(i)) for i in dealt[: 2 + board_size]]
    state = GameState(hole=(cards[0], cards[1]), board=tuple(cards[2:]))
    return state, int(words[8])


def generate_block(config: GenConfig, start: int, count: int) -> list[DatasetRecord]:
    """Records start .. start+count-1, independent of any other block."""
    out = []
    for i in range(start, start + count):
        state, label_seed = _record_state(config, i)
        est = simulate_equity(state, config.label_rollouts, seed=label_seed)
        feats = tuple(float(x) for x in extract_features(state))
        out.append(
            DatasetRecord(
                state=state, features=feats, label_win=est.p_win, label_tie=est.p_tie
            )
        )
    return out


def _block_args(args: tuple[GenConfig, int, int]) -> list[DatasetRecord]:
    return generate_block(*args)


def generate(config: GenConfig, jobs: int = 1) -> list[DatasetRecord]:
    """The full dataset; `jobs` only affects wall time, never content."""
    if jobs <= 1:
        return generate_block(config, 0, config.n_records)
    bounds = np.linspace(0, config.n_records, jobs + 1).astype(int)
    tasks = [
        (config, int(a), int(b - a)) for a, b in zip(bounds, bounds[1:]) if b > a
    ]
    with Pool(processes=len(tasks)) as pool:
        blocks = pool.map(_block_args, tasks)
    return [rec for block in blocks for rec in block]


def split(
    records: list[DatasetRecord], train_fraction: float, seed: int
) -> tuple[list[DatasetRecord], list[DatasetRecord]]:
    """Shuffled train/test split; |train| = round(fraction * n)."""
    if not 0.0 <= train_fraction <= 1.0:
        raise ValueError(f"train_fraction must be in [0, 1], got {train_fraction}")
    if not records:
        raise ValueError("cannot split an empty record list")
    n = len(records)
    order = permutation(n, (seed, 0))
    n_train = round(train_fraction * n)
    train = [records[i] for i in order[:n_train]]
    test = [records[i] for i in order[n_train:]]
    return train, test


def features_matrix(records: list[DatasetRecord]) -> np.ndarray:
    return np.array([r.features for r in records], dtype=np.float64)


def labels_matrix(records: list[DatasetRecord]) -> np.ndarray:
    return np.array([(r.label_win, r.label_tie) for r in records], dtype=np.float64)


def save_csv(records: list[DatasetRecord], path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for r in records:
            writer.writerow(
                [r.state.to_codes()]
                + [f"{x:.17g}" for x in r.features]
                + [f"{r.label_win:.17g}", f"{r.label_tie:.17g}"]
            )


def load_csv(path) -> list[DatasetRecord]:
    records = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != CSV_HEADER:
            raise DatasetFormatError(f"unexpected header {header!r}")
        for line_no, row in enumerate(reader, start=2):
            if len(row) != len(CSV_HEADER):
                raise DatasetFormatError(
                    f"line {line_no}: {len(row)} fields, expected {len(CSV_HEADER)}"
                )
            try:
                state = GameState.from_codes(row[0])
                feats = tuple(float(x) for x in row[1 : 1 + N_FEATURES])
                label_win = float(row[1 + N_FEATURES])
                label_tie = float(row[2 + N_FEATURES])
            except ValueError as exc:
                raise DatasetFormatError(f"line {line_no}: {exc}") from exc
            records.append(
                DatasetRecord(
                    state=state, features=feats, label_win=label_win, label_tie=label_tie
                )
            )
    return records
