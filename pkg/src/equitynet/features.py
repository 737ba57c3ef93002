"""Feature extraction: 29 numeric descriptors of a game state.

Layout (all values in [0, 1]):

* f1-f8    exact probability that the hero's final 7-card hand lands in
           each made category, strongest first (straight flush, four of a
           kind, full house, flush, straight, three of a kind, two pair,
           pair). High card is the residual and gets no slot.
* f9-f16   one-hot: category currently made by hole + board (same order,
           all zero on a high card).
* f17-f24  one-hot: category made by the board alone (zeros preflop).
* f25,f26  high and low hole rank, (rank - 2) / 12.
* f27      size of the largest single-suit group among visible cards / 7.
* f28      missing-card distance to the nearest straight window / 4.
* f29      board size / 5.

f1-f8 enumerate the remaining board exactly. On the flop that is
C(47,2) = 1081 completions, on the turn 46; preflop uses a table of all
169 hole-card classes, each precomputed over the full C(50,5) = 2118760
boards and shipped with the package.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources
from itertools import chain, combinations
from math import comb

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .cards import Card, HandCategory, RANK_CODES, Suit, evaluate_best
from .equity import GameState, _pair_rows, remaining_ids
from .fasteval import eval_ids, unpack_category

N_FEATURES = 29

# category columns f1-f8 / f9-f16 / f17-f24, strongest first
CATEGORY_ORDER = (
    HandCategory.STRAIGHT_FLUSH,
    HandCategory.FOUR_OF_A_KIND,
    HandCategory.FULL_HOUSE,
    HandCategory.FLUSH,
    HandCategory.STRAIGHT,
    HandCategory.THREE_OF_A_KIND,
    HandCategory.TWO_PAIR,
    HandCategory.PAIR,
)

PREFLOP_TABLE_RESOURCE = "preflop_category_counts.csv"
PREFLOP_BOARDS = comb(50, 5)

_WINDOW_RANK_SETS = [frozenset({14, 2, 3, 4, 5})] + [
    frozenset(range(h - 4, h + 1)) for h in range(6, 15)
]


def hole_class(hole: tuple[Card, Card]) -> str:
    """Canonical 169-class label for a hole pair: 'AKs', 'AKo' or 'TT'."""
    hi, lo = max(hole[0].rank, hole[1].rank), min(hole[0].rank, hole[1].rank)
    label = RANK_CODES[hi - 2] + RANK_CODES[lo - 2]
    if hi == lo:
        return label
    return label + ("s" if hole[0].suit == hole[1].suit else "o")


def all_hole_classes() -> list[str]:
    """The 169 class labels: 13 pairs, 78 suited, 78 offsuit."""
    labels = []
    for i, hi in enumerate(reversed(RANK_CODES)):
        labels.append(hi + hi)
        for lo in reversed(RANK_CODES[: 12 - i]):
            labels.append(hi + lo + "s")
            labels.append(hi + lo + "o")
    return labels


def class_representative(label: str) -> tuple[Card, Card]:
    """A concrete hole pair belonging to the class."""
    hi = RANK_CODES.index(label[0]) + 2
    lo = RANK_CODES.index(label[1]) + 2
    if len(label) == 2:
        return Card(hi, Suit.SPADES), Card(lo, Suit.HEARTS)
    if label[2] == "s":
        return Card(hi, Suit.SPADES), Card(lo, Suit.SPADES)
    return Card(hi, Suit.SPADES), Card(lo, Suit.HEARTS)


@lru_cache(maxsize=1)
def _board_position_combos() -> np.ndarray:
    """All C(50,5) index combinations into a 50-card pool, shape (N, 5)."""
    n = PREFLOP_BOARDS
    flat = np.fromiter(
        chain.from_iterable(combinations(range(50), 5)), dtype=np.int8, count=5 * n
    )
    return flat.reshape(n, 5)


def _category_counts(rows: np.ndarray, chunk: int = 1 << 18) -> np.ndarray:
    """Count of each HandCategory over an (n, 7) id matrix."""
    counts = np.zeros(9, dtype=np.int64)
    for start in range(0, rows.shape[0], chunk):
        cats = unpack_category(eval_ids(rows[start : start + chunk]))
        counts += np.bincount(cats, minlength=9)
    return counts


def preflop_class_counts(label: str) -> np.ndarray:
    """Exact category counts for a hole class over all C(50,5) boards."""
    hole = class_representative(label)
    state = GameState(hole=hole, board=())
    pool = remaining_ids(state)
    boards = pool[_board_position_combos()]
    hole_ids = np.array([c.card_id for c in hole], dtype=np.int16)
    rows = np.hstack([np.broadcast_to(hole_ids, (boards.shape[0], 2)), boards])
    return _category_counts(rows)


def build_preflop_table(out_path) -> None:
    """Write the 169-row preflop category-count table as CSV."""
    with open(out_path, "w") as fh:
        fh.write("class,total," + ",".join(c.name.lower() for c in HandCategory) + "\n")
        for label in all_hole_classes():
            counts = preflop_class_counts(label)
            fh.write(f"{label},{PREFLOP_BOARDS}," + ",".join(map(str, counts)) + "\n")


@lru_cache(maxsize=1)
def load_preflop_table() -> dict[str, np.ndarray]:
    """class label -> probability vector over the 9 categories."""
    text = (
        resources.files("equitynet.data").joinpath(PREFLOP_TABLE_RESOURCE).read_text()
    )
    lines = text.strip().split("\n")
    table = {}
    for line in lines[1:]:
        parts = line.split(",")
        label, total = parts[0], int(parts[1])
        counts = np.array([int(x) for x in parts[2:]], dtype=np.int64)
        if counts.size != 9 or counts.sum() != total:
            raise ValueError(f"corrupt preflop table row for class {label}")
        table[label] = counts / total
    if len(table) != 169:
        raise ValueError(f"preflop table has {len(table)} classes, expected 169")
    return table


def final_category_distribution(state: GameState) -> np.ndarray:
    """P(final 7-card hand category) over HandCategory order, exact."""
    if state.stage == "preflop":
        return load_preflop_table()[hole_class(state.hole)].copy()
    ids = np.array([c.card_id for c in state.cards], dtype=np.int16)
    if state.stage == "river":
        dist = np.zeros(9)
        dist[unpack_category(eval_ids(ids[None, :]))[0]] = 1.0
        return dist
    pool = remaining_ids(state)
    if state.stage == "turn":
        completions = pool[:, None]
    else:
        completions = _pair_rows(pool)
    n = completions.shape[0]
    rows = np.hstack([np.broadcast_to(ids, (n, ids.size)), completions])
    counts = _category_counts(rows)
    return counts / n


def made_category(cards: tuple[Card, ...]) -> HandCategory | None:
    """Best category over the given cards; None when fewer than 2."""
    if len(cards) < 2:
        return None
    return evaluate_best(cards).category


def max_suited_count(cards: tuple[Card, ...]) -> int:
    """Size of the largest same-suit group among the cards."""
    counts = [0, 0, 0, 0]
    for c in cards:
        counts[c.suit] += 1
    return max(counts)


def straight_gap(cards: tuple[Card, ...]) -> int:
    """Fewest additional ranks needed to fill any 5-rank straight window."""
    ranks = {c.rank for c in cards}
    return min(5 - len(window & ranks) for window in _WINDOW_RANK_SETS)


def _category_onehot(category: HandCategory | None) -> np.ndarray:
    vec = np.zeros(len(CATEGORY_ORDER))
    if category is not None and category != HandCategory.HIGH_CARD:
        vec[CATEGORY_ORDER.index(category)] = 1.0
    return vec


def made_indicators(cards: tuple[Card, ...]) -> np.ndarray:
    """8 binaries, one-hot at the made category; all zero for high card."""
    return _category_onehot(evaluate_best(cards).category)


def extract_features(state: GameState) -> np.ndarray:
    """The 29-element feature vector for one state."""
    dist = final_category_distribution(state)
    f_dist = dist[[int(c) for c in CATEGORY_ORDER]]
    f_made = made_indicators(state.cards)
    f_board = _category_onehot(made_category(state.board))
    hi = max(state.hole[0].rank, state.hole[1].rank)
    lo = min(state.hole[0].rank, state.hole[1].rank)
    scalars = np.array(
        [
            (hi - 2) / 12,
            (lo - 2) / 12,
            max_suited_count(state.cards) / 7,
            straight_gap(state.cards) / 4,
            len(state.board) / 5,
        ]
    )
    return np.concatenate([f_dist, f_made, f_board, scalars])


def feature_names() -> list[str]:
    return [f"f{i}" for i in range(1, N_FEATURES + 1)]


class FeatureExtractor(TransformerMixin, BaseEstimator):
    """sklearn-style transformer: game states -> (n, 29) feature matrix.

    Accepts GameState objects or their string form ('Ah Kd Qs Jc 2c').
    Stateless; fit is a no-op kept for pipeline compatibility.
    """

    def fit(self, X, y=None):
        return self

    def transform(self, X) -> np.ndarray:
        states = [s if isinstance(s, GameState) else GameState.from_codes(s) for s in X]
        if not states:
            return np.empty((0, N_FEATURES))
        return np.stack([extract_features(s) for s in states])

    def get_feature_names_out(self, input_features=None):
        return np.array(feature_names(), dtype=object)
