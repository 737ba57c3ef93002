"""Heads-up equity against a uniform random opponent.

A GameState is the hero's two hole cards plus a public board of 0, 3, 4
or 5 cards. Both players always see the hand through to the river; the
opponent's hole cards and the missing board cards are uniform over the
unseen deck. Equity is reported as separate win and tie probabilities
(ties are counted, not split).

Two routes produce the same quantity:

* simulate_equity  - Monte Carlo rollouts, reproducible per (seed, i)
* exact_equity     - full enumeration (flop, turn, river)
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .cards import Card, FULL_DECK, format_cards, parse_cards
from .fasteval import eval_ids
from .rng import WORDS_PER_BLOCK, raw_words, select_rows

STAGES = ("preflop", "flop", "turn", "river")
_BOARD_SIZES = {0: "preflop", 3: "flop", 4: "turn", 5: "river"}

# one rollout owns two Philox blocks (8 words); draws use words 0..6
_BLOCKS_PER_ROLLOUT = 2
_WORDS_PER_ROLLOUT = _BLOCKS_PER_ROLLOUT * WORDS_PER_BLOCK


class InvalidStateError(ValueError):
    """Raised for malformed game states (bad sizes or duplicate cards)."""


class UnsupportedStageError(ValueError):
    """Raised when a computation is not offered for the state's stage."""


@dataclass(frozen=True)
class GameState:
    """Hero hole cards plus the public board."""

    hole: tuple[Card, Card]
    board: tuple[Card, ...]

    def __post_init__(self) -> None:
        if len(self.hole) != 2:
            raise InvalidStateError(f"hole must hold 2 cards, got {len(self.hole)}")
        if len(self.board) not in _BOARD_SIZES:
            raise InvalidStateError(
                f"board must hold 0, 3, 4 or 5 cards, got {len(self.board)}"
            )
        cards = self.hole + self.board
        if len(set(cards)) != len(cards):
            raise InvalidStateError(f"duplicate card in state {format_cards(cards)}")

    @property
    def stage(self) -> str:
        return _BOARD_SIZES[len(self.board)]

    @property
    def cards(self) -> tuple[Card, ...]:
        return self.hole + self.board

    @classmethod
    def from_codes(cls, text: str) -> "GameState":
        """Parse 'Ah Kd Qs ...': first two codes are the hole cards."""
        cards = parse_cards(text)
        if len(cards) < 2:
            raise InvalidStateError("need at least 2 card codes (the hole cards)")
        return cls(hole=(cards[0], cards[1]), board=tuple(cards[2:]))

    def to_codes(self) -> str:
        return format_cards(self.cards)


@dataclass(frozen=True)
class EquityEstimate:
    """Win/tie tallies over n opponent scenarios (Monte Carlo or exact)."""

    wins: int
    ties: int
    n: int

    @property
    def p_win(self) -> float:
        return self.wins / self.n

    @property
    def p_tie(self) -> float:
        return self.ties / self.n


def remaining_ids(state: GameState) -> np.ndarray:
    """Sorted dense ids of the cards not visible in the state."""
    seen = {c.card_id for c in state.cards}
    return np.array([c.card_id for c in FULL_DECK if c.card_id not in seen], dtype=np.int16)


def _rollout_draws(state: GameState, seed: int, start: int, count: int) -> np.ndarray:
    """Opponent-hole + board-completion ids for rollouts start..start+count-1.

    Rollout i always consumes the same Philox words regardless of how the
    run is chunked: blocks 2i and 2i+1 of the (seed, 0) stream. Word j of
    a rollout drives draw j (two opponent cards, then the completion).
    """
    pool = remaining_ids(state)
    k = 2 + (5 - len(state.board))
    words = raw_words(
        (seed, 0), _BLOCKS_PER_ROLLOUT * start, _WORDS_PER_ROLLOUT * count
    ).reshape(count, _WORDS_PER_ROLLOUT)
    return select_rows(pool, k, words)


def _tally(state: GameState, opp: np.ndarray, completion: np.ndarray) -> tuple[int, int]:
    """Count hero wins/ties over rows of opponent holes + board completions."""
    n = opp.shape[0]
    hole = np.array([c.card_id for c in state.hole], dtype=np.int16)
    board = np.array([c.card_id for c in state.board], dtype=np.int16)
    fixed = np.broadcast_to(board, (n, board.size))
    hero = np.hstack([np.broadcast_to(hole, (n, 2)), fixed, completion])
    villain = np.hstack([opp, fixed, completion])
    hero_keys = eval_ids(hero)
    opp_keys = eval_ids(villain)
    return int((hero_keys > opp_keys).sum()), int((hero_keys == opp_keys).sum())


def simulate_equity(
    state: GameState, n_rollouts: int, seed: int, chunk_size: int = 32768
) -> EquityEstimate:
    """Monte Carlo equity from n_rollouts random showdowns.

    Rollout i is a pure function of (seed, i), so results are identical
    across chunk sizes and platforms.
    """
    if n_rollouts <= 0:
        raise ValueError(f"n_rollouts must be positive, got {n_rollouts}")
    wins = ties = 0
    for start in range(0, n_rollouts, chunk_size):
        count = min(chunk_size, n_rollouts - start)
        draws = _rollout_draws(state, seed, start, count)
        w, t = _tally(state, draws[:, :2], draws[:, 2:])
        wins += w
        ties += t
    return EquityEstimate(wins=wins, ties=ties, n=n_rollouts)


def convergence_trace(
    state: GameState, n_rollouts: int, seed: int, every: int = 100
) -> list[tuple[int, float, float]]:
    """Running (count, p_win, p_tie) after every `every` rollouts.

    The trace is prefix-consistent with simulate_equity: the entry at
    count n equals simulate_equity(state, n, seed).
    """
    if n_rollouts <= 0:
        raise ValueError(f"n_rollouts must be positive, got {n_rollouts}")
    if every <= 0:
        raise ValueError(f"every must be positive, got {every}")
    draws = _rollout_draws(state, seed, 0, n_rollouts)
    hole = np.array([c.card_id for c in state.hole], dtype=np.int16)
    board = np.array([c.card_id for c in state.board], dtype=np.int16)
    fixed = np.broadcast_to(board, (n_rollouts, board.size))
    hero = np.hstack([np.broadcast_to(hole, (n_rollouts, 2)), fixed, draws[:, 2:]])
    villain = np.hstack([draws[:, :2], fixed, draws[:, 2:]])
    hero_keys = eval_ids(hero)
    opp_keys = eval_ids(villain)
    cum_wins = np.cumsum(hero_keys > opp_keys)
    cum_ties = np.cumsum(hero_keys == opp_keys)
    points = list(range(every, n_rollouts + 1, every))
    if not points or points[-1] != n_rollouts:
        points.append(n_rollouts)
    return [(p, cum_wins[p - 1] / p, cum_ties[p - 1] / p) for p in points]


def _pair_rows(pool: np.ndarray) -> np.ndarray:
    """All unordered pairs from pool as an (C(n,2), 2) id matrix."""
    i, j = np.triu_indices(pool.size, k=1)
    return np.stack([pool[i], pool[j]], axis=1).astype(np.int16)


def exact_equity(state: GameState) -> EquityEstimate:
    """Exhaustive equity over all opponent holes and board completions.

    Supported post-flop only; the preflop tree (opponent holes times
    two-million boards) is out of scope for this enumerator.
    """
    if state.stage == "preflop":
        raise UnsupportedStageError(
            "exact enumeration supports flop, turn and river states only"
        )
    pool = remaining_ids(state)
    wins = ties = total = 0
    if state.stage == "river":
        opp = _pair_rows(pool)
        w, t = _tally(state, opp, np.empty((opp.shape[0], 0), dtype=np.int16))
        return EquityEstimate(wins=w, ties=t, n=opp.shape[0])
    n_missing = 5 - len(state.board)
    for completion in combinations(pool.tolist(), n_missing):
        rest = np.array(sorted(set(pool.tolist()) - set(completion)), dtype=np.int16)
        opp = _pair_rows(rest)
        comp = np.broadcast_to(
            np.array(completion, dtype=np.int16), (opp.shape[0], n_missing)
        )
        w, t = _tally(state, opp, comp)
        wins += w
        ties += t
        total += opp.shape[0]
    return EquityEstimate(wins=wins, ties=ties, n=total)
