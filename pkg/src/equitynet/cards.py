"""Playing cards and best-hand evaluation for 2 to 7 cards.

Everything here is pure stdlib and stateless, so it is safe to call from
any number of threads. Ranks run 2..14 with Ace = 14; the Ace plays low
only in the wheel straight (A-2-3-4-5, ranked as 5-high).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum, IntEnum, unique
from typing import Iterable, Sequence

RANK_CODES = "23456789TJQKA"  # index 0 is rank 2
SUIT_CODES = "cdhs"


class CardParseError(ValueError):
    """A card code could not be parsed."""


class InvalidCardsError(ValueError):
    """A card collection violates an operation's contract."""


@unique
class Suit(IntEnum):
    CLUBS = 0
    DIAMONDS = 1
    HEARTS = 2
    SPADES = 3


@unique
class HandCategory(IntEnum):
    """Hand categories in strength order. Royal flush is just the
    ace-high straight flush, not a separate value."""

    HIGH_CARD = 0
    PAIR = 1
    TWO_PAIR = 2
    THREE_OF_A_KIND = 3
    STRAIGHT = 4
    FLUSH = 5
    FULL_HOUSE = 6
    FOUR_OF_A_KIND = 7
    STRAIGHT_FLUSH = 8


@dataclass(frozen=True, order=True)
class Card:
    rank: int  # 2..14, Ace = 14
    suit: Suit

    def __post_init__(self) -> None:
        if not 2 <= self.rank <= 14:
            raise CardParseError(f"rank {self.rank} out of range 2..14")

    @property
    def card_id(self) -> int:
        """Dense id 0..51, used to index array-based code."""
        return (self.rank - 2) * 4 + self.suit

    @classmethod
    def from_id(cls, card_id: int) -> "Card":
        return cls(rank=(card_id >> 2) + 2, suit=Suit(card_id & 3))

    def __str__(self) -> str:
        return format_card(self)


FULL_DECK: tuple[Card, ...] = tuple(
    Card(rank, suit) for rank in range(2, 15) for suit in Suit
)


def parse_card(text: str) -> Card:
    """Parse a two-character code like "As" or "Td"."""
    if len(text) != 2:
        raise CardParseError(f"card code {text!r} must be 2 characters")
    rank_ch, suit_ch = text[0].upper(), text[1].lower()
    if rank_ch not in RANK_CODES:
        raise CardParseError(f"bad rank character {rank_ch!r} in {text!r}")
    if suit_ch not in SUIT_CODES:
        raise CardParseError(f"bad suit character {suit_ch!r} in {text!r}")
    return Card(rank=RANK_CODES.index(rank_ch) + 2, suit=Suit(SUIT_CODES.index(suit_ch)))


def format_card(card: Card) -> str:
    return RANK_CODES[card.rank - 2] + SUIT_CODES[card.suit]


def parse_cards(text: str) -> tuple[Card, ...]:
    """Parse a space-separated card list such as "As Kd 7c"."""
    return tuple(parse_card(tok) for tok in text.split())


def format_cards(cards: Iterable[Card]) -> str:
    return " ".join(format_card(c) for c in cards)


@dataclass(frozen=True, order=True)
class HandRank:
    """Total order on best-hand strength.

    Compares by category, then lexicographically by tiebreakers. The
    tiebreakers are category-specific rank values, high first, e.g. a
    straight carries its high card, quads carry quad rank then kicker.
    """

    category: HandCategory
    tiebreakers: tuple[int, ...]


@unique
class ShowdownResult(Enum):
    A_WINS = "a_wins"
    B_WINS = "b_wins"
    TIE = "tie"


def compare_showdown(a: HandRank, b: HandRank) -> ShowdownResult:
    if a > b:
        return ShowdownResult.A_WINS
    if a < b:
        return ShowdownResult.B_WINS
    return ShowdownResult.TIE


_WHEEL = frozenset((14, 2, 3, 4, 5))


def _straight_high(ranks: frozenset[int] | set[int]) -> int:
    """Highest straight high-card makeable from the given rank set, or 0.

    The wheel counts with high card 5.
    """
    for high in range(14, 5, -1):
        if all(r in ranks for r in range(high - 4, high + 1)):
            return high
    if _WHEEL <= ranks:
        return 5
    return 0


def _top_ranks(ranks: Iterable[int], count: int, exclude: tuple[int, ...] = ()) -> tuple[int, ...]:
    picked = sorted({r for r in ranks if r not in exclude}, reverse=True)
    return tuple(picked[:count])


def evaluate_best(cards: Sequence[Card] | Iterable[Card]) -> HandRank:
    """Best 5-card hand rank over 2..7 distinct cards.

    With fewer than 5 cards only the categories achievable with that
    count can appear (two cards make at most a pair).
    """
    cards = tuple(cards)
    if not 2 <= len(cards) <= 7:
        raise InvalidCardsError(f"need 2..7 cards, got {len(cards)}")
    if len(set(cards)) != len(cards):
        raise InvalidCardsError(f"duplicate cards in {format_cards(cards)}")

    ranks = [c.rank for c in cards]
    counts = Counter(ranks)
    by_suit: dict[Suit, list[int]] = {}
    for c in cards:
        by_suit.setdefault(c.suit, []).append(c.rank)
    flush_ranks = next(
        (sorted(rs, reverse=True) for rs in by_suit.values() if len(rs) >= 5), None
    )

    if flush_ranks is not None:
        sf_high = _straight_high(set(flush_ranks))
        if sf_high:
            return HandRank(HandCategory.STRAIGHT_FLUSH, (sf_high,))

    quads = sorted((r for r, n in counts.items() if n == 4), reverse=True)
    trips = sorted((r for r, n in counts.items() if n == 3), reverse=True)
    pairs = sorted((r for r, n in counts.items() if n == 2), reverse=True)

    if quads:
        q = quads[0]
        return HandRank(HandCategory.FOUR_OF_A_KIND, (q,) + _top_ranks(ranks, 1, (q,)))

    if trips and (pairs or len(trips) >= 2):
        # a second trip can fill the pair slot (with 7 cards only one of
        # "two trips" / "trip plus pair" is possible at a time)
        under = max(pairs + trips[1:])
        return HandRank(HandCategory.FULL_HOUSE, (trips[0], under))

    if flush_ranks is not None:
        return HandRank(HandCategory.FLUSH, tuple(flush_ranks[:5]))

    straight = _straight_high(set(ranks))
    if straight:
        return HandRank(HandCategory.STRAIGHT, (straight,))

    if trips:
        t = trips[0]
        return HandRank(HandCategory.THREE_OF_A_KIND, (t,) + _top_ranks(ranks, 2, (t,)))

    if len(pairs) >= 2:
        p1, p2 = pairs[0], pairs[1]
        return HandRank(HandCategory.TWO_PAIR, (p1, p2) + _top_ranks(ranks, 1, (p1, p2)))

    if pairs:
        p = pairs[0]
        return HandRank(HandCategory.PAIR, (p,) + _top_ranks(ranks, 3, (p,)))

    return HandRank(HandCategory.HIGH_CARD, _top_ranks(ranks, 5))
