"""Vectorized hand evaluation over batches of 5, 6, or 7 card hands.

Hands arrive as (n, m) matrices of dense card ids (0..51). Each row is
reduced to a single uint32 key whose integer order matches the HandRank
order from the cards module exactly:

    key = category << 20 | t1 << 16 | t2 << 12 | t3 << 8 | t4 << 4 | t5

with tiebreaker ranks stored as their raw 2..14 values (4 bits each,
missing slots 0). Key equality therefore means a showdown tie.
"""

from __future__ import annotations

import numpy as np

from .cards import HandRank

_POW2 = (1 << np.arange(15)).astype(np.int64)

# straight windows: high card h covers rank bits h-4 .. h; the wheel is
# covered through the ace-low bit copied onto bit 1
_WINDOW_HIGHS = np.arange(5, 15, dtype=np.int64)
_WINDOW_MASKS = np.array([0b11111 << (h - 4) for h in range(5, 15)], dtype=np.int64)

# _TOP_RANK[mask] = index of the highest set bit (0 for an empty mask)
_TOP_RANK = np.zeros(1 << 15, dtype=np.int64)
for _r in range(1, 15):
    _TOP_RANK[1 << _r : 1 << (_r + 1)] = _r


def pack_key(hand_rank: HandRank) -> int:
    """Pack a HandRank from a 5..7 card evaluation into the uint32 key."""
    tb = hand_rank.tiebreakers
    key = int(hand_rank.category) << 20
    for slot, rank in enumerate(tb[:5]):
        key |= rank << (16 - 4 * slot)
    return key


def unpack_category(keys: np.ndarray) -> np.ndarray:
    """Category codes (HandCategory values) from packed keys."""
    return keys >> 20


def _pop_top(mask: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Highest set rank bit of each mask (0 if empty) and the stripped mask."""
    top = _TOP_RANK[mask]
    return top, mask & ~(_POW2[top] * (top > 0))


def eval_ids(ids: np.ndarray) -> np.ndarray:
    """uint32 strength keys for an (n, m) card-id matrix, m in 5..7."""
    n, m = ids.shape
    if not 5 <= m <= 7:
        raise ValueError(f"rows must hold 5..7 cards, got {m}")
    if n == 0:
        return np.empty(0, dtype=np.uint32)
    ranks = (ids >> 2) + 2  # 2..14
    suits = ids & 3

    rows = np.arange(n)
    cnt = np.bincount(
        (ranks + 15 * rows[:, None]).ravel(), minlength=15 * n
    ).reshape(n, 15)
    suit_cnt = np.bincount(
        (suits + 4 * rows[:, None]).ravel(), minlength=4 * n
    ).reshape(n, 4)

    present = ((cnt > 0) * _POW2).sum(axis=1)
    pair_mask = ((cnt == 2) * _POW2).sum(axis=1)
    trip_mask = ((cnt == 3) * _POW2).sum(axis=1)
    quad_mask = ((cnt == 4) * _POW2).sum(axis=1)

    # straight: presence bits plus ace copied low for the wheel
    wheel_mask = present | ((present >> 13) & 2)
    hit = (wheel_mask[:, None] & _WINDOW_MASKS) == _WINDOW_MASKS
    straight_high = (hit * _WINDOW_HIGHS).max(axis=1)  # 0 when no straight

    # flush: at most one suit can reach 5 cards out of 7
    has_flush = (suit_cnt >= 5).any(axis=1)
    flush_suit = (suit_cnt >= 5).argmax(axis=1)
    flush_mask = np.where(suits == flush_suit[:, None], _POW2[ranks], 0).sum(axis=1)
    sf_hit = ((flush_mask | ((flush_mask >> 13) & 2))[:, None] & _WINDOW_MASKS) == _WINDOW_MASKS
    sf_high = (sf_hit * _WINDOW_HIGHS).max(axis=1)
    has_sf = has_flush & (sf_high > 0)

    f1, fm = _pop_top(flush_mask)
    f2, fm = _pop_top(fm)
    f3, fm = _pop_top(fm)
    f4, fm = _pop_top(fm)
    f5, _ = _pop_top(fm)

    quad, _ = _pop_top(quad_mask)
    quad_kick, _ = _pop_top(present & ~_POW2[quad])

    trip, trip_rest = _pop_top(trip_mask)
    trip2, _ = _pop_top(trip_rest)
    p1, pair_rest = _pop_top(pair_mask)
    p2, _ = _pop_top(pair_rest)
    has_fh = (trip > 0) & ((p1 > 0) | (trip2 > 0))
    fh_under = np.maximum(p1, trip2)

    kick_pool = present & ~_POW2[trip]
    tk1, kick_pool = _pop_top(kick_pool)
    tk2, _ = _pop_top(kick_pool)

    tp_kick, _ = _pop_top(present & ~_POW2[p1] & ~_POW2[p2])

    kick_pool = present & ~_POW2[p1]
    pk1, kick_pool = _pop_top(kick_pool)
    pk2, kick_pool = _pop_top(kick_pool)
    pk3, _ = _pop_top(kick_pool)

    h_pool = present
    h1, h_pool = _pop_top(h_pool)
    h2, h_pool = _pop_top(h_pool)
    h3, h_pool = _pop_top(h_pool)
    h4, h_pool = _pop_top(h_pool)
    h5, _ = _pop_top(h_pool)

    conds = [
        has_sf,
        quad > 0,
        has_fh,
        has_flush,
        straight_high > 0,
        trip > 0,
        p2 > 0,
        p1 > 0,
    ]
    zeros = np.zeros(n, dtype=np.int64)
    cat = np.select(conds, [8, 7, 6, 5, 4, 3, 2, 1], default=0)
    t1 = np.select(conds, [sf_high, quad, trip, f1, straight_high, trip, p1, p1], default=h1)
    t2 = np.select(conds, [zeros, quad_kick, fh_under, f2, zeros, tk1, p2, pk1], default=h2)
    t3 = np.select(conds, [zeros, zeros, zeros, f3, zeros, tk2, tp_kick, pk2], default=h3)
    t4 = np.select(conds, [zeros, zeros, zeros, f4, zeros, zeros, zeros, pk3], default=h4)
    t5 = np.select(conds, [zeros, zeros, zeros, f5, zeros, zeros, zeros, zeros], default=h5)

    key = (cat << 20) | (t1 << 16) | (t2 << 12) | (t3 << 8) | (t4 << 4) | t5
    return key.astype(np.uint32)


def cards_to_ids(cards) -> np.ndarray:
    """Dense id vector for an iterable of Card objects."""
    return np.array([c.card_id for c in cards], dtype=np.int16)


def eval_key(cards) -> int:
    """Packed key of a single 5..7 card hand (convenience wrapper)."""
    return int(eval_ids(cards_to_ids(cards)[None, :])[0])
