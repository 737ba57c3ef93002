"""Reproducible randomness on top of the Philox-4x64-10 counter generator.

All random behaviour in this package reduces to the raw 64-bit word
stream of numpy's Philox bit generator, keyed by a (seed, index) pair.
Philox is counter-based: word w of a stream is a pure function of
(key, w), so any worker can jump to an arbitrary offset and reproduce
exactly the words a single-threaded run would have used. numpy pins the
Philox stream across versions, which gives fixed cross-platform output.

Bounded draws use 53-bit fixed point: take the top 53 bits of a word u
and return (u * bound) >> 53. This is pure integer arithmetic, so it is
bit-reproducible everywhere; the deviation from uniform is at most
bound / 2**53 (~6e-15 for a deck), far below Monte Carlo resolution.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1
WORDS_PER_BLOCK = 4  # Philox-4x64 emits 4 words per counter increment


def raw_words(key: tuple[int, int], start_block: int, n_words: int) -> np.ndarray:
    """Words [4*start_block, 4*start_block + n_words) of the keyed stream."""
    k0, k1 = key[0] & _MASK64, key[1] & _MASK64
    bg = np.random.Philox(key=[k0, k1], counter=[start_block, 0, 0, 0])
    return bg.random_raw(n_words)


def uniform_below(words: np.ndarray, bound: int) -> np.ndarray:
    """Map uint64 words to integers in [0, bound) via 53-bit fixed point."""
    return ((words >> np.uint64(11)) * np.uint64(bound)) >> np.uint64(53)


def floats_01(words: np.ndarray) -> np.ndarray:
    """Map uint64 words to float64 in [0, 1) with the standard 53-bit rule."""
    return (words >> np.uint64(11)) * (2.0 ** -53)


def select_rows(pool: np.ndarray, k: int, draw_words: np.ndarray) -> np.ndarray:
    """Draw k items without replacement from pool, one row per word row.

    Runs a partial Fisher-Yates on a copy of pool per row; row i consumes
    draw_words[i, :k]. Returns an (n, k) array of selected pool values in
    draw order.
    """
    n = draw_words.shape[0]
    size = pool.shape[0]
    arr = np.broadcast_to(pool, (n, size)).copy()
    rows = np.arange(n)
    for j in range(k):
        r = j + uniform_below(draw_words[:, j], size - j).astype(np.int64)
        picked = arr[rows, r].copy()
        arr[rows, r] = arr[:, j]
        arr[:, j] = picked
    return arr[:, :k]


def permutation(n: int, key: tuple[int, int]) -> np.ndarray:
    """Deterministic permutation of range(n): argsort of n stream words.

    Stable argsort of distinct uint64 keys; a collision (probability
    ~n^2 / 2^65) still yields a deterministic result via stability.
    """
    words = raw_words(key, 0, n)
    return np.argsort(words, kind="stable")
