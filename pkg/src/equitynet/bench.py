"""Latency benchmarks: Monte Carlo equity vs network inference.

Each stage is timed over a fresh batch of random states with warm-up
calls excluded, reporting mean / median / p95 wall-clock seconds per
call. Network timings include feature extraction, since that is part of
answering a query. The speedup ratio is reported, never asserted — it
is hardware-dependent.

Module constants carry the timings published for the original
implementation of this approach, for side-by-side display only.
"""

from __future__ import annotations

import platform
import time
from dataclasses import dataclass, field

import numpy as np

from .cards import Card
from .equity import GameState, simulate_equity
from .model import EquityNetwork
from .network import dump_params
from .rng import raw_words, select_rows

# published single-hand timings of the original implementation (seconds)
PUBLISHED_MC_SECONDS = 0.46563
PUBLISHED_INFER_SECONDS = 0.00078
# published size of the full precomputed-lookup-table alternative (MB)
PUBLISHED_LOOKUP_TABLE_MB = 123.0

STAGE_BOARD_SIZES = {"preflop": 0, "flop": 3, "turn": 4, "river": 5}

_DECK_IDS = np.arange(52, dtype=np.int16)


def sample_states(stage: str, count: int, seed: int) -> list[GameState]:
    """Uniform random states of one stage, reproducible per (seed, i)."""
    if stage not in STAGE_BOARD_SIZES:
        raise ValueError(f"unknown stage {stage!r}")
    board_size = STAGE_BOARD_SIZES[stage]
    stage_tag = list(STAGE_BOARD_SIZES).index(stage) << 32
    states = []
    for i in range(count):
        words = raw_words((seed, stage_tag | i), 0, 8)
        dealt = select_rows(_DECK_IDS, 2 + board_size, words[None, : 2 + board_size])[0]
        cards = [Card.from_id(int(c)) for c in dealt]
        states.append(GameState(hole=(cards[0], cards[1]), board=tuple(cards[2:])))
    return states


@dataclass(frozen=True)
class BenchRow:
    """Per-call latency summary for one stage and method."""

    stage: str
    method: str  # "mc" or "infer"
    calls: int
    mean_s: float
    median_s: float
    p95_s: float


@dataclass
class BenchReport:
    """All timing rows plus model size and machine context."""

    rows: list[BenchRow]
    model_bytes: int = 0
    machine: dict[str, str] = field(default_factory=dict)

    def row(self, stage: str, method: str) -> BenchRow:
        for r in self.rows:
            if r.stage == stage and r.method == method:
                return r
        raise KeyError(f"no bench row for ({stage}, {method})")

    def speedup(self, stage: str) -> float:
        return self.row(stage, "mc").mean_s / self.row(stage, "infer").mean_s

    def to_csv(self, path) -> None:
        with open(path, "w") as fh:
            for k, v in self.machine.items():
                fh.write(f"# {k}: {v}\n")
            fh.write(f"# model_bytes: {self.model_bytes}\n")
            fh.write(
                f"# published: mc {PUBLISHED_MC_SECONDS}s, "
                f"inference {PUBLISHED_INFER_SECONDS}s, "
                f"lookup table {PUBLISHED_LOOKUP_TABLE_MB} MB\n"
            )
            fh.write("stage,method,calls,mean_s,median_s,p95_s\n")
            for r in self.rows:
                fh.write(
                    f"{r.stage},{r.method},{r.calls},"
                    f"{r.mean_s:.9f},{r.median_s:.9f},{r.p95_s:.9f}\n"
                )

    def format_table(self) -> str:
        lines = [
            f"{'stage':<8} {'method':<6} {'mean':>12} {'median':>12} {'p95':>12}"
        ]
        for r in self.rows:
            lines.append(
                f"{r.stage:<8} {r.method:<6} {r.mean_s:>11.6f}s "
                f"{r.median_s:>11.6f}s {r.p95_s:>11.6f}s"
            )
        for stage in STAGE_BOARD_SIZES:
            try:
                lines.append(f"{stage}: inference speedup x{self.speedup(stage):.1f}")
            except KeyError:
                pass
        lines.append(
            f"model file: {self.model_bytes} bytes "
            f"(published lookup-table alternative: {PUBLISHED_LOOKUP_TABLE_MB} MB)"
        )
        lines.append(
            f"published baselines: mc {PUBLISHED_MC_SECONDS}s, "
            f"inference {PUBLISHED_INFER_SECONDS}s"
        )
        return "\n".join(lines)


def _time_calls(fn, states, warmup: int) -> tuple[int, float, float, float]:
    for i in range(warmup):
        fn(states[i % len(states)])
    times = np.empty(len(states))
    for i, s in enumerate(states):
        t0 = time.perf_counter()
        fn(s)
        times[i] = time.perf_counter() - t0
    return (
        len(states),
        float(times.mean()),
        float(np.median(times)),
        float(np.percentile(times, 95)),
    )


def run_bench(
    model: EquityNetwork,
    n_states: int = 100,
    n_rollouts: int = 1000,
    warmup: int = 10,
    seed: int = 0,
) -> BenchReport:
    """Time Monte Carlo (n_rollouts) vs inference on every stage."""
    if warmup < 10:
        raise ValueError(f"warmup must be at least 10 calls, got {warmup}")
    if n_states < 1:
        raise ValueError(f"n_states must be positive, got {n_states}")
    rows = []
    for stage in STAGE_BOARD_SIZES:
        states = sample_states(stage, n_states, seed)
        mc = lambda s: simulate_equity(s, n_rollouts, seed=seed)
        rows.append(BenchRow(stage, "mc", *_time_calls(mc, states, warmup)))
        rows.append(BenchRow(stage, "infer", *_time_calls(model.infer, states, warmup)))
    machine = {
        "platform": platform.platform(),
        "python": platform.python_version(),
        "numpy": np.__version__,
        "mc_rollouts": str(n_rollouts),
    }
    model_bytes = len(dump_params(model.params_))
    return BenchReport(rows=rows, model_bytes=model_bytes, machine=machine)


def training_cost_projection(
    latency_s: float, hands: int = 1_000_000, sims_per_hand: int = 1
) -> float:
    """Hours to label `hands` states at `latency_s` per simulation call."""
    return hands * sims_per_hand * latency_s / 3600.0
