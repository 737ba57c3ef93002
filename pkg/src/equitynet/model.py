"""Estimator wrapper: train/evaluate/apply the equity network.

EquityNetwork follows the sklearn estimator protocol (get_params /
set_params / fit / predict, trailing-underscore fitted attributes) so it
composes with pipelines and model-selection utilities, while the math
stays in the hand-written network module.

Accuracy reporting mirrors a deviation-bucket table: for win and tie
separately, the share of held-out predictions within 0.5, 1, 2, 3, 4,
5, 10 and 20 percentage points of the Monte Carlo label, plus MAE.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils import check_array
from sklearn.utils.validation import check_is_fitted

from .equity import GameState
from .features import extract_features
from .network import (
    AdamState,
    NetParams,
    adam_step,
    forward,
    init_params,
    load_params,
    loss_and_gradients,
    save_params,
)
from .rng import permutation

DEVIATION_BUCKETS = (0.005, 0.01, 0.02, 0.03, 0.04, 0.05, 0.10, 0.20)


@dataclass(frozen=True)
class MetricsTable:
    """MAE and within-bucket shares for the two outputs (fractions)."""

    mae_win: float
    mae_tie: float
    within_win: tuple[float, ...]
    within_tie: tuple[float, ...]


def evaluate_metrics(params: NetParams, X: np.ndarray, Y: np.ndarray) -> MetricsTable:
    """Prediction-vs-label deviation statistics on one split."""
    if np.asarray(X).shape[0] == 0:
        raise ValueError("no records to evaluate")
    err = np.abs(forward(params, X) - np.asarray(Y, dtype=np.float64))
    within = [(err <= b).mean(axis=0) for b in DEVIATION_BUCKETS]
    return MetricsTable(
        mae_win=float(err[:, 0].mean()),
        mae_tie=float(err[:, 1].mean()),
        within_win=tuple(float(w[0]) for w in within),
        within_tie=tuple(float(w[1]) for w in within),
    )


@dataclass
class TrainReport:
    """Per-epoch training loss plus final split metrics."""

    epoch_mse: list[float]
    train: MetricsTable
    test: MetricsTable | None = None

    def to_csv(self, path) -> None:
        """Bucket table as CSV, values in percent."""
        cols = ["metric", "train_win", "train_tie", "test_win", "test_tie"]
        with open(path, "w") as fh:
            fh.write(",".join(cols) + "\n")
            for i, bucket in enumerate(DEVIATION_BUCKETS):
                row = [f"within_{100 * bucket:g}%"]
                for table in (self.train, self.test):
                    if table is None:
                        row += ["", ""]
                    else:
                        row += [
                            f"{100 * table.within_win[i]:.2f}",
                            f"{100 * table.within_tie[i]:.2f}",
                        ]
                fh.write(",".join(row) + "\n")
            row = ["mae"]
            for table in (self.train, self.test):
                if table is None:
                    row += ["", ""]
                else:
                    row += [f"{100 * table.mae_win:.2f}", f"{100 * table.mae_tie:.2f}"]
            fh.write(",".join(row) + "\n")


class EquityNetwork(RegressorMixin, BaseEstimator):
    """Two-output regressor mapping feature vectors to (p_win, p_tie).

    Training runs Adam on MSE over shuffled minibatches; the shuffle
    order, like everything else here, is a pure function of its seed.
    """

    def __init__(
        self,
        hidden_dims: tuple[int, ...] = (24, 12),
        alpha: float = 1.0,
        lr: float = 1e-3,
        epochs: int = 10000,
        batch_size: int = 250,
        init_seed: int = 0,
        shuffle_seed: int = 0,
    ):
        self.hidden_dims = hidden_dims
        self.alpha = alpha
        self.lr = lr
        self.epochs = epochs
        self.batch_size = batch_size
        self.init_seed = init_seed
        self.shuffle_seed = shuffle_seed

    def fit(self, X, y, eval_set: tuple[np.ndarray, np.ndarray] | None = None):
        """Train to completion; eval_set adds held-out metrics to report_."""
        X = check_array(X, dtype=np.float64)
        y = check_array(y, dtype=np.float64)
        if y.ndim != 2 or y.shape[1] != 2:
            raise ValueError(f"y must have shape (n, 2), got {y.shape}")
        if y.min() < 0.0 or y.max() > 1.0:
            raise ValueError("labels must be probabilities in [0, 1]")
        if self.epochs <= 0 or self.batch_size <= 0:
            raise ValueError("epochs and batch_size must be positive")
        n = X.shape[0]
        dims = (X.shape[1],) + tuple(self.hidden_dims) + (2,)
        params = init_params(dims, seed=self.init_seed, alpha=self.alpha)
        state = AdamState.for_params(params)
        epoch_mse = []
        for epoch in range(self.epochs):
            order = permutation(n, (self.shuffle_seed, epoch))
            sq_sum = 0.0
            for start in range(0, n, self.batch_size):
                idx = order[start : start + self.batch_size]
                loss, dw, db = loss_and_gradients(params, X[idx], y[idx])
                adam_step(params, dw, db, state, lr=self.lr)
                sq_sum += loss * idx.size
            epoch_mse.append(sq_sum / n)
        self.params_ = params
        self.report_ = TrainReport(
            epoch_mse=epoch_mse,
            train=evaluate_metrics(params, X, y),
            test=(
                evaluate_metrics(params, eval_set[0], eval_set[1])
                if eval_set is not None
                else None
            ),
        )
        return self

    def predict(self, X) -> np.ndarray:
        """(n, 2) win/tie probabilities for feature rows."""
        check_is_fitted(self, "params_")
        X = check_array(X, dtype=np.float64)
        expected = self.params_.dims[0]
        if X.shape[1] != expected:
            raise ValueError(f"X has {X.shape[1]} features, model takes {expected}")
        return forward(self.params_, X)

    def infer(self, state: GameState | str) -> tuple[float, float]:
        """Feature extraction plus forward pass for one game state."""
        check_is_fitted(self, "params_")
        if isinstance(state, str):
            state = GameState.from_codes(state)
        out = forward(self.params_, extract_features(state)[None, :])[0]
        return float(out[0]), float(out[1])

    def save(self, path) -> int:
        """Write the fitted parameters; returns bytes written."""
        check_is_fitted(self, "params_")
        return save_params(self.params_, path)

    @classmethod
    def load(cls, path) -> "EquityNetwork":
        """A ready-to-predict estimator from a saved parameter file."""
        params = load_params(path)
        est = cls(hidden_dims=params.dims[1:-1], alpha=params.alpha)
        est.params_ = params
        return est
