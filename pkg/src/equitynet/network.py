"""A small dense network, written directly on numpy.

Architecture: input -> ELU hidden layers -> 2 sigmoid outputs (win and
tie probability). The default 29-24-12-2 shape holds 1046 parameters.
Training minimizes mean squared error (averaged over batch rows and
both outputs) with Adam.

Weights serialize to a compact little-endian binary file:

    offset 0   magic  b"PKNN"                      4 bytes
    offset 4   format version (u16)                2 bytes
    offset 6   number of layer sizes (u16)         2 bytes
    offset 8   ELU alpha (f64)                     8 bytes
    offset 16  layer sizes (u32 each)
    then per weight layer: W row-major (out, in) f64, bias f64

The default shape is 8400 bytes total, 8368 of them parameter payload.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .rng import floats_01, raw_words

DEFAULT_DIMS = (29, 24, 12, 2)

MODEL_MAGIC = b"PKNN"
MODEL_VERSION = 1
_HEADER = struct.Struct("<4sHHd")


class ModelFormatError(ValueError):
    """Raised when a model file cannot be decoded."""


class BadMagicError(ModelFormatError):
    """File does not start with the model magic."""


class UnsupportedVersionError(ModelFormatError):
    """File uses a format version this code does not read."""


class TruncatedModelError(ModelFormatError):
    """File ends before the declared parameters are complete."""


@dataclass
class NetParams:
    """Weight matrices (out, in), bias vectors, and the ELU alpha."""

    weights: list[np.ndarray]
    biases: list[np.ndarray]
    alpha: float = 1.0

    @property
    def dims(self) -> tuple[int, ...]:
        return (self.weights[0].shape[1],) + tuple(w.shape[0] for w in self.weights)

    @property
    def n_params(self) -> int:
        return sum(w.size for w in self.weights) + sum(b.size for b in self.biases)


def init_params(
    dims: tuple[int, ...] = DEFAULT_DIMS, seed: int = 0, alpha: float = 1.0
) -> NetParams:
    """Glorot-uniform weights, zero biases, from the (seed, 0) stream."""
    n_weights = sum(dims[i] * dims[i + 1] for i in range(len(dims) - 1))
    u = floats_01(raw_words((seed, 0), 0, n_weights))
    weights, biases, used = [], [], 0
    for fan_in, fan_out in zip(dims, dims[1:]):
        bound = np.sqrt(6.0 / (fan_in + fan_out))
        block = u[used : used + fan_in * fan_out]
        used += fan_in * fan_out
        weights.append(((2.0 * block - 1.0) * bound).reshape(fan_out, fan_in))
        biases.append(np.zeros(fan_out))
    return NetParams(weights=weights, biases=biases, alpha=alpha)


def elu(z: np.ndarray, alpha: float) -> np.ndarray:
    return np.where(z > 0, z, alpha * np.expm1(np.minimum(z, 0.0)))


def sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def forward(params: NetParams, X: np.ndarray) -> np.ndarray:
    """Network outputs, shape (n, dims[-1])."""
    a = np.asarray(X, dtype=np.float64)
    last = len(params.weights) - 1
    for i, (w, b) in enumerate(zip(params.weights, params.biases)):
        z = a @ w.T + b
        a = sigmoid(z) if i == last else elu(z, params.alpha)
    return a


def loss_and_gradients(
    params: NetParams, X: np.ndarray, Y: np.ndarray
) -> tuple[float, list[np.ndarray], list[np.ndarray]]:
    """MSE and its gradients w.r.t. every weight and bias."""
    X = np.asarray(X, dtype=np.float64)
    Y = np.asarray(Y, dtype=np.float64)
    n = X.shape[0]
    if n == 0:
        raise ValueError("empty batch")
    last = len(params.weights) - 1

    pre, acts = [], [X]
    a = X
    for i, (w, b) in enumerate(zip(params.weights, params.biases)):
        z = a @ w.T + b
        a = sigmoid(z) if i == last else elu(z, params.alpha)
        pre.append(z)
        acts.append(a)

    out = acts[-1]
    diff = out - Y
    loss = float(np.mean(diff * diff))

    # d(mean over n*k squared errors)/d(out)
    dz = (2.0 * diff / diff.size) * out * (1.0 - out)
    d_weights = [np.empty(0)] * len(params.weights)
    d_biases = [np.empty(0)] * len(params.biases)
    for i in range(last, -1, -1):
        d_weights[i] = dz.T @ acts[i]
        d_biases[i] = dz.sum(axis=0)
        if i > 0:
            da = dz @ params.weights[i]
            z = pre[i - 1]
            dz = da * np.where(z > 0, 1.0, params.alpha * np.exp(np.minimum(z, 0.0)))
    return loss, d_weights, d_biases


@dataclass
class AdamState:
    """First/second moment accumulators and the step counter."""

    m_w: list[np.ndarray]
    v_w: list[np.ndarray]
    m_b: list[np.ndarray]
    v_b: list[np.ndarray]
    t: int = 0

    @classmethod
    def for_params(cls, params: NetParams) -> "AdamState":
        return cls(
            m_w=[np.zeros_like(w) for w in params.weights],
            v_w=[np.zeros_like(w) for w in params.weights],
            m_b=[np.zeros_like(b) for b in params.biases],
            v_b=[np.zeros_like(b) for b in params.biases],
        )


def adam_step(
    params: NetParams,
    d_weights: list[np.ndarray],
    d_biases: list[np.ndarray],
    state: AdamState,
    lr: float = 1e-3,
    beta1: float = 0.9,
    beta2: float = 0.999,
    eps: float = 1e-8,
) -> None:
    """One in-place Adam update with bias-corrected moments."""
    state.t += 1
    c1 = 1.0 - beta1 ** state.t
    c2 = 1.0 - beta2 ** state.t
    for group in (
        zip(params.weights, d_weights, state.m_w, state.v_w),
        zip(params.biases, d_biases, state.m_b, state.v_b),
    ):
        for p, g, m, v in group:
            m *= beta1
            m += (1.0 - beta1) * g
            v *= beta2
            v += (1.0 - beta2) * g * g
            p -= lr * (m / c1) / (np.sqrt(v / c2) + eps)


def params_to_vector(params: NetParams) -> np.ndarray:
    """Flatten parameters in serialization order (W1, b1, W2, b2, ...)."""
    parts = []
    for w, b in zip(params.weights, params.biases):
        parts.append(w.ravel())
        parts.append(b)
    return np.concatenate(parts)


def vector_to_params(
    vec: np.ndarray, dims: tuple[int, ...], alpha: float = 1.0
) -> NetParams:
    """Inverse of params_to_vector."""
    weights, biases, used = [], [], 0
    for fan_in, fan_out in zip(dims, dims[1:]):
        w = vec[used : used + fan_in * fan_out].reshape(fan_out, fan_in).copy()
        used += fan_in * fan_out
        b = vec[used : used + fan_out].copy()
        used += fan_out
        weights.append(w)
        biases.append(b)
    if used != vec.size:
        raise ValueError(f"vector holds {vec.size} values, dims need {used}")
    return NetParams(weights=weights, biases=biases, alpha=alpha)


def dump_params(params: NetParams) -> bytes:
    """The binary model file contents: header, layer sizes, parameters."""
    dims = params.dims
    blob = bytearray()
    blob += _HEADER.pack(MODEL_MAGIC, MODEL_VERSION, len(dims), params.alpha)
    blob += struct.pack(f"<{len(dims)}I", *dims)
    for w, b in zip(params.weights, params.biases):
        blob += np.ascontiguousarray(w, dtype="<f8").tobytes()
        blob += np.ascontiguousarray(b, dtype="<f8").tobytes()
    return bytes(blob)


def save_params(params: NetParams, path) -> int:
    """Write the binary model file; returns the byte size written."""
    blob = dump_params(params)
    with open(path, "wb") as fh:
        fh.write(blob)
    return len(blob)


def load_params(path) -> NetParams:
    """Read a model file, validating magic, version and completeness."""
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < _HEADER.size:
        raise TruncatedModelError(f"file is {len(blob)} bytes, shorter than the header")
    magic, version, n_dims, alpha = _HEADER.unpack_from(blob, 0)
    if magic != MODEL_MAGIC:
        raise BadMagicError(f"bad magic {magic!r}, expected {MODEL_MAGIC!r}")
    if version != MODEL_VERSION:
        raise UnsupportedVersionError(f"version {version}, this reader handles {MODEL_VERSION}")
    off = _HEADER.size
    dims_end = off + 4 * n_dims
    if len(blob) < dims_end:
        raise TruncatedModelError("file ends inside the layer-size list")
    dims = struct.unpack_from(f"<{n_dims}I", blob, off)
    n_params = sum(i * o + o for i, o in zip(dims, dims[1:]))
    expected = dims_end + 8 * n_params
    if len(blob) < expected:
        raise TruncatedModelError(
            f"file is {len(blob)} bytes, {expected} needed for layer sizes {dims}"
        )
    if len(blob) > expected:
        raise ModelFormatError(f"{len(blob) - expected} trailing bytes after parameters")
    vec = np.frombuffer(blob, dtype="<f8", offset=dims_end).astype(np.float64)
    return vector_to_params(vec, dims, alpha=alpha)
