"""Dense numerical kernels for the recurrent classifier.

Everything operates on plain numpy arrays, batch-first. Gate inputs are
the concatenation [h_prev, x_t], so every gate weight matrix has shape
(hidden, hidden + input) with the h columns first. Forward state updates:

    f = sigmoid(W_f . [h_prev, x] + b_f)      forget gate
    i = sigmoid(W_i . [h_prev, x] + b_i)      input gate
    g = tanh   (W_c . [h_prev, x] + b_c)      candidate cell
    c = f * c_prev + i * g
    o = sigmoid(W_o . [h_prev, x] + b_o)      output gate
    h = o * tanh(c)

Backward kernels are the hand-derived differentials of the above; every
one of them is validated against central finite differences in the tests.
Kernels are dtype-preserving: float64 in gradient tests, float32 in
training.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.special import expit as sigmoid

from .errors import ShapeError

__all__ = [
    "sigmoid", "LstmCellParams", "lstm_cell_forward", "lstm_cell_backward",
    "lstm_layer_forward", "lstm_layer_backward", "embedding_forward",
    "embedding_backward", "dropout", "bce_with_logits",
    "AdamHyper", "AdamState", "adam_step",
]

_GATES = ("f", "i", "c", "o")


@dataclass
class LstmCellParams:
    """One LSTM cell's gate weights, shape (hidden, hidden + input) each."""

    W_f: np.ndarray
    W_i: np.ndarray
    W_c: np.ndarray
    W_o: np.ndarray
    b_f: np.ndarray
    b_i: np.ndarray
    b_c: np.ndarray
    b_o: np.ndarray

    @property
    def hidden(self) -> int:
        return self.b_f.shape[0]

    @property
    def input_width(self) -> int:
        return self.W_f.shape[1] - self.hidden

    def weights(self):
        return [self.W_f, self.W_i, self.W_c, self.W_o]

    def biases(self):
        return [self.b_f, self.b_i, self.b_c, self.b_o]

    def stacked(self):
        """Row-stacked (4*hidden, hidden+input) weights and (4*hidden,) biases."""
        return np.concatenate(self.weights(), axis=0), np.concatenate(self.biases())

    def validate(self):
        w_shape = self.W_f.shape
        h = self.hidden
        for W in self.weights():
            if W.shape != w_shape:
                raise ShapeError(f"gate weight shapes differ: {W.shape} vs {w_shape}")
        for b in self.biases():
            if b.shape != (h,):
                raise ShapeError(f"gate bias shape {b.shape}, expected ({h},)")
        if w_shape[1] <= h:
            raise ShapeError(f"weight width {w_shape[1]} must exceed hidden {h}")

    def zeros_like(self) -> "LstmCellParams":
        return LstmCellParams(*(np.zeros_like(a) for a in self.weights() + self.biases()))


def _as_batch(a):
    a = np.asarray(a)
    if a.ndim == 1:
        return a[None, :], True
    return a, False


def lstm_cell_forward(x_t, h_prev, c_prev, params: LstmCellParams):
    """Single time-step forward pass. Accepts (B, d) batches or 1-D vectors.

    Returns (h_t, c_t, cache); the cache feeds lstm_cell_backward.
    """
    params.validate()
    x_t, squeezed = _as_batch(x_t)
    h_prev, _ = _as_batch(h_prev)
    c_prev, _ = _as_batch(c_prev)
    h = params.hidden
    if x_t.shape[-1] != params.input_width:
        raise ShapeError(f"input width {x_t.shape[-1]}, params expect {params.input_width}")
    if h_prev.shape[-1] != h or c_prev.shape[-1] != h:
        raise ShapeError("state width does not match params hidden size")

    u = np.concatenate([h_prev, x_t], axis=-1)
    W, b = params.stacked()
    z = u @ W.T + b
    f = sigmoid(z[:, :h])
    i = sigmoid(z[:, h:2 * h])
    g = np.tanh(z[:, 2 * h:3 * h])
    o = sigmoid(z[:, 3 * h:])
    c_t = f * c_prev + i * g
    tanh_c = np.tanh(c_t)
    h_t = o * tanh_c

    cache = {"kind": "lstm_cell", "u": u, "f": f, "i": i, "g": g, "o": o,
             "c_prev": c_prev, "tanh_c": tanh_c, "params": params,
             "squeezed": squeezed}
    if squeezed:
        return h_t[0], c_t[0], cache
    return h_t, c_t, cache


def lstm_cell_backward(grad_h, grad_c, cache):
    """Gradients of a scalar loss through one cell step.

    Returns (grad_x, grad_h_prev, grad_c_prev, grad_params) where
    grad_params is an LstmCellParams holding the parameter gradients.
    """
    if not isinstance(cache, dict) or cache.get("kind") != "lstm_cell":
        raise ValueError("stale or missing forward cache")
    params = cache["params"]
    h = params.hidden
    grad_h, _ = _as_batch(grad_h)
    grad_c, _ = _as_batch(grad_c)
    f, i, g, o = cache["f"], cache["i"], cache["g"], cache["o"]
    tanh_c, c_prev, u = cache["tanh_c"], cache["c_prev"], cache["u"]

    do = grad_h * tanh_c
    dc_tot = grad_c + grad_h * o * (1.0 - tanh_c ** 2)
    df = dc_tot * c_prev
    di = dc_tot * g
    dg = dc_tot * i
    grad_c_prev = dc_tot * f

    dz = np.concatenate([
        df * f * (1.0 - f),
        di * i * (1.0 - i),
        dg * (1.0 - g ** 2),
        do * o * (1.0 - o),
    ], axis=-1)
    W, _ = params.stacked()
    dW = dz.T @ u
    db = dz.sum(axis=0)
    du = dz @ W
    grad_h_prev = du[:, :h]
    grad_x = du[:, h:]

    grad_params = LstmCellParams(
        W_f=dW[:h], W_i=dW[h:2 * h], W_c=dW[2 * h:3 * h], W_o=dW[3 * h:],
        b_f=db[:h], b_i=db[h:2 * h], b_c=db[2 * h:3 * h], b_o=db[3 * h:])
    if cache["squeezed"]:
        return grad_x[0], grad_h_prev[0], grad_c_prev[0], grad_params
    return grad_x, grad_h_prev, grad_c_prev, grad_params


def lstm_layer_forward(x, mask, params: LstmCellParams, reverse: bool = False):
    """Run one LSTM direction over a padded batch.

    x is (B, T, input), mask is (B, T) with 1.0 at real positions and 0.0
    at pads. Masked positions leave the recurrent state untouched and emit
    zeros, so trailing pads can never influence any output. The returned
    h_last is the carried state after the full sweep: the state at the
    last real position for the forward direction (reverse=False), or at
    position 0 for the reversed direction.

    Returns (out (B, T, hidden), h_last (B, hidden), cache).
    """
    params.validate()
    x = np.asarray(x)
    B, T, width = x.shape
    h = params.hidden
    if width != params.input_width:
        raise ShapeError(f"input width {width}, params expect {params.input_width}")
    if mask.shape != (B, T):
        raise ShapeError(f"mask shape {mask.shape}, expected {(B, T)}")

    W, b = params.stacked()
    Wh, Wx = W[:, :h], W[:, h:]
    x_proj = (x.reshape(B * T, width) @ Wx.T).reshape(B, T, 4 * h)

    dt = x.dtype
    out = np.zeros((B, T, h), dtype=dt)
    F, I, G, O = (np.empty((T, B, h), dtype=dt) for _ in range(4))
    TANH_C, H_prev, C_prev = (np.empty((T, B, h), dtype=dt) for _ in range(3))
    h_carry = np.zeros((B, h), dtype=dt)
    c_carry = np.zeros((B, h), dtype=dt)
    order = range(T - 1, -1, -1) if reverse else range(T)

    for t in order:
        z = x_proj[:, t] + h_carry @ Wh.T + b
        f = sigmoid(z[:, :h])
        i = sigmoid(z[:, h:2 * h])
        g = np.tanh(z[:, 2 * h:3 * h])
        o = sigmoid(z[:, 3 * h:])
        H_prev[t], C_prev[t] = h_carry, c_carry
        F[t], I[t], G[t], O[t] = f, i, g, o
        c_new = f * c_carry + i * g
        tanh_c = np.tanh(c_new)
        TANH_C[t] = tanh_c
        h_new = o * tanh_c
        m = mask[:, t:t + 1]
        h_carry = m * h_new + (1.0 - m) * h_carry
        c_carry = m * c_new + (1.0 - m) * c_carry
        out[:, t] = m * h_new

    cache = {"kind": "lstm_layer", "x": x, "mask": mask, "params": params,
             "F": F, "I": I, "G": G, "O": O, "TANH_C": TANH_C,
             "H_prev": H_prev, "C_prev": C_prev, "reverse": reverse}
    return out, h_carry, cache


def lstm_layer_backward(grad_out, grad_h_last, cache):
    """BPTT through one direction; inverse of lstm_layer_forward.

    grad_out is (B, T, hidden) or None; grad_h_last is (B, hidden) or
    None. Returns (grad_x (B, T, input), grad_params).
    """
    if not isinstance(cache, dict) or cache.get("kind") != "lstm_layer":
        raise ValueError("stale or missing forward cache")
    params = cache["params"]
    x, mask = cache["x"], cache["mask"]
    F, I, G, O = cache["F"], cache["I"], cache["G"], cache["O"]
    TANH_C, H_prev, C_prev = cache["TANH_C"], cache["H_prev"], cache["C_prev"]
    B, T, width = x.shape
    h = params.hidden
    dt = x.dtype

    W, _ = params.stacked()
    Wh, Wx = W[:, :h], W[:, h:]
    dZ = np.zeros((T, B, 4 * h), dtype=dt)
    dh_carry = np.zeros((B, h), dtype=dt)
    if grad_h_last is not None:
        dh_carry = dh_carry + grad_h_last
    dc_carry = np.zeros((B, h), dtype=dt)

    order = range(T - 1, -1, -1) if cache["reverse"] else range(T)
    for t in reversed(list(order)):
        m = mask[:, t:t + 1]
        dh_new = m * dh_carry if grad_out is None else m * (grad_out[:, t] + dh_carry)
        dc_new = m * dc_carry
        dh_keep = (1.0 - m) * dh_carry
        dc_keep = (1.0 - m) * dc_carry

        f, i, g, o = F[t], I[t], G[t], O[t]
        tanh_c = TANH_C[t]
        do = dh_new * tanh_c
        dc_tot = dc_new + dh_new * o * (1.0 - tanh_c ** 2)
        df = dc_tot * C_prev[t]
        di = dc_tot * g
        dg = dc_tot * i

        dz = np.concatenate([
            df * f * (1.0 - f),
            di * i * (1.0 - i),
            dg * (1.0 - g ** 2),
            do * o * (1.0 - o),
        ], axis=-1)
        dZ[t] = dz
        dh_carry = dh_keep + dz @ Wh
        dc_carry = dc_keep + dc_tot * f

    dZ_flat = dZ.reshape(T * B, 4 * h)
    u_flat = np.concatenate(
        [H_prev.reshape(T * B, h),
         np.ascontiguousarray(x.transpose(1, 0, 2)).reshape(T * B, width)], axis=1)
    dW = dZ_flat.T @ u_flat
    db = dZ_flat.sum(axis=0)
    grad_x = np.ascontiguousarray(
        (dZ_flat @ Wx).reshape(T, B, width).transpose(1, 0, 2))

    grad_params = LstmCellParams(
        W_f=dW[:h], W_i=dW[h:2 * h], W_c=dW[2 * h:3 * h], W_o=dW[3 * h:],
        b_f=db[:h], b_i=db[h:2 * h], b_c=db[2 * h:3 * h], b_o=db[3 * h:])
    return grad_x, grad_params


def embedding_forward(indices, table):
    """Row lookup: indices (B, T) ints against a (vocab, emb) table."""
    indices = np.asarray(indices)
    if indices.size and (indices.min() < 0 or indices.max() >= table.shape[0]):
        raise ShapeError(
            f"index out of range for table with {table.shape[0]} rows")
    return table[indices]


def embedding_backward(indices, grad_out, vocab_size):
    """Scatter-add upstream gradients into their table rows."""
    indices = np.asarray(indices)
    emb_dim = grad_out.shape[-1]
    grad_table = np.zeros((vocab_size, emb_dim), dtype=grad_out.dtype)
    np.add.at(grad_table, indices.ravel(), grad_out.reshape(-1, emb_dim))
    return grad_table


def dropout(x, p, training, rng):
    """Inverted dropout: zero with probability p, scale survivors by 1/(1-p).

    Returns (out, mask); mask is None when the op is an identity
    (inference mode or p == 0), otherwise it already includes the 1/(1-p)
    scaling so the backward pass is just grad * mask.
    """
    if not 0.0 <= p < 1.0:
        raise ValueError(f"dropout probability must be in [0, 1), got {p}")
    if not training or p == 0.0:
        return x, None
    keep = rng.random(x.shape) >= p
    mask = keep.astype(x.dtype) / (1.0 - p)
    return x * mask, mask


def bce_with_logits(logit, y):
    """Numerically stable binary cross-entropy on pre-sigmoid logits.

    loss = max(z, 0) - z*y + log(1 + exp(-|z|)), grad = sigmoid(z) - y.
    Works elementwise on arrays; scalars in, scalars out.
    """
    scalar = np.ndim(logit) == 0
    z = np.asarray(logit, dtype=np.float64) if scalar else np.asarray(logit)
    y_arr = np.asarray(y)
    if not np.all(np.isfinite(z)):
        raise ValueError("non-finite logit")
    if not np.all((y_arr == 0) | (y_arr == 1)):
        raise ValueError("labels must be 0 or 1")
    loss = np.maximum(z, 0) - z * y_arr + np.log1p(np.exp(-np.abs(z)))
    grad = sigmoid(z) - y_arr
    if scalar:
        return float(loss), float(grad)
    return loss, grad


@dataclass
class AdamHyper:
    learning_rate: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8


@dataclass
class AdamState:
    """Per-parameter first/second moment estimates, keyed like the params."""

    m: dict
    v: dict
    hyper: AdamHyper = field(default_factory=AdamHyper)
    step_count: int = 0

    @classmethod
    def for_params(cls, params: dict, hyper: AdamHyper | None = None) -> "AdamState":
        return cls(m={k: np.zeros_like(p) for k, p in params.items()},
                   v={k: np.zeros_like(p) for k, p in params.items()},
                   hyper=hyper or AdamHyper())


def adam_step(params: dict, grads: dict, state: AdamState):
    """One in-place Adam update with bias-corrected moments."""
    hp = state.hyper
    state.step_count += 1
    t = state.step_count
    b1_corr = 1.0 - hp.beta1 ** t
    b2_corr = 1.0 - hp.beta2 ** t
    for name, p in params.items():
        g = grads[name]
        if g.shape != p.shape:
            raise ShapeError(f"gradient shape {g.shape} for parameter "
                             f"{name!r} of shape {p.shape}")
        m, v = state.m[name], state.v[name]
        m *= hp.beta1
        m += (1.0 - hp.beta1) * g
        v *= hp.beta2
        v += (1.0 - hp.beta2) * (g * g)
        m_hat = m / b1_corr
        v_hat = v / b2_corr
        p -= hp.learning_rate * m_hat / (np.sqrt(v_hat) + hp.epsilon)
    return params, state
