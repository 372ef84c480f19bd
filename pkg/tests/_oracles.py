"""Independent reference computations used to check the real modules.

Everything here is deliberately naive: plain loops and dense arrays, no
code shared with the package under test.
"""

import math

import numpy as np


def rel_err(got, want) -> float:
    got = np.asarray(got, dtype=np.float64)
    want = np.asarray(want, dtype=np.float64)
    scale = max(np.abs(got).max(initial=0.0), np.abs(want).max(initial=0.0), 1e-8)
    return float(np.abs(got - want).max(initial=0.0) / scale)


def finite_difference(f, arrays, eps=1e-5):
    """Central-difference gradient of scalar f with respect to each array.

    arrays are modified in place during probing and restored afterwards.
    """
    grads = []
    for arr in arrays:
        grad = np.zeros_like(arr, dtype=np.float64)
        flat = arr.reshape(-1)
        gflat = grad.reshape(-1)
        for i in range(flat.size):
            orig = flat[i]
            flat[i] = orig + eps
            hi = f()
            flat[i] = orig - eps
            lo = f()
            flat[i] = orig
            gflat[i] = (hi - lo) / (2.0 * eps)
        grads.append(grad)
    return grads


def tfidf_naive(train_docs):
    """First-appearance vocabulary, df per document presence, idf = ln(N/df)."""
    order = []
    for doc in train_docs:
        for tok in doc:
            if tok not in order:
                order.append(tok)
    n = len(train_docs)
    idf = {}
    for tok in order:
        df = sum(1 for doc in train_docs if tok in doc)
        idf[tok] = math.log(n / df)
    return order, idf


def tfidf_transform_naive(doc, order, idf):
    """Dense vector: (count / len(doc)) * idf per known token."""
    vec = np.zeros(len(order))
    if not doc:
        return vec
    for pos, tok in enumerate(order):
        count = sum(1 for t in doc if t == tok)
        if count:
            vec[pos] = (count / len(doc)) * idf[tok]
    return vec


def sigmoid_naive(z):
    return 1.0 / (1.0 + math.exp(-z))


def lstm_cell_naive(x, h_prev, c_prev, W_f, W_i, W_c, W_o, b_f, b_i, b_c, b_o):
    """One gate-by-gate LSTM step on 1-D vectors, hidden block first."""
    u = np.concatenate([h_prev, x])
    f = np.array([sigmoid_naive(z) for z in W_f @ u + b_f])
    i = np.array([sigmoid_naive(z) for z in W_i @ u + b_i])
    g = np.tanh(W_c @ u + b_c)
    o = np.array([sigmoid_naive(z) for z in W_o @ u + b_o])
    c = f * c_prev + i * g
    h = o * np.tanh(c)
    return h, c


def bce_naive(logit, y):
    p = sigmoid_naive(logit)
    return -(y * math.log(p) + (1 - y) * math.log(1 - p))


def bilstm_logit_naive(indices, true_len, embedding, layer_params, head_w, head_b):
    """Inference logit for one padded sequence, built step by step.

    layer_params is a list of (fwd, bwd) tuples, each an 8-tuple
    (W_f, W_i, W_c, W_o, b_f, b_i, b_c, b_o). Positions at or past
    true_len are skipped, leaving the state untouched and a zero output,
    and both directions read the same layer input. The final feature is
    the last layer's forward state after the last real position joined
    with its backward state after position 0.
    """
    T = len(indices)
    x = [np.asarray(embedding[i], dtype=np.float64) for i in indices]
    h_f_last = h_b_last = None
    for fwd, bwd in layer_params:
        hidden = fwd[4].shape[0]
        outs_f = [np.zeros(hidden) for _ in range(T)]
        h = np.zeros(hidden)
        c = np.zeros(hidden)
        for t in range(T):
            if t < true_len:
                h, c = lstm_cell_naive(x[t], h, c, *fwd)
                outs_f[t] = h
        h_f_last = h
        outs_b = [np.zeros(hidden) for _ in range(T)]
        h = np.zeros(hidden)
        c = np.zeros(hidden)
        for t in range(T - 1, -1, -1):
            if t < true_len:
                h, c = lstm_cell_naive(x[t], h, c, *bwd)
                outs_b[t] = h
        h_b_last = h
        x = [np.concatenate([outs_f[t], outs_b[t]]) for t in range(T)]
    rep = np.concatenate([h_f_last, h_b_last])
    return float(rep @ np.asarray(head_w[0], dtype=np.float64) + head_b[0])
