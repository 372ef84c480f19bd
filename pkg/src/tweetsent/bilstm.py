"""Bidirectional two-layer LSTM classifier over padded index sequences.

Architecture: embedding -> stacked bidirectional LSTM layers (per-position
outputs of each direction concatenated) -> single-logit affine head read
from the concatenation of the top layer's forward-direction state at the
last real position and backward-direction state at position 0. Inverted
dropout sits between stacked layers and on the final representation,
training mode only. Padding positions are masked out of the recurrence
entirely, so trailing pads never change a logit.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DataError, ShapeError, TrainingError
from .ndnum import (AdamHyper, AdamState, LstmCellParams, adam_step,
                    bce_with_logits, dropout, embedding_backward,
                    embedding_forward, lstm_layer_backward, lstm_layer_forward)
from .textprep import PAD_INDEX

_GATE_FIELDS = ("W_f", "W_i", "W_c", "W_o", "b_f", "b_i", "b_c", "b_o")


@dataclass
class BiLstmConfig:
    vocab_size: int
    emb_dim: int = 128
    hidden: int = 128
    num_layers: int = 2
    dropout: float = 0.3
    max_len: int = 50

    def layer_input_width(self, layer_idx: int) -> int:
        return self.emb_dim if layer_idx == 0 else 2 * self.hidden


@dataclass
class LayerParams:
    fwd: LstmCellParams
    bwd: LstmCellParams


@dataclass
class BiLstmModel:
    embedding: np.ndarray
    layers: list[LayerParams]
    head_w: np.ndarray
    head_b: np.ndarray
    config: BiLstmConfig

    def parameters(self) -> dict[str, np.ndarray]:
        """Name -> array view of every trainable tensor, in a fixed order:
        embedding, then per layer per direction the four gate weights and
        four gate biases, then the head."""
        params = {"embedding": self.embedding}
        for idx, layer in enumerate(self.layers, start=1):
            for direction, cell in (("fwd", layer.fwd), ("bwd", layer.bwd)):
                for name in _GATE_FIELDS:
                    params[f"l{idx}.{direction}.{name}"] = getattr(cell, name)
        params["head_w"] = self.head_w
        params["head_b"] = self.head_b
        return params


@dataclass
class TrainRunConfig:
    seed: int = 42
    epochs: int = 6
    batch_size: int = 64
    adam: AdamHyper = field(default_factory=AdamHyper)


@dataclass
class EpochStats:
    epoch: int
    train_loss: float
    train_accuracy: float
    val_accuracy: float


def parameter_count(config: BiLstmConfig) -> int:
    """Closed-form total of trainable scalars under this module's shapes."""
    total = config.vocab_size * config.emb_dim
    for layer_idx in range(config.num_layers):
        width = config.hidden + config.layer_input_width(layer_idx)
        total += 2 * 4 * (config.hidden * width + config.hidden)
    total += 2 * config.hidden + 1
    return total


def init(config: BiLstmConfig, seed: int, dtype=np.float32) -> BiLstmModel:
    """Uniform [-k, k] weights with k = 1/sqrt(hidden), zero biases.

    The padding embedding row is zeroed; it also never receives gradient
    because pad positions are masked out of the recurrence.
    """
    rng = np.random.default_rng(seed)
    k = 1.0 / np.sqrt(config.hidden)

    def draw(*shape):
        return rng.uniform(-k, k, size=shape).astype(dtype)

    embedding = draw(config.vocab_size, config.emb_dim)
    embedding[PAD_INDEX] = 0.0
    layers = []
    for layer_idx in range(config.num_layers):
        width = config.hidden + config.layer_input_width(layer_idx)
        cells = []
        for _ in range(2):
            weights = [draw(config.hidden, width) for _ in range(4)]
            biases = [np.zeros(config.hidden, dtype=dtype) for _ in range(4)]
            cells.append(LstmCellParams(*weights, *biases))
        layers.append(LayerParams(fwd=cells[0], bwd=cells[1]))
    head_w = draw(1, 2 * config.hidden)
    head_b = np.zeros(1, dtype=dtype)
    return BiLstmModel(embedding=embedding, layers=layers,
                       head_w=head_w, head_b=head_b, config=config)


def to_index_arrays(seqs, max_len: int):
    """Stack EncodedSeqs into (indices (B, T) int64, lens (B,) int64)."""
    seqs = list(seqs)
    if not seqs:
        raise DataError("empty batch")
    indices = np.empty((len(seqs), max_len), dtype=np.int64)
    lens = np.empty(len(seqs), dtype=np.int64)
    for row, seq in enumerate(seqs):
        if len(seq.indices) != max_len:
            raise ShapeError(
                f"sequence length {len(seq.indices)} != model max_len {max_len}")
        indices[row] = seq.indices
        lens[row] = seq.true_len
    return indices, lens


def _forward_arrays(indices, lens, model: BiLstmModel, training, rng, want_cache):
    cfg = model.config
    B, T = indices.shape
    if training and rng is None:
        raise ValueError("training-mode forward needs an rng for dropout masks")
    if training and (lens == 0).any():
        raise TrainingError("empty sequence (true_len = 0) in a training batch")

    # steps past the longest real sequence are fully masked no-ops, so
    # computing them would change nothing; slice them off
    t_eff = max(int(lens.max()), 1)
    if t_eff < T:
        indices = indices[:, :t_eff]
        T = t_eff

    dtype = model.embedding.dtype
    mask = (np.arange(T)[None, :] < lens[:, None]).astype(dtype)
    x = embedding_forward(indices, model.embedding)
    layer_caches = []
    drop_masks = []
    rep = None
    for li, layer in enumerate(model.layers):
        out_f, h_f, cache_f = lstm_layer_forward(x, mask, layer.fwd, reverse=False)
        out_b, h_b, cache_b = lstm_layer_forward(x, mask, layer.bwd, reverse=True)
        layer_caches.append((cache_f, cache_b))
        if li < len(model.layers) - 1:
            x, m_drop = dropout(np.concatenate([out_f, out_b], axis=2),
                                cfg.dropout, training, rng)
            drop_masks.append(m_drop)
        else:
            rep = np.concatenate([h_f, h_b], axis=1)
    rep, m_rep = dropout(rep, cfg.dropout, training, rng)
    logits = (rep @ model.head_w.T)[:, 0] + model.head_b[0]

    if not want_cache:
        return logits, None
    cache = {"indices": indices, "rep": rep, "m_rep": m_rep,
             "layer_caches": layer_caches, "drop_masks": drop_masks}
    return logits, cache


def forward(batch, model: BiLstmModel, training: bool = False, rng=None):
    """Logits for a batch of EncodedSeqs, one real number per sequence."""
    indices, lens = to_index_arrays(batch, model.config.max_len)
    logits, _ = _forward_arrays(indices, lens, model, training, rng, want_cache=False)
    return logits


def batched_logits(model: BiLstmModel, indices, lens, batch_size: int = 256):
    """Inference-mode logits over arbitrarily many sequences, chunked."""
    out = np.empty(indices.shape[0], dtype=np.float64)
    for start in range(0, indices.shape[0], batch_size):
        stop = start + batch_size
        logits, _ = _forward_arrays(indices[start:stop], lens[start:stop],
                                    model, training=False, rng=None,
                                    want_cache=False)
        out[start:stop] = logits
    return out


def _backward(grad_logits, cache, model: BiLstmModel):
    """Gradients of the batch loss for every parameter, keyed like parameters()."""
    cfg = model.config
    h = cfg.hidden
    rep, m_rep = cache["rep"], cache["m_rep"]

    grads = {"head_w": grad_logits[None, :] @ rep,
             "head_b": np.asarray([grad_logits.sum()], dtype=rep.dtype)}
    drep = grad_logits[:, None] @ model.head_w
    if m_rep is not None:
        drep = drep * m_rep

    dh_f_last, dh_b_last = drep[:, :h], drep[:, h:]
    d_out_f = d_out_b = None
    n_layers = len(model.layers)
    dx_to_embedding = None
    for li in range(n_layers - 1, -1, -1):
        cache_f, cache_b = cache["layer_caches"][li]
        top = li == n_layers - 1
        dx_f, gp_f = lstm_layer_backward(d_out_f, dh_f_last if top else None, cache_f)
        dx_b, gp_b = lstm_layer_backward(d_out_b, dh_b_last if top else None, cache_b)
        for direction, gp in (("fwd", gp_f), ("bwd", gp_b)):
            for name in _GATE_FIELDS:
                grads[f"l{li + 1}.{direction}.{name}"] = getattr(gp, name)
        dx = dx_f + dx_b
        if li > 0:
            m_drop = cache["drop_masks"][li - 1]
            if m_drop is not None:
                dx = dx * m_drop
            d_out_f, d_out_b = dx[:, :, :h], dx[:, :, h:]
        else:
            dx_to_embedding = dx
    grads["embedding"] = embedding_backward(
        cache["indices"], dx_to_embedding, cfg.vocab_size)
    return grads


def train(model: BiLstmModel, train_data, val_data, cfg: TrainRunConfig):
    """Mini-batch Adam training with a seeded shuffle each epoch.

    train_data and val_data are (EncodedSeq, label) pairs. Per epoch the
    history records the mean training loss over the epoch's mini-batches
    and the end-of-epoch inference-mode accuracy on the training and
    validation sets, so each history row describes the model state after
    that epoch. Fully deterministic for a fixed (model, data, cfg.seed).
    """
    train_data = list(train_data)
    val_data = list(val_data)
    if not train_data:
        raise TrainingError("no training data")
    max_len = model.config.max_len
    indices, lens = to_index_arrays((s for s, _ in train_data), max_len)
    labels = np.asarray([y for _, y in train_data], dtype=np.int64)
    if (lens == 0).any():
        raise TrainingError("empty sequence (true_len = 0) in training data; "
                            "filter degenerate rows before training")
    val_indices, val_lens = to_index_arrays((s for s, _ in val_data), max_len)
    val_labels = np.asarray([y for _, y in val_data], dtype=np.int64)

    params = model.parameters()
    state = AdamState.for_params(params, cfg.adam)
    rng = np.random.default_rng(cfg.seed)
    n = len(train_data)
    history = []
    for epoch in range(1, cfg.epochs + 1):
        perm = rng.permutation(n)
        loss_sum = 0.0
        for batch_no, start in enumerate(range(0, n, cfg.batch_size)):
            sel = perm[start:start + cfg.batch_size]
            logits, fw_cache = _forward_arrays(indices[sel], lens[sel], model,
                                               training=True, rng=rng,
                                               want_cache=True)
            losses, grad_logits = bce_with_logits(logits, labels[sel])
            if not np.isfinite(losses).all():
                raise TrainingError(
                    f"non-finite loss at epoch {epoch}, batch {batch_no}")
            loss_sum += float(losses.sum())
            grads = _backward(grad_logits / len(sel), fw_cache, model)
            adam_step(params, grads, state)

        train_logits = batched_logits(model, indices, lens)
        train_acc = float(((train_logits >= 0) == (labels == 1)).mean())
        val_logits = batched_logits(model, val_indices, val_lens)
        val_acc = float(((val_logits >= 0) == (val_labels == 1)).mean())
        history.append(EpochStats(epoch=epoch,
                                  train_loss=loss_sum / n,
                                  train_accuracy=train_acc,
                                  val_accuracy=val_acc))
    return model, history
