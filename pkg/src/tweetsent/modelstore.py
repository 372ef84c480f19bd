"""Self-describing artifact files: a JSON manifest plus a binary payload.

An artifact named `x` is the pair `x.manifest.json` / `x.weights.bin`;
neural artifacts additionally share a `vocab.json` in the same directory.
Payload tensors are little-endian 64-bit floats, row-major, concatenated
in the order listed by the manifest's tensor_index. Models trained in
single precision upcast on save and cast back on load, which round-trips
every parameter bit-exactly.

The manifest records a 64-bit checksum of the payload (first 64 bits of
SHA-256, 16 hex digits, algorithm name "sha256-64"). created_at honors
the SOURCE_DATE_EPOCH convention so byte-identical artifacts can be
produced on demand.
"""

import hashlib
import json
import os
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bilstm import BiLstmConfig, BiLstmModel, LayerParams, _GATE_FIELDS
from .errors import (ChecksumError, FormatError, ShapeError, StoreError,
                     VersionError)
from .logreg import LogRegModel
from .ndnum import LstmCellParams
from .textprep import read_vocab_json, write_vocab_json
from .tfidf import TfidfModel

FORMAT_VERSION = 1
CHECKSUM_ALGORITHM = "sha256-64"

_SUFFIXES = (".manifest.json", ".weights.bin")


def _checksum(payload: bytes) -> str:
    return hashlib.sha256(payload).hexdigest()[:16]


def _created_at() -> str:
    stamp = os.environ.get("SOURCE_DATE_EPOCH")
    seconds = int(stamp) if stamp is not None else int(time.time())
    return time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime(seconds))


def _stem(path) -> Path:
    text = os.fspath(path)
    for suffix in _SUFFIXES:
        if text.endswith(suffix):
            text = text[:-len(suffix)]
            break
    return Path(text)


def _pack(named_tensors):
    index = []
    chunks = []
    offset = 0
    for name, arr in named_tensors:
        data = np.ascontiguousarray(arr, dtype="<f8").tobytes()
        index.append({"name": name, "shape": list(np.shape(arr)),
                      "byte_offset": offset, "byte_length": len(data)})
        chunks.append(data)
        offset += len(data)
    return index, b"".join(chunks)


def _write(stem: Path, manifest: dict, payload: bytes) -> dict:
    manifest = dict(manifest)
    manifest["checksum"] = _checksum(payload)
    manifest["checksum_algorithm"] = CHECKSUM_ALGORITHM
    stem.parent.mkdir(parents=True, exist_ok=True)
    with open(stem.with_name(stem.name + ".weights.bin"), "wb") as fh:
        fh.write(payload)
    with open(stem.with_name(stem.name + ".manifest.json"), "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return manifest


def _neural_tensor_shapes(config: BiLstmConfig) -> dict:
    """Expected name -> shape for every tensor of a neural artifact, in
    serialization order: embedding, per layer per direction the four gate
    weights then four gate biases, head_w, head_b (35 entries for the
    two-layer bidirectional default)."""
    shapes = {"embedding": (config.vocab_size, config.emb_dim)}
    for idx in range(config.num_layers):
        width = config.hidden + config.layer_input_width(idx)
        for direction in ("fwd", "bwd"):
            prefix = f"l{idx + 1}.{direction}"
            for name in _GATE_FIELDS[:4]:
                shapes[f"{prefix}.{name}"] = (config.hidden, width)
            for name in _GATE_FIELDS[4:]:
                shapes[f"{prefix}.{name}"] = (config.hidden,)
    shapes["head_w"] = (1, 2 * config.hidden)
    shapes["head_b"] = (1,)
    return shapes


def save_classical(model: LogRegModel, vectorizer: TfidfModel, path,
                   extra_config=None) -> dict:
    """Write a fitted TF-IDF + logistic pair as one artifact.

    Tokens (the feature order) live in the manifest; idf, theta and bias
    are payload tensors.
    """
    if model.theta.shape != vectorizer.idf.shape:
        raise ShapeError(f"model has {model.theta.shape[0]} weights but "
                         f"vectorizer has {vectorizer.dim} features")
    features = [None] * vectorizer.dim
    for token, idx in vectorizer.feature_of.items():
        features[idx] = token
    index, payload = _pack([("idf", vectorizer.idf),
                            ("theta", model.theta),
                            ("bias", np.asarray([model.bias]))])
    config = {"l2_lambda": model.l2_lambda,
              "n_docs": vectorizer.n_docs,
              "l2_normalize": vectorizer.l2_normalize,
              "dtype": "float64"}
    if extra_config:
        config.update(extra_config)
    manifest = {"format_version": FORMAT_VERSION, "model_kind": "classical",
                "created_at": _created_at(), "config": config,
                "features": features, "tensor_index": index}
    return _write(_stem(path), manifest, payload)


def save_neural(model: BiLstmModel, vocab, path, extra_config=None) -> dict:
    """Write a BiLSTM artifact plus the shared vocab.json beside it."""
    cfg = model.config
    if vocab.size != cfg.vocab_size:
        raise ShapeError(f"vocabulary has {vocab.size} entries but model "
                         f"embeds {cfg.vocab_size}")
    expected = _neural_tensor_shapes(cfg)
    params = model.parameters()
    for name, shape in expected.items():
        if params[name].shape != shape:
            raise ShapeError(f"tensor {name} has shape {params[name].shape}, "
                             f"config implies {shape}")
    index, payload = _pack(list(params.items()))
    config = {"vocab_size": cfg.vocab_size, "emb_dim": cfg.emb_dim,
              "hidden": cfg.hidden, "num_layers": cfg.num_layers,
              "dropout": cfg.dropout, "max_len": cfg.max_len,
              "dtype": model.embedding.dtype.name}
    if extra_config:
        config.update(extra_config)
    manifest = {"format_version": FORMAT_VERSION, "model_kind": "neural",
                "created_at": _created_at(), "config": config,
                "tensor_index": index}
    stem = _stem(path)
    stem.parent.mkdir(parents=True, exist_ok=True)
    write_vocab_json(vocab, cfg.max_len, stem.parent / "vocab.json")
    return _write(stem, manifest, payload)


@dataclass
class LoadedArtifact:
    kind: str
    manifest: dict
    model: object
    vectorizer: TfidfModel | None = None
    vocab: object = None
    max_len: int | None = None


def _unpack(tensor_index, payload: bytes) -> dict:
    tensors = {}
    cursor = 0
    for entry in tensor_index:
        name, shape = entry["name"], tuple(entry["shape"])
        offset, length = entry["byte_offset"], entry["byte_length"]
        if offset != cursor:
            raise FormatError(f"tensor {name}: offset {offset} does not "
                              f"follow previous tensor (expected {cursor})")
        expected_len = int(np.prod(shape, dtype=np.int64)) * 8
        if length != expected_len:
            raise FormatError(f"tensor {name}: shape {shape} implies "
                              f"{expected_len} bytes, index says {length}")
        if offset + length > len(payload):
            raise FormatError(f"tensor {name} extends past payload end")
        flat = np.frombuffer(payload, dtype="<f8", count=length // 8,
                             offset=offset)
        tensors[name] = flat.reshape(shape).copy()
        cursor = offset + length
    if cursor != len(payload):
        raise FormatError(f"payload has {len(payload) - cursor} trailing "
                          "bytes not covered by the tensor index")
    return tensors


def _load_classical(manifest: dict, tensors: dict) -> LoadedArtifact:
    config = manifest["config"]
    features = manifest.get("features")
    if features is None:
        raise FormatError("classical manifest is missing the feature list")
    for name in ("idf", "theta", "bias"):
        if name not in tensors:
            raise FormatError(f"classical payload is missing tensor {name}")
    idf, theta = tensors["idf"], tensors["theta"]
    if idf.shape != (len(features),) or theta.shape != idf.shape:
        raise FormatError(f"feature list of {len(features)} does not match "
                          f"idf {idf.shape} / theta {theta.shape}")
    vectorizer = TfidfModel(feature_of={t: i for i, t in enumerate(features)},
                            idf=idf, n_docs=int(config["n_docs"]),
                            l2_normalize=bool(config["l2_normalize"]))
    model = LogRegModel(theta=theta, bias=float(tensors["bias"][0]),
                        l2_lambda=float(config["l2_lambda"]),
                        objective_history=[])
    return LoadedArtifact(kind="classical", manifest=manifest, model=model,
                          vectorizer=vectorizer)


def _load_neural(manifest: dict, tensors: dict, stem: Path) -> LoadedArtifact:
    config = manifest["config"]
    cfg = BiLstmConfig(vocab_size=int(config["vocab_size"]),
                       emb_dim=int(config["emb_dim"]),
                       hidden=int(config["hidden"]),
                       num_layers=int(config["num_layers"]),
                       dropout=float(config["dropout"]),
                       max_len=int(config["max_len"]))
    expected = _neural_tensor_shapes(cfg)
    names = [e["name"] for e in manifest["tensor_index"]]
    if names != list(expected):
        raise FormatError("neural tensor index does not match the fixed "
                          f"tensor order ({len(names)} vs {len(expected)} entries)")
    for name, shape in expected.items():
        if tensors[name].shape != shape:
            raise FormatError(f"tensor {name} has shape {tensors[name].shape}, "
                              f"config implies {shape}")
    dtype = np.dtype(config.get("dtype", "float64"))
    layers = []
    for idx in range(cfg.num_layers):
        cells = []
        for direction in ("fwd", "bwd"):
            prefix = f"l{idx + 1}.{direction}"
            cells.append(LstmCellParams(*[
                tensors[f"{prefix}.{name}"].astype(dtype)
                for name in _GATE_FIELDS]))
        layers.append(LayerParams(fwd=cells[0], bwd=cells[1]))
    model = BiLstmModel(embedding=tensors["embedding"].astype(dtype),
                        layers=layers,
                        head_w=tensors["head_w"].astype(dtype),
                        head_b=tensors["head_b"].astype(dtype),
                        config=cfg)
    vocab_path = stem.parent / "vocab.json"
    if not vocab_path.exists():
        raise StoreError(f"missing shared vocabulary file {vocab_path}")
    vocab, max_len = read_vocab_json(vocab_path)
    if vocab.size != cfg.vocab_size:
        raise FormatError(f"vocab.json has {vocab.size} entries but the "
                          f"model embeds {cfg.vocab_size}")
    if max_len != cfg.max_len:
        raise FormatError(f"vocab.json max_len {max_len} != model max_len "
                          f"{cfg.max_len}")
    return LoadedArtifact(kind="neural", manifest=manifest, model=model,
                          vocab=vocab, max_len=max_len)


def load(path) -> LoadedArtifact:
    """Validate and reconstruct an artifact; never returns a partial model."""
    stem = _stem(path)
    manifest_path = stem.with_name(stem.name + ".manifest.json")
    payload_path = stem.with_name(stem.name + ".weights.bin")
    if not manifest_path.exists():
        raise StoreError(f"missing manifest {manifest_path}")
    if not payload_path.exists():
        raise StoreError(f"missing payload {payload_path}")
    try:
        with open(manifest_path) as fh:
            manifest = json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"manifest {manifest_path} is not valid JSON: {exc}")
    version = manifest.get("format_version")
    if version != FORMAT_VERSION:
        raise VersionError(f"artifact format version {version!r}, "
                           f"this build reads {FORMAT_VERSION}")
    if manifest.get("checksum_algorithm") != CHECKSUM_ALGORITHM:
        raise FormatError("unknown checksum algorithm "
                          f"{manifest.get('checksum_algorithm')!r}")
    payload = payload_path.read_bytes()
    if _checksum(payload) != manifest.get("checksum"):
        raise ChecksumError(f"payload checksum mismatch for {payload_path}")
    tensors = _unpack(manifest.get("tensor_index", []), payload)
    kind = manifest.get("model_kind")
    if kind == "classical":
        return _load_classical(manifest, tensors)
    if kind == "neural":
        return _load_neural(manifest, tensors, stem)
    raise FormatError(f"unknown model_kind {kind!r}")
