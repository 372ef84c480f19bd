"""HTTP inference service over the trained artifacts.

Endpoints: POST /predict, GET /models, GET /health. Artifacts are loaded
once when the app is built and never mutated afterwards, so request
handling needs no locks and identical request bodies always produce
identical response bodies. Per-request inference time is reported in an
X-Inference-Ms response header, deliberately not in the body, to keep
bodies byte-stable. Request bodies are capped at 10 KiB.
"""

import json
import logging
import time

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import bilstm, logreg, textprep, tfidf
from .errors import StoreError
from .modelstore import LoadedArtifact, load
from .ndnum import sigmoid

MAX_BODY_BYTES = 10 * 1024
MODEL_CHOICES = ("lr", "bilstm", "both")

log = logging.getLogger("tweetsent.inferd")


def _error(status: int, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": message})


def _predict_lr(art: LoadedArtifact, tokens):
    vec = tfidf.transform(tokens, art.vectorizer)
    p = logreg.predict_proba(vec, art.model)
    return p, tokens, False


def _predict_bilstm(art: LoadedArtifact, tokens):
    encoded = textprep.encode(tokens, art.vocab, art.max_len)
    logit = bilstm.forward([encoded], art.model)[0]
    used = tokens[:art.max_len]
    return float(sigmoid(logit)), used, len(tokens) > art.max_len


def _response_body(name: str, art: LoadedArtifact, tokens) -> dict:
    if name == "lr":
        p, used, truncated = _predict_lr(art, tokens)
    else:
        p, used, truncated = _predict_bilstm(art, tokens)
    return {"model": name,
            "label": "positive" if p >= 0.5 else "negative",
            "probability_positive": p,
            "tokens": used,
            "truncated": truncated,
            "degenerate_input": len(tokens) == 0}


def create_app(lr_artifact=None, bilstm_artifact=None) -> FastAPI:
    """Build the service app, loading whichever artifact paths are given.

    Unloadable artifacts raise here, before any socket is bound.
    """
    artifacts = {}
    if lr_artifact is not None:
        art = load(lr_artifact)
        if art.kind != "classical":
            raise StoreError(f"{lr_artifact} is not a classical artifact")
        artifacts["lr"] = art
    if bilstm_artifact is not None:
        art = load(bilstm_artifact)
        if art.kind != "neural":
            raise StoreError(f"{bilstm_artifact} is not a neural artifact")
        artifacts["bilstm"] = art

    app = FastAPI(title="tweetsent inference service")
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])
    app.state.artifacts = artifacts
    app.state.started_at = time.monotonic()

    @app.post("/predict")
    async def predict(request: Request):
        t0 = time.perf_counter()
        raw = await request.body()
        if len(raw) > MAX_BODY_BYTES:
            return _error(413, f"request body exceeds {MAX_BODY_BYTES} bytes")
        try:
            payload = json.loads(raw)
        except (UnicodeDecodeError, json.JSONDecodeError):
            return _error(400, "request body is not valid JSON")
        if not isinstance(payload, dict):
            return _error(400, "request body must be a JSON object")
        text = payload.get("text")
        model = payload.get("model")
        if not isinstance(text, str):
            return _error(400, 'field "text" must be a string')
        if model not in MODEL_CHOICES:
            return _error(400, f'unknown model {model!r}; valid choices: '
                               f'{", ".join(MODEL_CHOICES)}')
        if not artifacts:
            return _error(503, "no model artifacts are loaded")
        wanted = ["lr", "bilstm"] if model == "both" else [model]
        missing = [w for w in wanted if w not in artifacts]
        if missing:
            return _error(400, f'model {missing[0]!r} is not loaded; '
                               f'loaded models: {", ".join(sorted(artifacts))}')
        tokens = textprep.tokenize(textprep.clean(text))
        results = [_response_body(w, artifacts[w], tokens) for w in wanted]
        elapsed_ms = (time.perf_counter() - t0) * 1000.0
        log.info("predict model=%s latency_ms=%.3f", model, elapsed_ms)
        return JSONResponse(content={"results": results},
                            headers={"X-Inference-Ms": f"{elapsed_ms:.3f}"})

    @app.get("/models")
    async def models():
        entries = []
        for name in ("lr", "bilstm"):
            art = artifacts.get(name)
            if art is None:
                continue
            config = art.manifest.get("config", {})
            if art.kind == "classical":
                vocab_size = len(art.manifest.get("features", []))
                param_count = art.model.theta.size + 1
            else:
                vocab_size = art.model.config.vocab_size
                param_count = bilstm.parameter_count(art.model.config)
            entries.append({"model": name,
                            "vocab_size": vocab_size,
                            "parameter_count": int(param_count),
                            "trained_at": art.manifest.get("created_at"),
                            "test_accuracy": config.get("test_accuracy")})
        return entries

    @app.get("/health")
    async def health():
        loaded = len(artifacts)
        return {"status": "ok" if loaded >= 1 else "degraded",
                "uptime_s": time.monotonic() - app.state.started_at,
                "models_loaded": loaded}

    return app
