"""Binary logistic regression over sparse TF-IDF features.

Trained by full-batch gradient descent on the L2-penalized cross-entropy
objective, with the learning rate halved and the step retried whenever it
would increase the objective. Initialization at zero makes training fully
deterministic.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.special import expit

from .errors import DataError, ShapeError, TrainingError
from .tfidf import SparseVec, stack

_LOG_CLAMP = 1e-15
_MIN_STEP = 1e-12


@dataclass
class LogRegConfig:
    l2_lambda: float = 1.0
    learning_rate: float = 1.0
    max_iters: int = 1000
    tol: float = 1e-4


@dataclass
class LogRegModel:
    theta: np.ndarray
    bias: float
    l2_lambda: float
    objective_history: list = field(default_factory=list, repr=False, compare=False)


def predict_proba(x: SparseVec, model: LogRegModel) -> float:
    """Sigmoid of the sparse dot product theta.x + bias."""
    if x.dim != model.theta.shape[0]:
        raise ShapeError(f"vector dim {x.dim} != model dim {model.theta.shape[0]}")
    z = model.bias
    for j, w in x.entries.items():
        z += model.theta[j] * w
    return float(expit(z))


def predict(x: SparseVec, model: LogRegModel) -> int:
    return 1 if predict_proba(x, model) >= 0.5 else 0


def _objective(X, y, theta, bias, l2_lambda):
    m = X.shape[0]
    h = expit(X @ theta + bias)
    h = np.clip(h, _LOG_CLAMP, 1.0 - _LOG_CLAMP)
    data_term = -(y @ np.log(h) + (1.0 - y) @ np.log(1.0 - h)) / m
    return float(data_term + (l2_lambda / (2.0 * m)) * (theta @ theta))


def cost(data, model: LogRegModel) -> float:
    """Penalized cross-entropy of the model on (SparseVec, label) pairs."""
    data = list(data)
    if not data:
        raise DataError("cost over empty data is undefined")
    X = stack(v for v, _ in data)
    y = np.asarray([label for _, label in data], dtype=np.float64)
    return _objective(X, y, model.theta, model.bias, model.l2_lambda)


def _gradient(X, y, theta, bias, l2_lambda):
    m = X.shape[0]
    residual = expit(X @ theta + bias) - y
    g_theta = X.T @ residual / m + (l2_lambda / m) * theta
    return g_theta, float(residual.mean())


def gradient(data, model: LogRegModel):
    """(d/dtheta, d/dbias) of cost at the model's current parameters."""
    data = list(data)
    if not data:
        raise DataError("gradient over empty data is undefined")
    X = stack(v for v, _ in data)
    y = np.asarray([label for _, label in data], dtype=np.float64)
    return _gradient(X, y, model.theta, model.bias, model.l2_lambda)


def train(train_data, config: LogRegConfig | None = None) -> LogRegModel:
    """Fit weights by monotone full-batch gradient descent from zero.

    Stops when the gradient infinity-norm drops below config.tol, the step
    size underflows, or max_iters is reached. The returned model carries
    the per-iteration objective values in objective_history.
    """
    config = config or LogRegConfig()
    train_data = list(train_data)
    labels = {label for _, label in train_data}
    if labels != {0, 1}:
        raise TrainingError(f"need both classes in training data, got labels {sorted(labels)}")

    X = stack(v for v, _ in train_data)
    y = np.asarray([label for _, label in train_data], dtype=np.float64)
    dim = X.shape[1]
    lam = config.l2_lambda

    theta = np.zeros(dim)
    bias = 0.0
    step = config.learning_rate
    obj = _objective(X, y, theta, bias, lam)
    history = [obj]

    for _ in range(config.max_iters):
        g_theta, g_bias = _gradient(X, y, theta, bias, lam)
        if max(np.abs(g_theta).max(initial=0.0), abs(g_bias)) < config.tol:
            break

        improved = False
        while step >= _MIN_STEP:
            cand_theta = theta - step * g_theta
            cand_bias = bias - step * g_bias
            cand_obj = _objective(X, y, cand_theta, cand_bias, lam)
            if np.isfinite(cand_obj) and cand_obj <= obj:
                improved = True
                break
            step /= 2.0
        if not improved:
            break
        theta, bias, obj = cand_theta, cand_bias, cand_obj
        history.append(obj)

    if not np.isfinite(obj):
        raise TrainingError("objective diverged to a non-finite value")
    return LogRegModel(theta=theta, bias=bias, l2_lambda=lam,
                       objective_history=history)
