"""Two-class linear SVM with calibrated confidence output.

Training is primal hinge-loss minimization by stochastic subgradient
descent with the classic 1/(lambda * t) step schedule, followed by a
sigmoid fit on the training margins (Platt-style targets, Newton steps).
The sigmoid's intercept is pinned to zero so that confidence 0.5 falls
exactly on the separating hyperplane: sign(margin) and confidence > 0.5
always agree.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DimensionMismatch, EmptyClass
from .validation import check_matrix, check_vector


@dataclass(frozen=True)
class TrainConfig:
    c: float = 1.0
    epochs: int = 200
    seed: int = 0
    balanced: bool = True
    schedule_offset: int = 1  # added to the step counter inside 1/(lambda*t)

    def __post_init__(self):
        if self.c <= 0:
            raise ValueError(f"regularization c must be > 0, got {self.c}")
        if self.epochs < 1:
            raise ValueError(f"epochs must be >= 1, got {self.epochs}")


@dataclass(frozen=True)
class LinearModel:
    weights: np.ndarray
    bias: float
    calib_a: float
    calib_b: float
    dim: int
    seed: int


def train(positives, negatives, cfg: TrainConfig = TrainConfig()) -> LinearModel:
    """Fit a linear model on two example sets, then calibrate its margins.

    Deterministic for a fixed config: all randomness flows from cfg.seed.
    With cfg.balanced, hinge terms are weighted by inverse class frequency
    so a small positive class is not swamped.
    """
    pos = check_matrix(positives, name="positives")
    neg = check_matrix(negatives, name="negatives")
    if pos.shape[0] == 0:
        raise EmptyClass("positive class is empty")
    if neg.shape[0] == 0:
        raise EmptyClass("negative class is empty")
    if pos.shape[1] != neg.shape[1]:
        raise DimensionMismatch(
            f"class dimensions differ: {pos.shape[1]} vs {neg.shape[1]}"
        )

    X = np.vstack([pos, neg])
    y = np.concatenate([np.ones(pos.shape[0]), -np.ones(neg.shape[0])])
    n, dim = X.shape
    if cfg.balanced:
        sample_w = np.where(
            y > 0, n / (2.0 * pos.shape[0]), n / (2.0 * neg.shape[0])
        )
    else:
        sample_w = np.ones(n)

    lam = 1.0 / (n * cfg.c)
    rng = np.random.default_rng(cfg.seed)
    w = np.zeros(dim)
    b = 0.0
    t = 0
    for _ in range(cfg.epochs):
        for i in rng.permutation(n):
            t += 1
            eta = 1.0 / (lam * (t + cfg.schedule_offset))
            violating = y[i] * (X[i] @ w + b) < 1.0
            w *= 1.0 - eta * lam
            if violating:
                step = eta * sample_w[i] * y[i]
                w += step * X[i]
                b += step

    margins = X @ w + b
    calib_a = _fit_sigmoid_slope(margins, y)
    return LinearModel(
        weights=w, bias=float(b), calib_a=calib_a, calib_b=0.0,
        dim=dim, seed=cfg.seed,
    )


def _fit_sigmoid_slope(margins: np.ndarray, y: np.ndarray) -> float:
    """Newton fit of a in p = 1 / (1 + exp(a * margin)), intercept fixed at 0.

    Targets are Platt's smoothed labels. The slope is clamped negative so
    confidence is always strictly increasing in the margin.
    """
    n_pos = int((y > 0).sum())
    n_neg = int((y <= 0).sum())
    hi = (n_pos + 1.0) / (n_pos + 2.0)
    lo = 1.0 / (n_neg + 2.0)
    targets = np.where(y > 0, hi, lo)

    a = -1.0
    for _ in range(100):
        p = _sigmoid(a * margins)
        grad = float((margins * (targets - p)).sum())
        hess = float((margins**2 * p * (1.0 - p)).sum())
        if hess <= 1e-300 or abs(grad) < 1e-12:
            break
        step = grad / hess
        # keep Newton from overshooting into wild slopes
        step = float(np.clip(step, -1e3, 1e3))
        a -= step
        if abs(step) < 1e-12:
            break
    return min(a, -1e-12)


def _sigmoid(z: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + np.exp(np.clip(z, -500.0, 500.0)))


def margin(model: LinearModel, x) -> float:
    v = check_vector(x, dim=model.dim)
    return float(v @ model.weights + model.bias)


def confidence(model: LinearModel, x) -> float:
    """Calibrated probability in (0, 1) that x belongs to the positive class."""
    m = margin(model, x)
    return float(_sigmoid(model.calib_a * m + model.calib_b))


def confidence_batch(model: LinearModel, X) -> np.ndarray:
    m = check_matrix(X, dim=model.dim) @ model.weights + model.bias
    return _sigmoid(model.calib_a * m + model.calib_b)


def model_to_json(model: LinearModel) -> str:
    return json.dumps(
        {
            "weights": [float(v) for v in model.weights],
            "bias": model.bias,
            "calib_a": model.calib_a,
            "calib_b": model.calib_b,
            "dim": model.dim,
            "seed": model.seed,
        }
    )


def model_from_json(text: str) -> LinearModel:
    d = json.loads(text)
    weights = np.asarray(d["weights"], dtype=np.float64)
    if weights.shape[0] != d["dim"]:
        raise DimensionMismatch(
            f"weights length {weights.shape[0]} does not match dim {d['dim']}"
        )
    return LinearModel(
        weights=weights,
        bias=float(d["bias"]),
        calib_a=float(d["calib_a"]),
        calib_b=float(d["calib_b"]),
        dim=int(d["dim"]),
        seed=int(d["seed"]),
    )


def save_model(model: LinearModel, path) -> None:
    Path(path).write_text(model_to_json(model))


def load_model(path) -> LinearModel:
    return model_from_json(Path(path).read_text())
