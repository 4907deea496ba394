"""scikit-learn style estimators wrapping the functional pipeline.

SpatialChromaticTransformer turns a sequence of RGB images into descriptor
row vectors; PegasosSvmClassifier fits the calibrated linear SVM on such
vectors. Both compose with sklearn Pipeline / clone / get_params.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.exceptions import NotFittedError

from . import svm
from .pipeline import PipelineConfig, descriptor_vector
from .validation import check_matrix, check_rgb_image


class SpatialChromaticTransformer(TransformerMixin, BaseEstimator):
    """Stateless transformer: RGB images -> spatial-chromatic descriptors.

    Parameters mirror PipelineConfig: detector geometry (block_size,
    threshold, nms_window) and descriptor shape (distance_bins,
    color_levels, v_black, s_gray). transform accepts any iterable of
    (H, W, 3) uint8 arrays and returns a (n, distance_bins * color_levels)
    float matrix.
    """

    def __init__(
        self,
        block_size=2,
        threshold=None,
        nms_window=5,
        distance_bins=4,
        color_levels=12,
        v_black=0.2,
        s_gray=0.2,
    ):
        self.block_size = block_size
        self.threshold = threshold
        self.nms_window = nms_window
        self.distance_bins = distance_bins
        self.color_levels = color_levels
        self.v_black = v_black
        self.s_gray = s_gray

    def _config(self) -> PipelineConfig:
        from .patterns import DEFAULT_THRESHOLD

        threshold = DEFAULT_THRESHOLD if self.threshold is None else self.threshold
        return PipelineConfig(
            block_size=self.block_size,
            threshold=threshold,
            nms_window=self.nms_window,
            distance_bins=self.distance_bins,
            color_levels=self.color_levels,
            v_black=self.v_black,
            s_gray=self.s_gray,
        )

    def fit(self, X, y=None):
        return self

    def transform(self, X) -> np.ndarray:
        cfg = self._config()
        rows = [descriptor_vector(check_rgb_image(img), cfg) for img in X]
        width = cfg.distance_bins * cfg.color_levels
        if not rows:
            return np.zeros((0, width))
        return np.vstack(rows)


class PegasosSvmClassifier(ClassifierMixin, BaseEstimator):
    """Binary linear SVM with probability output, trained by subgradient
    descent and calibrated so predict_proba crosses 0.5 on the margin."""

    def __init__(self, c=1.0, epochs=200, seed=0, balanced=True):
        self.c = c
        self.epochs = epochs
        self.seed = seed
        self.balanced = balanced

    def fit(self, X, y):
        X = check_matrix(X)
        y = np.asarray(y)
        if X.shape[0] != y.shape[0]:
            raise ValueError(
                f"X has {X.shape[0]} rows but y has {y.shape[0]} labels"
            )
        classes = np.unique(y)
        if classes.shape[0] != 2:
            raise ValueError(f"need exactly 2 classes, got {classes.tolist()}")
        self.classes_ = classes
        cfg = svm.TrainConfig(
            c=self.c, epochs=self.epochs, seed=self.seed, balanced=self.balanced
        )
        self.model_ = svm.train(X[y == classes[1]], X[y == classes[0]], cfg)
        self.coef_ = self.model_.weights.reshape(1, -1)
        self.intercept_ = np.array([self.model_.bias])
        return self

    def _check_fitted(self):
        if not hasattr(self, "model_"):
            raise NotFittedError("fit must be called before prediction")

    def decision_function(self, X) -> np.ndarray:
        self._check_fitted()
        X = check_matrix(X, dim=self.model_.dim)
        return X @ self.model_.weights + self.model_.bias

    def predict_proba(self, X) -> np.ndarray:
        self._check_fitted()
        p1 = svm.confidence_batch(self.model_, X)
        return np.column_stack([1.0 - p1, p1])

    def predict(self, X) -> np.ndarray:
        self._check_fitted()
        pos = self.decision_function(X) > 0
        return np.where(pos, self.classes_[1], self.classes_[0])
