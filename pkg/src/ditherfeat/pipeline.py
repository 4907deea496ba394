"""End-to-end image -> descriptor pipeline and its configuration bundle."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .chroma import QuantizerConfig
from .histogram import SpatialChromaticHistogram, build_descriptor, flatten
from .image import BILINEAR
from .patterns import (
    DEFAULT_BLOCK_SIZE,
    DEFAULT_NMS_WINDOW,
    DEFAULT_THRESHOLD,
    DetectorConfig,
    detect_features,
)


@dataclass(frozen=True)
class PipelineConfig:
    """Everything needed to turn an image into a descriptor vector.

    interp and fill only matter to callers that generate transformed
    stimuli (the experiment protocols); they ride along here so a report's
    config echo is complete.
    """

    block_size: int = DEFAULT_BLOCK_SIZE
    threshold: float = DEFAULT_THRESHOLD
    nms_window: int = DEFAULT_NMS_WINDOW
    distance_bins: int = 4
    color_levels: int = 12
    v_black: float = 0.2
    s_gray: float = 0.2
    interp: str = BILINEAR
    fill: tuple = (0, 0, 0)

    def detector(self) -> DetectorConfig:
        return DetectorConfig(
            block_size=self.block_size,
            threshold=self.threshold,
            nms_window=self.nms_window,
        )

    def quantizer(self) -> QuantizerConfig:
        return QuantizerConfig(
            levels=self.color_levels, v_black=self.v_black, s_gray=self.s_gray
        )

    def as_dict(self) -> dict:
        return {
            "block_size": self.block_size,
            "threshold": self.threshold,
            "nms_window": self.nms_window,
            "distance_bins": self.distance_bins,
            "color_levels": self.color_levels,
            "v_black": self.v_black,
            "s_gray": self.s_gray,
            "interp": self.interp,
            "fill": list(self.fill),
        }


def describe_image(
    img, cfg: PipelineConfig = PipelineConfig()
) -> SpatialChromaticHistogram:
    """Detect salient patterns and build their spatial-chromatic histogram."""
    features = detect_features(img, cfg.detector())
    return build_descriptor(features, cfg.distance_bins, cfg.quantizer())


def descriptor_vector(img, cfg: PipelineConfig = PipelineConfig()) -> np.ndarray:
    """Flattened descriptor, length distance_bins * color_levels."""
    return flatten(describe_image(img, cfg))
