"""Salient dither pattern features with a spatial-chromatic histogram.

Detects locally salient 2x2 block-color patterns in RGB images, summarizes
them as a rotation- and scale-tolerant k x L histogram (equal-area centroid
distance bins crossed with quantized HSV color bins), and scores images
with a calibrated linear SVM. Ships the experiment harness that exercises
the invariance claims end to end.
"""

from .chroma import HsvColor, QuantizerConfig, quantize, rgb_to_hsv
from .errors import (
    DegenerateOutput,
    DegenerateSpread,
    DimensionMismatch,
    DitherFeatError,
    DomainError,
    EmptyClass,
    EmptyPointSet,
    FormatError,
    ImageTooSmall,
    InsufficientData,
    OutOfBounds,
    OutOfRange,
    ShapeMismatch,
)
from .estimators import PegasosSvmClassifier, SpatialChromaticTransformer
from .experiments import (
    SCALE_FACTORS,
    ExperimentReport,
    run_grid_sweep,
    run_rotation_experiment,
    run_scale_experiment,
)
from .geometry import (
    Centroid,
    DistanceBins,
    assign_bin,
    centroid,
    make_bins,
    squared_distance,
)
from .histogram import (
    SpatialChromaticHistogram,
    build_descriptor,
    build_histogram,
    descriptor_distance,
    flatten,
)
from .image import BILINEAR, NEAREST, load_image, rotate, save_image, scale
from .patterns import (
    DEFAULT_BLOCK_SIZE,
    DEFAULT_NMS_WINDOW,
    DEFAULT_THRESHOLD,
    BlockImage,
    DetectorConfig,
    DitherPattern,
    FeaturePoint,
    block_average,
    calibrate_saliency_threshold,
    cdpc_pattern_count,
    detect_features,
    pattern_at,
    pattern_distance,
)
from .pipeline import PipelineConfig, describe_image, descriptor_vector
from .svm import LinearModel, TrainConfig, confidence, train

__version__ = "0.1.0"

__all__ = [
    "BILINEAR",
    "NEAREST",
    "BlockImage",
    "Centroid",
    "DEFAULT_BLOCK_SIZE",
    "DEFAULT_NMS_WINDOW",
    "DEFAULT_THRESHOLD",
    "DegenerateOutput",
    "DegenerateSpread",
    "DetectorConfig",
    "DimensionMismatch",
    "DistanceBins",
    "DitherFeatError",
    "DitherPattern",
    "DomainError",
    "EmptyClass",
    "EmptyPointSet",
    "ExperimentReport",
    "FeaturePoint",
    "FormatError",
    "HsvColor",
    "ImageTooSmall",
    "InsufficientData",
    "LinearModel",
    "OutOfBounds",
    "OutOfRange",
    "PegasosSvmClassifier",
    "PipelineConfig",
    "QuantizerConfig",
    "SCALE_FACTORS",
    "ShapeMismatch",
    "SpatialChromaticHistogram",
    "SpatialChromaticTransformer",
    "TrainConfig",
    "block_average",
    "build_descriptor",
    "build_histogram",
    "calibrate_saliency_threshold",
    "cdpc_pattern_count",
    "centroid",
    "confidence",
    "descriptor_distance",
    "descriptor_vector",
    "describe_image",
    "detect_features",
    "flatten",
    "load_image",
    "make_bins",
    "pattern_at",
    "pattern_distance",
    "quantize",
    "rgb_to_hsv",
    "rotate",
    "run_grid_sweep",
    "run_rotation_experiment",
    "run_scale_experiment",
    "save_image",
    "scale",
    "squared_distance",
    "train",
]
