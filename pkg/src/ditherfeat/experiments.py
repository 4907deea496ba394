"""Invariance experiment protocols and their reports.

Both protocols share one shape: generate transformed stimuli from a source
image, describe everything with a fixed descriptor config, train the
two-class SVM on a seeded sample of stimuli versus a pool of same-category
images, then report the calibrated confidence of every stimulus.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .chroma import QuantizerConfig
from .errors import DitherFeatError, InsufficientData
from .histogram import build_descriptor, flatten
from .image import rotate, scale
from .patterns import detect_features
from .pipeline import PipelineConfig, descriptor_vector
from .svm import TrainConfig, confidence, train

SCALE_FACTORS = (0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0)

ROTATION_TRAIN_POSITIVES = 6
MIN_SIMILARS = 99


@dataclass
class ExperimentReport:
    """Per-stimulus confidences plus enough config to re-run identically."""

    rows: list  # [(param, confidence), ...]; failed stimuli carry nan
    failures: list  # [(param, message), ...]
    config: dict

    def summary(self) -> dict:
        confs = [c for _, c in self.rows]
        finite = [c for c in confs if math.isfinite(c)]
        above = sum(1 for c in finite if c > 0.5)
        return {
            "rows": len(confs),
            "min": min(finite) if finite else None,
            "mean": sum(finite) / len(finite) if finite else None,
            "fraction_above_half": above / len(confs) if confs else 0.0,
        }

    def to_csv(self) -> str:
        lines = [
            "# config: " + json.dumps(self.config, sort_keys=True),
            "# summary: " + json.dumps(self.summary(), sort_keys=True),
            "param,confidence",
        ]
        for param, conf in self.rows:
            lines.append(f"{_fmt(param)},{_fmt(conf)}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        rows = [
            [param, None if not math.isfinite(conf) else conf]
            for param, conf in self.rows
        ]
        return json.dumps(
            {
                "config": self.config,
                "summary": self.summary(),
                "rows": rows,
                "failures": [[p, m] for p, m in self.failures],
            },
            sort_keys=True,
        )


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _describe_all(images, cfg: PipelineConfig, what: str) -> list:
    vectors = []
    for i, img in enumerate(images):
        try:
            vectors.append(descriptor_vector(img, cfg))
        except DitherFeatError as e:
            raise DitherFeatError(f"{what} image #{i}: {e}") from e
    return vectors


def _run_stimulus_protocol(
    params,
    make_stimulus,
    similars,
    cfg: PipelineConfig,
    seed: int,
    n_positives: int,
    train_cfg: TrainConfig | None,
    experiment: str,
    extra_config: dict | None,
) -> ExperimentReport:
    if len(similars) < MIN_SIMILARS:
        raise InsufficientData(
            f"{experiment} protocol needs >= {MIN_SIMILARS} similar images, "
            f"got {len(similars)}"
        )
    negatives = _describe_all(similars, cfg, "similar")

    stimulus_vecs = {}
    failures = []
    for p in params:
        try:
            stimulus_vecs[p] = descriptor_vector(make_stimulus(p), cfg)
        except DitherFeatError as e:
            failures.append((p, str(e)))

    ok_params = [p for p in params if p in stimulus_vecs]
    if len(ok_params) < n_positives:
        raise InsufficientData(
            f"only {len(ok_params)} stimuli could be described; "
            f"{n_positives} training positives required"
        )
    rng = np.random.default_rng(seed)
    chosen_idx = rng.choice(len(ok_params), size=n_positives, replace=False)
    chosen = sorted(ok_params[i] for i in chosen_idx)
    positives = [stimulus_vecs[p] for p in chosen]

    base = train_cfg if train_cfg is not None else TrainConfig()
    cfg_train = replace(base, seed=int(rng.integers(0, 2**31)))
    model = train(positives, negatives, cfg_train)

    rows = []
    for p in params:
        if p in stimulus_vecs:
            rows.append((p, confidence(model, stimulus_vecs[p])))
        else:
            rows.append((p, float("nan")))

    config = {
        "experiment": experiment,
        "seed": seed,
        "training_params": chosen,
        "n_similars": len(similars),
        "svm": {
            "c": cfg_train.c,
            "epochs": cfg_train.epochs,
            "seed": cfg_train.seed,
            "balanced": cfg_train.balanced,
        },
        **cfg.as_dict(),
    }
    if extra_config:
        config.update(extra_config)
    return ExperimentReport(rows=rows, failures=failures, config=config)


def run_rotation_experiment(
    source,
    similars,
    cfg: PipelineConfig = PipelineConfig(),
    seed: int = 0,
    train_cfg: TrainConfig | None = None,
    extra_config: dict | None = None,
) -> ExperimentReport:
    """Rotate the source through 1..360 degrees and score every stimulus.

    Training uses ROTATION_TRAIN_POSITIVES seeded-random rotations against
    the similar-image pool. Stimuli that fail feature extraction become
    nan rows, identified by degree in the report's failure list.
    """
    return _run_stimulus_protocol(
        params=list(range(1, 361)),
        make_stimulus=lambda deg: rotate(source, deg, cfg.interp, cfg.fill),
        similars=similars,
        cfg=cfg,
        seed=seed,
        n_positives=ROTATION_TRAIN_POSITIVES,
        train_cfg=train_cfg,
        experiment="rotation",
        extra_config=extra_config,
    )


def run_scale_experiment(
    source,
    similars,
    cfg: PipelineConfig = PipelineConfig(),
    seed: int = 0,
    train_cfg: TrainConfig | None = None,
    extra_config: dict | None = None,
) -> ExperimentReport:
    """Scale the source by the 8 canonical factors and score every stimulus.

    One seeded-random scaled image serves as the only training positive.
    """
    return _run_stimulus_protocol(
        params=list(SCALE_FACTORS),
        make_stimulus=lambda f: scale(source, f, cfg.interp),
        similars=similars,
        cfg=cfg,
        seed=seed,
        n_positives=1,
        train_cfg=train_cfg,
        experiment="scale",
        extra_config=extra_config,
    )


def run_grid_sweep(
    labeled_images,
    k_range=range(3, 11),
    level_set=(6, 12, 24),
    cfg: PipelineConfig = PipelineConfig(),
    seed: int = 0,
    train_cfg: TrainConfig | None = None,
) -> list:
    """Mean one-vs-rest retrieval rate for every (k, levels) combination.

    Features are detected once per image and shared across the grid. Each
    category gets a seeded half split; its retrieval rate is the held-out
    accuracy of a model trained on that category's train half versus the
    train halves of all other categories (confidence > 0.5 means
    "retrieved"). Returns [(k, levels, rate), ...] sorted by rate
    descending, then (k, levels).
    """
    images = [img for img, _ in labeled_images]
    labels = [lab for _, lab in labeled_images]
    categories = sorted(set(labels))
    if len(categories) < 2:
        raise InsufficientData(f"grid sweep needs >= 2 categories, got {len(categories)}")

    features = [detect_features(img, cfg.detector()) for img in images]

    rng = np.random.default_rng(seed)
    train_idx, test_idx = [], []
    for cat in categories:
        idxs = [i for i, lab in enumerate(labels) if lab == cat]
        if len(idxs) < 2:
            raise InsufficientData(
                f"category {cat!r} has {len(idxs)} image(s); the split needs >= 2"
            )
        perm = rng.permutation(len(idxs))
        half = len(idxs) // 2
        train_idx.extend(idxs[i] for i in perm[:half])
        test_idx.extend(idxs[i] for i in perm[half:])

    base = train_cfg if train_cfg is not None else TrainConfig()
    results = []
    for k in k_range:
        for levels in level_set:
            quantizer = QuantizerConfig(
                levels=levels, v_black=cfg.v_black, s_gray=cfg.s_gray
            )
            vecs = [flatten(build_descriptor(f, k, quantizer)) for f in features]
            rates = []
            for cat in categories:
                pos = [vecs[i] for i in train_idx if labels[i] == cat]
                neg = [vecs[i] for i in train_idx if labels[i] != cat]
                model = train(pos, neg, replace(base, seed=seed))
                correct = 0
                for i in test_idx:
                    retrieved = confidence(model, vecs[i]) > 0.5
                    correct += retrieved == (labels[i] == cat)
                rates.append(correct / len(test_idx))
            results.append((int(k), int(levels), sum(rates) / len(rates)))
    results.sort(key=lambda row: (-row[2], row[0], row[1]))
    return results


def sweep_to_csv(rows) -> str:
    lines = ["k,levels,rate"]
    for k, levels, rate in rows:
        lines.append(f"{k},{levels},{_fmt(float(rate))}")
    return "\n".join(lines) + "\n"
