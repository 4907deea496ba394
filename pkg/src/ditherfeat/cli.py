"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 data error (bad files, malformed
images, protocol preconditions). All randomness flows from --seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import histogram, svm
from .corpus import load_corel_layout, write_corpus
from .errors import DitherFeatError
from .experiments import (
    run_grid_sweep,
    run_rotation_experiment,
    run_scale_experiment,
    sweep_to_csv,
)
from .image import BILINEAR, NEAREST, load_image
from .patterns import (
    DEFAULT_BLOCK_SIZE,
    DEFAULT_NMS_WINDOW,
    DEFAULT_THRESHOLD,
    calibrate_saliency_threshold,
    detect_features,
    features_to_jsonl,
)
from .pipeline import PipelineConfig, describe_image
from .svm import TrainConfig


class _Parser(argparse.ArgumentParser):
    """argparse with usage errors mapped to exit status 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _parse_fill(text: str):
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("fill must be R,G,B")
    try:
        rgb = tuple(int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError("fill components must be integers") from None
    if any(v < 0 or v > 255 for v in rgb):
        raise argparse.ArgumentTypeError("fill components must lie in [0, 255]")
    return rgb


def _parse_k_range(text: str):
    lo, sep, hi = text.partition("-")
    try:
        if sep:
            return range(int(lo), int(hi) + 1)
        return range(int(lo), int(lo) + 1)
    except ValueError:
        raise argparse.ArgumentTypeError("k range must look like 3-10 or 4") from None


def _parse_levels(text: str):
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("levels must be a comma list like 6,12,24") from None


def _add_detector_flags(p):
    p.add_argument("--block-size", type=int, default=DEFAULT_BLOCK_SIZE)
    p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    p.add_argument("--nms-window", type=int, default=DEFAULT_NMS_WINDOW)


def _add_descriptor_flags(p):
    _add_detector_flags(p)
    p.add_argument("--k", type=int, default=4, help="distance bin count")
    p.add_argument("--levels", type=int, default=12, help="color bin count")
    p.add_argument("--v-black", type=float, default=0.2)
    p.add_argument("--s-gray", type=float, default=0.2)


def _add_experiment_flags(p):
    _add_descriptor_flags(p)
    p.add_argument("--interp", choices=(NEAREST, BILINEAR), default=BILINEAR)
    p.add_argument("--fill", type=_parse_fill, default=(0, 0, 0))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--svm-c", type=float, default=1.0)
    p.add_argument("--epochs", type=int, default=200)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", type=Path, default=None)


def _pipeline_config(args) -> PipelineConfig:
    return PipelineConfig(
        block_size=args.block_size,
        threshold=args.threshold,
        nms_window=args.nms_window,
        distance_bins=getattr(args, "k", 4),
        color_levels=getattr(args, "levels", 12),
        v_black=getattr(args, "v_black", 0.2),
        s_gray=getattr(args, "s_gray", 0.2),
        interp=getattr(args, "interp", BILINEAR),
        fill=tuple(getattr(args, "fill", (0, 0, 0))),
    )


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _collect_images(paths) -> list:
    """Expand files and directories into a sorted list of image paths."""
    files = []
    for raw in paths:
        p = Path(raw)
        if p.is_dir():
            files.extend(
                sorted(q for q in p.iterdir() if q.suffix.lower() in (".ppm", ".png"))
            )
        else:
            files.append(p)
    return files


def build_parser() -> _Parser:
    parser = _Parser(prog="ditherfeat", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("extract", help="detect salient patterns, emit JSON lines")
    p.add_argument("image", type=Path)
    _add_detector_flags(p)
    p.add_argument("--out", type=Path, default=None)

    p = sub.add_parser("describe", help="build the spatial-chromatic descriptor")
    p.add_argument("image", type=Path)
    _add_descriptor_flags(p)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", type=Path, default=None)

    p = sub.add_parser("train", help="train the confidence classifier")
    p.add_argument("--pos", nargs="+", required=True, help="positive images or dirs")
    p.add_argument("--neg", nargs="+", required=True, help="negative images or dirs")
    _add_descriptor_flags(p)
    p.add_argument("--svm-c", type=float, default=1.0)
    p.add_argument("--epochs", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path, default=None)

    p = sub.add_parser("predict", help="confidence of images under a model")
    p.add_argument("--model", type=Path, required=True)
    p.add_argument("images", nargs="+")
    _add_descriptor_flags(p)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", type=Path, default=None)

    p = sub.add_parser("exp-rotate", help="360-degree rotation invariance protocol")
    p.add_argument("--source", type=Path, required=True)
    p.add_argument("--similars", nargs="+", required=True)
    _add_experiment_flags(p)

    p = sub.add_parser("exp-scale", help="8-factor scale invariance protocol")
    p.add_argument("--source", type=Path, required=True)
    p.add_argument("--similars", nargs="+", required=True)
    _add_experiment_flags(p)

    p = sub.add_parser("sweep", help="(k, levels) retrieval-rate grid")
    p.add_argument("--data", type=Path, required=True, help="numeric-id image dir")
    p.add_argument("--k-range", type=_parse_k_range, default=range(3, 11))
    p.add_argument("--levels", type=_parse_levels, default=(6, 12, 24))
    _add_detector_flags(p)
    p.add_argument("--v-black", type=float, default=0.2)
    p.add_argument("--s-gray", type=float, default=0.2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--svm-c", type=float, default=1.0)
    p.add_argument("--epochs", type=int, default=200)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", type=Path, default=None)

    p = sub.add_parser(
        "calibrate-threshold",
        help="rederive the edge-vs-corner saliency threshold",
    )
    p.add_argument("--block-size", type=int, default=DEFAULT_BLOCK_SIZE)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path, default=None)

    p = sub.add_parser("make-corpus", help="write a synthetic corpus directory")
    p.add_argument("outdir", type=Path)
    p.add_argument("--categories", type=int, default=2)
    p.add_argument("--per-category", type=int, default=100)
    p.add_argument("--size", type=int, default=96)
    p.add_argument("--seed", type=int, default=0)

    return parser


def _cmd_extract(args) -> int:
    img = load_image(args.image)
    cfg = _pipeline_config(args)
    features = detect_features(img, cfg.detector())
    _emit(features_to_jsonl(features), args.out)
    return 0


def _cmd_describe(args) -> int:
    img = load_image(args.image)
    cfg = _pipeline_config(args)
    h = describe_image(img, cfg)
    text = histogram.to_csv(h) if args.format == "csv" else histogram.to_json(h) + "\n"
    _emit(text, args.out)
    return 0


def _cmd_train(args) -> int:
    cfg = _pipeline_config(args)
    pos_paths = _collect_images(args.pos)
    neg_paths = _collect_images(args.neg)
    pos = [_describe_path(p, cfg) for p in pos_paths]
    neg = [_describe_path(p, cfg) for p in neg_paths]
    model = svm.train(
        pos, neg, TrainConfig(c=args.svm_c, epochs=args.epochs, seed=args.seed)
    )
    _emit(svm.model_to_json(model) + "\n", args.out)
    return 0


def _describe_path(path, cfg: PipelineConfig):
    from .pipeline import descriptor_vector

    return descriptor_vector(load_image(path), cfg)


def _cmd_predict(args) -> int:
    cfg = _pipeline_config(args)
    model = svm.load_model(args.model)
    paths = _collect_images(args.images)
    rows = [(str(p), svm.confidence(model, _describe_path(p, cfg))) for p in paths]
    if args.format == "json":
        text = json.dumps([[p, c] for p, c in rows]) + "\n"
    else:
        text = "image,confidence\n" + "".join(f"{p},{c!r}\n" for p, c in rows)
    _emit(text, args.out)
    return 0


def _run_experiment(args, runner, name: str) -> int:
    cfg = _pipeline_config(args)
    source = load_image(args.source)
    similar_paths = _collect_images(args.similars)
    similars = [load_image(p) for p in similar_paths]
    report = runner(
        source,
        similars,
        cfg=cfg,
        seed=args.seed,
        train_cfg=TrainConfig(c=args.svm_c, epochs=args.epochs),
        extra_config={
            "source_path": str(args.source),
            "n_similar_paths": len(similar_paths),
        },
    )
    text = report.to_json() + "\n" if args.format == "json" else report.to_csv()
    _emit(text, args.out)
    return 0


def _cmd_sweep(args) -> int:
    cfg = _pipeline_config(args)
    dataset = load_corel_layout(args.data)
    rows = run_grid_sweep(
        dataset.load_images(),
        k_range=args.k_range,
        level_set=args.levels,
        cfg=cfg,
        seed=args.seed,
        train_cfg=TrainConfig(c=args.svm_c, epochs=args.epochs),
    )
    if args.format == "json":
        text = json.dumps([[k, lv, r] for k, lv, r in rows]) + "\n"
    else:
        text = sweep_to_csv(rows)
    _emit(text, args.out)
    return 0


def _cmd_calibrate(args) -> int:
    edge, corner, recommended = calibrate_saliency_threshold(
        block_size=args.block_size, seed=args.seed
    )
    text = (
        json.dumps(
            {
                "edge_ceiling": edge,
                "corner_floor": corner,
                "recommended": recommended,
            }
        )
        + "\n"
    )
    _emit(text, args.out)
    return 0


def _cmd_make_corpus(args) -> int:
    dataset = write_corpus(
        args.outdir,
        categories=args.categories,
        per_category=args.per_category,
        size=args.size,
        seed=args.seed,
    )
    sys.stdout.write(f"wrote {len(dataset.entries)} images to {args.outdir}\n")
    return 0


_HANDLERS = {
    "extract": _cmd_extract,
    "describe": _cmd_describe,
    "train": _cmd_train,
    "predict": _cmd_predict,
    "exp-rotate": lambda a: _run_experiment(a, run_rotation_experiment, "rotation"),
    "exp-scale": lambda a: _run_experiment(a, run_scale_experiment, "scale"),
    "sweep": _cmd_sweep,
    "calibrate-threshold": _cmd_calibrate,
    "make-corpus": _cmd_make_corpus,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return _HANDLERS[args.command](args)
    except (DitherFeatError, OSError) as e:
        print(f"ditherfeat: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
