"""Demo CLI: a reusable crop/denoise/resample pipe extended with edge kernels.

Wires the image operations into contracted info functions, composes the
``processing`` pipe, nests it inside the ``experiment`` pipe, and runs
both over a binary PGM with dot-qualified per-step arguments. Defaults
(box 8,8,48,48; gaussian3; scale 2; prewitt) are this package's choice.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from . import image
from .contract import attach_attributes, attach_flow, configure_args, normalize
from .pipeline import Pipe, compose, describe, make_unit, run
from .predicates import one_of, positive_number
from .typeexpr import INTEGER, TEXT, Pred, fixed

GRAY = Pred(image.is_gray_image)

_BOX4 = fixed(INTEGER, INTEGER, INTEGER, INTEGER)


def _contracted(fn, arg_specs, doc):
    info = attach_flow(normalize(fn), entry_tp=GRAY, return_tp=GRAY)
    if arg_specs:
        info = configure_args(info, arg_specs)
    return attach_attributes(info, {"doc": doc, "version": "0.1.0"})


def crop_info():
    return _contracted(image.crop, {"box": _BOX4}, "exact sub-rectangle copy")


def denoise_info():
    return _contracted(
        image.denoise,
        {"kernel": one_of("mean", "gaussian3")},
        "3x3 smoothing with replicate padding",
    )


def resample_info():
    return _contracted(
        image.resample,
        {"scale": positive_number()},
        "nearest-neighbor rescale",
    )


def edge_info():
    return _contracted(
        image.edge,
        {"method": TEXT},
        "prewitt magnitude or 3x3 laplacian response",
    )


def build_processing() -> Pipe:
    """The reusable preprocessing pipe: crop -> denoise -> resample."""
    return compose(
        "processing",
        [
            make_unit(crop_info(), "crop"),
            make_unit(denoise_info(), "denoise"),
            make_unit(resample_info(), "resample"),
        ],
    )


def build_experiment(broken: bool = False) -> Pipe:
    """The experiment pipe, reusing `processing` as a nested step.

    `broken` swaps in a text-expecting step so composition-time junction
    checking can be demonstrated from the CLI.
    """
    steps = [build_processing(), make_unit(edge_info(), "edge")]
    if broken:
        text_sink = attach_flow(
            normalize(lambda data: data, name="expects_text"), entry_tp=TEXT, return_tp=TEXT
        )
        steps.insert(1, make_unit(text_sink, "mismatched"))
    return compose("experiment", steps)


def _parse_box(text: str) -> tuple[int, int, int, int]:
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("box must be x0,y0,w,h")
    try:
        x0, y0, w, h = (int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError("box components must be integers") from None
    return (x0, y0, w, h)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="infofn-demo",
        description="Run the demo image pipeline over a binary PGM (P5, maxval 255).",
    )
    parser.add_argument("--in", dest="input", help="input PGM path")
    parser.add_argument("--out-dir", default=".", help="directory for output PGMs")
    parser.add_argument("--box", type=_parse_box, default=(8, 8, 48, 48),
                        help="crop box x0,y0,w,h (default 8,8,48,48)")
    parser.add_argument("--denoise", default="gaussian3",
                        help="denoise kernel: mean or gaussian3 (default gaussian3)")
    parser.add_argument("--scale", type=float, default=2.0,
                        help="resample factor (default 2)")
    parser.add_argument("--edge", default="prewitt",
                        help="edge method: prewitt or laplacian (default prewitt)")
    parser.add_argument("--dump-pipe", action="store_true",
                        help="print the experiment pipe manifest and exit")
    parser.add_argument("--debug-incompatible", action="store_true",
                        help=argparse.SUPPRESS)
    return parser


def demo_main(argv: Sequence[str] | None = None) -> int:
    """CLI body; returns the process exit status."""
    opts = _build_parser().parse_args(argv)

    try:
        processing = build_processing()
        experiment = build_experiment(broken=opts.debug_incompatible)
    except Exception as exc:
        sys.stderr.write(f"infofn-demo: composition failed: {exc}\n")
        return 1

    if opts.dump_pipe:
        print(describe(experiment))
        return 0

    if not opts.input:
        sys.stderr.write("infofn-demo: --in is required unless --dump-pipe is given\n")
        return 2

    proc_args = {
        "crop.box": opts.box,
        "denoise.kernel": opts.denoise,
        "resample.scale": opts.scale,
    }
    exp_args = {f"processing.{k}": v for k, v in proc_args.items()}
    exp_args["edge.method"] = opts.edge

    try:
        img = image.load_pgm(opts.input)
        intermediate = run(processing, img, proc_args)
        final = run(experiment, img, exp_args)
    except Exception as exc:
        step = getattr(exc, "pipeline_step", None)
        where = f"step {step}: " if step else ""
        sys.stderr.write(f"infofn-demo: {where}{exc}\n")
        return 1

    os.makedirs(opts.out_dir, exist_ok=True)
    inter_path = os.path.join(opts.out_dir, "intermediate.pgm")
    final_path = os.path.join(opts.out_dir, "final.pgm")
    image.save_pgm(intermediate, inter_path)
    image.save_pgm(final, final_path)
    print(f"wrote {inter_path} ({intermediate.width}x{intermediate.height}) "
          f"and {final_path} ({final.width}x{final.height})")
    return 0


def main() -> None:
    sys.exit(demo_main())
