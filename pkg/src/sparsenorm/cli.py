"""Command-line driver for the sparse-norm filter pipelines.

Exit status: 0 on success, 1 on a processing error (bad image, bad
parameters), 2 on invalid command-line usage.
"""

from __future__ import annotations

import argparse
import csv
import sys
import time

import numpy as np

from . import apps
from .boxfilter import box_mean
from .core import snf_bruteforce, snf_irls_quantized
from .image import BRUTE_FORCE, IRLS, FilterParams, load_image, luminance, save_image
from .presets import PRESET_NAMES, preset_params


def _add_filter_flags(sub, default_preset):
    sub.add_argument("--preset", default=default_preset, choices=PRESET_NAMES,
                     help=f"named parameter preset (default: {default_preset})")
    sub.add_argument("--p", type=float, default=None, help="norm exponent in (0, 2]")
    sub.add_argument("--r", type=int, default=None, help="window radius in pixels")
    sub.add_argument("--bins", type=int, default=None, help="quantization bin count")
    sub.add_argument("--eps", type=float, default=None, help="weight smoothing constant")
    sub.add_argument("--iters", type=int, default=None, help="filtering rounds")
    sub.add_argument("--strategy", choices=(IRLS, BRUTE_FORCE), default=None)
    sub.add_argument("--spatial-sigma", type=float, default=None,
                     help="optional Gaussian distance weighting (direct path only)")
    sub.add_argument("--per-channel", action="store_true",
                     help="filter RGB channels independently instead of luma only")


def _add_common(sub):
    sub.add_argument("--config", default=None,
                     help="key=value file supplying defaults for this subcommand")
    sub.add_argument("--threads", type=int, default=1,
                     help="worker cap for filter passes; results never depend on it")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="sparsenorm",
        description="Edge-preserving smoothing by sparse-norm minimization, plus its applications.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("smooth", help="write the edge-preserving base layer")
    s.add_argument("input"), s.add_argument("output")
    _add_filter_flags(s, "smooth"), _add_common(s)

    s = sub.add_parser("sharpen", help="boost the detail layer")
    s.add_argument("input"), s.add_argument("output")
    s.add_argument("--factor", type=float, default=2.0, help="detail multiplier")
    _add_filter_flags(s, "smooth"), _add_common(s)

    s = sub.add_parser("denoise", help="two-stage outlier-tolerant filtering")
    s.add_argument("input"), s.add_argument("output")
    _add_filter_flags(s, "denoise-sparse"), _add_common(s)

    s = sub.add_parser("hdr", help="tone-map a PFM luminance image to LDR")
    s.add_argument("input"), s.add_argument("output")
    s.add_argument("--target-contrast", type=float, default=2.3,
                   help="output base-layer range in decades")
    _add_filter_flags(s, "hdr"), _add_common(s)

    s = sub.add_parser("deconv", help="non-blind deconvolution with a sparse prior")
    s.add_argument("input"), s.add_argument("output")
    s.add_argument("--kernel", required=True, help="plain-text kernel grid file")
    s.add_argument("--lam", type=float, default=2e-3, help="prior weight")
    s.add_argument("--no-taper", action="store_true", help="skip border pre-blending")
    _add_filter_flags(s, "deconv"), _add_common(s)

    s = sub.add_parser("joint", help="filter one image with weights from another")
    s.add_argument("input"), s.add_argument("guide"), s.add_argument("output")
    _add_filter_flags(s, "flash"), _add_common(s)

    s = sub.add_parser("colorize", help="diffuse stroke colors over a grayscale image")
    s.add_argument("input"), s.add_argument("strokes"), s.add_argument("output")
    s.add_argument("--diffusion-iters", type=int, default=10)
    _add_filter_flags(s, "colorize"), _add_common(s)

    s = sub.add_parser("seamless", help="clone a source region into a target seamlessly")
    s.add_argument("source"), s.add_argument("target"), s.add_argument("mask")
    s.add_argument("output")
    s.add_argument("--offset", default="0,0", help="source-to-target shift dy,dx")
    s.add_argument("--r", type=int, default=8, help="window radius")
    s.add_argument("--solve-iters", type=int, default=10)
    _add_common(s)

    s = sub.add_parser("segment", help="normalized-cut segmentation")
    s.add_argument("input"), s.add_argument("output")
    s.add_argument("--segments", type=int, default=2)
    s.add_argument("--power-iters", type=int, default=80)
    s.add_argument("--radius-axis", choices=("width", "height"), default="width",
                   help="image axis the preset radius fraction applies to")
    _add_filter_flags(s, "segment"), _add_common(s)

    s = sub.add_parser("bench", help="time filter passes and emit CSV rows")
    s.add_argument("--op", choices=("box", "irls", "bruteforce"), default="box")
    s.add_argument("--sizes", default="0.25,1,4", help="image sizes in megapixels")
    s.add_argument("--bins", type=int, default=8)
    s.add_argument("--r", type=int, default=10)
    s.add_argument("--reps", type=int, default=3, help="repetitions; best time is kept")
    s.add_argument("--out", default="-", help="CSV destination ('-' for stdout)")
    _add_common(s)
    return parser


def _load_config(path):
    flags = []
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"config line without '=': {line!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            if value.lower() in ("true", "yes", "on"):
                flags.append(f"--{key}")
            else:
                flags.extend([f"--{key}", value])
    return flags


def _params(args, shape):
    return preset_params(
        args.preset,
        shape,
        p=args.p,
        r=args.r,
        bins=args.bins,
        eps=args.eps,
        iterations=args.iters,
        strategy=args.strategy,
        spatial_sigma=args.spatial_sigma,
        per_channel=args.per_channel or None,
    )


def _run_bench(args, out_fh):
    writer = csv.writer(out_fh)
    writer.writerow(["op", "npixels", "B", "r", "seconds"])
    rng = np.random.default_rng(0)
    for mp in (float(s) for s in args.sizes.split(",")):
        side = int(round(np.sqrt(mp * 1e6)))
        img = rng.random((side, side))
        if args.op == "box":
            run = lambda: box_mean(img, args.r)  # noqa: E731
            bins = 0
        else:
            pr = FilterParams(p=0.5, r=args.r, bins=args.bins)
            if args.op == "irls":
                run = lambda: snf_irls_quantized(img, pr, guide=img)  # noqa: E731
            else:
                run = lambda: snf_bruteforce(img, pr)  # noqa: E731
            bins = args.bins
        run()  # warm-up
        best = min(_timed(run) for _ in range(max(1, args.reps)))
        writer.writerow([args.op, side * side, bins, args.r, f"{best:.6f}"])
    return 0


def _timed(fn):
    start = time.perf_counter()
    fn()
    return time.perf_counter() - start


def _dispatch(args):
    cmd = args.command
    if cmd == "bench":
        if args.out == "-":
            return _run_bench(args, sys.stdout)
        with open(args.out, "w", newline="") as fh:
            return _run_bench(args, fh)

    if cmd == "smooth":
        img = load_image(args.input)
        save_image(apps.smooth_image(img, _params(args, img.shape)), args.output)
    elif cmd == "sharpen":
        img = load_image(args.input)
        bd = apps.base_detail(img, _params(args, img.shape))
        save_image(apps.detail_boost(bd, args.factor), args.output)
    elif cmd == "denoise":
        img = load_image(args.input)
        save_image(apps.outlier_denoise(img, _params(args, img.shape)), args.output)
    elif cmd == "hdr":
        hdr = load_image(args.input, kind="hdr")
        out = apps.hdr_compress(hdr, _params(args, hdr.shape), args.target_contrast)
        save_image(out, args.output)
    elif cmd == "deconv":
        img = load_image(args.input)
        kernel = apps.load_kernel(args.kernel)
        out = apps.deconvolve_snf(img, kernel, args.lam, _params(args, img.shape),
                                  taper=not args.no_taper)
        save_image(out, args.output)
    elif cmd == "joint":
        img = load_image(args.input)
        guide = load_image(args.guide)
        save_image(apps.joint_filter(img, guide, _params(args, img.shape)), args.output)
    elif cmd == "colorize":
        gray = luminance(load_image(args.input))
        strokes = apps.load_strokes(args.strokes)
        out = apps.colorize(gray, strokes, _params(args, gray.shape), args.diffusion_iters)
        save_image(out, args.output)
    elif cmd == "seamless":
        dy, dx = (int(v) for v in args.offset.split(","))
        source = load_image(args.source)
        target = load_image(args.target)
        mask = load_image(args.mask)
        task = apps.CloneTask(source=source, target=target,
                              mask=luminance(mask) > 0.5, offset=(dy, dx))
        save_image(apps.seamless_clone(task, args.r, args.solve_iters), args.output)
    elif cmd == "segment":
        img = load_image(args.input)
        dims = img.shape[:2]
        if args.radius_axis == "height":
            dims = dims[::-1]  # preset reads the width slot for its fraction
        labels = apps.ncut_segment(img, args.segments, _params(args, dims),
                                   args.power_iters)
        save_image(labels / max(1, labels.max()), args.output)
    else:  # pragma: no cover - argparse enforces the choices
        raise ValueError(f"unknown command {cmd!r}")
    return 0


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        parser.error("--threads must be >= 1")
    if getattr(args, "config", None):
        # Inject config pairs right after the subcommand so explicit flags win.
        try:
            extra = _load_config(args.config)
        except OSError as exc:
            print(f"sparsenorm: {exc}", file=sys.stderr)
            return 1
        idx = argv.index(args.command) + 1
        args = parser.parse_args(argv[:idx] + extra + argv[idx:])
    try:
        return _dispatch(args)
    except (ValueError, OSError, IndexError) as exc:
        print(f"sparsenorm: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
