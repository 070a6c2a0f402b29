"""Application pipelines built on the sparse-norm filter."""

from .cloning import CloneTask, clone_residual, seamless_clone
from .colorization import StrokeMap, colorize, colorize_params, load_strokes
from .deconvolution import (
    DECONV_PARAMS,
    deconvolve_snf,
    edge_taper,
    load_kernel,
    normalize_kernel,
    shrink,
)
from .denoise import DENOISE_L1_PARAMS, DENOISE_SPARSE_PARAMS, outlier_denoise
from .detail import SMOOTH_PARAMS, BaseDetail, base_detail, detail_boost, smooth_image
from .joint import JOINT_PARAMS, joint_filter
from .segmentation import (
    affinity_apply,
    affinity_degrees,
    ncut_segment,
    partition_vector,
    segment_params,
)
from .tonemap import compress_base, hdr_compress, hdr_layers, hdr_params

__all__ = [
    "BaseDetail",
    "CloneTask",
    "StrokeMap",
    "DECONV_PARAMS",
    "DENOISE_L1_PARAMS",
    "DENOISE_SPARSE_PARAMS",
    "JOINT_PARAMS",
    "SMOOTH_PARAMS",
    "affinity_apply",
    "affinity_degrees",
    "base_detail",
    "clone_residual",
    "colorize",
    "colorize_params",
    "compress_base",
    "deconvolve_snf",
    "detail_boost",
    "edge_taper",
    "hdr_compress",
    "hdr_layers",
    "hdr_params",
    "joint_filter",
    "load_kernel",
    "load_strokes",
    "ncut_segment",
    "normalize_kernel",
    "outlier_denoise",
    "partition_vector",
    "seamless_clone",
    "segment_params",
    "shrink",
    "smooth_image",
]
