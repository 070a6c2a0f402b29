"""Edge-preserving smoothing by per-pixel sparse-norm minimization.

The filter output at each pixel minimizes the sum of |v - I_j|^p over a
square window.  Small exponents preserve edges and produce halo-free
smoothing; p = 2 recovers the box filter, p = 1 behaves like the median,
and p near 0 like a dominant-mode filter.  Both solution strategies run in
O(bins * N) time independent of the window radius.
"""

from . import apps
from .boxfilter import box_mean, box_sum, integral_image, window_counts, window_sums
from .core import snf, snf_bruteforce, snf_irls_direct, snf_irls_quantized, snf_weight
from .image import (
    BRUTE_FORCE,
    IRLS,
    FilterParams,
    load_image,
    luminance,
    make_quant_grid,
    rgb_to_yuv,
    save_image,
    yuv_to_rgb,
)

__version__ = "0.1.0"

__all__ = [
    "BRUTE_FORCE",
    "IRLS",
    "FilterParams",
    "apps",
    "box_mean",
    "box_sum",
    "integral_image",
    "load_image",
    "luminance",
    "make_quant_grid",
    "rgb_to_yuv",
    "save_image",
    "snf",
    "snf_bruteforce",
    "snf_irls_direct",
    "snf_irls_quantized",
    "snf_weight",
    "window_counts",
    "window_sums",
    "yuv_to_rgb",
    "__version__",
]
