"""Base/detail decomposition and detail boosting."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core import snf
from ..image import FilterParams, rgb_to_yuv, yuv_to_rgb

# Default smoothing setting for decomposition work.
SMOOTH_PARAMS = FilterParams(p=0.2, r=10)


@dataclass(frozen=True)
class BaseDetail:
    """Additive two-layer split: base + detail reconstructs the input."""

    base: np.ndarray
    detail: np.ndarray


def smooth_image(img, params, guide=None):
    """Color-policy-aware smoothing.

    Single-channel images are filtered directly.  Color images are filtered
    on their luma with chroma passed through, unless ``params.per_channel``
    asks for independent per-channel filtering.
    """
    img = np.asarray(img, dtype=np.float64)
    if img.ndim == 2:
        return snf(img, params, guide=guide)
    if params.per_channel:
        out = np.empty_like(img)
        for c in range(img.shape[2]):
            out[:, :, c] = snf(img[:, :, c], params, guide=guide)
        return out
    yuv = rgb_to_yuv(img)
    luma = np.clip(yuv[:, :, 0], 0.0, 1.0)
    yuv[:, :, 0] = snf(luma, params, guide=guide)
    return yuv_to_rgb(yuv)


def base_detail(img, params=SMOOTH_PARAMS):
    """Split an image into a cartoon-like base layer and a residual detail
    layer; the two add back to the input exactly."""
    img = np.asarray(img, dtype=np.float64)
    base = smooth_image(img, params)
    return BaseDetail(base=base, detail=img - base)


def detail_boost(bd, factor):
    """Recombine a decomposition with the detail layer scaled by ``factor``.

    factor 1 restores the original image; 2 is the usual enhancement
    setting; 0 returns the base layer.  No clamping happens here, only on
    save.
    """
    if factor < 0:
        raise ValueError(f"boost factor must be >= 0, got {factor}")
    return bd.base + factor * bd.detail
