"""Stroke-based colorization by guided chroma diffusion.

Chroma from user strokes is spread across the image by repeated joint
filtering: the grayscale image supplies the weights, so pixels with similar
gray values end up with similar colors.  Stroke pixels are re-pinned after
every pass, making them exact at the output.
"""

from __future__ import annotations

from dataclasses import dataclass

import cv2
import numpy as np

from ..core import snf_irls_quantized
from ..image import FilterParams, rgb_to_yuv, yuv_to_rgb

COLORIZE_P = 0.1
COLORIZE_RADIUS_FRACTION = 1.0 / 4.0
DEFAULT_DIFFUSION_ITERS = 10


@dataclass(frozen=True)
class StrokeMap:
    """Chroma constraints from a stroke overlay.

    ``mask`` marks constrained pixels; ``colors`` holds their RGB values
    (rows outside the mask are ignored).
    """

    mask: np.ndarray
    colors: np.ndarray

    def __post_init__(self):
        mask = np.asarray(self.mask, dtype=bool)
        colors = np.asarray(self.colors, dtype=np.float64)
        if colors.shape[:2] != mask.shape or colors.ndim != 3 or colors.shape[2] != 3:
            raise ValueError("stroke colors must be (H, W, 3) matching the mask")
        if not mask.any():
            raise ValueError("stroke map constrains no pixels")
        object.__setattr__(self, "mask", mask)
        object.__setattr__(self, "colors", colors)


def load_strokes(path):
    """Read stroke constraints from an RGBA overlay; alpha > 0 pins a pixel."""
    raw = cv2.imread(str(path), cv2.IMREAD_UNCHANGED)
    if raw is None:
        raise IOError(f"cannot read stroke overlay: {path}")
    if raw.ndim != 3 or raw.shape[2] != 4:
        raise ValueError(f"stroke overlay must be RGBA, got shape {raw.shape}")
    if raw.dtype == np.uint8:
        scale = 255.0
    elif raw.dtype == np.uint16:
        scale = 65535.0
    else:
        raise ValueError(f"unsupported stroke overlay depth {raw.dtype}")
    rgba = raw[:, :, [2, 1, 0, 3]].astype(np.float64) / scale
    return StrokeMap(mask=rgba[:, :, 3] > 0.0, colors=rgba[:, :, :3])


def colorize_params(height, p=COLORIZE_P):
    """Default diffusion parameters for an image height."""
    return FilterParams(p=p, r=max(1, round(height * COLORIZE_RADIUS_FRACTION)))


def colorize(gray, strokes, params=None, iterations=DEFAULT_DIFFUSION_ITERS):
    """Diffuse stroke chroma over a grayscale image; returns RGB.

    Chroma starts at zero away from strokes and is repeatedly replaced by
    its gray-guided weighted average, re-clamping stroke pixels each round.
    Every output chroma is a convex combination of the initial field, so
    the stroke chromas bound the result.
    """
    gray = np.asarray(gray, dtype=np.float64)
    if gray.ndim != 2:
        raise ValueError(f"colorize expects a single-channel image, got shape {gray.shape}")
    if strokes.mask.shape != gray.shape:
        raise ValueError("stroke map shape does not match the image")
    if params is None:
        params = colorize_params(gray.shape[0])
    if iterations < 1:
        raise ValueError(f"iterations must be >= 1, got {iterations}")

    stroke_uv = rgb_to_yuv(strokes.colors)[:, :, 1:]
    mask = strokes.mask
    chroma = np.zeros(gray.shape + (2,))
    chroma[mask] = stroke_uv[mask]
    guide = np.clip(gray, 0.0, 1.0)
    for _ in range(iterations):
        chroma = snf_irls_quantized(chroma, params, guide=guide)
        chroma[mask] = stroke_uv[mask]
    return yuv_to_rgb(np.dstack([gray, chroma]))
