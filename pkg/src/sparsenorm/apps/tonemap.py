"""HDR tone mapping by compressing the base layer of the log luminance.

The log10 luminance is split into base + detail with the sparse-norm
filter; only the base layer's range is squeezed to the target number of
decades, so local texture contrast survives untouched while the global
dynamic range drops to something a display can show.
"""

from __future__ import annotations

import numpy as np

from ..core import snf
from ..image import FilterParams, luminance

# Fraction of the image height used for the filter radius.
HDR_P = 0.2
HDR_RADIUS_FRACTION = 1.0 / 6.0
# Displayable range, in decades (log10 of a 200:1 contrast).
DEFAULT_TARGET_CONTRAST = 2.3
# Saturation exponent for reattaching chroma via luminance ratios.
SATURATION = 0.6


def hdr_params(height, p=HDR_P):
    """Default tone-mapping filter parameters for an image height."""
    return FilterParams(p=p, r=max(1, round(height * HDR_RADIUS_FRACTION)))


def hdr_layers(hdr, params=None):
    """Base/detail split of the log10 luminance of an HDR image.

    The quantized filter path bins guide values over [0, 1], so the log
    luminance is normalized before filtering (exactly scale-covariant,
    with eps measured in normalized units) and mapped back after.
    """
    hdr = np.asarray(hdr, dtype=np.float64)
    lum = luminance(hdr)
    if lum.min() <= 0.0:
        raise ValueError("HDR luminance must be strictly positive")
    if params is None:
        params = hdr_params(hdr.shape[0])
    log_lum = np.log10(lum + 1e-6)
    lo, hi = log_lum.min(), log_lum.max()
    if hi - lo > 1e-12:
        base = snf((log_lum - lo) / (hi - lo), params) * (hi - lo) + lo
    else:
        base = log_lum.copy()
    return base, log_lum - base


def compress_base(base, target_contrast):
    """Rescale a log-luminance base layer to span ``target_contrast``
    decades, anchored at its maximum."""
    if target_contrast <= 0.0:
        raise ValueError(f"target contrast must be positive, got {target_contrast}")
    base_range = base.max() - base.min()
    scale = target_contrast / base_range if base_range > 1e-12 else 1.0
    return base.max() + (base - base.max()) * scale


def hdr_compress(hdr, params=None, target_contrast=DEFAULT_TARGET_CONTRAST):
    """Tone-map a positive-luminance HDR image into [0, 1].

    The base layer of log10(luminance) is rescaled so its range equals
    ``target_contrast`` decades; the detail layer is added back unscaled.
    Color is reattached through luminance ratios raised to a saturation
    exponent.
    """
    hdr = np.asarray(hdr, dtype=np.float64)
    base, detail = hdr_layers(hdr, params)
    out_log = compress_base(base, target_contrast) + detail
    out_lum = np.power(10.0, out_log - out_log.max())
    if hdr.ndim == 2:
        return np.clip(out_lum, 0.0, 1.0)
    ratio = np.power(hdr / luminance(hdr)[:, :, None], SATURATION)
    return np.clip(ratio * out_lum[:, :, None], 0.0, 1.0)
