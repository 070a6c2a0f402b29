"""Joint filtering: weights from a guidance image, values from the input.

The typical use is flash / no-flash denoising, where the crisp flash shot
guides the averaging of the noisy ambient shot.
"""

from __future__ import annotations

import numpy as np

from ..core import snf_irls_direct, snf_irls_quantized
from ..image import FilterParams, luminance

# Flash / no-flash preset.
JOINT_PARAMS = FilterParams(p=0.2, r=11)


def joint_filter(img, guide, params=JOINT_PARAMS):
    """Weighted-average filter of ``img`` driven by ``guide`` differences.

    A color guide contributes through its luma.  Every channel of ``img``
    is averaged with the shared guide weights.
    """
    img = np.asarray(img, dtype=np.float64)
    guide = np.asarray(guide, dtype=np.float64)
    if guide.shape[:2] != img.shape[:2]:
        raise ValueError(f"guide shape {guide.shape[:2]} does not match image {img.shape[:2]}")
    g = luminance(guide)
    if params.spatial_sigma is not None:
        return snf_irls_direct(img, params, guide=g)
    return snf_irls_quantized(img, params, guide=np.clip(g, 0.0, 1.0))
