"""Two-stage outlier-tolerant filtering for impulse (salt/pepper) noise.

One-pass weighted averaging fails on impulse noise because the weights are
computed from the contaminated values themselves: a noisy center trusts
other outliers.  The cure is to approximate the global minimizer first with
the quantized brute-force search (robust, but quantized-looking), then run
one weighted-average pass that takes its weights from that estimate while
averaging the original pixel values.
"""

from __future__ import annotations

import numpy as np

from ..core import snf_bruteforce, snf_irls_quantized
from ..image import FilterParams

DENOISE_L1_PARAMS = FilterParams(p=1.0, r=10)
DENOISE_SPARSE_PARAMS = FilterParams(p=0.1, r=10)


def outlier_denoise(img, params=DENOISE_SPARSE_PARAMS):
    """Brute-force argmin pass followed by guided weighted averaging."""
    img = np.asarray(img, dtype=np.float64)
    if img.ndim == 3:
        out = np.empty_like(img)
        for c in range(img.shape[2]):
            out[:, :, c] = outlier_denoise(img[:, :, c], params)
        return out
    stage1 = snf_bruteforce(img, params)
    return snf_irls_quantized(img, params, guide=stage1)
