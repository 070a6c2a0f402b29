"""Spectral segmentation with filter-based affinity products.

The affinity matrix W pairs every pixel with its window neighbors, weighted
by guide-intensity similarity.  W is never formed: a product W @ x is B box
filters (quantize the row pixel's intensity inside the weight), which makes
the normalized-cut eigensolver run in O(B * N) per product for any radius.
"""

from __future__ import annotations

import numpy as np

from ..boxfilter import integral_image, window_sums
from ..core import snf_weight
from ..image import FilterParams, luminance, make_quant_grid

SEGMENT_P = 0.3
SEGMENT_RADIUS_FRACTION = 1.0 / 16.0
_POWER_SEED = 1234
_NCUT_THRESHOLDS = 32


def segment_params(size, p=SEGMENT_P):
    """Default segmentation parameters for an image width (or height)."""
    return FilterParams(p=p, r=max(1, round(size * SEGMENT_RADIUS_FRACTION)))


def affinity_apply(x, guide, params):
    """Unnormalized affinity product: y_i = sum_j w(G_i - G_j) * x_j.

    ``x`` is a per-pixel field shaped like ``guide``.  Row sums (the degree
    vector) are ``affinity_apply(ones, ...)``.  The product is linear in x
    and computed on the quantized O(bins * N) path, interpolating between
    the two levels bracketing each row pixel's guide value.
    """
    guide = np.asarray(guide, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    if x.shape != guide.shape:
        raise ValueError(f"field shape {x.shape} does not match guide {guide.shape}")
    if guide.min() < -1e-12 or guide.max() > 1.0 + 1e-12:
        raise ValueError("affinity products need guide values in [0, 1]")
    guide = np.clip(guide, 0.0, 1.0)

    bins = params.bins
    grid = make_quant_grid(bins)
    gpos = guide * (bins - 1)
    lo_bin = np.minimum(np.floor(gpos).astype(np.intp), bins - 2)
    frac = gpos - lo_bin

    out = np.zeros_like(guide)
    for b in range(bins):
        wt = snf_weight(grid[b] - guide, params.p, params.eps)
        sums = window_sums(integral_image(wt * x), params.r)
        lo = lo_bin == b
        hi = lo_bin == b - 1
        out[lo] += (1.0 - frac[lo]) * sums[lo]
        out[hi] += frac[hi] * sums[hi]
    return out


def affinity_degrees(guide, params):
    """Row sums of the affinity matrix."""
    return affinity_apply(np.ones_like(np.asarray(guide, dtype=np.float64)), guide, params)


def partition_vector(guide, params, power_iters=80, z0=None):
    """Leading nontrivial eigenvector of the normalized affinity matrix.

    Runs power iteration on D^(-1/2) W D^(-1/2), deflating the known
    principal eigenvector D^(1/2) 1, with every W product done by
    :func:`affinity_apply`.  Returns the generalized vector D^(-1/2) z
    (the one worth thresholding), shaped like the guide.
    """
    guide = np.asarray(guide, dtype=np.float64)
    sqrt_d = np.sqrt(affinity_degrees(guide, params))
    v1 = sqrt_d / np.linalg.norm(sqrt_d)
    if z0 is None:
        z = np.random.default_rng(_POWER_SEED).standard_normal(guide.shape)
    else:
        z = np.asarray(z0, dtype=np.float64).copy()
    for _ in range(power_iters):
        z -= np.sum(v1 * z) * v1
        z = affinity_apply(z / sqrt_d, guide, params) / sqrt_d
        z /= np.linalg.norm(z)
    z -= np.sum(v1 * z) * v1
    z /= np.linalg.norm(z)
    return z / sqrt_d


def _ncut_value(inside, segment, degrees, guide, params):
    """Normalized-cut cost of splitting ``segment`` into inside/outside."""
    outside = segment & ~inside
    assoc_in = degrees[inside].sum()
    assoc_out = degrees[outside].sum()
    if assoc_in <= 0.0 or assoc_out <= 0.0:
        return np.inf
    within = affinity_apply(inside.astype(np.float64), guide, params)
    cut = assoc_in - within[inside].sum()
    return cut / assoc_in + cut / assoc_out


def _bisect(segment, guide, params, power_iters):
    """Split one segment two ways at the best of 32 candidate thresholds."""
    sqrt_d = np.sqrt(affinity_apply(segment.astype(np.float64), guide, params))
    norm = np.linalg.norm(sqrt_d[segment])
    v1 = np.where(segment, sqrt_d / norm, 0.0)
    rng = np.random.default_rng(_POWER_SEED)
    z = np.where(segment, rng.standard_normal(guide.shape), 0.0)
    for _ in range(power_iters):
        z -= np.sum(v1 * z) * v1
        norm = np.linalg.norm(z)
        if norm == 0.0:  # nothing orthogonal to deflate against (tiny segment)
            return None
        u = np.where(segment, z / np.where(segment, sqrt_d, 1.0), 0.0)
        z = np.where(segment, affinity_apply(u, guide, params) / np.where(segment, sqrt_d, 1.0), 0.0)
        z /= np.linalg.norm(z)
    y = np.where(segment, z / np.where(segment, sqrt_d, 1.0), 0.0)

    degrees = np.where(segment, sqrt_d**2, 0.0)
    values = y[segment]
    lo, hi = values.min(), values.max()
    if hi <= lo:
        return None
    # Candidates span the value range so a clean bimodal vector always gets
    # thresholds inside the gap between its modes.
    best = (np.inf, None)
    for t in np.linspace(lo, hi, _NCUT_THRESHOLDS + 2)[1:-1]:
        inside = segment & (y > t)
        if not inside.any() or inside.sum() == segment.sum():
            continue
        cost = _ncut_value(inside, segment, degrees, guide, params)
        if cost < best[0]:
            best = (cost, inside)
    return best[1]


def ncut_segment(img, segments, params=None, power_iters=80):
    """Recursive two-way normalized cuts until ``segments`` labels exist.

    Returns an integer label map shaped like the image.  The largest
    remaining segment is split at each round.
    """
    img = np.asarray(img, dtype=np.float64)
    guide = np.clip(luminance(img), 0.0, 1.0)
    if params is None:
        params = segment_params(guide.shape[1])
    if segments < 2:
        raise ValueError(f"segment count must be >= 2, got {segments}")
    if segments > guide.size:
        raise ValueError("more segments than pixels")

    labels = np.zeros(guide.shape, dtype=np.intp)
    while labels.max() + 1 < segments:
        sizes = np.bincount(labels.ravel())
        order = np.argsort(sizes)[::-1]
        split = None
        for label in order:
            inside = _bisect(labels == label, guide, params, power_iters)
            if inside is not None:
                split = (label, inside)
                break
        if split is None:
            raise ValueError("no segment admits a further cut")
        labels[split[1]] = labels.max() + 1
    return labels
