"""Shared synthetic scenes and direct-solve oracles for the test suite.

Everything here is deliberately brute force and independent of the fast
library paths.
"""

import numpy as np

from sparsenorm.boxfilter import integral_image, window_counts, window_sums
from sparsenorm.core import snf_weight
from sparsenorm.reference import psf_to_otf


def textured(side, seed, base=0.5, amp=0.3):
    """Smooth wave pattern with random orientation."""
    rng = np.random.default_rng(seed)
    yy, xx = np.mgrid[0:side, 0:side]
    return base + amp * np.sin(yy / rng.uniform(3, 9)) * np.cos(xx / rng.uniform(3, 9))


def salt_pepper(truth, fraction, seed):
    """Replace a fraction of pixels with 0 or 1."""
    rng = np.random.default_rng(seed)
    noisy = truth.copy()
    mask = rng.random(truth.shape) < fraction
    noisy[mask] = rng.choice([0.0, 1.0], size=int(mask.sum()))
    return noisy


def gaussian_kernel(radius, sigma):
    yy, xx = np.mgrid[-radius:radius + 1, -radius:radius + 1]
    k = np.exp(-(yy**2 + xx**2) / (2 * sigma**2))
    return k / k.sum()


def periodic_blur(img, kernel):
    return np.real(np.fft.ifft2(np.fft.fft2(img) * psf_to_otf(kernel, img.shape)))


def mondrian(side, rects, seed, background=0.5):
    """Piecewise-constant random rectangle collage (sharp edges)."""
    rng = np.random.default_rng(seed)
    img = np.full((side, side), background)
    for _ in range(rects):
        y0, x0 = rng.integers(0, int(side * 0.8), 2)
        h0, w0 = rng.integers(side // 12, side // 3, 2)
        img[y0:y0 + h0, x0:x0 + w0] = rng.random()
    return img


def dense_clone_solve(task, r):
    """Direct dense solve of the window-balance system on the fill-in region."""
    target = np.asarray(task.target, dtype=np.float64)
    source = np.asarray(task.source, dtype=np.float64)
    mask = task.mask
    h, w = target.shape
    counts = window_counts((h, w), r)
    rhs_field = counts * source - window_sums(integral_image(source), r)

    ys, xs = np.nonzero(mask)
    index = -np.ones((h, w), dtype=int)
    index[ys, xs] = np.arange(len(ys))
    n = len(ys)
    A = np.zeros((n, n))
    b = np.zeros(n)
    for k, (y, x) in enumerate(zip(ys, xs)):
        A[k, k] = counts[y, x] - 1.0
        b[k] = rhs_field[y, x]
        win_idx = index[max(0, y - r):min(h, y + r + 1), max(0, x - r):min(w, x + r + 1)]
        win_tgt = target[max(0, y - r):min(h, y + r + 1), max(0, x - r):min(w, x + r + 1)]
        members = win_idx[win_idx >= 0]
        np.add.at(A[k], members[members != k], -1.0)
        b[k] += win_tgt[win_idx < 0].sum()
    out = target.copy()
    out[ys, xs] = np.linalg.solve(A, b)
    return out


def dense_affinity(guide, p, eps, r):
    """Explicit affinity matrix W[i, j] = weight(G_i - G_j) over windows."""
    guide = np.asarray(guide, dtype=np.float64)
    h, w = guide.shape
    n = h * w
    W = np.zeros((n, n))
    for i in range(n):
        yi, xi = divmod(i, w)
        for yj in range(max(0, yi - r), min(h, yi + r + 1)):
            for xj in range(max(0, xi - r), min(w, xi + r + 1)):
                W[i, yj * w + xj] = snf_weight(guide[yi, xi] - guide[yj, xj], p, eps)
    return W
