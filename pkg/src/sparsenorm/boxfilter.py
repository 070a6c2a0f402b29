"""Summed-area tables and O(1)-per-pixel box window sums.

The window at pixel (y, x) is the square of half-width r clipped to the
image bounds, so border windows shrink and are normalized by their true
population.  All accumulation is float64 regardless of input dtype;
megapixel tables exhaust float32.
"""

from __future__ import annotations

import numpy as np


def integral_image(channel):
    """Summed-area table of a single-channel image.

    Returns an (H+1, W+1) float64 table whose (y, x) entry is the sum of
    all pixels strictly above and left of (y, x); row 0 and column 0 are
    zero.
    """
    channel = np.asarray(channel)
    if channel.ndim != 2:
        raise ValueError(f"integral_image expects a single channel, got shape {channel.shape}")
    h, w = channel.shape
    table = np.zeros((h + 1, w + 1), dtype=np.float64)
    np.cumsum(channel, axis=0, dtype=np.float64, out=table[1:, 1:])
    np.cumsum(table[1:, 1:], axis=1, out=table[1:, 1:])
    return table


def window_counts(shape, r):
    """Population of the clipped square window at every pixel."""
    h, w = shape
    ys = np.arange(h, dtype=np.float64)
    xs = np.arange(w, dtype=np.float64)
    rows = np.minimum(ys + r + 1, h) - np.maximum(ys - r, 0)
    cols = np.minimum(xs + r + 1, w) - np.maximum(xs - r, 0)
    return rows[:, None] * cols[None, :]


def window_sums(table, r):
    """Clipped-window sums from a summed-area table, by 4-tap lookups.

    The two inclusion-exclusion passes (rows, then columns) run on views
    for the un-clipped interior; only the border rows and columns need
    individual clamped lookups.
    """
    h, w = table.shape[0] - 1, table.shape[1] - 1
    strip = np.empty((h, w + 1))
    a, b = min(r, h), max(h - r, 0)
    if a < b:
        np.subtract(table[a + r + 1:b + r + 1], table[a - r:b - r], out=strip[a:b])
    for y in (*range(0, a), *range(b, h)):
        np.subtract(table[min(y + r + 1, h)], table[max(y - r, 0)], out=strip[y])
    out = np.empty((h, w))
    a, b = min(r, w), max(w - r, 0)
    if a < b:
        np.subtract(strip[:, a + r + 1:b + r + 1], strip[:, a - r:b - r], out=out[:, a:b])
    for x in (*range(0, a), *range(b, w)):
        np.subtract(strip[:, min(x + r + 1, w)], strip[:, max(x - r, 0)], out=out[:, x])
    return out


def box_sum(table, r):
    """Window sums plus window populations for an integral image.

    Returns ``(sums, counts)`` where both arrays have the (H, W) shape of
    the underlying image.
    """
    if r < 0:
        raise ValueError(f"radius must be >= 0, got {r}")
    sums = window_sums(table, r)
    counts = window_counts(sums.shape, r)
    return sums, counts


def box_mean(img, r):
    """Mean over the clipped square window at every pixel.

    This is the exact per-pixel minimizer of the sum of squared
    differences with the window contents.  Multi-channel images are
    averaged channel by channel.
    """
    if r < 1:
        raise ValueError(f"radius must be >= 1, got {r}")
    img = np.asarray(img, dtype=np.float64)
    if img.ndim == 3:
        out = np.empty_like(img)
        for c in range(img.shape[2]):
            out[:, :, c] = box_mean(img[:, :, c], r)
        return out
    counts = window_counts(img.shape, r)
    return window_sums(integral_image(img), r) / counts
