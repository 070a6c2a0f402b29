"""Seamless cloning with non-local window gradients.

Instead of the 4-neighbor Poisson equation, the fill-in region satisfies a
window-sum balance: each pixel's deviation from its window sum must match
the source's.  Because the window sums are box filters, one Jacobi sweep
over the whole region costs O(N) regardless of the window radius, and the
non-local coupling makes the iteration converge in a handful of sweeps.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..boxfilter import integral_image, window_counts, window_sums


@dataclass(frozen=True)
class CloneTask:
    """Source patch, destination image, fill-in mask, source-to-target shift.

    ``mask`` selects the fill-in region in target coordinates; a target
    pixel (y, x) inside it is matched against source pixel (y, x) - offset.
    """

    source: np.ndarray
    target: np.ndarray
    mask: np.ndarray
    offset: tuple[int, int] = (0, 0)

    def __post_init__(self):
        mask = np.asarray(self.mask, dtype=bool)
        if mask.shape != np.asarray(self.target).shape[:2]:
            raise ValueError("mask shape must match the target")
        if not mask.any():
            raise ValueError("fill-in region is empty")
        if mask[0, :].any() or mask[-1, :].any() or mask[:, 0].any() or mask[:, -1].any():
            raise ValueError("fill-in region must not touch the target border")
        ys, xs = np.nonzero(mask)
        dy, dx = self.offset
        sh, sw = np.asarray(self.source).shape[:2]
        if (ys.min() < dy or ys.max() >= sh + dy
                or xs.min() < dx or xs.max() >= sw + dx):
            raise ValueError("shifted source does not cover the fill-in region")
        object.__setattr__(self, "mask", mask)


def _aligned_source(task):
    """Source values in target coordinates; uncovered pixels take the target.

    Coverage of the fill-in region was validated at task construction.
    """
    target = np.asarray(task.target, dtype=np.float64)
    source = np.asarray(task.source, dtype=np.float64)
    if source.ndim != target.ndim:
        raise ValueError("source and target must have the same channel count")
    dy, dx = task.offset
    h, w = target.shape[:2]
    sh, sw = source.shape[:2]
    aligned = target.copy()
    y0, y1 = max(0, dy), min(h, sh + dy)
    x0, x1 = max(0, dx), min(w, sw + dx)
    if y0 < y1 and x0 < x1:
        aligned[y0:y1, x0:x1] = source[y0 - dy:y1 - dy, x0 - dx:x1 - dx]
    return aligned


def clone_residual(task, img, r):
    """Window-balance residual of a candidate composite, per channel.

    Zero inside the fill-in region means the non-local gradient of the
    composite equals the source's there.
    """
    img = np.asarray(img, dtype=np.float64)
    aligned = _aligned_source(task)
    counts = window_counts(img.shape[:2], r)
    res = np.zeros_like(img)
    planes = img[:, :, None] if img.ndim == 2 else img
    src = aligned[:, :, None] if aligned.ndim == 2 else aligned
    out = res[:, :, None] if res.ndim == 2 else res
    for c in range(planes.shape[2]):
        lhs = counts * planes[:, :, c] - window_sums(integral_image(planes[:, :, c]), r)
        rhs = counts * src[:, :, c] - window_sums(integral_image(src[:, :, c]), r)
        out[:, :, c] = np.where(task.mask, lhs - rhs, 0.0)
    return res


def seamless_clone(task, r, iters=10):
    """Jacobi iteration of the window-balance system on the fill-in region.

    Starts from the drag-and-drop paste; pixels outside the region stay
    pinned to the target.  Each sweep recomputes one box filter of the
    evolving composite.
    """
    if r < 1:
        raise ValueError(f"radius must be >= 1, got {r}")
    if iters < 0:
        raise ValueError(f"iteration count must be >= 0, got {iters}")
    target = np.asarray(task.target, dtype=np.float64)
    aligned = _aligned_source(task)
    mask = task.mask

    out = target.copy()
    planes = out[:, :, None] if out.ndim == 2 else out
    src = aligned[:, :, None] if aligned.ndim == 2 else aligned
    counts = window_counts(out.shape[:2], r)
    for c in range(planes.shape[2]):
        chan = planes[:, :, c]
        j = src[:, :, c]
        chan[mask] = j[mask]  # drag-and-drop initial guess
        rhs = counts * j - window_sums(integral_image(j), r)
        for _ in range(iters):
            sums = window_sums(integral_image(chan), r)
            chan[mask] = ((sums + rhs) / counts)[mask]
    return out
