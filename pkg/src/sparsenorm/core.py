"""Sparse-norm filter: per-pixel minimization of sum |v - I_j|^p over a window.

Two solution strategies are provided.  The weighted-average strategy solves
one reweighted least-squares step: each neighbor gets weight
``(d^2 + eps^2)^((p-2)/2)`` from its intensity difference ``d`` with the
center (or with a guide image), and the output is the weighted mean.  The
brute-force strategy quantizes the solution space into ``bins`` levels,
evaluates the true energy at every level with box filters, and takes the
per-pixel argmin.

Both strategies have an accelerated path that costs O(bins * N) regardless
of the window radius; the direct weighted-average path costs O(N * r^2) and
exists as the exact reference semantics.
"""

from __future__ import annotations

import numpy as np

from .boxfilter import integral_image, window_counts, window_sums
from .image import BRUTE_FORCE, IRLS, FilterParams, make_quant_grid


def snf_weight(diff, p, eps):
    """Neighbor weight for an intensity difference under norm exponent p.

    Computed as (diff^2 + eps^2)^((p-2)/2): smooth, strictly positive, and
    non-increasing in |diff| for p <= 2.  At p = 2 every weight is exactly 1.
    """
    if eps <= 0.0:
        raise ValueError(f"eps must be positive, got {eps}")
    if not 0.0 < p <= 2.0:
        raise ValueError(f"p must be in (0, 2], got {p}")
    d = np.asarray(diff, dtype=np.float64)
    return np.power(d * d + eps * eps, (p - 2.0) / 2.0)


def _shift_slices(delta, size):
    """Aligned (destination, source) slices for a shift by ``delta``."""
    if delta >= 0:
        return slice(0, size - delta), slice(delta, size)
    return slice(-delta, size), slice(0, size + delta)


def _check_guide(img, guide):
    if guide is None:
        if img.ndim != 2:
            raise ValueError("multi-channel input needs an explicit single-channel guide")
        return img
    guide = np.asarray(guide, dtype=np.float64)
    if guide.ndim != 2:
        raise ValueError(f"guide must be single-channel, got shape {guide.shape}")
    if guide.shape != img.shape[:2]:
        raise ValueError(f"guide shape {guide.shape} does not match image {img.shape[:2]}")
    return guide


def _d4_orbits(r):
    """Window offsets grouped into dihedral-symmetry orbits.

    Each orbit is a list of (dy, dx) slots whose terms are reduced with a
    fixed balanced pairing, chosen so that any flip/rotation of the image
    permutes operands only across commutative additions.  That makes the
    direct filter bit-exactly equivariant, not just equivariant in theory.
    """
    orbits = [[(0, 0)]]
    for d in range(1, r + 1):
        orbits.append([(0, d), (0, -d), (d, 0), (-d, 0)])
        orbits.append([(d, d), (-d, -d), (d, -d), (-d, d)])
    for a in range(2, r + 1):
        for b in range(1, a):
            orbits.append(
                [(a, b), (a, -b), (-a, b), (-a, -b),
                 (b, a), (-b, a), (b, -a), (-b, -a)]
            )
    return orbits


def _reduce_pairs(terms):
    """Balanced pairwise sum: ((t0+t1)+(t2+t3))+..., preserving slot order."""
    while len(terms) > 1:
        terms = [terms[i] + terms[i + 1] for i in range(0, len(terms), 2)]
    return terms[0]


def snf_irls_direct(img, params, guide=None):
    """One weighted-average filtering pass, direct O(N * r^2) evaluation.

    Weights come from ``guide`` differences (the image itself when guide is
    None); values are averaged from ``img``.  Multi-channel images share the
    single-channel guide weights.  The output at every pixel is a convex
    combination of its window, so it stays inside the window's [min, max].
    """
    img = np.asarray(img, dtype=np.float64)
    guide = _check_guide(img, guide)
    h, w = guide.shape
    planes = img[:, :, None] if img.ndim == 2 else img
    nch = planes.shape[2]

    num = np.zeros((h, w, nch))
    den = np.zeros((h, w))
    for orbit in _d4_orbits(params.r):
        num_terms = []
        den_terms = []
        for dy, dx in orbit:
            oy, sy = _shift_slices(dy, h)
            ox, sx = _shift_slices(dx, w)
            wt = snf_weight(guide[oy, ox] - guide[sy, sx], params.p, params.eps)
            if params.spatial_sigma is not None:
                wt = wt * np.exp(-(dy * dy + dx * dx) / (2.0 * params.spatial_sigma**2))
            tn = np.zeros((h, w, nch))
            td = np.zeros((h, w))
            tn[oy, ox] = wt[:, :, None] * planes[sy, sx]
            td[oy, ox] = wt
            num_terms.append(tn)
            den_terms.append(td)
        num += _reduce_pairs(num_terms)
        den += _reduce_pairs(den_terms)
    out = num / den[:, :, None]
    return out[:, :, 0] if img.ndim == 2 else out


def snf_irls_quantized(img, params, guide=None):
    """Accelerated weighted-average pass, O(bins * N) for any radius.

    The center intensity inside the weight term is quantized to ``bins``
    levels; for each level the weighted sum and the weight sum over every
    window are two box filters.  Per pixel the result is linearly
    interpolated between the two levels bracketing its guide value, so a
    guide sitting exactly on a level reproduces that level's quotient.
    Guide values must lie in [0, 1].
    """
    img = np.asarray(img, dtype=np.float64)
    guide = _check_guide(img, guide)
    if params.spatial_sigma is not None:
        raise ValueError("spatial weighting is only available on the direct path")
    if guide.min() < -1e-12 or guide.max() > 1.0 + 1e-12:
        raise ValueError("quantized filtering needs guide values in [0, 1]")
    guide = np.clip(guide, 0.0, 1.0)

    bins = params.bins
    grid = make_quant_grid(bins)
    gpos = guide * (bins - 1)
    lo_bin = np.minimum(np.floor(gpos).astype(np.intp), bins - 2)
    frac = gpos - lo_bin

    planes = img[:, :, None] if img.ndim == 2 else img
    nch = planes.shape[2]
    out = np.zeros(planes.shape)
    for b in range(bins):
        wt = snf_weight(grid[b] - guide, params.p, params.eps)
        den = window_sums(integral_image(wt), params.r)
        lo = lo_bin == b
        hi = lo_bin == b - 1
        for c in range(nch):
            quot = window_sums(integral_image(wt * planes[:, :, c]), params.r) / den
            out[:, :, c][lo] += (1.0 - frac[lo]) * quot[lo]
            out[:, :, c][hi] += frac[hi] * quot[hi]
    return out[:, :, 0] if img.ndim == 2 else out


def snf_bruteforce(img, params, grid=None):
    """Quantized argmin of the true window energy sum |Q_b - I_j|^p.

    Runs one box filter per level over the penalty image |Q_b - I|^p and
    keeps the per-pixel minimum; ties go to the smallest level index.  For
    8-bit-quantized inputs the penalties are read from a 256-entry table
    instead of calling pow per pixel (bit-identical results).
    """
    img = np.asarray(img, dtype=np.float64)
    if img.ndim == 3:
        out = np.empty_like(img)
        for c in range(img.shape[2]):
            out[:, :, c] = snf_bruteforce(img[:, :, c], params, grid)
        return out
    if grid is None:
        grid = make_quant_grid(params.bins)
    else:
        grid = np.asarray(grid, dtype=np.float64)
        if grid.size < 2 or np.any(np.diff(grid) <= 0):
            raise ValueError("grid must hold at least 2 strictly increasing levels")

    codes = img * 255.0
    levels = np.rint(codes)
    if np.max(np.abs(codes - levels)) < 1e-6 and img.min() >= 0.0 and img.max() <= 1.0:
        idx = levels.astype(np.intp)
        code_values = np.arange(256, dtype=np.float64) / 255.0
        penalty = lambda q: np.abs(q - code_values)[idx]  # noqa: E731
    else:
        penalty = lambda q: np.abs(q - img)  # noqa: E731

    p = params.p
    best_energy = None
    best_index = None
    for b, q in enumerate(grid):
        energy = window_sums(integral_image(penalty(q) ** p), params.r)
        if b == 0:
            best_energy = energy
            best_index = np.zeros(img.shape, dtype=np.intp)
        else:
            better = energy < best_energy
            best_energy = np.where(better, energy, best_energy)
            best_index[better] = b
    return grid[best_index]


def snf(img, params, guide=None):
    """Sparse-norm filter dispatcher.

    Runs ``params.iterations`` rounds of the selected strategy.  Each
    round's output feeds the next round; for the weighted-average strategy
    the weights come from the evolving image unless ``guide`` is supplied,
    which then pins the weight source for every round.
    """
    if not isinstance(params, FilterParams):
        raise TypeError("params must be a FilterParams")
    out = np.asarray(img, dtype=np.float64)
    for _ in range(params.iterations):
        if params.strategy == BRUTE_FORCE:
            out = snf_bruteforce(out, params)
        elif params.spatial_sigma is not None:
            out = snf_irls_direct(out, params, guide=guide)
        else:
            g = guide if guide is not None else out
            out = snf_irls_quantized(out, params, guide=g)
    return out
