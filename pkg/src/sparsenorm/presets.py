"""Named parameter presets for the command-line pipelines.

Some presets tie the radius to the image size (a fraction of the height or
width), so resolving a preset needs the image shape.
"""

from __future__ import annotations

from .image import BRUTE_FORCE, FilterParams

# name -> (p, radius spec) where the radius is either a pixel count or a
# ("height"|"width", fraction) pair resolved against the image.
_PRESETS = {
    "smooth-fine": dict(p=0.05, r=2),
    "smooth": dict(p=0.2, r=10),
    "smooth-soft": dict(p=1.2, r=10),
    "halo-free": dict(p=0.05, r=16),
    "halo-soft": dict(p=1.2, r=16),
    "denoise-l1": dict(p=1.0, r=10, strategy=BRUTE_FORCE),
    "denoise-sparse": dict(p=0.1, r=10, strategy=BRUTE_FORCE),
    "flash": dict(p=0.2, r=11),
    "deconv": dict(p=0.5, r=5),
    "hdr": dict(p=0.2, r=("height", 1.0 / 6.0)),
    "colorize": dict(p=0.1, r=("height", 1.0 / 4.0)),
    "segment": dict(p=0.3, r=("width", 1.0 / 16.0)),
}

PRESET_NAMES = tuple(sorted(_PRESETS))


def resolve_preset(name, shape=None):
    """Preset values as a plain dict, radius resolved against ``shape``."""
    try:
        spec = dict(_PRESETS[name])
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}") from None
    r = spec["r"]
    if isinstance(r, tuple):
        axis, fraction = r
        if shape is None:
            raise ValueError(f"preset {name!r} needs the image shape to resolve its radius")
        size = shape[0] if axis == "height" else shape[1]
        spec["r"] = max(1, round(size * fraction))
    return spec


def preset_params(name, shape=None, **overrides):
    """FilterParams for a preset, with explicit overrides taking precedence."""
    spec = resolve_preset(name, shape)
    spec.update((k, v) for k, v in overrides.items() if v is not None)
    return FilterParams(**spec)
