"""Domain construction from config dicts, and curve CSV export."""

import numpy as np

from ..errors import ConfigInvalid
from .curve import bump_disk, circle, ellipse, fourier_disk
from .domain import HalfPlane, PlanarDomain
from .patch import half_plane_patch

_KINDS = ("disk", "half_disk", "fourier_disk", "bump_disk", "half_plane", "ellipse")


def _reject_unknown(cfg, allowed, where):
    for key in cfg:
        if key not in allowed:
            raise ConfigInvalid(f"{where}.{key}: unknown field")


def domain_from_config(cfg):
    """Build a domain (or the half-disk patch) from a config mapping.

    Recognized kinds: disk, half_disk, fourier_disk, bump_disk, half_plane,
    ellipse.  ``half_disk`` returns the patch of the half-plane at the
    origin, which is how that geometry is used everywhere.
    """
    if not isinstance(cfg, dict):
        raise ConfigInvalid("domain: expected a mapping")
    kind = cfg.get("kind")
    if kind not in _KINDS:
        raise ConfigInvalid(f"domain.kind: expected one of {_KINDS}, got {kind!r}")

    if kind == "disk":
        _reject_unknown(cfg, {"kind", "radius", "resolution"}, "domain")
        return PlanarDomain(circle(float(cfg.get("radius", 1.0))))
    if kind == "half_plane":
        _reject_unknown(cfg, {"kind", "extent"}, "domain")
        return HalfPlane(float(cfg.get("extent", 2.0)))
    if kind == "half_disk":
        _reject_unknown(cfg, {"kind", "radius", "extent", "collar_fraction"}, "domain")
        return half_plane_patch(
            r0=float(cfg.get("radius", 1.0)),
            extent=float(cfg.get("extent", 2.0)),
            collar_fraction=float(cfg.get("collar_fraction", 0.45)),
        )
    if kind == "ellipse":
        _reject_unknown(cfg, {"kind", "a", "b"}, "domain")
        return PlanarDomain(ellipse(float(cfg.get("a", 2.0)), float(cfg.get("b", 1.0))))
    if kind == "fourier_disk":
        _reject_unknown(cfg, {"kind", "cos_coeffs", "sin_coeffs", "resolution"}, "domain")
        try:
            curve = fourier_disk(
                cfg.get("cos_coeffs", {}),
                cfg.get("sin_coeffs"),
                resolution=int(cfg.get("resolution", 2048)),
            )
        except (TypeError, ValueError) as exc:
            raise ConfigInvalid(f"domain.cos_coeffs: {exc}") from exc
        return PlanarDomain(curve)
    # bump_disk
    _reject_unknown(cfg, {"kind", "alpha", "amplitude", "width", "resolution"}, "domain")
    try:
        curve = bump_disk(
            alpha=float(cfg.get("alpha", 0.5)),
            amplitude=float(cfg.get("amplitude", 0.1)),
            width=float(cfg.get("width", 2.0)),
            resolution=int(cfg.get("resolution", 4096)),
        )
    except ValueError as exc:
        raise ConfigInvalid(f"domain: {exc}") from exc
    return PlanarDomain(curve)


def curve_csv_rows(curve, n=512):
    """Rows (s, x, y, tx, ty, nx, ny) sampling the curve."""
    s = np.arange(n) / n
    xy = curve.point(s)
    t = curve.tangent(s)
    nu = curve.inward_normal(s)
    return np.column_stack([s, xy, t, nu])


def write_curve_csv(path, curve, n=512):
    rows = curve_csv_rows(curve, n)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("s,x,y,tx,ty,nx,ny\n")
        for row in rows:
            fh.write(",".join(format(v, ".17g") for v in row) + "\n")
