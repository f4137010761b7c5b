"""Deterministic scatter rendering of PlotPoint sets to PNG.

Points are drawn as filled discs in input order (painter's order) on a
supersampled canvas, then box-downsampled for anti-aliasing. Output bytes are
a pure function of (points, style, viewbox): no timestamps, no thread count
dependence, no dithering.
"""

from __future__ import annotations

import colorsys
import math
from dataclasses import dataclass
from pathlib import Path

from PIL import Image, ImageDraw

from .errors import EmptyPointSet
from .periods import PlotPoint
from .pointio import write_meta

_SUPERSAMPLE = 2


@dataclass(frozen=True)
class RenderStyle:
    width: int = 800
    height: int = 800
    margin: float = 0.05
    palette: tuple[tuple[int, int, int], ...] = ((230, 32, 32),)
    point_radius: float = 2.0
    background: tuple[int, int, int] = (255, 255, 255)
    axis_equal: bool = True

    def __post_init__(self) -> None:
        if self.width < 64 or self.height < 64:
            raise ValueError("width and height must be >= 64")
        if len(self.palette) < 1:
            raise ValueError("palette must have at least one color")


def palette_color(index: int, c: int) -> tuple[int, int, int]:
    """Color-class RGB: hue (index mod c)/c on an HSV wheel, fixed S and V."""
    if c < 1:
        raise ValueError("color modulus must be >= 1")
    h = (index % c) / c
    r, g, b = colorsys.hsv_to_rgb(h, 0.85, 0.90)
    return (round(r * 255), round(g * 255), round(b * 255))


def make_palette(c: int) -> tuple[tuple[int, int, int], ...]:
    return tuple(palette_color(i, c) for i in range(c))


def render_style(color_modulus: int = 1, **overrides) -> RenderStyle:
    """Default style with a palette generated for the given color modulus."""
    overrides.setdefault("palette", make_palette(color_modulus))
    return RenderStyle(**overrides)


@dataclass(frozen=True)
class ViewBox:
    re_min: float
    re_max: float
    im_min: float
    im_max: float

    def __post_init__(self) -> None:
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise ValueError("viewbox must have positive extent on both axes")


def auto_viewbox(points: list[PlotPoint], pad: float = 0.05) -> ViewBox:
    """Bounding box of the values, unit-width on degenerate axes, padded."""
    if not points:
        raise EmptyPointSet("cannot fit a viewbox to zero points")
    res = [p.value.real for p in points]
    ims = [p.value.imag for p in points]
    lo_r, hi_r = min(res), max(res)
    lo_i, hi_i = min(ims), max(ims)
    if hi_r - lo_r < 1e-12:
        mid = 0.5 * (lo_r + hi_r)
        lo_r, hi_r = mid - 0.5, mid + 0.5
    if hi_i - lo_i < 1e-12:
        mid = 0.5 * (lo_i + hi_i)
        lo_i, hi_i = mid - 0.5, mid + 0.5
    dr, di = pad * (hi_r - lo_r), pad * (hi_i - lo_i)
    return ViewBox(lo_r - dr, hi_r + dr, lo_i - di, hi_i + di)


def _drawing_area(style: RenderStyle) -> tuple[float, float, float, float]:
    mx = style.margin * style.width
    my = style.margin * style.height
    return mx, my, style.width - 2 * mx, style.height - 2 * my


def _effective_viewbox(style: RenderStyle, vb: ViewBox) -> ViewBox:
    """Expand one axis so real and imaginary units map to equal pixel sizes."""
    if not style.axis_equal:
        return vb
    _, _, dw, dh = _drawing_area(style)
    span_r, span_i = vb.re_max - vb.re_min, vb.im_max - vb.im_min
    sx, sy = dw / span_r, dh / span_i
    s = min(sx, sy)
    new_r, new_i = dw / s, dh / s
    cr, ci = 0.5 * (vb.re_min + vb.re_max), 0.5 * (vb.im_min + vb.im_max)
    return ViewBox(cr - new_r / 2, cr + new_r / 2, ci - new_i / 2, ci + new_i / 2)


def _canvas(style: RenderStyle) -> Image.Image:
    size = (style.width * _SUPERSAMPLE, style.height * _SUPERSAMPLE)
    return Image.new("RGB", size, style.background)


def _draw_points(img: Image.Image, points: list[PlotPoint], style: RenderStyle, vb: ViewBox) -> None:
    draw = ImageDraw.Draw(img)
    mx, my, dw, dh = _drawing_area(style)
    span_r, span_i = vb.re_max - vb.re_min, vb.im_max - vb.im_min
    ss = _SUPERSAMPLE
    npal = len(style.palette)
    for p in points:
        v = p.value
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            continue
        x = (mx + (v.real - vb.re_min) / span_r * dw) * ss
        y = (my + (vb.im_max - v.imag) / span_i * dh) * ss
        r = style.point_radius * p.size * ss
        if r <= 0 or x + r < 0 or y + r < 0 or x - r > img.width or y - r > img.height:
            continue
        draw.ellipse((x - r, y - r, x + r, y + r), fill=style.palette[p.color % npal])


def _downsample(img: Image.Image, style: RenderStyle) -> Image.Image:
    return img.resize((style.width, style.height), Image.Resampling.BOX)


def render_scatter(
    points: list[PlotPoint],
    style: RenderStyle | None = None,
    viewbox: ViewBox | None = None,
) -> Image.Image:
    """Render to an RGB image; empty input gives a background-only canvas."""
    style = style or RenderStyle()
    if viewbox is None:
        viewbox = auto_viewbox(points) if points else ViewBox(-0.5, 0.5, -0.5, 0.5)
    vb = _effective_viewbox(style, viewbox)
    img = _canvas(style)
    _draw_points(img, points, style, vb)
    return _downsample(img, style)


def save_png(img: Image.Image, path) -> None:
    img.save(Path(path), format="PNG", optimize=False)


def write_frames(
    points: list[PlotPoint],
    batches: list[tuple[int, int]],
    style: RenderStyle | None = None,
    viewbox: ViewBox | None = None,
    out_dir="frames",
    extra_meta: dict | None = None,
) -> list[Path]:
    """Cumulative frame sequence frame_00001.png, ... sharing one viewbox.

    Frame e shows all points of batches 1..e; the viewbox is fitted to the
    full point set up front so the growing shape stays in a fixed camera.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    style = style or RenderStyle()
    if viewbox is None:
        viewbox = auto_viewbox(points) if points else ViewBox(-0.5, 0.5, -0.5, 0.5)
    vb = _effective_viewbox(style, viewbox)
    canvas = _canvas(style)
    paths = []
    for i, (lo, hi) in enumerate(batches, start=1):
        _draw_points(canvas, points[lo:hi], style, vb)
        path = out / f"frame_{i:05d}.png"
        save_png(_downsample(canvas, style), path)
        paths.append(path)
    meta = {
        "frames": len(paths),
        "points": len(points),
        "batch_bounds": [list(b) for b in batches],
        "viewbox": [viewbox.re_min, viewbox.re_max, viewbox.im_min, viewbox.im_max],
        "width": style.width,
        "height": style.height,
    }
    if extra_meta:
        meta.update(extra_meta)
    write_meta(out / "meta.json", meta)
    return paths
