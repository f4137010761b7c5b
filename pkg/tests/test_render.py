import io

import numpy as np
import pytest

from gperiods.errors import EmptyPointSet
from gperiods.periods import PlotPoint, frame_batches
from gperiods.render import (
    RenderStyle,
    ViewBox,
    auto_viewbox,
    make_palette,
    palette_color,
    render_scatter,
    render_style,
    write_frames,
)


def _png(img) -> bytes:
    buf = io.BytesIO()
    img.save(buf, format="PNG", optimize=False)
    return buf.getvalue()


def test_style_validation():
    with pytest.raises(ValueError):
        RenderStyle(width=32)
    with pytest.raises(ValueError):
        RenderStyle(palette=())
    s = render_style(4, width=100, height=128)
    assert len(s.palette) == 4


def test_viewbox_validation():
    with pytest.raises(ValueError):
        ViewBox(1.0, 1.0, 0.0, 1.0)


def test_palette_rules():
    assert palette_color(0, 1) == palette_color(99, 1)
    assert palette_color(2, 5) == palette_color(7, 5)
    wheel = make_palette(3)
    assert len(set(wheel)) == 3
    with pytest.raises(ValueError):
        palette_color(0, 0)


def test_auto_viewbox():
    with pytest.raises(EmptyPointSet):
        auto_viewbox([])
    vb = auto_viewbox([PlotPoint(0, 0j, 0)], pad=0.0)
    assert (vb.re_min, vb.re_max, vb.im_min, vb.im_max) == (-0.5, 0.5, -0.5, 0.5)
    vb2 = auto_viewbox([PlotPoint(0, -2 + 0j, 0), PlotPoint(1, 2 + 0j, 0)], pad=0.05)
    assert vb2.re_min == pytest.approx(-2.2)
    assert vb2.re_max == pytest.approx(2.2)
    assert vb2.im_max == pytest.approx(0.55)  # degenerate axis expanded then padded


def test_render_deterministic():
    pts = [PlotPoint(k, complex(k % 5, k % 7), k % 3) for k in range(40)]
    style = render_style(3, width=96, height=96)
    assert _png(render_scatter(pts, style)) == _png(render_scatter(pts, style))


def test_render_empty_is_background():
    img = render_scatter([], render_style(1, width=64, height=64, background=(10, 20, 30)))
    assert img.size == (64, 64)
    assert (np.asarray(img) == (10, 20, 30)).all()


def test_render_centered_point():
    style = render_style(1, width=64, height=64, point_radius=4.0, palette=((255, 0, 0),))
    img = render_scatter([PlotPoint(0, 0j, 0)], style)
    assert img.getpixel((32, 32)) == (255, 0, 0)
    assert img.getpixel((2, 2)) == (255, 255, 255)


def test_render_clips_outside_points():
    style = render_style(1, width=64, height=64)
    vb = ViewBox(-1, 1, -1, 1)
    img = render_scatter([PlotPoint(0, 50 + 50j, 0)], style, viewbox=vb)
    assert (np.asarray(img) == 255).all()


def test_render_painter_order():
    style = RenderStyle(
        width=64, height=64, point_radius=6.0, palette=((255, 0, 0), (0, 0, 255))
    )
    first = [PlotPoint(0, 0j, 0), PlotPoint(1, 0j, 1)]
    img = render_scatter(first, style)
    assert img.getpixel((32, 32)) == (0, 0, 255)  # later point paints over
    img2 = render_scatter(list(reversed(first)), style)
    assert img2.getpixel((32, 32)) == (255, 0, 0)


def test_point_size_scales_radius():
    style = RenderStyle(width=64, height=64, point_radius=2.0, palette=((0, 0, 0),))
    big = render_scatter([PlotPoint(0, 0j, 0, size=4.0)], style)
    small = render_scatter([PlotPoint(0, 0j, 0, size=1.0)], style)
    count = lambda im: int((np.asarray(im) != 255).any(axis=2).sum())
    assert count(big) > count(small) > 0


def test_write_frames(tmp_path):
    pts = [PlotPoint(k, complex(k, -k), 0) for k in range(10)]
    batches = frame_batches(10, 3)
    paths = write_frames(pts, batches, render_style(1, width=64, height=64), out_dir=tmp_path)
    assert [p.name for p in paths] == [f"frame_{i:05d}.png" for i in range(1, 5)]
    assert (tmp_path / "meta.json").exists()
    # cumulative: colored pixel count never decreases, last frame = full render
    from PIL import Image

    counts = []
    for p in paths:
        with Image.open(p) as im:
            counts.append(int((np.asarray(im) != 255).any(axis=2).sum()))
    assert counts == sorted(counts)
    full = render_scatter(pts, render_style(1, width=64, height=64))
    with Image.open(paths[-1]) as last:
        assert (np.asarray(last) == np.asarray(full)).all()
