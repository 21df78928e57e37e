"""Minimal, deterministic SVG rendering of ROC curves (no timestamps, stable ids)."""

from __future__ import annotations

import math
from typing import Sequence
from xml.sax.saxutils import escape

from .bench import RocCurve, RocPoint

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf")

WIDTH, HEIGHT = 740, 520
LEFT, TOP, SIZE = 70, 50, 400


def _x(fpr: float) -> float:
    return LEFT + fpr * SIZE


def _y(tpr: float) -> float:
    return TOP + (1.0 - tpr) * SIZE


def _star(cx: float, cy: float, r_outer: float = 8.0, r_inner: float = 3.5) -> str:
    pts = []
    for i in range(10):
        r = r_outer if i % 2 == 0 else r_inner
        ang = -math.pi / 2 + i * math.pi / 5
        pts.append(f"{cx + r * math.cos(ang):.2f},{cy + r * math.sin(ang):.2f}")
    return " ".join(pts)


def render_roc_svg(
    curves: Sequence[tuple[str, RocCurve]],
    title: str,
    markers: dict[str, RocPoint] | None = None,
) -> str:
    """``curves`` pairs a legend label with its curve; ``markers`` maps approach id to a star."""
    markers = markers or {}
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{LEFT + SIZE / 2:.0f}" y="25" text-anchor="middle" font-size="14">{escape(title)}</text>',
        f'<rect x="{LEFT}" y="{TOP}" width="{SIZE}" height="{SIZE}" fill="none" stroke="black"/>',
    ]
    for i in range(6):
        v = i / 5
        out.append(
            f'<line x1="{_x(v):.2f}" y1="{TOP + SIZE}" x2="{_x(v):.2f}" y2="{TOP + SIZE + 5}" stroke="black"/>'
            f'<text x="{_x(v):.2f}" y="{TOP + SIZE + 18}" text-anchor="middle">{v:.1f}</text>'
        )
        out.append(
            f'<line x1="{LEFT - 5}" y1="{_y(v):.2f}" x2="{LEFT}" y2="{_y(v):.2f}" stroke="black"/>'
            f'<text x="{LEFT - 8}" y="{_y(v) + 4:.2f}" text-anchor="end">{v:.1f}</text>'
        )
    out.append(
        f'<text x="{LEFT + SIZE / 2:.0f}" y="{TOP + SIZE + 38}" text-anchor="middle">False positive rate</text>'
    )
    out.append(
        f'<text x="20" y="{TOP + SIZE / 2:.0f}" text-anchor="middle" '
        f'transform="rotate(-90 20 {TOP + SIZE / 2:.0f})">True positive rate</text>'
    )
    out.append(
        f'<line x1="{_x(0):.2f}" y1="{_y(0):.2f}" x2="{_x(1):.2f}" y2="{_y(1):.2f}" '
        'stroke="gray" stroke-dasharray="6,4"/>'
    )
    for i, (label, curve) in enumerate(curves):
        color = PALETTE[i % len(PALETTE)]
        pts = " ".join(f"{_x(p.fpr):.2f},{_y(p.tpr):.2f}" for p in curve.points)
        out.append(
            f'<polyline id="roc-{escape(curve.approach)}" points="{pts}" fill="none" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        star = markers.get(curve.approach)
        if star is not None:
            out.append(
                f'<polygon points="{_star(_x(star.fpr), _y(star.tpr))}" fill="{color}" stroke="black" '
                'stroke-width="0.5"/>'
            )
        auc = "NA" if curve.auc is None else f"{curve.auc:.2f}"
        ly = TOP + 10 + i * 20
        lx = LEFT + SIZE + 15
        out.append(
            f'<line x1="{lx}" y1="{ly}" x2="{lx + 20}" y2="{ly}" stroke="{color}" stroke-width="2"/>'
            f'<text x="{lx + 25}" y="{ly + 4}">{escape(label)} (AUC {auc})</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
