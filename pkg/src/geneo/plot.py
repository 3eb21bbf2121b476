"""Static SVG rendering of persistence diagrams."""

from __future__ import annotations

from .persistence import PersistenceDiagram

MARGIN = 48
_COLORS = {0: "#1f77b4", 1: "#d62728"}


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _label(x: float) -> str:
    return f"{x:.6g}"


def render_diagram_svg(diagram: PersistenceDiagram, size: int = 400) -> str:
    """Square birth/death plot: diagonal, finite points as filled circles,
    essential classes as upward arrows above their birth on the diagonal.

    Output text depends only on the diagram and ``size``.
    """
    if size < 100:
        raise ValueError(f"size must be at least 100 pixels, got {size}")
    coords = [c for p in diagram.finite_pairs_deg0 for c in p]
    coords += list(diagram.essential_deg0_births) + list(diagram.essential_deg1_births)
    if coords:
        lo, hi = min(coords), max(coords)
        pad = 0.05 * (hi - lo) if hi > lo else 1.0
        lo, hi = lo - pad, hi + pad
    else:
        lo, hi = 0.0, 1.0

    inner = size - 2 * MARGIN

    def sx(v):
        return MARGIN + (v - lo) / (hi - lo) * inner

    def sy(v):
        return size - MARGIN - (v - lo) / (hi - lo) * inner

    bottom, top, left, right = size - MARGIN, MARGIN, MARGIN, size - MARGIN
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
        f'<line class="axis" x1="{left}" y1="{bottom}" x2="{right}" y2="{bottom}" stroke="black"/>',
        f'<line class="axis" x1="{left}" y1="{bottom}" x2="{left}" y2="{top}" stroke="black"/>',
        f'<line class="diagonal" x1="{left}" y1="{bottom}" x2="{right}" y2="{top}" '
        'stroke="gray" stroke-dasharray="4 3"/>',
        f'<text x="{size / 2:.1f}" y="{size - 12}" text-anchor="middle" '
        'font-size="12">birth</text>',
        f'<text x="14" y="{size / 2:.1f}" text-anchor="middle" font-size="12" '
        f'transform="rotate(-90 14 {size / 2:.1f})">death</text>',
        f'<text x="{left}" y="{bottom + 16}" text-anchor="middle" font-size="10">{_label(lo)}</text>',
        f'<text x="{right}" y="{bottom + 16}" text-anchor="middle" font-size="10">{_label(hi)}</text>',
    ]
    for b, d in diagram.finite_pairs_deg0:
        out.append(f'<circle class="finite" cx="{_fmt(sx(b))}" cy="{_fmt(sy(d))}" r="4" '
                   f'fill="{_COLORS[0]}"/>')
    for degree in (0, 1):
        color = _COLORS[degree]
        for b in diagram.essential_births(degree):
            x, y0, y1 = sx(b), sy(b), top + 2
            out.append(
                f'<path class="essential-arrow deg{degree}" '
                f'd="M {_fmt(x)} {_fmt(y0)} L {_fmt(x)} {_fmt(y1)} '
                f'M {_fmt(x - 5)} {_fmt(y1 + 8)} L {_fmt(x)} {_fmt(y1)} L {_fmt(x + 5)} {_fmt(y1 + 8)}" '
                f'stroke="{color}" stroke-width="2" fill="none"/>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
