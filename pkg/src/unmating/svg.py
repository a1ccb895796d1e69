"""Static SVG rendering of lamination classes on the unit disk.

Chords are straight segments between circle points (cos 2*pi*t, sin 2*pi*t);
coordinates are the only place floating point appears, fixed to six decimals
so identical scenes render byte-identically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .circle import Angle, Leaf
from .laminations import BLACK, WHITE, AngleClasses, LeafSet

_STYLES = {
    WHITE: 'stroke="#b03030" stroke-width="0.010"',
    BLACK: 'stroke="#3050b0" stroke-width="0.010" stroke-dasharray="0.04,0.02"',
    "join": 'stroke="#444444" stroke-width="0.010"',
}


@dataclass
class SvgScene:
    chords: list[tuple[Leaf, str]] = field(default_factory=list)   # (leaf, side)
    labels: list[Angle] = field(default_factory=list)

    @classmethod
    def from_classes(cls, class_sets: list[AngleClasses]) -> "SvgScene":
        scene = cls()
        seen = set()
        for classes in class_sets:
            side = classes.color
            for leaf in LeafSet.from_classes(classes).leaves:
                if (leaf, side) not in seen:
                    seen.add((leaf, side))
                    scene.chords.append((leaf, side))
        scene.chords.sort(key=lambda cs: (cs[0].a, cs[0].b, cs[1]))
        scene.labels = sorted({a for leaf, _ in scene.chords for a in leaf.endpoints})
        return scene


def _point(t: Angle) -> tuple[float, float]:
    theta = 2 * math.pi * float(t.value)
    return (math.cos(theta), math.sin(theta))


def _fmt(x: float) -> str:
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


def render_svg(scene: SvgScene) -> bytes:
    """Serialize the scene; output bytes are stable across runs."""
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="-1.25 -1.25 2.5 2.5">',
        '  <circle cx="0" cy="0" r="1" fill="none" stroke="#999999" stroke-width="0.006"/>',
    ]
    for leaf, side in scene.chords:
        (x1, y1), (x2, y2) = _point(leaf.a), _point(leaf.b)
        style = _STYLES.get(side, _STYLES["join"])
        lines.append(
            f'  <line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" {style}/>'
        )
    for t in scene.labels:
        x, y = _point(t)
        lx, ly = 1.10 * x, 1.10 * y
        anchor = "middle"
        lines.append(
            f'  <text x="{_fmt(lx)}" y="{_fmt(ly)}" font-size="0.07" text-anchor="{anchor}" '
            f'dominant-baseline="middle" fill="#222222">{t}</text>'
        )
    lines.append("</svg>")
    return ("\n".join(lines) + "\n").encode("utf-8")


def write_svg(scene: SvgScene, path) -> int:
    data = render_svg(scene)
    with open(path, "wb") as fh:
        fh.write(data)
    return len(data)
