"""Lozenge-tiling pictures of plane partitions, written as SVG with matplotlib."""

from __future__ import annotations

import io
from itertools import islice
from math import sqrt
from typing import List, Sequence, Tuple

from .combinat import enumerate_pp

COLORS = {"top": "#f2c14e", "x": "#5b8e7d", "y": "#bc4b51"}
Point = Tuple[float, float]


def _project(x: float, y: float, z: float) -> Point:
    return ((y - x) * sqrt(3) / 2, z - (x + y) / 2)


def lozenges(pp: Sequence[Sequence[int]], a: int) -> List[Tuple[str, List[Point]]]:
    """Visible faces of the stack of unit cubes, as projected rhombi.

    Row ``i`` runs along x, column ``j`` along y, and entry ``pp[i][j]``
    is the height of the column of cubes at ``(i, j)``.  The result always
    has ``b*c`` top faces, ``a*c`` x-facing and ``a*b`` y-facing ones.
    """
    b = len(pp)
    c = len(pp[0]) if b else 0
    faces = []
    for i in range(b):
        for j in range(c):
            z = pp[i][j]
            faces.append(("top", [_project(i, j, z), _project(i + 1, j, z), _project(i + 1, j + 1, z), _project(i, j + 1, z)]))
    for j in range(c):
        for k in range(a):
            x = sum(1 for i in range(b) if pp[i][j] > k)
            faces.append(("x", [_project(x, j, k), _project(x, j + 1, k), _project(x, j + 1, k + 1), _project(x, j, k + 1)]))
    for i in range(b):
        for k in range(a):
            y = sum(1 for j in range(c) if pp[i][j] > k)
            faces.append(("y", [_project(i, y, k), _project(i + 1, y, k), _project(i + 1, y, k + 1), _project(i, y, k + 1)]))
    return faces


def render_svg(pp: Sequence[Sequence[int]], a: int, title: str = "") -> bytes:
    """SVG bytes for one plane partition; identical input gives identical bytes."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from matplotlib.patches import Polygon

    faces = lozenges(pp, a)
    with matplotlib.rc_context({"svg.hashsalt": "charlab", "svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=(4, 4))
        for kind, pts in faces:
            ax.add_patch(Polygon(pts, closed=True, facecolor=COLORS[kind], edgecolor="black", linewidth=0.8))
        xs = [p[0] for _, pts in faces for p in pts] or [0.0]
        ys = [p[1] for _, pts in faces for p in pts] or [0.0]
        ax.set_xlim(min(xs) - 0.2, max(xs) + 0.2)
        ax.set_ylim(min(ys) - 0.2, max(ys) + 0.2)
        ax.set_aspect("equal")
        ax.axis("off")
        if title:
            ax.set_title(title)
        buf = io.BytesIO()
        fig.savefig(buf, format="svg", metadata={"Date": None})
        plt.close(fig)
    return buf.getvalue()


def nth_pp(a: int, b: int, c: int, index: int):
    if index < 0:
        raise IndexError("index must be non-negative")
    found = next(islice(enumerate_pp(a, b, c, limit=None), index, None), None)
    if found is None:
        raise IndexError(f"the {a}x{b}x{c} box has fewer than {index + 1} plane partitions")
    return found
