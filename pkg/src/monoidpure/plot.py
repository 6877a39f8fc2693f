"""Static SVG pictures of planar monoids and their pure translations.

Monoid points are circles, points of ``alpha + M`` are crosses over a shaded
copy of the cone translated to alpha, and V_m is marked with small squares.
Every plotted point carries exact ``data-x``/``data-y`` attributes so a
picture can be checked structurally.  Output depends only on the input.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .cone import face_lattice, supporting_hyperplanes
from .errors import InputError
from .monoid import AffineMonoid, RatVector, graded_window
from .purity import compute_Vm, is_pure_translation

PLOT_DEGREE = 8
UNIT = 40
MARGIN = 30


def _fmt(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def _px(x) -> str:
    return f"{float(x):.3f}"


def plot_points(M: AffineMonoid, m: int | None = None, alpha=None, degree: int = PLOT_DEGREE):
    """The point sets a plot shows: (monoid, translate, V_m) as Fraction pairs."""
    if M.ambient_dim != 2:
        raise InputError(f"plots need ambient dimension 2, got {M.ambient_dim}")
    monoid = [tuple(Fraction(c) for c in e.vector) for e in graded_window(M, degree)]
    translate = []
    if alpha is not None:
        a = [Fraction(x) for x in alpha]
        translate = [
            (p[0] + a[0], p[1] + a[1]) for p in monoid if p[0] + p[1] + a[0] + a[1] <= degree
        ]
    vm = []
    if m is not None:
        vm = [a.fractions() for a in compute_Vm(M, m)]
    return monoid, translate, vm


def _rays(M: AffineMonoid) -> list[tuple[int, int]]:
    cone = supporting_hyperplanes(M)
    rays = []
    for f in face_lattice(M, cone):
        if f.dim == 1:
            rays.append(min((M.generators[j] for j in f.generator_indices), key=sum))
    return rays


def render_svg(M: AffineMonoid, m: int | None = None, alpha=None, degree: int = PLOT_DEGREE) -> str:
    if alpha is not None and m is not None and not is_pure_translation(M, m, alpha):
        title_note = " (not pure)"
    else:
        title_note = ""
    monoid, translate, vm = plot_points(M, m, alpha, degree)
    extent = degree + 1
    size = 2 * MARGIN + UNIT * extent

    def sx(x):
        return MARGIN + UNIT * x

    def sy(y):
        return size - MARGIN - UNIT * y

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f"<title>monoid {list(map(list, M.generators))}"
        + (f", m={m}" if m is not None else "")
        + (f", alpha=({', '.join(_fmt(Fraction(x)) for x in alpha)})" if alpha is not None else "")
        + f"{title_note}</title>",
        '<defs><clipPath id="frame">'
        f'<rect x="{MARGIN}" y="{MARGIN}" width="{UNIT * extent}" height="{UNIT * extent}"/>'
        "</clipPath></defs>",
    ]
    if alpha is not None:
        a = [Fraction(x) for x in alpha]
        far = 4 * extent
        r1, r2 = (_rays(M) * 2)[:2]
        corners = [
            (a[0], a[1]),
            (a[0] + far * r1[0], a[1] + far * r1[1]),
            (a[0] + far * (r1[0] + r2[0]), a[1] + far * (r1[1] + r2[1])),
            (a[0] + far * r2[0], a[1] + far * r2[1]),
        ]
        pts = " ".join(f"{_px(sx(x))},{_px(sy(y))}" for x, y in corners)
        out.append(f'<polygon class="cone" clip-path="url(#frame)" points="{pts}" '
                   'fill="#cfd8e8" fill-opacity="0.6" stroke="none"/>')
    out.append(f'<line class="axis" x1="{sx(0)}" y1="{sy(0)}" x2="{sx(extent)}" y2="{sy(0)}" stroke="black"/>')
    out.append(f'<line class="axis" x1="{sx(0)}" y1="{sy(0)}" x2="{sx(0)}" y2="{sy(extent)}" stroke="black"/>')
    for x, y in monoid:
        out.append(f'<circle class="monoid" data-x="{_fmt(x)}" data-y="{_fmt(y)}" '
                   f'cx="{_px(sx(x))}" cy="{_px(sy(y))}" r="5" fill="none" stroke="black"/>')
    for x, y in translate:
        cx, cy, d = sx(x), sy(y), 5
        out.append(
            f'<g class="translate" data-x="{_fmt(x)}" data-y="{_fmt(y)}" stroke="#b22">'
            f'<line x1="{_px(cx - d)}" y1="{_px(cy - d)}" x2="{_px(cx + d)}" y2="{_px(cy + d)}"/>'
            f'<line x1="{_px(cx - d)}" y1="{_px(cy + d)}" x2="{_px(cx + d)}" y2="{_px(cy - d)}"/></g>'
        )
    for x, y in vm:
        out.append(f'<rect class="vm" data-x="{_fmt(x)}" data-y="{_fmt(y)}" '
                   f'x="{_px(sx(x) - 3)}" y="{_px(sy(y) - 3)}" width="6" height="6" fill="#1a6"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg_plot(M: AffineMonoid, m: int | None, out_path, alpha: Sequence | RatVector | None = None) -> str:
    if isinstance(alpha, RatVector):
        alpha = alpha.fractions()
    svg = render_svg(M, m, alpha)
    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write(svg)
    return svg
