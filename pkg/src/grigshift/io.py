"""CSV and SVG writers shared by the command line."""
from __future__ import annotations

import csv
import io
from fractions import Fraction
from xml.sax.saxutils import escape


def fmt(x) -> str:
    """Locale-free text for numbers: repr for floats, p/q for fractions."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float):
        return repr(x)
    return str(x)


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(x) for x in row])
    return buf.getvalue()


def tower_svg(levels, width: int = 800, row_height: int = 24, title: str = "") -> str:
    """Static scatter: one row per level, one tick per eigenvalue.

    ``levels`` is a sequence of ``(n, eigenvalues)`` pairs.
    """
    levels = [(n, list(map(float, e))) for n, e in levels]
    lo = min(min(e) for _, e in levels)
    hi = max(max(e) for _, e in levels)
    span = hi - lo or 1.0
    margin = 40
    height = margin * 2 + row_height * len(levels)
    inner = width - 2 * margin
    out = [
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{margin}" y="20" font-size="12">{escape(title)}</text>')
    for row, (n, eigs) in enumerate(levels):
        y = margin + row * row_height + row_height / 2
        out.append(f'<text x="4" y="{y + 4:.1f}" font-size="10">n={n}</text>')
        for e in eigs:
            x = margin + inner * (e - lo) / span
            out.append(f'<line x1="{x:.3f}" y1="{y - 6:.1f}" x2="{x:.3f}" '
                       f'y2="{y + 6:.1f}" stroke="black" stroke-width="0.5"/>')
    axis_y = height - margin / 2
    out.append(f'<text x="{margin}" y="{axis_y:.1f}" font-size="10">{lo:.6g}</text>')
    out.append(f'<text x="{width - margin}" y="{axis_y:.1f}" font-size="10" '
               f'text-anchor="end">{hi:.6g}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
