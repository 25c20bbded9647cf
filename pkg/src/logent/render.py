"""Text and SVG output for box diagrams."""

from xml.sax.saxutils import escape

from ._numeric import fmt

SHADE = "#"
BLANK = "."


def _label(cell):
    return "(" + ",".join(cell) + ")"


def box_ascii(diagram):
    """Grid of ``#`` (shaded) and ``.`` cells with draw labels on both edges."""
    labels = [_label(c) for c in diagram.cells]
    w = max(len(s) for s in labels)
    lines = [" " * (w + 1) + " ".join(s.rjust(w) for s in labels)]
    for r, lab in enumerate(labels):
        row = [(SHADE if diagram.shaded[r, c] else BLANK).rjust(w) for c in range(len(labels))]
        lines.append(lab.rjust(w) + " " + " ".join(row))
    lines.append(
        f"{diagram.quantity} = {fmt(diagram.total)}  ({diagram.shaded_count} of {len(labels) ** 2} cells shaded)"
    )
    return "\n".join(lines)


def box_svg(diagram, cell=28, margin=56):
    size = len(diagram.cells)
    width = margin + size * cell + 8
    height = margin + size * cell + 32
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="monospace" font-size="10">'
    ]
    for i, c in enumerate(diagram.cells):
        lab = escape(_label(c))
        x = margin + i * cell + cell / 2
        y = margin + i * cell + cell / 2
        out.append(f'<text x="{x}" y="{margin - 6}" text-anchor="middle">{lab}</text>')
        out.append(f'<text x="{margin - 6}" y="{y + 3}" text-anchor="end">{lab}</text>')
    for r in range(size):
        for c in range(size):
            fill = "#4a6fa5" if diagram.shaded[r, c] else "#ffffff"
            out.append(
                f'<rect x="{margin + c * cell}" y="{margin + r * cell}" width="{cell}" height="{cell}" '
                f'fill="{fill}" stroke="#333333" stroke-width="0.5"/>'
            )
    caption = escape(f"{diagram.quantity} = {fmt(diagram.total)}")
    out.append(f'<text x="{margin}" y="{height - 10}">{caption}</text>')
    out.append("</svg>")
    return "\n".join(out)
