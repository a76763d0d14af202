"""Figures: SVG drawings of single solutions and matplotlib report plots.

The SVG follows the usual drawing convention for these covers: every lattice
vertex is a grey square, sublattice vertices are red squares and the base
lines are drawn across the whole lattice.  Output is byte-for-byte
deterministic for equal inputs.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .geometry import LineKey, Solution, points_on_line, spanned_lines

GREY = "#b0b0b0"
RED = "#cc0000"
LINE = "#404040"
OVERHANG = 0.35


def covering_lines(S: Solution) -> list[LineKey]:
    """Greedy subset of spanned lines that still reaches every lattice vertex.

    Lines are taken by descending number of newly reached vertices, ties broken
    by line key.
    """
    lines = sorted(spanned_lines(S))
    pts = {line: set(points_on_line(line, S.n)) for line in lines}
    todo = {(x, y) for x in range(S.n + 1) for y in range(S.n + 1)}
    chosen = []
    while todo:
        best = max(lines, key=lambda ln: (len(pts[ln] & todo), [-v for v in ln]))
        gain = pts[best] & todo
        if not gain:
            break
        chosen.append(best)
        todo -= gain
    return sorted(chosen)


def _segment(line: LineKey, n: int):
    on = points_on_line(line, n)
    (x0, y0), (x1, y1) = on[0], on[-1]
    dx, dy = x1 - x0, y1 - y0
    norm = (dx * dx + dy * dy) ** 0.5
    ex, ey = OVERHANG * dx / norm, OVERHANG * dy / norm
    return x0 - ex, y0 - ey, x1 + ex, y1 + ey


def render_svg(S: Solution, show_all_lines: bool = True, scale: float = 24.0) -> str:
    n = S.n
    pad = 1.0
    side = (n + 2 * pad) * scale
    sq = 0.36 * scale

    def px(v):
        return f"{(v + pad) * scale:.2f}"

    def py(v):
        # y axis points up in lattice coordinates
        return f"{(n - v + pad) * scale:.2f}"

    lines = sorted(spanned_lines(S)) if show_all_lines else covering_lines(S)
    red = set(S.vertices)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{side:.2f}" height="{side:.2f}" '
        f'viewBox="0 0 {side:.2f} {side:.2f}">',
        f"<title>n={n} t={len(S)}</title>",
        f'<g stroke="{LINE}" stroke-width="{0.04 * scale:.2f}" fill="none">',
    ]
    for line in lines:
        x0, y0, x1, y1 = _segment(line, n)
        out.append(
            f'<line x1="{px(x0)}" y1="{py(y0)}" x2="{px(x1)}" y2="{py(y1)}" '
            f'data-line="{line.a},{line.b},{line.c}"/>'
        )
    out.append("</g>")
    out.append('<g stroke="none">')
    for x in range(n + 1):
        for y in range(n + 1):
            fill = RED if (x, y) in red else GREY
            cls = "sub" if (x, y) in red else "vertex"
            out.append(
                f'<rect class="{cls}" x="{(x + pad) * scale - sq / 2:.2f}" y="{(n - y + pad) * scale - sq / 2:.2f}" '
                f'width="{sq:.2f}" height="{sq:.2f}" fill="{fill}"/>'
            )
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(S: Solution, path, show_all_lines: bool = True, scale: float = 24.0) -> Path:
    path = Path(path)
    path.write_text(render_svg(S, show_all_lines, scale), encoding="utf-8")
    return path


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    plt.rcParams.update({"svg.hashsalt": "latticecover", "font.size": 9})
    return plt


def plot_bounds(reports: Mapping[int, "object"], path, known: Mapping[int, int] | None = None) -> Path:
    """Per-method bound versus n, with the (n+1)^(2/3) ln(n+1) reference curve."""
    from .bounds import summary_limit

    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ns = sorted(reports)
    methods: dict[str, list[tuple[int, int]]] = {}
    for n in ns:
        for e in reports[n].entries:
            methods.setdefault(e.method, []).append((n, e.value))
    for name in sorted(methods):
        xs, ys = zip(*methods[name])
        ax.plot(xs, ys, marker=".", lw=0.8, ms=3, label=name)
    ax.plot(ns, [reports[n].best.value for n in ns], color="k", lw=1.6, label="best")
    ax.plot(ns, [summary_limit(n) for n in ns], color="k", ls="--", lw=1, label=r"$(n+1)^{2/3}\ln(n+1)$")
    if known:
        kn = sorted(known)
        ax.plot(kn, [known[n] for n in kn], "o", mfc="none", color="tab:red", label="known")
    ax.set_xlabel("n")
    ax.set_ylabel("t")
    ax.legend(fontsize=7, ncol=2)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, metadata={"Date": None} if path.suffix == ".svg" else None)
    plt.close(fig)
    return path


def plot_verification(report, path) -> Path:
    """Verified sizes against the reference curve for a corpus report."""
    from .bounds import summary_limit

    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    checks = report.checks
    ok = [c for c in checks if c.passed]
    bad = [c for c in checks if not c.passed]
    if ok:
        ax.plot([c.n for c in ok], [c.actual for c in ok], "o", ms=4, color="tab:blue", label="verified")
    if bad:
        ax.plot([c.n for c in bad], [c.actual for c in bad], "x", ms=6, color="tab:red", label="failed")
    if checks:
        lo, hi = min(c.n for c in checks), max(c.n for c in checks)
        xs = list(range(max(2, lo), hi + 1))
        ax.plot(xs, [summary_limit(n) for n in xs], "k--", lw=1, label=r"$(n+1)^{2/3}\ln(n+1)$")
    ax.set_xlabel("n")
    ax.set_ylabel("t")
    ax.legend(fontsize=8)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path)
    plt.close(fig)
    return path


def write_table(path, header: Sequence[str], rows: Iterable[Sequence], sep: str = "\t") -> Path:
    path = Path(path)
    lines = [sep.join(header)] + [sep.join(str(v) for v in row) for row in rows]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
