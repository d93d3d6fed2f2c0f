"""Deterministic SVG plots of a rule base, an observation and conclusions."""
from __future__ import annotations

from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from ..conclusion import Conclusion
from ..rulebase import LinguisticPartition
from ..sets import FuzzySet

WIDTH = 640
PANEL = 180
PAD = 40
PALETTE = ("#1f77b4", "#2ca02c", "#9467bd", "#8c564b", "#e377c2", "#17becf", "#bcbd22",
           "#7f7f7f", "#ff7f0e", "#393b79")


def _f(v: float) -> str:
    return f"{v:.3f}"


class _Panel:
    def __init__(self, top: float, part: LinguisticPartition, title: str):
        self.top = top
        self.lo, self.hi = part.range
        self.title = title

    def xy(self, x: float, mu: float) -> tuple[float, float]:
        px = PAD + (x - self.lo) / (self.hi - self.lo) * (WIDTH - 2 * PAD)
        py = self.top + PANEL - PAD / 2 - mu * (PANEL - PAD)
        return px, py

    def polyline(self, pts, color: str, cls: str, dash: bool = False) -> str:
        coords = " ".join(f"{_f(a)},{_f(b)}" for a, b in (self.xy(x, m) for x, m in pts))
        extra = ' stroke-dasharray="6 3"' if dash else ""
        return (f'<polyline class="{cls}" points="{coords}" fill="none" stroke="{color}" '
                f'stroke-width="1.5"{extra}/>')

    def frame(self) -> list[str]:
        x0, y0 = self.xy(self.lo, 0.0)
        x1, y1 = self.xy(self.hi, 1.0)
        return [
            f'<text x="{_f(PAD)}" y="{_f(self.top + 14)}" font-size="12">{_esc(self.title)}</text>',
            f'<line class="axis" x1="{_f(x0)}" y1="{_f(y0)}" x2="{_f(x1)}" y2="{_f(y0)}" stroke="black"/>',
            f'<line class="axis" x1="{_f(x0)}" y1="{_f(y0)}" x2="{_f(x0)}" y2="{_f(y1)}" stroke="black"/>',
        ]


def _esc(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _set_points(s: FuzzySet) -> list[tuple[float, float]]:
    pts = [(float(x), float(m)) for x, m in zip(s.xs, s.mus)]
    if pts[0][1] > 0:
        pts.insert(0, (pts[0][0], 0.0))
    if pts[-1][1] > 0:
        pts.append((pts[-1][0], 0.0))
    return pts


def _conclusion_items(panel: _Panel, c: Conclusion, color: str, name: str) -> list[str]:
    if c.shape is not None:
        return [panel.polyline(_set_points(c.shape), color, f"conclusion {name}")]
    lv = c.levels
    inf, sup = c.cuts()
    pts = list(zip(inf, lv)) + list(zip(sup[::-1], lv[::-1]))
    out = [panel.polyline(pts, color, f"conclusion {name}")]
    bad = np.flatnonzero(inf > sup + 1e-9 * max(1.0, float(np.abs(np.concatenate([inf, sup])).max())))
    for k in bad:
        (x0, y0), (x1, _) = panel.xy(sup[k], lv[k]), panel.xy(inf[k], lv[k])
        out.append(f'<line class="inversion" x1="{_f(x0)}" y1="{_f(y0)}" x2="{_f(x1)}" y2="{_f(y0)}" '
                   f'stroke="#d62728" stroke-width="3"/>')
    if bad.size:
        x, y = panel.xy(inf[bad[0]], lv[bad[0]])
        out.append(f'<text class="inversion-label" x="{_f(x + 4)}" y="{_f(y - 4)}" font-size="10" '
                   f'fill="#d62728">{name}: inversion at alpha={lv[bad[0]]:.4g}</text>')
    return out


def render_svg(instance, conclusions: Mapping[str, Conclusion] | Sequence[Conclusion],
               path: str | Path | None = None, title: str = "") -> str:
    """Antecedent panels (terms and observation) over a consequent panel (terms and conclusions).

    ``instance`` is anything with ``rb`` and ``obs`` attributes or an ``(rb, obs)`` pair.
    """
    rb, obs = (instance.rb, instance.obs) if hasattr(instance, "rb") else instance
    if not isinstance(conclusions, Mapping):
        conclusions = {c.method.value: c for c in conclusions}
    panels = [_Panel(PANEL * k + 20, p, f"input {k + 1}: {p.dimension_name}") for k, p in enumerate(rb.inputs)]
    out_panel = _Panel(PANEL * len(rb.inputs) + 20, rb.output, f"output: {rb.output.dimension_name}")
    height = PANEL * (len(rb.inputs) + 1) + 40
    body = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" '
            f'viewBox="0 0 {WIDTH} {height}">',
            f'<rect width="{WIDTH}" height="{height}" fill="white"/>']
    if title:
        body.append(f'<text x="{_f(PAD)}" y="14" font-size="13">{_esc(title)}</text>')
    for k, panel in enumerate(panels):
        body += panel.frame()
        for t in rb.inputs[k].terms:
            body.append(panel.polyline(_set_points(t), "black", "term"))
        body.append(panel.polyline(_set_points(obs.sets[k]), "#ff0000", "observation", dash=True))
    body += out_panel.frame()
    for t in rb.output.terms:
        body.append(out_panel.polyline(_set_points(t), "black", "term"))
    for i, (name, c) in enumerate(conclusions.items()):
        body += _conclusion_items(out_panel, c, PALETTE[i % len(PALETTE)], name)
    body.append("</svg>")
    text = "\n".join(body) + "\n"
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text
