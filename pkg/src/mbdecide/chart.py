"""Chart documents and deterministic SVG rendering.

A chart document is a JSON-ready dictionary: labeled region polygons,
NHST overlay lines, study points with their decisions, a legend and axis
ranges.  The same document drives the SVG emitter here and the web UI.
Chart kinds:

* ``funnel``: the six-region generalized funnel plot at a single test
  level (the ladder's second-strictest level);
* ``enhanced``: the nine-region contour-enhanced variant at the two
  strictest levels;
* ``mbd``: the twelve decision regions of the configured variant, with
  NHST comparison overlays.

All numeric output is formatted to four decimal places so identical
inputs produce byte-identical SVG.
"""

from __future__ import annotations

import numpy as np

from .decision import (
    Variant,
    decide_batch_pvalues,
    decision_classes,
    decision_from_code,
    range_and_level,
)
from .geometry import (
    enhanced_regions,
    funnel_regions,
    nhst_overlay,
    region_polygons,
)
from .ingest import AnalysisConfig, StudyTable

CHART_KINDS = ("funnel", "enhanced", "mbd")

_MBD_FILLS = {
    "unclear": "#f2f2f2",
    "possibly_negative": "#f3cdc8",
    "possibly_positive": "#c8d9f3",
    "negative": ("#e8a49e", "#d96c62", "#c0392b"),
    "trivial": ("#d5e8d4", "#a8d5a2", "#74b266"),
    "positive": ("#a9c6e8", "#6f9fd8", "#3465a8"),
}

_FUNNEL_FILLS = ("#c0392b", "#f3cdc8", "#74b266", "#c8d9f3", "#3465a8", "#f2f2f2")

_ENHANCED_FILLS = (
    "#d96c62",
    "#c0392b",
    "#f3cdc8",
    "#a8d5a2",
    "#74b266",
    "#c8d9f3",
    "#6f9fd8",
    "#3465a8",
    "#f2f2f2",
)

OVERLAY_BLACK = "#000000"
OVERLAY_RED = "#cc0000"


def _fmt(value: float) -> str:
    text = f"{value:.4f}"
    if text == "-0.0000":
        text = "0.0000"
    return text


def _fmt_alpha(alpha: float) -> str:
    return f"{alpha:g}"


def _mbd_fill(code: int, depth: int) -> str:
    range_name, level = range_and_level(code, depth)
    fill = _MBD_FILLS[range_name]
    if isinstance(fill, tuple):
        return fill[min(level, len(fill) - 1)]
    return fill


def _point_payload(table: StudyTable, config: AnalysisConfig):
    if len(table) == 0:
        return []
    effects = np.array([r.effect for r in table])
    ses = np.array([r.se for r in table])
    dfs = np.array([r.df for r in table])
    codes, pmat = decide_batch_pvalues(
        effects, ses, dfs, config.range, config.ladder, config.variant, config.rule
    )
    points = []
    for row, code, pvals in zip(table, codes, pmat):
        decision = decision_from_code(
            int(code), config.ladder.depth, config.variant, config.ladder, config.vocab
        )
        points.append(
            {
                "id": row.id,
                "effect": row.effect,
                "se": row.se,
                "df": row.df,
                "class_id": int(code),
                "label": decision.label,
                "annotation": decision.clinical_annotation,
                "p_values": {
                    "h1_minus": float(pvals[0]),
                    "h1_plus": float(pvals[1]),
                    "h2_minus": float(pvals[2]),
                    "h2_plus": float(pvals[3]),
                },
            }
        )
    return points


def build_chart(table: StudyTable, config: AnalysisConfig, kind: str = "mbd", df: float = 18.0) -> dict:
    """Chart document for a study table under a configuration.

    `df` sets the degrees of freedom used to draw region boundaries (the
    study points keep their own df for their decisions).
    """
    if kind not in CHART_KINDS:
        raise ValueError(f"unknown chart kind: {kind!r}; expected one of {CHART_KINDS}")
    viewport = config.effective_viewport()
    rng = config.range
    ladder = config.ladder
    depth = ladder.depth

    regions = []
    legend = []
    overlays = []
    if kind == "funnel":
        gate = max(depth - 2, 0)
        alpha = ladder.levels[gate]
        from .geometry import FUNNEL_LABELS

        for code, label in enumerate(FUNNEL_LABELS):
            legend.append(
                {"class_id": code, "label": label, "fill": _FUNNEL_FILLS[code], "annotation": None}
            )
        for code, polygon in funnel_regions(rng, alpha, df, viewport):
            regions.append(
                {
                    "class_id": code,
                    "label": FUNNEL_LABELS[code],
                    "fill": _FUNNEL_FILLS[code],
                    "annotation": None,
                    "polygon": [[float(x), float(s)] for x, s in polygon],
                }
            )
    elif kind == "enhanced":
        a0, a1 = ladder.levels[depth - 2], ladder.levels[depth - 1]
        labels = (
            f"inferior at {_fmt_alpha(a0)}",
            f"inferior at {_fmt_alpha(a1)}",
            "non-superior",
            f"equivalent at {_fmt_alpha(a0)}",
            f"equivalent at {_fmt_alpha(a1)}",
            "non-inferior",
            f"superior at {_fmt_alpha(a0)}",
            f"superior at {_fmt_alpha(a1)}",
            "inconclusive",
        )
        for code, label in enumerate(labels):
            legend.append(
                {"class_id": code, "label": label, "fill": _ENHANCED_FILLS[code], "annotation": None}
            )
        for code, polygon in enhanced_regions(rng, (a0, a1), df, viewport):
            regions.append(
                {
                    "class_id": code,
                    "label": labels[code],
                    "fill": _ENHANCED_FILLS[code],
                    "annotation": None,
                    "polygon": [[float(x), float(s)] for x, s in polygon],
                }
            )
    else:
        classes = decision_classes(depth, config.variant, ladder, config.vocab)
        for code, decision in enumerate(classes):
            legend.append(
                {
                    "class_id": code,
                    "label": decision.label,
                    "fill": _mbd_fill(code, depth),
                    "annotation": decision.clinical_annotation,
                }
            )
        region_set = region_polygons(
            rng, ladder, df, config.variant, viewport, config.rule, config.vocab
        )
        for region in region_set.regions:
            regions.append(
                {
                    "class_id": region.code,
                    "label": region.decision.label,
                    "fill": _mbd_fill(region.code, depth),
                    "annotation": region.decision.clinical_annotation,
                    "polygon": [[float(x), float(s)] for x, s in region.polygon],
                }
            )
        cap_alpha = 0.17 if config.variant is Variant.CLINICAL else 0.125
        for line in nhst_overlay(0.025, df):
            overlays.append(
                {
                    "alpha": 0.025,
                    "direction": line.direction,
                    "intercept": line.intercept,
                    "slope": line.slope,
                    "color": OVERLAY_BLACK,
                    "label": "one-sided t-test at 0.025",
                }
            )
        for line in nhst_overlay(cap_alpha, df):
            overlays.append(
                {
                    "alpha": cap_alpha,
                    "direction": line.direction,
                    "intercept": line.intercept,
                    "slope": line.slope,
                    "color": OVERLAY_RED,
                    "label": f"one-sided t-test at {_fmt_alpha(cap_alpha)}",
                }
            )

    return {
        "kind": kind,
        "variant": config.variant.value,
        "axes": {
            "effect": {"min": viewport.effect_min, "max": viewport.effect_max, "label": "effect size"},
            "se": {"min": 0.0, "max": viewport.se_max, "label": "standard error"},
        },
        "regions": regions,
        "overlays": overlays,
        "points": _point_payload(table, config),
        "legend": legend,
    }


# ---------------------------------------------------------------------------
# SVG

_WIDTH, _HEIGHT = 780, 560
_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 64, 232, 28, 48
_PLOT_W = _WIDTH - _MARGIN_L - _MARGIN_R
_PLOT_H = _HEIGHT - _MARGIN_T - _MARGIN_B


def _escape(text: str) -> str:
    return (
        str(text)
        .replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
    )


def render_svg(chart: dict) -> bytes:
    """Byte-deterministic SVG 1.1 rendering of a chart document."""
    ax = chart["axes"]
    emin, emax = ax["effect"]["min"], ax["effect"]["max"]
    smax = ax["se"]["max"]

    def px(x: float) -> float:
        return _MARGIN_L + (x - emin) / (emax - emin) * _PLOT_W

    def py(se: float) -> float:
        # funnel-plot convention: se = 0 at the top, increasing downward
        return _MARGIN_T + se / smax * _PLOT_H

    out = []
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_WIDTH}" height="{_HEIGHT}" viewBox="0 0 {_WIDTH} {_HEIGHT}">'
    )
    out.append(f'<rect x="0" y="0" width="{_WIDTH}" height="{_HEIGHT}" fill="#ffffff"/>')

    out.append('<g class="regions">')
    for region in chart["regions"]:
        pts = " ".join(f"{_fmt(px(x))},{_fmt(py(s))}" for x, s in region["polygon"])
        out.append(
            f'<polygon points="{pts}" fill="{region["fill"]}" stroke="#ffffff" '
            f'stroke-width="0.5"><title>{_escape(region["label"])}</title></polygon>'
        )
    out.append("</g>")

    out.append('<g class="overlays">')
    for line in chart["overlays"]:
        sign = 1.0 if line["direction"] == "minus" else -1.0
        x0, s0 = line["intercept"], 0.0
        s1 = smax
        x1 = line["intercept"] + sign * line["slope"] * s1
        lo, hi = min(emin, emax), max(emin, emax)
        if x1 > hi:
            s1 = (hi - line["intercept"]) / (sign * line["slope"])
            x1 = hi
        elif x1 < lo:
            s1 = (lo - line["intercept"]) / (sign * line["slope"])
            x1 = lo
        if not (lo <= x0 <= hi):
            continue
        out.append(
            f'<line x1="{_fmt(px(x0))}" y1="{_fmt(py(s0))}" x2="{_fmt(px(x1))}" '
            f'y2="{_fmt(py(s1))}" stroke="{line["color"]}" stroke-width="1.2" '
            f'stroke-dasharray="6,4"><title>{_escape(line["label"])}</title></line>'
        )
    out.append("</g>")

    out.append('<g class="points">')
    for point in chart["points"]:
        if not (emin <= point["effect"] <= emax and 0.0 <= point["se"] <= smax):
            continue
        tooltip = f'{point["id"]}: {point["label"]}'
        if point["annotation"]:
            tooltip += f' ({point["annotation"].replace("_", " ")})'
        out.append(
            f'<circle cx="{_fmt(px(point["effect"]))}" cy="{_fmt(py(point["se"]))}" r="4" '
            f'fill="{_escape(point.get("fill", "#222222"))}" stroke="#000000" stroke-width="1">'
            f"<title>{_escape(tooltip)}</title></circle>"
        )
        out.append(
            f'<text x="{_fmt(px(point["effect"]) + 6)}" y="{_fmt(py(point["se"]) - 5)}" '
            f'font-size="10" font-family="sans-serif">{_escape(point["id"])}</text>'
        )
    out.append("</g>")

    # axes
    out.append('<g class="axes" stroke="#333333" stroke-width="1">')
    out.append(
        f'<line x1="{_MARGIN_L}" y1="{_MARGIN_T + _PLOT_H}" x2="{_MARGIN_L + _PLOT_W}" '
        f'y2="{_MARGIN_T + _PLOT_H}"/>'
    )
    out.append(f'<line x1="{_MARGIN_L}" y1="{_MARGIN_T}" x2="{_MARGIN_L}" y2="{_MARGIN_T + _PLOT_H}"/>')
    out.append("</g>")
    out.append('<g class="ticks" font-size="10" font-family="sans-serif" fill="#333333">')
    for i in range(5):
        x = emin + (emax - emin) * i / 4
        out.append(
            f'<text x="{_fmt(px(x))}" y="{_MARGIN_T + _PLOT_H + 16}" text-anchor="middle">'
            f"{_escape(f'{x:g}')}</text>"
        )
    for i in range(5):
        s = smax * i / 4
        out.append(
            f'<text x="{_MARGIN_L - 6}" y="{_fmt(py(s) + 3)}" text-anchor="end">'
            f"{_escape(f'{s:g}')}</text>"
        )
    out.append(
        f'<text x="{_MARGIN_L + _PLOT_W / 2}" y="{_HEIGHT - 10}" text-anchor="middle" '
        f'font-size="12">{_escape(ax["effect"]["label"])}</text>'
    )
    out.append(
        f'<text x="16" y="{_MARGIN_T + _PLOT_H / 2}" text-anchor="middle" font-size="12" '
        f'transform="rotate(-90 16 {_MARGIN_T + _PLOT_H / 2})">{_escape(ax["se"]["label"])}</text>'
    )
    out.append("</g>")

    # legend: one entry per decision class
    out.append('<g class="legend" font-size="11" font-family="sans-serif">')
    lx = _MARGIN_L + _PLOT_W + 18
    ly = _MARGIN_T + 4
    for i, entry in enumerate(chart["legend"]):
        y = ly + i * 20
        label = entry["label"]
        if entry.get("annotation"):
            label += f' ({entry["annotation"].replace("_", " ")})'
        out.append(
            f'<g class="legend-entry"><rect x="{lx}" y="{y}" width="14" height="14" '
            f'fill="{entry["fill"]}" stroke="#666666" stroke-width="0.5"/>'
            f'<text x="{lx + 20}" y="{y + 11}">{_escape(label)}</text></g>'
        )
    for j, line in enumerate(_legend_overlays(chart)):
        y = ly + (len(chart["legend"]) + j) * 20 + 8
        out.append(
            f'<g class="legend-overlay"><line x1="{lx}" y1="{y + 7}" x2="{lx + 14}" y2="{y + 7}" '
            f'stroke="{line["color"]}" stroke-width="1.2" stroke-dasharray="6,4"/>'
            f'<text x="{lx + 20}" y="{y + 11}">{_escape(line["label"])}</text></g>'
        )
    out.append("</g>")
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")


def _legend_overlays(chart: dict) -> list:
    seen = []
    for line in chart["overlays"]:
        key = (line["color"], line["label"])
        if key not in [(l["color"], l["label"]) for l in seen]:
            seen.append({"color": line["color"], "label": line["label"]})
    return seen
