"""Exact decision-region geometry in the (effect, standard-error) plane.

Rejection boundaries are lines through the range bounds with slopes given
by t quantiles: rejecting "theta < theta_k" at level alpha corresponds to
the closed half-plane x >= theta_k + t_{1-alpha,df} * se, and
"theta > theta_k" to x <= theta_k - t_{1-alpha,df} * se.  Point decisions
are computed from half-plane membership; under the spreadsheet-compatible
sum rule the equivalence level additionally compares the point with the
level curves of the p-value sum, evaluated by deterministic bisection.

Region polygons are built from a strip decomposition of the viewport:
strips are cut at every pairwise line crossing, cells within a strip are
classified at their midpoints, and cells sharing a boundary and a decision
are stitched into polygons.  The point classifier, not the polygons, is
the source of truth for decisions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .decision import (
    DEFAULT_VOCABULARY,
    Decision,
    EquivalenceRule,
    LabelVocabulary,
    Variant,
    decision_codes_from_levels,
    decision_from_code,
)
from .hypotheses import (
    AlphaLadder,
    Hypothesis,
    MeaningfulRange,
    TrialSummary,
    _slope,
)
from .tdist import t_cdf, t_quantile

_EPS = 1e-9
_MERGE_TOL = 1e-12


@dataclass(frozen=True)
class Viewport:
    """Chart window: effect in [effect_min, effect_max], se in (0, se_max]."""

    effect_min: float
    effect_max: float
    se_max: float

    def __post_init__(self):
        if not self.effect_min < self.effect_max:
            raise ValueError("effect_min must be less than effect_max")
        if not self.se_max > 0.0:
            raise ValueError("se_max must be positive")


def default_viewport(rng: MeaningfulRange) -> Viewport:
    center = 0.5 * (rng.theta1 + rng.theta2)
    s = rng.magnitude
    return Viewport(center - 4.0 * s, center + 4.0 * s, 2.0 * s)


@dataclass(frozen=True)
class BoundaryLine:
    """The line effect = intercept +/- slope * se bounding one rejection region."""

    bound: str  # "theta1", "theta2" or "center" for NHST overlays
    direction: str  # "minus": x >= line rejects; "plus": x <= line rejects
    alpha: float
    slope: float
    intercept: float
    level_index: Optional[int] = None

    def x_at(self, se):
        sign = 1.0 if self.direction == "minus" else -1.0
        return self.intercept + sign * self.slope * np.asarray(se, dtype=float)


def boundary_lines(rng: MeaningfulRange, ladder: AlphaLadder, df: float) -> list:
    """All 4 x depth rejection boundaries, stricter levels having steeper slopes."""
    out = []
    for m, alpha in enumerate(ladder.levels):
        slope = _slope(alpha, df)
        for hyp in (Hypothesis.H1_MINUS, Hypothesis.H2_MINUS, Hypothesis.H2_PLUS, Hypothesis.H1_PLUS):
            direction = "minus" if hyp.direction == "below" else "plus"
            out.append(
                BoundaryLine(
                    bound=hyp.bound,
                    direction=direction,
                    alpha=alpha,
                    slope=slope,
                    intercept=rng.bound_value(hyp.bound),
                    level_index=m,
                )
            )
    return out


def apex_se(rng: MeaningfulRange, alpha_lo: float, alpha_hi: float, df: float) -> float:
    """se where (theta1 + t_{1-alpha_lo} se) meets (theta2 - t_{1-alpha_hi} se)."""
    for a in (alpha_lo, alpha_hi):
        if not 0.0 < a < 1.0:
            raise ValueError("alpha levels must lie strictly between 0 and 1")
    return rng.width / (_slope(alpha_lo, df) + _slope(alpha_hi, df))


def nhst_overlay(alpha: float, df: float, centered_at: float = 0.0) -> list:
    """Boundaries of one-sided NHST rejection regions through `centered_at`."""
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie strictly between 0 and 1")
    slope = _slope(alpha, df)
    return [
        BoundaryLine("center", "minus", alpha, slope, centered_at),
        BoundaryLine("center", "plus", alpha, slope, centered_at),
    ]


def _geometric_levels(x, se, rng: MeaningfulRange, ladder: AlphaLadder, df: float):
    """Per-hypothesis maximal rejected indices by half-plane membership."""
    slopes = np.array([_slope(a, df) for a in ladder.levels])
    x = np.asarray(x, dtype=float)[..., None]
    se = np.asarray(se, dtype=float)[..., None]
    l1m = np.sum(x >= rng.theta1 + slopes * se, axis=-1) - 1
    l2m = np.sum(x >= rng.theta2 + slopes * se, axis=-1) - 1
    l2p = np.sum(x <= rng.theta2 - slopes * se, axis=-1) - 1
    l1p = np.sum(x <= rng.theta1 - slopes * se, axis=-1) - 1
    return l1m, l1p, l2m, l2p


def sum_rule_halfwidth(se, alpha: float, rng: MeaningfulRange, df: float):
    """Half-width u(se) of the sum-rule equivalence band at each se.

    The band is {x : p(H1-) + p(H2+) <= alpha} = [mid - u*se, mid + u*se]
    around the range midpoint; u is nan where the band is empty.  The
    boundary is the level curve of the p-value sum, found by fixed-count
    bisection (deterministic output).
    """
    se = np.asarray(se, dtype=float)
    delta = rng.width / (2.0 * se)
    t_apex = _slope(alpha / 2.0, df)  # t_{1 - alpha/2}
    exists = delta >= t_apex
    u = np.full(se.shape, np.nan)
    if not np.any(exists):
        return u
    d = delta[exists]
    lo = np.zeros_like(d)
    hi = d + max(_slope(alpha, df), 1.0)
    for _ in range(60):
        g_hi = 1.0 - np.asarray(t_cdf(hi + d, df)) + np.asarray(t_cdf(hi - d, df))
        short = g_hi < alpha
        if not np.any(short):
            break
        hi = np.where(short, 2.0 * hi, hi)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        g = 1.0 - np.asarray(t_cdf(mid + d, df)) + np.asarray(t_cdf(mid - d, df))
        take = g <= alpha
        lo = np.where(take, mid, lo)
        hi = np.where(take, hi, mid)
    u[exists] = 0.5 * (lo + hi)
    return u


def _equivalence_levels_geometric(
    x, se, l1m, l2p, rng: MeaningfulRange, ladder: AlphaLadder, df: float, rule: EquivalenceRule
):
    rule = EquivalenceRule(rule)
    if rule is EquivalenceRule.MAX_P:
        return np.where((l1m >= 0) & (l2p >= 0), np.minimum(l1m, l2p), -1)
    x = np.asarray(x, dtype=float)
    se = np.asarray(se, dtype=float)
    eq = np.full(x.shape, -1, dtype=np.int64)
    cand = (l1m >= 0) & (l2p >= 0)
    if not np.any(cand):
        return eq
    mid = 0.5 * (rng.theta1 + rng.theta2)
    xc, sec = x[cand], se[cand]
    uniq, inverse = np.unique(sec, return_inverse=True)
    count = np.zeros(xc.shape, dtype=np.int64)
    for alpha in ladder.levels:
        u = sum_rule_halfwidth(uniq, alpha, rng, df)[inverse]
        inside = np.abs(xc - mid) <= np.where(np.isnan(u), -np.inf, u) * sec
        count += inside.astype(np.int64)
    eq[cand] = count - 1
    return eq


def classify_batch_geometric(
    x,
    se,
    rng: MeaningfulRange,
    ladder: AlphaLadder,
    df: float,
    variant: Variant = Variant.NON_CLINICAL,
    rule: EquivalenceRule = EquivalenceRule.MAX_P,
):
    """Vectorized geometric classifier: arrays of points -> decision codes."""
    x = np.asarray(x, dtype=float)
    se = np.asarray(se, dtype=float)
    if np.any(se <= 0.0):
        raise ValueError("se must be positive")
    l1m, l1p, l2m, l2p = _geometric_levels(x, se, rng, ladder, df)
    eq = _equivalence_levels_geometric(x, se, l1m, l2p, rng, ladder, df, rule)
    return decision_codes_from_levels(l1m, l1p, l2m, l2p, eq, ladder.depth, variant)


def geometric_profile(x, se, rng: MeaningfulRange, ladder: AlphaLadder, df: float):
    """Raw theory profile (l1m, l1p, l2m, l2p) per point, no variant gate."""
    return _geometric_levels(x, se, rng, ladder, df)


def classify_point(
    summary: TrialSummary,
    rng: MeaningfulRange = None,
    ladder: AlphaLadder = None,
    variant: Variant = Variant.NON_CLINICAL,
    rule: EquivalenceRule = EquivalenceRule.MAX_P,
    vocab: LabelVocabulary = DEFAULT_VOCABULARY,
) -> Decision:
    """Decision for a point by region membership; boundaries count as rejected.

    Must agree with :func:`mbdecide.decision.mbd_decide` everywhere; the
    p-value pipeline and this classifier are two routes to one decision.
    """
    rng = rng if rng is not None else MeaningfulRange()
    ladder = ladder if ladder is not None else AlphaLadder()
    if summary.se <= 0.0:
        raise ValueError("se must be positive")
    code = classify_batch_geometric(
        np.array([summary.effect]),
        np.array([summary.se]),
        rng,
        ladder,
        summary.df,
        variant,
        rule,
    )[0]
    return decision_from_code(int(code), ladder.depth, Variant(variant), ladder, vocab)


def slice_segments(
    se: float,
    rng: MeaningfulRange,
    ladder: AlphaLadder,
    df: float,
    variant: Variant = Variant.NON_CLINICAL,
    rule: EquivalenceRule = EquivalenceRule.MAX_P,
) -> list:
    """Partition of the effect axis at fixed se into (lo, hi, code) segments."""
    if se <= 0.0:
        raise ValueError("se must be positive")
    cuts = set()
    for line in boundary_lines(rng, ladder, df):
        cuts.add(float(line.x_at(se)))
    if EquivalenceRule(rule) is EquivalenceRule.SUM_P:
        mid = 0.5 * (rng.theta1 + rng.theta2)
        for alpha in ladder.levels:
            u = sum_rule_halfwidth(np.array([se]), alpha, rng, df)[0]
            if not math.isnan(u):
                cuts.add(mid - u * se)
                cuts.add(mid + u * se)
    xs = sorted(cuts)
    reps = [xs[0] - max(1.0, se)]
    for a, b in zip(xs[:-1], xs[1:]):
        reps.append(0.5 * (a + b))
    reps.append(xs[-1] + max(1.0, se))
    codes = classify_batch_geometric(
        np.array(reps), np.full(len(reps), se), rng, ladder, df, variant, rule
    )
    bounds = [-math.inf] + xs + [math.inf]
    segments = []
    for i, code in enumerate(codes):
        lo, hi = bounds[i], bounds[i + 1]
        if segments and segments[-1][2] == code:
            segments[-1] = (segments[-1][0], hi, int(code))
        else:
            segments.append((lo, hi, int(code)))
    return segments


def overlay_outside_region(
    alpha: float,
    df: float,
    codes: set,
    rng: MeaningfulRange,
    ladder: AlphaLadder,
    variant: Variant,
    se_grid,
    rule: EquivalenceRule = EquivalenceRule.MAX_P,
    centered_at: float = 0.0,
) -> bool:
    """True when the one-sided NHST boundary at `alpha` stays outside the
    positive-side region formed by the given decision codes at every grid se
    (equivalently, the NHST rejection region contains that region)."""
    slope = _slope(alpha, df)
    for se in np.asarray(se_grid, dtype=float):
        segs = [s for s in slice_segments(float(se), rng, ladder, df, variant, rule) if s[2] in codes]
        if not segs:
            continue
        lo = min(s[0] for s in segs)
        if lo < centered_at + slope * se - _EPS:
            return False
    return True


# ---------------------------------------------------------------------------
# region polygons


@dataclass(frozen=True)
class Region:
    """One polygonal piece of a decision region."""

    code: int
    decision: Decision
    polygon: tuple
    profile: Optional[tuple] = None


@dataclass(frozen=True)
class RegionSet:
    regions: tuple
    viewport: Viewport

    def classes(self) -> list:
        seen = {}
        for r in self.regions:
            seen.setdefault(r.code, r.decision)
        return [seen[c] for c in sorted(seen)]


class _StripBoundary:
    """Evaluable x(se) boundary: a line, a viewport edge or a sum-rule curve."""

    def __init__(self, kind, payload=None):
        self.kind = kind
        self.payload = payload

    def key(self):
        if self.kind == "line":
            return ("line",) + self.payload
        if self.kind == "curve":
            return ("curve",) + self.payload[:2]
        return (self.kind,)

    def x_at(self, se, rng, df):
        if self.kind == "vmin" or self.kind == "vmax":
            return self.payload
        if self.kind == "line":
            c, g = self.payload
            return c + g * se
        alpha, side, mid = self.payload
        if se <= 0.0:
            # the p-value sum vanishes inside the open range as se -> 0,
            # so the band edge converges to the range bound
            return mid + side * 0.5 * rng.width
        u = sum_rule_halfwidth(np.array([se]), alpha, rng, df)[0]
        if math.isnan(u):
            u = 0.0
        return mid + side * u * se


def _strip_breaks(lines, viewport, rng, ladder, df, rule):
    cuts = {0.0, viewport.se_max}
    for i in range(len(lines)):
        ci, gi = lines[i]
        for j in range(i + 1, len(lines)):
            cj, gj = lines[j]
            if gi == gj:
                continue
            s = (cj - ci) / (gi - gj)
            if 0.0 < s < viewport.se_max:
                cuts.add(s)
    # strips must not straddle a line leaving the viewport through a side
    for c, g in lines:
        if g == 0.0:
            continue
        for edge in (viewport.effect_min, viewport.effect_max):
            s = (edge - c) / g
            if 0.0 < s < viewport.se_max:
                cuts.add(s)
    if EquivalenceRule(rule) is EquivalenceRule.SUM_P:
        for alpha in ladder.levels:
            apex = rng.width / (2.0 * _slope(alpha / 2.0, df))
            if 0.0 < apex < viewport.se_max:
                cuts.add(apex)
        for s in np.linspace(0.0, viewport.se_max, 129)[1:-1]:
            cuts.add(float(s))
    out = sorted(cuts)
    merged = [out[0]]
    tol = _MERGE_TOL * max(1.0, viewport.se_max)
    for s in out[1:]:
        if s - merged[-1] > tol:
            merged.append(s)
    merged[-1] = viewport.se_max
    return merged


def _build_regions(
    lines: Sequence,
    classify: Callable,
    viewport: Viewport,
    rng: MeaningfulRange,
    ladder: AlphaLadder,
    df: float,
    rule: EquivalenceRule,
    curve_alphas: Sequence = (),
    profile_fn: Callable = None,
):
    """Strip decomposition of the viewport into per-decision polygons.

    `classify` maps (x_array, se_array) to integer codes; cells are merged
    per code (or per `profile_fn` result when given) across strips whenever
    they share an identical edge.
    """
    breaks = _strip_breaks(lines, viewport, rng, ladder, df, rule)
    mid_range = 0.5 * (rng.theta1 + rng.theta2)

    boundaries = [_StripBoundary("vmin", viewport.effect_min), _StripBoundary("vmax", viewport.effect_max)]
    boundaries += [_StripBoundary("line", (c, g)) for c, g in lines]
    for alpha in curve_alphas:
        boundaries.append(_StripBoundary("curve", (alpha, -1.0, mid_range)))
        boundaries.append(_StripBoundary("curve", (alpha, 1.0, mid_range)))

    open_chains = {}  # (key_left, key_right, group) -> vertex chains
    finished = []

    for a, b in zip(breaks[:-1], breaks[1:]):
        mid = 0.5 * (a + b)
        positioned = []
        for bd in boundaries:
            pos = float(bd.x_at(mid, rng, df))
            if viewport.effect_min < pos < viewport.effect_max or bd.kind in ("vmin", "vmax"):
                positioned.append((pos, bd))
        positioned.sort(key=lambda t: (t[0], str(t[1].key())))
        dedup = []
        for pos, bd in positioned:
            if dedup and abs(pos - dedup[-1][0]) < _MERGE_TOL * max(1.0, abs(pos)):
                continue
            dedup.append((pos, bd))

        new_chains = {}
        for (pl, bl), (pr, br) in zip(dedup[:-1], dedup[1:]):
            xm = 0.5 * (pl + pr)
            code = int(classify(np.array([xm]), np.array([mid]))[0])
            group = code if profile_fn is None else profile_fn(xm, mid)
            xl_a = float(np.clip(bl.x_at(a, rng, df), viewport.effect_min, viewport.effect_max))
            xr_a = float(np.clip(br.x_at(a, rng, df), viewport.effect_min, viewport.effect_max))
            xl_b = float(np.clip(bl.x_at(b, rng, df), viewport.effect_min, viewport.effect_max))
            xr_b = float(np.clip(br.x_at(b, rng, df), viewport.effect_min, viewport.effect_max))
            cell_key = (bl.key(), br.key(), group)
            chain = open_chains.pop(cell_key, None)
            if chain is not None and abs(chain["left"][-1][0] - xl_a) < 1e-9 and abs(chain["right"][-1][0] - xr_a) < 1e-9:
                chain["left"].append((xl_b, b))
                chain["right"].append((xr_b, b))
            else:
                if chain is not None:
                    finished.append(chain)
                chain = {
                    "group": group,
                    "code": code,
                    "left": [(xl_a, a), (xl_b, b)],
                    "right": [(xr_a, a), (xr_b, b)],
                }
            new_chains[cell_key] = chain
        for chain in open_chains.values():
            finished.append(chain)
        open_chains = new_chains
    finished.extend(open_chains.values())
    return finished


def _chain_to_polygon(chain) -> tuple:
    right = chain["right"]
    left = chain["left"]
    ring = right + list(reversed(left))
    pruned = []
    for pt in ring:
        if pruned and abs(pt[0] - pruned[-1][0]) < 1e-14 and abs(pt[1] - pruned[-1][1]) < 1e-14:
            continue
        pruned.append((float(pt[0]), float(pt[1])))
    if len(pruned) > 1 and pruned[0] == pruned[-1]:
        pruned.pop()
    return tuple(pruned)


def region_polygons(
    rng: MeaningfulRange = None,
    ladder: AlphaLadder = None,
    df: float = 18.0,
    variant: Variant = Variant.NON_CLINICAL,
    viewport: Viewport = None,
    rule: EquivalenceRule = EquivalenceRule.MAX_P,
    vocab: LabelVocabulary = DEFAULT_VOCABULARY,
    grouped: bool = True,
) -> RegionSet:
    """Decision-region polygons over the viewport.

    `grouped=True` merges cells by decision class (12 classes at depth 3);
    `grouped=False` keeps the raw arrangement cells keyed by their
    theory profile (27 rejection-backed cells at depth 3, plus the
    no-rejection cell).  Under the sum rule the curved equivalence-level
    boundaries are interpolated strip-wise.
    """
    rng = rng if rng is not None else MeaningfulRange()
    ladder = ladder if ladder is not None else AlphaLadder()
    viewport = viewport if viewport is not None else default_viewport(rng)
    variant = Variant(variant)
    rule = EquivalenceRule(rule)

    lines = [(l.intercept, l.slope if l.direction == "minus" else -l.slope) for l in boundary_lines(rng, ladder, df)]
    curve_alphas = tuple(ladder.levels) if rule is EquivalenceRule.SUM_P else ()

    def classify(xs, ses):
        return classify_batch_geometric(xs, ses, rng, ladder, df, variant, rule)

    profile_fn = None
    if not grouped:
        def profile_fn(x, se):
            l1m, l1p, l2m, l2p = _geometric_levels(np.array([x]), np.array([se]), rng, ladder, df)
            return (int(l1m[0]), int(l1p[0]), int(l2m[0]), int(l2p[0]))

    chains = _build_regions(
        lines, classify, viewport, rng, ladder, df, rule, curve_alphas, profile_fn
    )
    regions = []
    for chain in chains:
        poly = _chain_to_polygon(chain)
        if len(poly) < 3:
            continue
        regions.append(
            Region(
                code=chain["code"],
                decision=decision_from_code(chain["code"], ladder.depth, variant, ladder, vocab),
                polygon=poly,
                profile=None if profile_fn is None else chain["group"],
            )
        )
    regions.sort(key=lambda r: (r.code, r.polygon[0][1], r.polygon[0][0]))
    return RegionSet(regions=tuple(regions), viewport=viewport)


# ---------------------------------------------------------------------------
# generalized funnel-plot classifications (no decision gate)

FUNNEL_LABELS = (
    "inferior",
    "non-superior",
    "equivalent to zero",
    "non-inferior",
    "superior",
    "inconclusive",
)


def _plain_region_chains(lines, classify, viewport, rng, ladder, df):
    chains = _build_regions(lines, classify, viewport, rng, ladder, df, EquivalenceRule.MAX_P)
    out = []
    for chain in chains:
        poly = _chain_to_polygon(chain)
        if len(poly) >= 3:
            out.append((chain["code"], poly))
    out.sort(key=lambda t: (t[0], t[1][0][1], t[1][0][0]))
    return out


def funnel_regions(rng: MeaningfulRange, alpha: float, df: float, viewport: Viewport) -> list:
    """(code, polygon) pieces of the six-region generalized funnel plot."""
    ladder1 = AlphaLadder((alpha,), ("",))
    lines = [(l.intercept, l.slope if l.direction == "minus" else -l.slope) for l in boundary_lines(rng, ladder1, df)]
    return _plain_region_chains(
        lines,
        lambda xs, ses: classify_funnel(xs, ses, rng, alpha, df),
        viewport,
        rng,
        ladder1,
        df,
    )


def enhanced_regions(rng: MeaningfulRange, alphas: tuple, df: float, viewport: Viewport) -> list:
    """(code, polygon) pieces of the nine-region contour-enhanced funnel plot."""
    a0, a1 = alphas
    ladder2 = AlphaLadder((a0, a1), ("", ""))
    lines = [(l.intercept, l.slope if l.direction == "minus" else -l.slope) for l in boundary_lines(rng, ladder2, df)]
    return _plain_region_chains(
        lines,
        lambda xs, ses: classify_enhanced(xs, ses, rng, (a0, a1), df),
        viewport,
        rng,
        ladder2,
        df,
    )


def classify_funnel(x, se, rng: MeaningfulRange, alpha: float, df: float):
    """Six-region generalized funnel-plot code at a single test level."""
    ladder1 = AlphaLadder((alpha,), ("",))
    l1m, l1p, l2m, l2p = _geometric_levels(x, se, rng, ladder1, df)
    codes = np.full(np.asarray(x).shape, 5, dtype=np.int64)  # inconclusive
    codes[(l1m >= 0)] = 3  # non-inferior
    codes[(l2p >= 0)] = 1  # non-superior
    codes[(l1m >= 0) & (l2p >= 0)] = 2  # equivalent
    codes[(l2m >= 0)] = 4  # superior
    codes[(l1p >= 0)] = 0  # inferior
    return codes


def classify_enhanced(x, se, rng: MeaningfulRange, alphas: tuple, df: float):
    """Nine-region contour-enhanced funnel code at two test levels.

    Codes: 0/1 inferior (weak/strict), 2 non-superior, 3/4 equivalent,
    5 non-inferior, 6/7 superior, 8 inconclusive.
    """
    a0, a1 = alphas
    if not a0 > a1:
        raise ValueError("enhanced chart needs two strictly decreasing alphas")
    weak = classify_funnel(x, se, rng, a0, df)
    strict = classify_funnel(x, se, rng, a1, df)
    codes = np.full(np.asarray(x).shape, 8, dtype=np.int64)
    codes[weak == 0] = 0
    codes[strict == 0] = 1
    codes[weak == 1] = 2
    codes[weak == 2] = 3
    codes[(weak == 2) & (strict == 2)] = 4
    codes[weak == 3] = 5
    codes[weak == 4] = 6
    codes[strict == 4] = 7
    return codes
