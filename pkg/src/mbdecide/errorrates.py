"""Decision probabilities, Type I/II error rates and cap scans.

The sampling model is plug-in: the observed effect is
true_effect + se * T_df with the standard error treated as fixed, which
matches reading probabilities directly off a horizontal slice of the
decision chart.  The analytic route integrates the t density over the
slice segments of each decision region; the Monte Carlo route draws from
the same model and classifies every draw, providing an independent check
of the slicing and integration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

import numpy as np

from .decision import (
    Decision,
    EquivalenceRule,
    POSSIBLY_NEGATIVE,
    POSSIBLY_POSITIVE,
    Variant,
    decision_from_code,
    n_codes,
)
from .geometry import classify_batch_geometric, slice_segments
from .hypotheses import AlphaLadder, MeaningfulRange
from .tdist import t_cdf


@dataclass(frozen=True)
class TruthModel:
    """A nominated true effect with the sampling precision of the trial."""

    true_effect: float
    se: float
    df: float = 18.0

    def __post_init__(self):
        if not (np.isfinite(self.se) and self.se > 0.0):
            raise ValueError("se must be positive")
        if not np.isfinite(self.true_effect):
            raise ValueError("true_effect must be finite")
        if not (np.isfinite(self.df) and self.df > 0.0):
            raise ValueError("df must be positive")


@dataclass(frozen=True)
class DecisionDistribution:
    """Probability of each decision class under a truth model."""

    prob: Mapping[Decision, float]
    code_prob: Mapping[int, float]

    def __post_init__(self):
        object.__setattr__(self, "prob", dict(self.prob))
        object.__setattr__(self, "code_prob", dict(self.code_prob))

    def total(self, codes: Iterable) -> float:
        codes = set(codes)
        return sum(p for c, p in self.code_prob.items() if c in codes)


def _distribution_from_codeprob(code_prob, depth, variant, ladder, vocab=None):
    from .decision import DEFAULT_VOCABULARY

    vocab = vocab if vocab is not None else DEFAULT_VOCABULARY
    prob = {}
    for code in sorted(code_prob):
        if code_prob[code] <= 0.0:
            continue
        prob[decision_from_code(code, depth, variant, ladder, vocab)] = code_prob[code]
    return DecisionDistribution(prob=prob, code_prob={c: p for c, p in code_prob.items() if p > 0.0})


def decision_distribution(
    truth: TruthModel,
    rng: MeaningfulRange = None,
    ladder: AlphaLadder = None,
    variant: Variant = Variant.NON_CLINICAL,
    rule: EquivalenceRule = EquivalenceRule.MAX_P,
) -> DecisionDistribution:
    """Analytic decision probabilities from the slice of the region chart."""
    rng = rng if rng is not None else MeaningfulRange()
    ladder = ladder if ladder is not None else AlphaLadder()
    segments = slice_segments(truth.se, rng, ladder, truth.df, variant, rule)
    code_prob = {c: 0.0 for c in range(n_codes(ladder.depth))}
    for lo, hi, code in segments:
        f_hi = 1.0 if math.isinf(hi) else t_cdf((hi - truth.true_effect) / truth.se, truth.df)
        f_lo = 0.0 if math.isinf(lo) else t_cdf((lo - truth.true_effect) / truth.se, truth.df)
        code_prob[code] += f_hi - f_lo
    return _distribution_from_codeprob(code_prob, ladder.depth, Variant(variant), ladder)


def monte_carlo_distribution(
    truth: TruthModel,
    rng: MeaningfulRange = None,
    ladder: AlphaLadder = None,
    variant: Variant = Variant.NON_CLINICAL,
    rule: EquivalenceRule = EquivalenceRule.MAX_P,
    n_draws: int = 100_000,
    seed: int = 0,
) -> DecisionDistribution:
    """Monte Carlo decision frequencies; deterministic for a fixed seed.

    Draws effect* = true_effect + se * T_df and applies the decision
    function to every draw (thresholds evaluated in t-space, the exact
    geometric form of the per-summary decision).
    """
    if n_draws < 1:
        raise ValueError("n_draws must be at least 1")
    rng = rng if rng is not None else MeaningfulRange()
    ladder = ladder if ladder is not None else AlphaLadder()
    gen = np.random.default_rng(seed)
    effects = truth.true_effect + truth.se * gen.standard_t(truth.df, size=n_draws)
    codes = classify_batch_geometric(
        effects, np.full(n_draws, truth.se), rng, ladder, truth.df, variant, rule
    )
    counts = np.bincount(codes, minlength=n_codes(ladder.depth))
    code_prob = {c: counts[c] / n_draws for c in range(n_codes(ladder.depth))}
    return _distribution_from_codeprob(code_prob, ladder.depth, Variant(variant), ladder)


# ---------------------------------------------------------------------------
# substantive decision sets

_LEVEL_WORDS = {"likely": 0, "very-likely": 1, "most-likely": 2}


def substantive_codes(name: str, depth: int, variant: Variant) -> frozenset:
    """Named sets of decision codes counted as substantive calls.

    Positive-side sets: "likely-positive+" (all conclusive positive calls),
    "very-likely-positive+", "most-likely-positive+" and the
    "...-beneficial+" aliases; mirrored negative-side sets;
    "consider-using" (clinical; possibly positive plus every positive
    level); "two-sided-likely+" (both conclusive directions).
    """
    variant = Variant(variant)
    name = name.strip().lower()
    pos_block = lambda m0: frozenset(3 + 2 * depth + m for m in range(m0, depth))
    neg_block = lambda m0: frozenset(3 + m for m in range(m0, depth))
    if name == "consider-using":
        if variant is not Variant.CLINICAL:
            raise ValueError("consider-using is a clinical decision set")
        return frozenset({POSSIBLY_POSITIVE}) | pos_block(0)
    if name == "two-sided-likely+":
        return pos_block(0) | neg_block(0)
    for word, m0 in _LEVEL_WORDS.items():
        if name == f"{word}-positive+" or name == f"{word}-beneficial+":
            if m0 >= depth:
                raise ValueError(f"{name} needs a ladder of depth > {m0}")
            return pos_block(m0)
        if name == f"{word}-negative+" or name == f"{word}-harmful+":
            if m0 >= depth:
                raise ValueError(f"{name} needs a ladder of depth > {m0}")
            return neg_block(m0)
    raise ValueError(f"unknown substantive set: {name!r}")


def _implied_side(codes: frozenset, depth: int) -> str:
    pos = any(c >= 3 + 2 * depth or c == POSSIBLY_POSITIVE for c in codes)
    neg = any(3 <= c < 3 + depth or c == POSSIBLY_NEGATIVE for c in codes)
    if pos and neg:
        return "both"
    return "positive" if pos else "negative"


def _as_codes(substantive, depth: int, variant: Variant) -> frozenset:
    if isinstance(substantive, str):
        return substantive_codes(substantive, depth, variant)
    return frozenset(int(c) for c in substantive)


def type1_rate(
    truth: TruthModel,
    rng: MeaningfulRange = None,
    ladder: AlphaLadder = None,
    variant: Variant = Variant.NON_CLINICAL,
    rule: EquivalenceRule = EquivalenceRule.MAX_P,
    substantive="likely-positive+",
) -> float:
    """Probability of a substantive call when the true effect is not in
    the range the set asserts."""
    rng = rng if rng is not None else MeaningfulRange()
    ladder = ladder if ladder is not None else AlphaLadder()
    codes = _as_codes(substantive, ladder.depth, variant)
    side = _implied_side(codes, ladder.depth)
    if side in ("positive", "both") and truth.true_effect > rng.theta2:
        raise ValueError("true_effect is meaningfully positive; not a Type I setting")
    if side in ("negative", "both") and truth.true_effect < rng.theta1:
        raise ValueError("true_effect is meaningfully negative; not a Type I setting")
    dist = decision_distribution(truth, rng, ladder, variant, rule)
    return dist.total(codes)


def type2_rate(
    truth: TruthModel,
    rng: MeaningfulRange = None,
    ladder: AlphaLadder = None,
    variant: Variant = Variant.NON_CLINICAL,
    rule: EquivalenceRule = EquivalenceRule.MAX_P,
    target="likely-positive+",
) -> float:
    """Probability of missing the target call when the effect is truly there."""
    rng = rng if rng is not None else MeaningfulRange()
    ladder = ladder if ladder is not None else AlphaLadder()
    codes = _as_codes(target, ladder.depth, variant)
    side = _implied_side(codes, ladder.depth)
    if side == "positive" and not truth.true_effect > rng.theta2:
        raise ValueError("true_effect is not meaningfully positive; not a Type II setting")
    if side == "negative" and not truth.true_effect < rng.theta1:
        raise ValueError("true_effect is not meaningfully negative; not a Type II setting")
    dist = decision_distribution(truth, rng, ladder, variant, rule)
    return 1.0 - dist.total(codes)


@dataclass(frozen=True)
class BoundScanRow:
    df: float
    max_rate: float
    argmax_se: float


@dataclass(frozen=True)
class BoundScanReport:
    rows: tuple
    cap: Optional[float]
    max_rate: float
    passed: Optional[bool]


def bound_scan(
    rng: MeaningfulRange = None,
    ladder: AlphaLadder = None,
    variant: Variant = Variant.NON_CLINICAL,
    rule: EquivalenceRule = EquivalenceRule.MAX_P,
    substantive="likely-positive+",
    true_effect: float = 0.0,
    se_grid=None,
    df_set=(10.0, 18.0, 200.0),
    cap: Optional[float] = None,
    tolerance: float = 1e-9,
) -> BoundScanReport:
    """Per-df maximum substantive-call rate over an se grid, versus a cap."""
    rng = rng if rng is not None else MeaningfulRange()
    ladder = ladder if ladder is not None else AlphaLadder()
    if se_grid is None:
        s = rng.magnitude
        se_grid = np.geomspace(1e-3 * s, 20.0 * s, 200)
    se_grid = np.asarray(se_grid, dtype=float)
    if se_grid.size == 0 or np.any(se_grid <= 0.0):
        raise ValueError("se grid must be non-empty and positive")
    df_set = tuple(float(d) for d in df_set)
    if not df_set:
        raise ValueError("df set must be non-empty")
    rows = []
    for df in df_set:
        rates = np.array(
            [
                type1_rate(
                    TruthModel(true_effect, float(se), df), rng, ladder, variant, rule, substantive
                )
                for se in se_grid
            ]
        )
        k = int(np.argmax(rates))
        rows.append(BoundScanRow(df=df, max_rate=float(rates[k]), argmax_se=float(se_grid[k])))
    overall = max(r.max_rate for r in rows)
    passed = None if cap is None else bool(overall <= cap + tolerance)
    return BoundScanReport(rows=tuple(rows), cap=cap, max_rate=overall, passed=passed)
