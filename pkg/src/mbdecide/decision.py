"""Mapping from rejection profiles to the twelve magnitude-based decisions.

A decision is a parameter-range conclusion (negative, possibly negative,
trivial, possibly positive, positive, or unclear), a ladder level for the
conclusive ranges, a rendered verbal label, and a clinical annotation.
Two variants share the machinery:

* non-clinical: conclusive decisions must establish non-inferiority or
  non-superiority at the second-strictest ladder level;
* clinical: any "consider using" verdict requires harm to be rejected at
  the strictest level, while harm-side conclusions only require
  non-superiority at the weakest level.

The equivalence (trivial) level is configurable: the maximum of the two
one-sided p-values (the coherent test) or their sum (compatible with the
long-standing spreadsheet implementations, never stronger than the max).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .hypotheses import (
    AlphaLadder,
    Hypothesis,
    MeaningfulRange,
    PValueQuad,
    TrialSummary,
    level_index,
    one_sided_p_values,
    rejection_profile,
)


class Variant(str, Enum):
    NON_CLINICAL = "non_clinical"
    CLINICAL = "clinical"


class EquivalenceRule(str, Enum):
    MAX_P = "max_p"
    SUM_P = "sum_p"


class Annotation(str, Enum):
    CONSIDER_USING = "consider_using"
    DO_NOT_USE = "do_not_use"


@dataclass(frozen=True)
class LabelVocabulary:
    """Text templates used to render decision labels."""

    positive_word: str = "positive"
    negative_word: str = "negative"
    trivial_word: str = "trivial"
    beneficial_word: str = "beneficial"
    harmful_word: str = "negative"
    possibly_template: str = "possibly {word}"
    unclear_word: str = "unclear"


DEFAULT_VOCABULARY = LabelVocabulary()
# spells out the parameter ranges instead of the "possibly" phrasing
DISAMBIGUATION_VOCABULARY = LabelVocabulary(possibly_template="{word} or trivial")

VOCABULARY_PRESETS = {
    "default": DEFAULT_VOCABULARY,
    "disambiguation": DISAMBIGUATION_VOCABULARY,
}


@dataclass(frozen=True)
class Decision:
    """A rendered magnitude-based decision for one trial summary."""

    range: str
    level_index: Optional[int]
    label: str
    clinical_annotation: Optional[str] = None

    def __post_init__(self):
        has_level = self.range in ("negative", "trivial", "positive")
        if has_level != (self.level_index is not None):
            raise ValueError("level_index is required exactly for conclusive ranges")


# decision codes: 0 unclear, 1 possibly_negative, 2 possibly_positive,
# then negative, trivial and positive blocks of `depth` levels each
UNCLEAR, POSSIBLY_NEGATIVE, POSSIBLY_POSITIVE = 0, 1, 2


def n_codes(depth: int) -> int:
    return 3 + 3 * depth


def code_of(range_name: str, level: Optional[int], depth: int) -> int:
    if range_name == "unclear":
        return UNCLEAR
    if range_name == "possibly_negative":
        return POSSIBLY_NEGATIVE
    if range_name == "possibly_positive":
        return POSSIBLY_POSITIVE
    offsets = {"negative": 3, "trivial": 3 + depth, "positive": 3 + 2 * depth}
    if range_name not in offsets:
        raise ValueError(f"unknown decision range: {range_name!r}")
    if level is None or not 0 <= level < depth:
        raise ValueError("conclusive ranges need a ladder level")
    return offsets[range_name] + level


def range_and_level(code: int, depth: int) -> tuple:
    if code == UNCLEAR:
        return "unclear", None
    if code == POSSIBLY_NEGATIVE:
        return "possibly_negative", None
    if code == POSSIBLY_POSITIVE:
        return "possibly_positive", None
    block, level = divmod(code - 3, depth)
    return ("negative", "trivial", "positive")[block], level


def equivalence_level(
    p: PValueQuad, ladder: AlphaLadder, rule: EquivalenceRule = EquivalenceRule.MAX_P
) -> Optional[int]:
    """Largest ladder index at which the equivalence test is satisfied.

    `max_p` compares the maximum of p(H1-) and p(H2+) with the alphas;
    `sum_p` compares their sum, so it is never stronger than `max_p`.
    Returns None when no index qualifies.
    """
    rule = EquivalenceRule(rule)
    if rule is EquivalenceRule.MAX_P:
        stat = max(p.p_h1_minus, p.p_h2_plus)
    else:
        stat = p.p_h1_minus + p.p_h2_plus
    m = level_index(stat, ladder)
    return None if m < 0 else m


def _gate_index(depth: int, variant: Variant) -> int:
    if variant is Variant.CLINICAL:
        return depth - 1
    return max(depth - 2, 0)


def decision_codes_from_levels(l1m, l1p, l2m, l2p, eq, depth: int, variant: Variant):
    """Vectorized decision core: per-hypothesis maximal levels -> codes.

    `eq` is the equivalence level per the configured rule (-1 when the
    equivalence test fails at every level).  All arguments broadcast.
    """
    l1m, l1p, l2m, l2p, eq = np.broadcast_arrays(
        np.asarray(l1m), np.asarray(l1p), np.asarray(l2m), np.asarray(l2p), np.asarray(eq)
    )
    variant = Variant(variant)
    g = _gate_index(depth, variant)
    if variant is Variant.NON_CLINICAL:
        gate = (l1m >= g) | (l2p >= g)
        positive = gate & (l2m >= 0)
        negative = gate & (l1p >= 0)
        if np.any(positive & negative):
            raise ValueError(
                "ladder permits contradictory directional decisions; "
                "opposing alpha levels must sum to less than 1"
            )
        trivial = gate & (eq >= 0) & ~positive & ~negative
        rest = gate & ~(positive | negative | trivial)
        poss_pos = rest & (l1m >= g)
        poss_neg = rest & ~poss_pos & (l2p >= g)
    else:
        benefit = l1m >= g
        gate = benefit | (l2p >= 0)
        trivial = gate & (eq >= 0)
        positive = benefit & ~trivial & (l2m >= 0)
        poss_pos = benefit & ~trivial & (l2m < 0)
        harm_side = gate & ~benefit
        negative = harm_side & ~trivial & (l1p >= 0)
        poss_neg = harm_side & ~trivial & ~negative
        if np.any((l2m >= 0) & (l1p >= 0)):
            raise ValueError(
                "ladder permits contradictory directional decisions; "
                "opposing alpha levels must sum to less than 1"
            )
    codes = np.zeros(l1m.shape, dtype=np.int64)
    codes[poss_neg] = POSSIBLY_NEGATIVE
    codes[poss_pos] = POSSIBLY_POSITIVE
    codes[negative] = 3 + l1p[negative]
    codes[trivial] = 3 + depth + eq[trivial]
    codes[positive] = 3 + 2 * depth + l2m[positive]
    return codes


def render_label(
    decision: Decision, vocab: LabelVocabulary = DEFAULT_VOCABULARY, ladder: AlphaLadder = None
) -> str:
    """Deterministic label text for a decision under a vocabulary."""
    ladder = ladder if ladder is not None else AlphaLadder()
    clinical = decision.clinical_annotation is not None
    return _label_text(decision.range, decision.level_index, clinical, vocab, ladder)


def _label_text(
    range_name: str, level: Optional[int], clinical: bool, vocab: LabelVocabulary, ladder: AlphaLadder
) -> str:
    positive_word = vocab.beneficial_word if clinical else vocab.positive_word
    negative_word = vocab.harmful_word if clinical else vocab.negative_word
    if range_name == "unclear":
        return vocab.unclear_word
    if range_name == "possibly_positive":
        return vocab.possibly_template.format(word=positive_word)
    if range_name == "possibly_negative":
        return vocab.possibly_template.format(word=negative_word)
    word = {
        "positive": positive_word,
        "negative": negative_word,
        "trivial": vocab.trivial_word,
    }[range_name]
    return f"{ladder.labels[level]} {word}"


def decision_from_code(
    code: int,
    depth: int,
    variant: Variant,
    ladder: AlphaLadder,
    vocab: LabelVocabulary = DEFAULT_VOCABULARY,
) -> Decision:
    variant = Variant(variant)
    range_name, level = range_and_level(int(code), depth)
    clinical = variant is Variant.CLINICAL
    annotation = None
    if clinical:
        uses = range_name in ("possibly_positive", "positive")
        annotation = (Annotation.CONSIDER_USING if uses else Annotation.DO_NOT_USE).value
    label = _label_text(range_name, level, clinical, vocab, ladder)
    return Decision(
        range=range_name,
        level_index=level,
        label=label,
        clinical_annotation=annotation,
    )


def decision_classes(
    depth: int,
    variant: Variant,
    ladder: AlphaLadder = None,
    vocab: LabelVocabulary = DEFAULT_VOCABULARY,
) -> list:
    """Catalog of every decision class, in code order (12 at depth 3)."""
    ladder = ladder if ladder is not None else AlphaLadder()
    return [
        decision_from_code(c, depth, variant, ladder, vocab) for c in range(n_codes(depth))
    ]


def profile_levels(p: PValueQuad, ladder: AlphaLadder) -> tuple:
    prof = rejection_profile(p, ladder)
    return (
        prof[Hypothesis.H1_MINUS],
        prof[Hypothesis.H1_PLUS],
        prof[Hypothesis.H2_MINUS],
        prof[Hypothesis.H2_PLUS],
    )


def mbd_decide(
    summary: TrialSummary,
    rng: MeaningfulRange = None,
    ladder: AlphaLadder = None,
    variant: Variant = Variant.NON_CLINICAL,
    rule: EquivalenceRule = EquivalenceRule.MAX_P,
    vocab: LabelVocabulary = DEFAULT_VOCABULARY,
) -> Decision:
    """Magnitude-based decision for one trial summary via its p-values."""
    rng = rng if rng is not None else MeaningfulRange()
    ladder = ladder if ladder is not None else AlphaLadder()
    p = one_sided_p_values(summary, rng)
    l1m, l1p, l2m, l2p = profile_levels(p, ladder)
    eq = equivalence_level(p, ladder, rule)
    code = decision_codes_from_levels(
        np.array([l1m]),
        np.array([l1p]),
        np.array([l2m]),
        np.array([l2p]),
        np.array([-1 if eq is None else eq]),
        ladder.depth,
        variant,
    )[0]
    return decision_from_code(int(code), ladder.depth, variant, ladder, vocab)


def decide_batch_pvalues(
    effects,
    ses,
    dfs,
    rng: MeaningfulRange,
    ladder: AlphaLadder,
    variant: Variant,
    rule: EquivalenceRule,
):
    """Vectorized p-value pipeline: arrays of summaries -> decision codes.

    Returns (codes, p_matrix) where p_matrix columns are the p-values of
    H1-, H1+, H2-, H2+ in that order.
    """
    from .tdist import t_cdf

    effects = np.asarray(effects, dtype=float)
    ses = np.asarray(ses, dtype=float)
    dfs = np.asarray(dfs, dtype=float)
    if np.any(ses <= 0.0):
        raise ValueError("se must be positive")
    t1 = (effects - rng.theta1) / ses
    t2 = (effects - rng.theta2) / ses
    f1 = np.asarray(t_cdf(t1, dfs))
    f2 = np.asarray(t_cdf(t2, dfs))
    p1m, p1p, p2m, p2p = 1.0 - f1, f1, 1.0 - f2, f2
    alphas = np.asarray(ladder.levels)
    l1m = np.sum(p1m[..., None] <= alphas, axis=-1) - 1
    l1p = np.sum(p1p[..., None] <= alphas, axis=-1) - 1
    l2m = np.sum(p2m[..., None] <= alphas, axis=-1) - 1
    l2p = np.sum(p2p[..., None] <= alphas, axis=-1) - 1
    rule = EquivalenceRule(rule)
    if rule is EquivalenceRule.MAX_P:
        eq = np.where((l1m >= 0) & (l2p >= 0), np.minimum(l1m, l2p), -1)
    else:
        eq = np.sum((p1m + p2p)[..., None] <= alphas, axis=-1) - 1
    codes = decision_codes_from_levels(l1m, l1p, l2m, l2p, eq, ladder.depth, variant)
    p_matrix = np.stack([p1m, p1p, p2m, p2p], axis=-1)
    return codes, p_matrix
