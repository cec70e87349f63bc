"""One-sided hypotheses against a meaningful-effect range.

The decision problem is generated by four one-sided hypotheses about the
true effect theta relative to the range bounds theta1 < theta2:

    H1-: theta < theta1      H1+: theta > theta1
    H2-: theta < theta2      H2+: theta > theta2

Rejecting a hypothesis decides that theta lies in the complementary
closed half-line.  Each hypothesis may be tested at every level of a
strictly decreasing alpha ladder; a rejected set is a collection of
(hypothesis, ladder index) pairs.  This module computes the one-sided
p-values, rejection profiles, the coherence closure of rejected sets,
geometric permissibility, and the exhaustive enumeration of permissible
decisions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping

import numpy as np

from .tdist import t_cdf, t_quantile


class Hypothesis(Enum):
    """The four generating one-sided hypotheses."""

    H1_MINUS = ("theta1", "below")
    H1_PLUS = ("theta1", "above")
    H2_MINUS = ("theta2", "below")
    H2_PLUS = ("theta2", "above")

    @property
    def bound(self) -> str:
        return self.value[0]

    @property
    def direction(self) -> str:
        return self.value[1]


_HYP_ORDER = (
    Hypothesis.H1_MINUS,
    Hypothesis.H1_PLUS,
    Hypothesis.H2_MINUS,
    Hypothesis.H2_PLUS,
)

# rejecting the key hypothesis decides a parameter set contained in the set
# decided by each listed hypothesis, forcing those into any coherent set
_IMPLIES = {
    Hypothesis.H1_MINUS: (Hypothesis.H1_MINUS,),
    Hypothesis.H2_MINUS: (Hypothesis.H2_MINUS, Hypothesis.H1_MINUS),
    Hypothesis.H2_PLUS: (Hypothesis.H2_PLUS,),
    Hypothesis.H1_PLUS: (Hypothesis.H1_PLUS, Hypothesis.H2_PLUS),
}

DEFAULT_ALPHAS = (0.25, 0.05, 0.005)
DEFAULT_LABELS = ("likely", "very likely", "most likely")


@dataclass(frozen=True)
class MeaningfulRange:
    """Bounds theta1 < theta2 of effects equivalent to zero."""

    theta1: float = -0.2
    theta2: float = 0.2

    def __post_init__(self):
        if not (np.isfinite(self.theta1) and np.isfinite(self.theta2)):
            raise ValueError("range bounds must be finite")
        if not self.theta1 < self.theta2:
            raise ValueError("theta1 must be strictly less than theta2")

    @classmethod
    def symmetric(cls, magnitude: float) -> "MeaningfulRange":
        if magnitude <= 0:
            raise ValueError("smallest meaningful magnitude must be positive")
        return cls(-magnitude, magnitude)

    @property
    def width(self) -> float:
        return self.theta2 - self.theta1

    @property
    def magnitude(self) -> float:
        """Half-width: the smallest meaningful magnitude for symmetric ranges."""
        return 0.5 * self.width

    def bound_value(self, name: str) -> float:
        return self.theta1 if name == "theta1" else self.theta2


@dataclass(frozen=True)
class AlphaLadder:
    """Strictly decreasing test levels with a verbal label per level."""

    levels: tuple = DEFAULT_ALPHAS
    labels: tuple = None  # type: ignore[assignment]

    def __post_init__(self):
        levels = tuple(float(a) for a in self.levels)
        object.__setattr__(self, "levels", levels)
        if len(levels) == 0:
            raise ValueError("alpha ladder must have at least one level")
        if any(not (0.0 < a < 1.0) for a in levels):
            raise ValueError("alpha levels must lie strictly between 0 and 1")
        if any(levels[i] <= levels[i + 1] for i in range(len(levels) - 1)):
            raise ValueError("alpha levels must be strictly decreasing")
        labels = self.labels
        if labels is None:
            if len(levels) == len(DEFAULT_LABELS):
                labels = DEFAULT_LABELS
            else:
                labels = tuple(f"at {a:g}" for a in levels)
        labels = tuple(str(s) for s in labels)
        if len(labels) != len(levels):
            raise ValueError("one label per alpha level is required")
        object.__setattr__(self, "labels", labels)

    @property
    def depth(self) -> int:
        return len(self.levels)


@dataclass(frozen=True)
class TrialSummary:
    """One study finding: effect estimate, standard error, degrees of freedom."""

    id: str
    effect: float
    se: float
    df: float = 18.0

    def __post_init__(self):
        if not np.isfinite(self.effect):
            raise ValueError("effect must be finite")
        if not (np.isfinite(self.se) and self.se > 0.0):
            raise ValueError("se must be positive")
        if not (np.isfinite(self.df) and self.df > 0.0):
            raise ValueError("df must be positive")


@dataclass(frozen=True)
class PValueQuad:
    """One-sided p-values for the four generating hypotheses."""

    p_h1_minus: float
    p_h1_plus: float
    p_h2_minus: float
    p_h2_plus: float

    def __post_init__(self):
        for name in ("p_h1_minus", "p_h1_plus", "p_h2_minus", "p_h2_plus"):
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0):
                raise ValueError(f"{name} must be a probability")

    def p(self, hypothesis: Hypothesis) -> float:
        return {
            Hypothesis.H1_MINUS: self.p_h1_minus,
            Hypothesis.H1_PLUS: self.p_h1_plus,
            Hypothesis.H2_MINUS: self.p_h2_minus,
            Hypothesis.H2_PLUS: self.p_h2_plus,
        }[hypothesis]


@dataclass(frozen=True)
class RejectionProfile:
    """Maximal rejected ladder index per hypothesis (-1 = never rejected)."""

    level: Mapping[Hypothesis, int]

    def __post_init__(self):
        object.__setattr__(self, "level", dict(self.level))

    def __getitem__(self, hypothesis: Hypothesis) -> int:
        return self.level[hypothesis]

    def rejected_set(self) -> frozenset:
        """All (hypothesis, index) pairs implied by the stored maxima."""
        return frozenset(
            (h, m) for h in _HYP_ORDER for m in range(self.level[h] + 1)
        )


@dataclass(frozen=True)
class PermissibleDecision:
    """A parameter-range decision together with the levels that back it."""

    range: str
    levels: Mapping[Hypothesis, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "levels", dict(self.levels))

    def key(self) -> tuple:
        return tuple(self.levels.get(h, -1) for h in _HYP_ORDER)


def one_sided_p_values(summary: TrialSummary, rng: MeaningfulRange) -> PValueQuad:
    """One-sided p-values of the four hypotheses for a trial summary.

    With t_k = (effect - theta_k)/se, evidence against "theta < theta_k"
    is a large t, so p(Hk-) = 1 - F(t_k) and p(Hk+) = F(t_k).
    """
    if summary.se <= 0.0:
        raise ValueError("se must be positive")
    t1 = (summary.effect - rng.theta1) / summary.se
    t2 = (summary.effect - rng.theta2) / summary.se
    f1 = t_cdf(t1, summary.df)
    f2 = t_cdf(t2, summary.df)
    return PValueQuad(
        p_h1_minus=1.0 - f1,
        p_h1_plus=f1,
        p_h2_minus=1.0 - f2,
        p_h2_plus=f2,
    )


def level_index(p: float, ladder: AlphaLadder) -> int:
    """Maximal ladder index m with p <= levels[m]; -1 when never rejected."""
    return sum(1 for a in ladder.levels if p <= a) - 1


def rejection_profile(p: PValueQuad, ladder: AlphaLadder) -> RejectionProfile:
    """Per-hypothesis maximal rejected index; coherent by p-value nesting."""
    return RejectionProfile(
        {h: level_index(p.p(h), ladder) for h in _HYP_ORDER}
    )


def coherent_closure(rejected: Iterable) -> frozenset:
    """Close a rejected set under decided-set containment and level weakening.

    Rejecting a hypothesis at index m implies every (implied hypothesis,
    weaker index) pair; the operation is idempotent.
    """
    closed = set()
    for h, m in rejected:
        if not isinstance(h, Hypothesis):
            raise ValueError(f"unknown hypothesis: {h!r}")
        if m < 0:
            raise ValueError("ladder index must be non-negative")
        for h_implied in _IMPLIES[h]:
            for m_weaker in range(m + 1):
                closed.add((h_implied, m_weaker))
    return frozenset(closed)


@lru_cache(maxsize=4096)
def _slope(alpha: float, df: float) -> float:
    return float(t_quantile(1.0 - alpha, df))


def _max_levels(rejected: frozenset) -> dict:
    out = {h: -1 for h in _HYP_ORDER}
    for h, m in rejected:
        if m > out[h]:
            out[h] = m
    return out


def _halfplanes_feasible(
    maxima: Mapping[Hypothesis, int],
    ladder: AlphaLadder,
    rng: MeaningfulRange,
    df: float,
) -> bool:
    """Non-emptiness of the joint rejection region over (effect, se), se > 0."""
    lower = []  # constraints x >= intercept + slope*se
    upper = []  # constraints x <= intercept - slope*se
    for h in _HYP_ORDER:
        m = maxima[h]
        if m < 0:
            continue
        slope = _slope(ladder.levels[m], df)
        intercept = rng.bound_value(h.bound)
        if h.direction == "below":
            lower.append((intercept, slope))
        else:
            upper.append((intercept, slope))
    if not lower or not upper:
        return True
    ses = rng.width * np.geomspace(1e-12, 1e3, 61)
    lo = np.max([c + g * ses for c, g in lower], axis=0)
    hi = np.min([c - g * ses for c, g in upper], axis=0)
    return bool(np.any(lo <= hi))


def is_permissible(
    rejected: Iterable,
    ladder: AlphaLadder,
    rng: MeaningfulRange,
    df: float = 18.0,
) -> bool:
    """Permissibility of a rejected set of (hypothesis, index) pairs.

    Requires (a) a non-empty intersection of the rejection half-planes for
    some se > 0 and (b) closure under decided-set containment, including
    across ladder levels.
    """
    rejected = frozenset(rejected)
    for h, m in rejected:
        if not isinstance(h, Hypothesis):
            raise ValueError(f"unknown hypothesis: {h!r}")
        if not (0 <= m < ladder.depth):
            raise ValueError(f"ladder index {m} out of range")
    if rejected != coherent_closure(rejected):
        return False
    return _halfplanes_feasible(_max_levels(rejected), ladder, rng, df)


def range_from_levels(l1m: int, l1p: int, l2m: int, l2p: int) -> str:
    """Parameter range decided by a coherent set of rejections."""
    if l2m >= 0:
        return "positive"
    if l1p >= 0:
        return "negative"
    if l1m >= 0 and l2p >= 0:
        return "trivial"
    if l1m >= 0:
        return "possibly_positive"
    if l2p >= 0:
        return "possibly_negative"
    return "unclear"


_RANGE_ORDER = (
    "negative",
    "possibly_negative",
    "trivial",
    "possibly_positive",
    "positive",
    "unclear",
)


def enumerate_permissible(
    ladder_depth: int,
    ladder: AlphaLadder = None,
    rng: MeaningfulRange = None,
    df: float = 18.0,
    include_default: bool = None,
) -> list:
    """Exhaustive list of permissible decisions at the given ladder depth.

    Brute force over all subsets of the hypothesis-level grid, filtered by
    :func:`is_permissible` and deduplicated on decided content (parameter
    range plus per-hypothesis levels).  Decisions are backed by at least
    one rejection; the default no-rejection decision (effect unknown) is
    conventionally listed as a decision only in the single-level problem,
    which `include_default=None` reproduces.
    """
    ladder = ladder if ladder is not None else AlphaLadder()
    rng = rng if rng is not None else MeaningfulRange()
    if not 1 <= ladder_depth <= ladder.depth:
        raise ValueError("ladder_depth must not exceed the ladder's depth")
    if include_default is None:
        include_default = ladder_depth == 1
    sub_ladder = AlphaLadder(ladder.levels[:ladder_depth], ladder.labels[:ladder_depth])

    grid = [(h, m) for h in _HYP_ORDER for m in range(ladder_depth)]
    seen = {}
    for size in range(1, len(grid) + 1):
        for combo in combinations(grid, size):
            rejected = frozenset(combo)
            if rejected != coherent_closure(rejected):
                continue
            maxima = _max_levels(rejected)
            key = tuple(maxima[h] for h in _HYP_ORDER)
            if key in seen:
                continue
            if not _halfplanes_feasible(maxima, sub_ladder, rng, df):
                continue
            decided_range = range_from_levels(
                maxima[Hypothesis.H1_MINUS],
                maxima[Hypothesis.H1_PLUS],
                maxima[Hypothesis.H2_MINUS],
                maxima[Hypothesis.H2_PLUS],
            )
            seen[key] = PermissibleDecision(
                range=decided_range,
                levels={h: m for h, m in maxima.items() if m >= 0},
            )
    decisions = sorted(
        seen.values(), key=lambda d: (_RANGE_ORDER.index(d.range), d.key())
    )
    if include_default:
        decisions.append(PermissibleDecision(range="unclear", levels={}))
    return decisions
