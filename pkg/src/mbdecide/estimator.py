"""Scikit-learn style front door for the decision procedure.

The classifier is configuration-only: `fit` validates the parameters and
precomputes the boundary geometry, `predict` maps rows of
(effect, se[, df]) to decision labels, and `transform` exposes the four
one-sided p-values per row so the procedure composes with sklearn
pipelines and tooling (get_params/set_params included).
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .decision import (
    EquivalenceRule,
    LabelVocabulary,
    Variant,
    VOCABULARY_PRESETS,
    decide_batch_pvalues,
    decision_classes,
)
from .geometry import boundary_lines
from .hypotheses import AlphaLadder, DEFAULT_ALPHAS, MeaningfulRange


class MagnitudeDecisionClassifier(TransformerMixin, BaseEstimator):
    """Classify trial summaries into magnitude-based decision labels.

    Parameters
    ----------
    theta1, theta2 : float
        Bounds of the range of effects equivalent to zero (theta1 < theta2).
    alphas : tuple of float
        Strictly decreasing test levels.
    labels : tuple of str or None
        Verbal label per level; defaults to likely/very likely/most likely
        for three-level ladders.
    variant : {"non_clinical", "clinical"}
    equivalence_rule : {"max_p", "sum_p"}
    vocabulary : str or LabelVocabulary
        A preset name ("default", "disambiguation") or a vocabulary object.
    df : float
        Degrees of freedom assumed when X carries no third column.
    """

    def __init__(
        self,
        theta1: float = -0.2,
        theta2: float = 0.2,
        alphas=DEFAULT_ALPHAS,
        labels=None,
        variant: str = "non_clinical",
        equivalence_rule: str = "max_p",
        vocabulary="default",
        df: float = 18.0,
    ):
        self.theta1 = theta1
        self.theta2 = theta2
        self.alphas = alphas
        self.labels = labels
        self.variant = variant
        self.equivalence_rule = equivalence_rule
        self.vocabulary = vocabulary
        self.df = df

    def fit(self, X=None, y=None):
        """Validate parameters and precompute the boundary geometry."""
        self.range_ = MeaningfulRange(self.theta1, self.theta2)
        self.ladder_ = AlphaLadder(tuple(self.alphas), self.labels)
        self.variant_ = Variant(self.variant)
        self.rule_ = EquivalenceRule(self.equivalence_rule)
        if isinstance(self.vocabulary, LabelVocabulary):
            self.vocab_ = self.vocabulary
        else:
            try:
                self.vocab_ = VOCABULARY_PRESETS[self.vocabulary]
            except KeyError:
                raise ValueError(
                    f"unknown vocabulary preset: {self.vocabulary!r}"
                ) from None
        if not (np.isfinite(self.df) and self.df > 0):
            raise ValueError("df must be positive")
        self.boundary_lines_ = tuple(boundary_lines(self.range_, self.ladder_, self.df))
        catalog = decision_classes(self.ladder_.depth, self.variant_, self.ladder_, self.vocab_)
        self.decision_classes_ = tuple(catalog)
        self.classes_ = np.array([d.label for d in catalog], dtype=object)
        if X is not None:
            X = self._validate_rows(X)
            self.n_features_in_ = X.shape[1]
        return self

    def _validate_rows(self, X):
        X = check_array(X, ensure_2d=True, dtype=float)
        if X.shape[1] not in (2, 3):
            raise ValueError("X must have columns (effect, se) or (effect, se, df)")
        if np.any(X[:, 1] <= 0):
            raise ValueError("se column must be positive")
        if X.shape[1] == 3 and np.any(X[:, 2] <= 0):
            raise ValueError("df column must be positive")
        return X

    def _decide(self, X):
        X = self._validate_rows(X)
        dfs = X[:, 2] if X.shape[1] == 3 else np.full(X.shape[0], float(self.df))
        return decide_batch_pvalues(
            X[:, 0], X[:, 1], dfs, self.range_, self.ladder_, self.variant_, self.rule_
        )

    def predict(self, X):
        """Decision label per row of (effect, se[, df])."""
        check_is_fitted(self, "ladder_")
        codes, _ = self._decide(X)
        return self.classes_[codes]

    def predict_codes(self, X):
        """Integer decision code per row (indexes ``decision_classes_``)."""
        check_is_fitted(self, "ladder_")
        codes, _ = self._decide(X)
        return codes

    def transform(self, X):
        """One-sided p-values per row: columns H1-, H1+, H2-, H2+."""
        check_is_fitted(self, "ladder_")
        _, pmat = self._decide(X)
        return pmat

    def fit_predict(self, X, y=None):
        return self.fit(X).predict(X)
