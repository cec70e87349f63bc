"""Sklearn-compatible estimator facade."""

from __future__ import annotations

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from mbdecide.decision import mbd_decide
from mbdecide.estimator import MagnitudeDecisionClassifier
from mbdecide.hypotheses import TrialSummary


def test_get_params_roundtrip():
    clf = MagnitudeDecisionClassifier(theta1=-0.5, theta2=0.5, variant="clinical")
    params = clf.get_params()
    assert params["theta1"] == -0.5
    again = MagnitudeDecisionClassifier(**params)
    assert again.get_params() == params
    assert clone(clf).get_params() == params


def test_fit_sets_fitted_attributes():
    clf = MagnitudeDecisionClassifier().fit()
    assert clf.ladder_.levels == (0.25, 0.05, 0.005)
    assert len(clf.classes_) == 12
    assert len(clf.boundary_lines_) == 12


def test_predict_matches_mbd_decide():
    clf = MagnitudeDecisionClassifier().fit()
    rng = np.random.default_rng(6)
    X = np.column_stack(
        [rng.normal(0, 0.5, 60), rng.uniform(0.01, 0.6, 60), rng.uniform(5, 40, 60)]
    )
    labels = clf.predict(X)
    for row, label in zip(X, labels):
        want = mbd_decide(TrialSummary("x", row[0], row[1], row[2]))
        assert label == want.label


def test_predict_uses_default_df_for_two_columns():
    clf = MagnitudeDecisionClassifier(df=18.0).fit()
    X = np.array([[2.0, 0.2], [0.0, 2.0]])
    assert list(clf.predict(X)) == ["most likely positive", "unclear"]


def test_transform_returns_pvalue_matrix():
    clf = MagnitudeDecisionClassifier().fit()
    pmat = clf.transform(np.array([[0.0, 0.37, 18.0]]))
    assert pmat.shape == (1, 4)
    assert np.allclose(pmat[:, 0] + pmat[:, 1], 1.0)


def test_unfitted_raises():
    with pytest.raises(NotFittedError):
        MagnitudeDecisionClassifier().predict(np.array([[0.0, 0.1]]))


def test_invalid_params_raise_at_fit():
    with pytest.raises(ValueError, match="strictly decreasing"):
        MagnitudeDecisionClassifier(alphas=(0.05, 0.25)).fit()
    with pytest.raises(ValueError, match="strictly less"):
        MagnitudeDecisionClassifier(theta1=0.3, theta2=0.1).fit()


def test_input_validation():
    clf = MagnitudeDecisionClassifier().fit()
    with pytest.raises(ValueError, match="se column"):
        clf.predict(np.array([[0.1, -0.2]]))
    with pytest.raises(ValueError, match="columns"):
        clf.predict(np.array([[0.1]]))
