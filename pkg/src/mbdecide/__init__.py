"""Magnitude-based decisions from trial summary statistics.

Compute multiple-decision verdicts for study findings against a range of
meaningful effect sizes, render the generalized contour-enhanced
funnel-plot decision regions behind them, and quantify the Type I/II
error rates of any decision criterion.
"""

from .chart import CHART_KINDS, build_chart, render_svg
from .decision import (
    DEFAULT_VOCABULARY,
    DISAMBIGUATION_VOCABULARY,
    Decision,
    EquivalenceRule,
    LabelVocabulary,
    Variant,
    decision_classes,
    equivalence_level,
    mbd_decide,
    render_label,
)
from .errorrates import (
    BoundScanReport,
    DecisionDistribution,
    TruthModel,
    bound_scan,
    decision_distribution,
    monte_carlo_distribution,
    substantive_codes,
    type1_rate,
    type2_rate,
)
from .estimator import MagnitudeDecisionClassifier
from .geometry import (
    BoundaryLine,
    Region,
    RegionSet,
    Viewport,
    apex_se,
    boundary_lines,
    classify_point,
    default_viewport,
    nhst_overlay,
    region_polygons,
)
from .hypotheses import (
    AlphaLadder,
    Hypothesis,
    MeaningfulRange,
    PermissibleDecision,
    PValueQuad,
    RejectionProfile,
    TrialSummary,
    coherent_closure,
    enumerate_permissible,
    is_permissible,
    one_sided_p_values,
    rejection_profile,
)
from .ingest import (
    AnalysisConfig,
    CsvParseError,
    StudyRow,
    StudyTable,
    config_to_dict,
    load_config,
    normalize_by_sme,
    parse_study_csv,
    serialize_study_csv,
)
from .service import create_app
from .tdist import reg_inc_beta, t_cdf, t_quantile

__version__ = "0.1.0"

__all__ = [
    "AlphaLadder",
    "AnalysisConfig",
    "BoundScanReport",
    "BoundaryLine",
    "CHART_KINDS",
    "CsvParseError",
    "DEFAULT_VOCABULARY",
    "DISAMBIGUATION_VOCABULARY",
    "Decision",
    "DecisionDistribution",
    "EquivalenceRule",
    "Hypothesis",
    "LabelVocabulary",
    "MagnitudeDecisionClassifier",
    "MeaningfulRange",
    "PValueQuad",
    "PermissibleDecision",
    "Region",
    "RegionSet",
    "RejectionProfile",
    "StudyRow",
    "StudyTable",
    "TrialSummary",
    "TruthModel",
    "Variant",
    "Viewport",
    "apex_se",
    "bound_scan",
    "boundary_lines",
    "build_chart",
    "classify_point",
    "coherent_closure",
    "config_to_dict",
    "create_app",
    "decision_classes",
    "decision_distribution",
    "default_viewport",
    "enumerate_permissible",
    "equivalence_level",
    "is_permissible",
    "load_config",
    "mbd_decide",
    "monte_carlo_distribution",
    "nhst_overlay",
    "normalize_by_sme",
    "one_sided_p_values",
    "parse_study_csv",
    "reg_inc_beta",
    "region_polygons",
    "rejection_profile",
    "render_label",
    "render_svg",
    "serialize_study_csv",
    "substantive_codes",
    "t_cdf",
    "t_quantile",
    "type1_rate",
    "type2_rate",
]
