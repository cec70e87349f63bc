"""Study-table ingestion, smallest-meaningful-effect scaling, configuration.

The CSV schema is `id,effect,se,df[,sme]` with a required header, `.`
decimal separator and LF or CRLF line endings.  Configuration is JSON with
keys `theta1`, `theta2`, `alphas`, `labels`, `variant`, `equivalence_rule`,
`vocabulary` and `viewport{effect_min,effect_max,se_max}`; every key is
optional and an empty document yields the full defaults.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field, replace
from typing import Optional

from .decision import (
    DEFAULT_VOCABULARY,
    EquivalenceRule,
    LabelVocabulary,
    Variant,
    VOCABULARY_PRESETS,
)
from .geometry import Viewport, default_viewport
from .hypotheses import AlphaLadder, MeaningfulRange, TrialSummary


class CsvParseError(ValueError):
    """CSV validation failure naming the offending row and column."""


@dataclass(frozen=True)
class StudyRow:
    id: str
    effect: float
    se: float
    df: float
    sme: Optional[float] = None

    def summary(self) -> TrialSummary:
        return TrialSummary(self.id, self.effect, self.se, self.df)


@dataclass(frozen=True)
class StudyTable:
    rows: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)


_REQUIRED = ("id", "effect", "se", "df")
_OPTIONAL = ("sme",)


def parse_study_csv(data) -> StudyTable:
    """Parse and validate a study CSV; errors name the row and column."""
    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise CsvParseError(f"not valid UTF-8: {exc}") from None
    else:
        text = data
    reader = csv.reader(io.StringIO(text, newline=""))
    try:
        header = next(reader)
    except StopIteration:
        raise CsvParseError("missing header row") from None
    header = [h.strip() for h in header]
    for col in _REQUIRED:
        if col not in header:
            raise CsvParseError(f"missing column: {col}")
    for col in header:
        if col not in _REQUIRED + _OPTIONAL:
            raise CsvParseError(f"unexpected column: {col}")
    if len(set(header)) != len(header):
        raise CsvParseError("duplicate column in header")
    idx = {col: header.index(col) for col in header}

    rows = []
    for line_no, record in enumerate(reader, start=2):
        if not record or all(not cell.strip() for cell in record):
            continue
        if len(record) != len(header):
            raise CsvParseError(f"row {line_no}: expected {len(header)} cells, got {len(record)}")

        def cell(col):
            return record[idx[col]].strip()

        def number(col):
            raw = cell(col)
            try:
                value = float(raw)
            except ValueError:
                raise CsvParseError(f"row {line_no}: {col} must be a number, got {raw!r}") from None
            if not math.isfinite(value):
                raise CsvParseError(f"row {line_no}: {col} must be finite")
            return value

        row_id = cell("id")
        if not row_id:
            raise CsvParseError(f"row {line_no}: id must not be empty")
        effect = number("effect")
        se = number("se")
        if se <= 0.0:
            raise CsvParseError(f"row {line_no}: se must be positive")
        df = number("df")
        if df <= 0.0:
            raise CsvParseError(f"row {line_no}: df must be positive")
        sme = None
        if "sme" in idx and cell("sme") != "":
            sme = number("sme")
            if sme <= 0.0:
                raise CsvParseError(f"row {line_no}: sme must be positive")
        rows.append(StudyRow(row_id, effect, se, df, sme))
    return StudyTable(rows)


def serialize_study_csv(table: StudyTable) -> bytes:
    """Inverse of :func:`parse_study_csv` on valid tables."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    has_sme = any(row.sme is not None for row in table)
    header = list(_REQUIRED) + (["sme"] if has_sme else [])
    writer.writerow(header)
    for row in table:
        record = [row.id, repr(row.effect), repr(row.se), repr(row.df)]
        if has_sme:
            record.append("" if row.sme is None else repr(row.sme))
        writer.writerow(record)
    return buf.getvalue().encode("utf-8")


def normalize_by_sme(table: StudyTable, default_sme: Optional[float] = None) -> StudyTable:
    """Scale each row by its smallest meaningful effect: effect'=effect/sme,
    se'=se/sme, sme'=1.  After normalization the meaningful range is [-1, 1].
    """
    if default_sme is not None and default_sme <= 0.0:
        raise ValueError("default_sme must be positive")
    rows = []
    for i, row in enumerate(table, start=2):
        sme = row.sme if row.sme is not None else default_sme
        if sme is None:
            raise ValueError(f"row {i}: missing sme and no default provided")
        rows.append(StudyRow(row.id, row.effect / sme, row.se / sme, row.df, 1.0))
    return StudyTable(rows)


NORMALIZED_RANGE = MeaningfulRange(-1.0, 1.0)


@dataclass(frozen=True)
class AnalysisConfig:
    """Complete analysis settings with the conventional defaults."""

    range: MeaningfulRange = field(default_factory=MeaningfulRange)
    ladder: AlphaLadder = field(default_factory=AlphaLadder)
    variant: Variant = Variant.NON_CLINICAL
    rule: EquivalenceRule = EquivalenceRule.MAX_P
    vocab: LabelVocabulary = DEFAULT_VOCABULARY
    viewport: Optional[Viewport] = None

    def effective_viewport(self) -> Viewport:
        return self.viewport if self.viewport is not None else default_viewport(self.range)

    def with_range(self, rng: MeaningfulRange) -> "AnalysisConfig":
        return replace(self, range=rng)


DEFAULT_CONFIG = AnalysisConfig()

_CONFIG_KEYS = {
    "theta1",
    "theta2",
    "alphas",
    "labels",
    "variant",
    "equivalence_rule",
    "vocabulary",
    "viewport",
}


def load_config(data) -> AnalysisConfig:
    """Build an AnalysisConfig from JSON bytes/str/dict, defaults filled in."""
    if isinstance(data, (bytes, str)):
        text = data.decode("utf-8") if isinstance(data, bytes) else data
        if not text.strip():
            doc = {}
        else:
            try:
                doc = json.loads(text)
            except json.JSONDecodeError as exc:
                raise ValueError(f"config is not valid JSON: {exc}") from None
    elif data is None:
        doc = {}
    else:
        doc = dict(data)
    if not isinstance(doc, dict):
        raise ValueError("config document must be a JSON object")
    unknown = set(doc) - _CONFIG_KEYS
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")

    theta1 = float(doc.get("theta1", DEFAULT_CONFIG.range.theta1))
    theta2 = float(doc.get("theta2", DEFAULT_CONFIG.range.theta2))
    rng = MeaningfulRange(theta1, theta2)

    alphas = doc.get("alphas")
    labels = doc.get("labels")
    if alphas is None:
        ladder = AlphaLadder(labels=tuple(labels)) if labels else AlphaLadder()
    else:
        ladder = AlphaLadder(tuple(alphas), tuple(labels) if labels else None)

    variant = Variant(doc.get("variant", DEFAULT_CONFIG.variant.value))
    rule = EquivalenceRule(doc.get("equivalence_rule", DEFAULT_CONFIG.rule.value))

    vocab_spec = doc.get("vocabulary", "default")
    if isinstance(vocab_spec, str):
        if vocab_spec not in VOCABULARY_PRESETS:
            raise ValueError(
                f"unknown vocabulary preset: {vocab_spec!r}; "
                f"expected one of {sorted(VOCABULARY_PRESETS)}"
            )
        vocab = VOCABULARY_PRESETS[vocab_spec]
    elif isinstance(vocab_spec, dict):
        vocab = LabelVocabulary(**vocab_spec)
    else:
        raise ValueError("vocabulary must be a preset name or an object")

    viewport_spec = doc.get("viewport")
    viewport = None
    if viewport_spec is not None:
        if not isinstance(viewport_spec, dict):
            raise ValueError("viewport must be an object")
        missing = {"effect_min", "effect_max", "se_max"} - set(viewport_spec)
        if missing:
            raise ValueError(f"viewport is missing keys: {sorted(missing)}")
        viewport = Viewport(
            float(viewport_spec["effect_min"]),
            float(viewport_spec["effect_max"]),
            float(viewport_spec["se_max"]),
        )
    return AnalysisConfig(rng, ladder, variant, rule, vocab, viewport)


def config_to_dict(config: AnalysisConfig) -> dict:
    """JSON-ready dictionary; load_config(config_to_dict(c)) == c."""
    doc = {
        "theta1": config.range.theta1,
        "theta2": config.range.theta2,
        "alphas": list(config.ladder.levels),
        "labels": list(config.ladder.labels),
        "variant": config.variant.value,
        "equivalence_rule": config.rule.value,
    }
    for name, preset in VOCABULARY_PRESETS.items():
        if config.vocab == preset:
            doc["vocabulary"] = name
            break
    else:
        doc["vocabulary"] = {
            "positive_word": config.vocab.positive_word,
            "negative_word": config.vocab.negative_word,
            "trivial_word": config.vocab.trivial_word,
            "beneficial_word": config.vocab.beneficial_word,
            "harmful_word": config.vocab.harmful_word,
            "possibly_template": config.vocab.possibly_template,
            "unclear_word": config.vocab.unclear_word,
        }
    if config.viewport is not None:
        doc["viewport"] = {
            "effect_min": config.viewport.effect_min,
            "effect_max": config.viewport.effect_max,
            "se_max": config.viewport.se_max,
        }
    return doc
