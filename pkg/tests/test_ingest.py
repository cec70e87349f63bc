"""CSV ingestion, SME normalization, configuration loading."""

from __future__ import annotations

from pathlib import Path

import pytest

from mbdecide.decision import EquivalenceRule, Variant, mbd_decide
from mbdecide.geometry import Viewport
from mbdecide.hypotheses import MeaningfulRange
from mbdecide.ingest import (
    NORMALIZED_RANGE,
    AnalysisConfig,
    CsvParseError,
    config_to_dict,
    load_config,
    normalize_by_sme,
    parse_study_csv,
    serialize_study_csv,
)

FIXTURE = Path(__file__).parent / "fixtures" / "block_training.csv"


class TestParseCsv:
    def test_header_only(self):
        table = parse_study_csv(b"id,effect,se,df\n")
        assert len(table) == 0

    def test_fixture_has_seven_rows(self):
        table = parse_study_csv(FIXTURE.read_bytes())
        assert len(table) == 7
        assert table.rows[0].id == "bench_press"
        assert table.rows[0].sme == pytest.approx(0.30)

    def test_crlf_and_optional_sme(self):
        table = parse_study_csv(b"id,effect,se,df\r\na,0.1,0.2,18\r\n")
        assert len(table) == 1
        assert table.rows[0].sme is None

    def test_nonpositive_se_names_row_and_column(self):
        data = b"id,effect,se,df\na,0.1,0.2,18\nb,0.2,0,18\n"
        with pytest.raises(CsvParseError, match="row 3: se must be positive"):
            parse_study_csv(data)

    def test_non_numeric_cell(self):
        with pytest.raises(CsvParseError, match="row 2: effect must be a number"):
            parse_study_csv(b"id,effect,se,df\na,abc,0.2,18\n")

    def test_missing_column(self):
        with pytest.raises(CsvParseError, match="missing column: se"):
            parse_study_csv(b"id,effect,df\na,0.1,18\n")

    def test_unexpected_column(self):
        with pytest.raises(CsvParseError, match="unexpected column"):
            parse_study_csv(b"id,effect,se,df,weight\na,0.1,0.2,18,3\n")

    def test_roundtrip_identity(self):
        table = parse_study_csv(FIXTURE.read_bytes())
        again = parse_study_csv(serialize_study_csv(table))
        assert again == table


class TestNormalize:
    def test_basic_arithmetic(self):
        table = parse_study_csv(b"id,effect,se,df,sme\na,0.3,0.2,18,0.2\n")
        norm = normalize_by_sme(table)
        assert norm.rows[0].effect == pytest.approx(1.5)
        assert norm.rows[0].se == pytest.approx(1.0)
        assert norm.rows[0].sme == 1.0

    def test_unit_sme_identity(self):
        table = parse_study_csv(b"id,effect,se,df,sme\na,0.3,0.2,18,1\n")
        norm = normalize_by_sme(table)
        assert norm.rows[0].effect == pytest.approx(0.3)
        assert norm.rows[0].se == pytest.approx(0.2)

    def test_per_row_sme(self):
        table = parse_study_csv(FIXTURE.read_bytes())
        norm = normalize_by_sme(table)
        assert norm.rows[0].effect == pytest.approx(1.6)
        assert norm.rows[2].effect == pytest.approx(0.9)

    def test_missing_sme_without_default(self):
        table = parse_study_csv(b"id,effect,se,df\na,0.1,0.2,18\n")
        with pytest.raises(ValueError, match="missing sme"):
            normalize_by_sme(table)

    def test_normalization_preserves_decisions(self):
        table = parse_study_csv(FIXTURE.read_bytes())
        norm = normalize_by_sme(table)
        for raw, scaled in zip(table, norm):
            rng_raw = MeaningfulRange(-raw.sme, raw.sme)
            before = mbd_decide(raw.summary(), rng=rng_raw)
            after = mbd_decide(scaled.summary(), rng=NORMALIZED_RANGE)
            assert before == after


class TestConfig:
    def test_empty_document_defaults(self):
        config = load_config(b"")
        assert config.range == MeaningfulRange(-0.2, 0.2)
        assert config.ladder.levels == (0.25, 0.05, 0.005)
        assert config.variant is Variant.NON_CLINICAL
        assert config.rule is EquivalenceRule.MAX_P

    def test_nondecreasing_ladder_rejected(self):
        with pytest.raises(ValueError, match="strictly decreasing"):
            load_config(b'{"alphas": [0.05, 0.25]}')

    def test_bad_range_rejected(self):
        with pytest.raises(ValueError, match="strictly less"):
            load_config(b'{"theta1": 0.2, "theta2": 0.2}')

    def test_variant_roundtrip(self):
        config = load_config(b'{"variant": "clinical"}')
        assert config.variant is Variant.CLINICAL
        assert load_config(config_to_dict(config)) == config

    def test_full_roundtrip(self):
        config = AnalysisConfig(
            range=MeaningfulRange(-0.5, 0.3),
            variant=Variant.CLINICAL,
            rule=EquivalenceRule.SUM_P,
            viewport=Viewport(-2.0, 2.0, 1.0),
        )
        assert load_config(config_to_dict(config)) == config

    def test_unknown_keys_rejected(self):
        with pytest.raises(ValueError, match="unknown config keys"):
            load_config(b'{"alpha": [0.25]}')

    def test_vocabulary_preset(self):
        config = load_config(b'{"vocabulary": "disambiguation"}')
        assert config.vocab.possibly_template == "{word} or trivial"
        with pytest.raises(ValueError, match="unknown vocabulary preset"):
            load_config(b'{"vocabulary": "shouty"}')
