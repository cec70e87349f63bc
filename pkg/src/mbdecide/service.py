"""Stateless JSON-over-HTTP service exposing decisions, charts and rates.

Endpoints (all under /v1, responses are pure functions of request bodies):

* ``GET  /v1/defaults``     default analysis configuration
* ``POST /v1/decide``       study rows + config -> decisions with p-values
* ``POST /v1/regions``      config -> chart document (regions, overlays, legend)
* ``POST /v1/error-rates``  truth + config -> decision distribution or grid report

Malformed request shapes return 400 with field-level messages; documents
that parse but violate semantic constraints (a non-decreasing ladder,
theta1 >= theta2) return 422.
"""

from __future__ import annotations

from typing import List, Optional

import numpy as np
from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .chart import CHART_KINDS, build_chart
from .decision import decision_from_code
from .errorrates import (
    TruthModel,
    decision_distribution,
    monte_carlo_distribution,
    substantive_codes,
    type1_rate,
)
from .ingest import AnalysisConfig, StudyRow, StudyTable, config_to_dict, load_config


class RowIn(BaseModel):
    id: str
    effect: float
    se: float
    df: float = 18.0
    sme: Optional[float] = None


class DecideIn(BaseModel):
    rows: List[RowIn]
    config: Optional[dict] = None


class RegionsIn(BaseModel):
    config: Optional[dict] = None
    kind: str = "mbd"
    rows: List[RowIn] = Field(default_factory=list)
    df: float = 18.0


class SeGrid(BaseModel):
    min: float
    max: float
    points: int = 200


class ErrorRatesIn(BaseModel):
    config: Optional[dict] = None
    true_effect: float = 0.0
    df: float = 18.0
    se: Optional[float] = None
    se_grid: Optional[SeGrid] = None
    substantive: Optional[str] = None
    mc_draws: Optional[int] = Field(default=None, ge=1, le=20_000_000)
    seed: int = 0


def _config_from(doc: Optional[dict]) -> AnalysisConfig:
    try:
        return load_config(doc if doc is not None else {})
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from None


def _table_from(rows: List[RowIn]) -> StudyTable:
    try:
        return StudyTable(
            tuple(StudyRow(r.id, r.effect, r.se, r.df, r.sme) for r in rows)
        )
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from None


def _decisions_payload(table: StudyTable, config: AnalysisConfig) -> list:
    from .decision import decide_batch_pvalues
    from .hypotheses import level_index

    out = []
    if len(table) == 0:
        return out
    effects = np.array([r.effect for r in table])
    ses = np.array([r.se for r in table])
    dfs = np.array([r.df for r in table])
    codes, pmat = decide_batch_pvalues(
        effects, ses, dfs, config.range, config.ladder, config.variant, config.rule
    )
    for row, code, p in zip(table, codes, pmat):
        decision = decision_from_code(
            int(code), config.ladder.depth, config.variant, config.ladder, config.vocab
        )
        out.append(
            {
                "id": row.id,
                "p_values": {
                    "h1_minus": float(p[0]),
                    "h1_plus": float(p[1]),
                    "h2_minus": float(p[2]),
                    "h2_plus": float(p[3]),
                },
                "levels": {
                    "h1_minus": level_index(float(p[0]), config.ladder),
                    "h1_plus": level_index(float(p[1]), config.ladder),
                    "h2_minus": level_index(float(p[2]), config.ladder),
                    "h2_plus": level_index(float(p[3]), config.ladder),
                },
                "class_id": int(code),
                "range": decision.range,
                "level_index": decision.level_index,
                "label": decision.label,
                "clinical_annotation": decision.clinical_annotation,
            }
        )
    return out


def _distribution_payload(dist, config: AnalysisConfig) -> list:
    out = []
    for code in sorted(dist.code_prob):
        decision = decision_from_code(
            code, config.ladder.depth, config.variant, config.ladder, config.vocab
        )
        out.append(
            {
                "class_id": code,
                "label": decision.label,
                "range": decision.range,
                "level_index": decision.level_index,
                "clinical_annotation": decision.clinical_annotation,
                "probability": dist.code_prob[code],
            }
        )
    return out


def create_app(default_config: AnalysisConfig = None, static_dir: Optional[str] = None) -> FastAPI:
    """Application factory; configuration is immutable shared state."""
    defaults = default_config if default_config is not None else AnalysisConfig()
    app = FastAPI(title="magnitude-based decisions", version="0.1.0")

    @app.exception_handler(RequestValidationError)
    async def _shape_errors(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={
                "detail": [
                    {
                        "field": ".".join(str(p) for p in err.get("loc", ())),
                        "message": err.get("msg", "invalid"),
                    }
                    for err in exc.errors()
                ]
            },
        )

    @app.get("/v1/defaults")
    def get_defaults():
        return config_to_dict(defaults)

    @app.post("/v1/decide")
    def post_decide(body: DecideIn):
        config = _config_from(body.config) if body.config is not None else defaults
        table = _table_from(body.rows)
        return {"decisions": _decisions_payload(table, config)}

    @app.post("/v1/regions")
    def post_regions(body: RegionsIn):
        if body.kind not in CHART_KINDS:
            raise HTTPException(
                status_code=422, detail=f"unknown chart kind: {body.kind!r}"
            )
        if body.df <= 0:
            raise HTTPException(status_code=422, detail="df must be positive")
        config = _config_from(body.config) if body.config is not None else defaults
        table = _table_from(body.rows)
        return build_chart(table, config, body.kind, body.df)

    @app.post("/v1/error-rates")
    def post_error_rates(body: ErrorRatesIn):
        config = _config_from(body.config) if body.config is not None else defaults
        substantive = body.substantive
        if substantive is None:
            substantive = "likely-positive+"
        try:
            codes = substantive_codes(substantive, config.ladder.depth, config.variant)
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from None

        if (body.se is None) == (body.se_grid is None):
            raise HTTPException(
                status_code=422, detail="provide exactly one of se or se_grid"
            )
        try:
            if body.se is not None:
                truth = TruthModel(body.true_effect, body.se, body.df)
                dist = decision_distribution(
                    truth, config.range, config.ladder, config.variant, config.rule
                )
                payload = {
                    "distribution": _distribution_payload(dist, config),
                    "substantive": sorted(codes),
                    "substantive_rate": dist.total(codes),
                }
                if body.mc_draws:
                    mc = monte_carlo_distribution(
                        truth,
                        config.range,
                        config.ladder,
                        config.variant,
                        config.rule,
                        n_draws=body.mc_draws,
                        seed=body.seed,
                    )
                    payload["monte_carlo"] = _distribution_payload(mc, config)
                return payload
            grid = body.se_grid
            if grid.min <= 0 or grid.max <= grid.min or not 2 <= grid.points <= 2000:
                raise HTTPException(status_code=422, detail="invalid se grid")
            ses = np.geomspace(grid.min, grid.max, grid.points)
            rates = []
            for se in ses:
                truth = TruthModel(body.true_effect, float(se), body.df)
                rates.append(
                    type1_rate(
                        truth,
                        config.range,
                        config.ladder,
                        config.variant,
                        config.rule,
                        codes,
                    )
                )
            k = int(np.argmax(rates))
            return {
                "substantive": sorted(codes),
                "grid": [{"se": float(s), "rate": float(r)} for s, r in zip(ses, rates)],
                "max_rate": float(rates[k]),
                "argmax_se": float(ses[k]),
            }
        except HTTPException:
            raise
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from None

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")
    return app
