"""Read-only HTTP service over the scoring, what-if, matrix and optimizer operations.

The taxonomy is loaded once at startup and shared immutably across requests;
portfolios travel in request bodies, so the service is stateless.  Domain
errors map to 422 with a machine-readable body, never to 5xx.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, Query
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .errors import LangqError
from .matrix import PairCorrelation, matrix_lq
from .measure import ExponentPolicy, lq, parse_policy, suggest_next
from .optimize import optimize_bundle, problem_from_dict
from .taxonomy import Portfolio, TaxonomyTree, list_languages, load_taxonomy

PLACES = 4  # external score precision


@dataclass(frozen=True)
class ApiConfig:
    taxonomy_path: str | Path
    listen_port: int = 8000
    host: str = "127.0.0.1"
    default_policy: str = "sqrt"
    cors_origins: tuple[str, ...] = ("*",)


class PortfolioBody(BaseModel):
    languages: dict[str, float]


class LqRequest(BaseModel):
    portfolio: PortfolioBody
    policy: str | None = None


class WhatIfAddition(BaseModel):
    language: str
    proficiency: float


class WhatIfRequest(BaseModel):
    portfolio: PortfolioBody
    add: WhatIfAddition
    policy: str | None = None


class SuggestRequest(BaseModel):
    portfolio: PortfolioBody
    top_k: int = Field(default=5, ge=1)
    policy: str | None = None


class MatrixRequest(BaseModel):
    rho: float
    r: float = 1.0


class OptimizeRequest(BaseModel):
    problem: dict


def _round(value: float) -> float:
    return round(value, PLACES)


def create_app(config: ApiConfig) -> FastAPI:
    tree: TaxonomyTree = load_taxonomy(config.taxonomy_path)
    default_policy = parse_policy(config.default_policy)
    app = FastAPI(title="langq", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(config.cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(LangqError)
    async def domain_error(request, exc: LangqError):
        body = {"error": exc.code, "message": str(exc)}
        language = getattr(exc, "language", None)
        if language is not None:
            body["language"] = language
        return JSONResponse(status_code=422, content=body)

    def pick_policy(name: str | None) -> ExponentPolicy:
        return parse_policy(name) if name else default_policy

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.get("/taxonomy")
    def taxonomy():
        return tree.to_dict()

    @app.get("/languages")
    def languages(q: str | None = Query(default=None)):
        return [
            {"name": name, "path": list(path)} for name, path in list_languages(tree, q)
        ]

    @app.post("/lq")
    def score(req: LqRequest):
        policy = pick_policy(req.policy)
        breakdown = lq(tree, Portfolio(req.portfolio.languages), policy)
        return {
            "score": _round(breakdown.score),
            "policy": policy.name,
            "breakdown": [
                {"node": name, "depth": depth, "lambda": _round(value)}
                for name, depth, value in breakdown.rows()
            ],
        }

    @app.post("/whatif")
    def whatif(req: WhatIfRequest):
        policy = pick_policy(req.policy)
        base = Portfolio(req.portfolio.languages)
        tree.resolve_leaf(req.add.language)
        extended = base.add(req.add.language, req.add.proficiency)
        base_score = lq(tree, base, policy).score
        new_score = lq(tree, extended, policy).score
        return {
            "base": _round(base_score),
            "new": _round(new_score),
            "gain": _round(new_score - base_score),
        }

    @app.post("/suggest")
    def suggest(req: SuggestRequest):
        policy = pick_policy(req.policy)
        ranked = suggest_next(tree, Portfolio(req.portfolio.languages), req.top_k, policy)
        return [{"language": name, "gain": _round(gain)} for name, gain in ranked]

    @app.post("/matrix")
    def matrix(req: MatrixRequest):
        return {"score": _round(matrix_lq(PairCorrelation(req.rho, req.r)))}

    @app.post("/optimize")
    def optimize(req: OptimizeRequest):
        problem = problem_from_dict(req.problem)
        solution = optimize_bundle(tree, problem)
        body = solution.to_dict()
        body["total_cost"] = _round(body["total_cost"])
        body["per_member_cost"] = [_round(c) for c in body["per_member_cost"]]
        return body

    return app


def serve(config: ApiConfig) -> None:
    """Run the service until interrupted; startup failures exit nonzero."""
    import uvicorn

    app = create_app(config)
    uvicorn.run(app, host=config.host, port=config.listen_port)
