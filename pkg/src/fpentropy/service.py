"""HTTP service exposing the entropy computations.

Every computation the CLI offers is an endpoint here; the CLI talks to
this app over an in-process ASGI transport by default, so the service
contract is exercised even without a running server.

Error mapping: malformed request bodies are FastAPI 422s, domain
validation failures (bad parameters, oversized grids) are 400s, and
numerical failures surface as 500s carrying the failing component name.
"""

from __future__ import annotations

import math
from typing import Literal

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .bounds import kl_bound_report, smoothing_report
from .distributions import MultivariateGaussian, parse_distribution
from .entropy import (
    full_report,
    mvg_smooth_entropy,
    mvg_smooth_entropy_marginal_form,
)
from .errors import NumericalError
from .formats import FpFormat, build_grid
from .mc import mc_entropy
from .sweeps import SweepSpec, run_multi_sweep, sweep_csv_text

__all__ = ["create_app"]


class FormatParams(BaseModel):
    precision: int = Field(ge=1)
    exponent_bits: int = Field(ge=1)


class GridRequest(FormatParams):
    pass


class GridResponse(BaseModel):
    precision: int
    exponent_bits: int
    index: list[int]
    value: list[float]
    lower: list[float]
    upper: list[float]
    width: list[float]


class EntropyRequest(FormatParams):
    dist: str


class EntropyResponse(BaseModel):
    dist: str
    precision: int
    exponent_bits: int
    exact_bits: float
    approx_tilde_bits: float
    approx_smooth_bits: float
    closed_form_bits: float | None
    p_overflow: float
    p_underflow: float
    elapsed_s: float


class BoundsRequest(FormatParams):
    dist: str
    abs_tol: float = Field(default=1e-9, gt=0.0)


class KlBlock(BaseModel):
    kl_bits: float
    lower_bits: float
    upper_bits: float
    t_star: float
    one_peak_bits: float | None  # None when a bin's density ratio is unbounded
    unbounded_ratio_bins: list[int]


class SmoothingBlock(BaseModel):
    tilde_bits: float
    smooth_bits: float
    gap_bits: float
    epsilon_bits: float
    bound_bits: float
    holds: bool


class BoundsResponse(BaseModel):
    dist: str
    precision: int
    exponent_bits: int
    kl: KlBlock
    smoothing: SmoothingBlock


class McRequest(FormatParams):
    dist: str | None = None
    cov: list[list[float]] | None = None
    n_samples: int = Field(ge=1)
    seed: int = 0
    chunk_size: int = Field(default=1_000_000, ge=1)
    miller_madow: bool = True


class McResponse(BaseModel):
    dist: str
    precision: int
    exponent_bits: int
    n_samples: int
    n_zero_dropped: int
    seed: int
    chunk_size: int
    miller_madow: bool
    support_observed: int
    plug_in_bits: float
    estimate_bits: float
    std_error_bits: float


class SweepRequest(BaseModel):
    # the swept axis ignores its own fixed field, so bounds are mode-aware
    # and enforced by the sweep spec itself
    dists: list[str] = Field(min_length=1)
    mode: Literal["scale", "precision", "exponent"]
    precision: int = 0
    exponent_bits: int = 0
    lo: float
    hi: float
    num_points: int = 0


class SweepRowModel(BaseModel):
    dist: str
    swept_value: float
    exact_bits: float
    approx_tilde_bits: float
    approx_smooth_bits: float
    p_overflow: float
    p_underflow: float


class SweepResponse(BaseModel):
    rows: list[SweepRowModel]
    csv: str


class MvgRequest(FormatParams):
    cov: list[list[float]]


class MvgResponse(BaseModel):
    dim: int
    precision: int
    exponent_bits: int
    smooth_bits: float
    marginal_form_bits: float


def create_app() -> FastAPI:
    app = FastAPI(title="fpentropy", version="0.1.0")

    @app.exception_handler(NumericalError)
    async def numerical_error_handler(request: Request, exc: NumericalError):
        return JSONResponse(
            status_code=500,
            content={"component": exc.component, "message": str(exc)},
        )

    @app.exception_handler(ValueError)
    async def value_error_handler(request: Request, exc: ValueError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/healthz")
    async def healthz():
        return {"status": "ok", "version": app.version}

    @app.post("/grid", response_model=GridResponse)
    async def grid(req: GridRequest):
        g = build_grid(FpFormat(req.precision, req.exponent_bits))
        return GridResponse(
            precision=req.precision,
            exponent_bits=req.exponent_bits,
            index=list(range(len(g))),
            value=[float(v) for v in g.values],
            lower=[float(v) for v in g.lower],
            upper=[float(v) for v in g.upper],
            width=[float(v) for v in g.widths],
        )

    @app.post("/entropy", response_model=EntropyResponse)
    async def entropy(req: EntropyRequest):
        dist = parse_distribution(req.dist)
        fmt = FpFormat(req.precision, req.exponent_bits)
        rep = full_report(dist, fmt)
        return EntropyResponse(
            dist=rep.dist,
            precision=rep.precision,
            exponent_bits=rep.exponent_bits,
            exact_bits=rep.exact_bits,
            approx_tilde_bits=rep.approx_tilde_bits,
            approx_smooth_bits=rep.approx_smooth_bits,
            closed_form_bits=rep.closed_form_bits,
            p_overflow=rep.p_overflow,
            p_underflow=rep.p_underflow,
            elapsed_s=rep.elapsed_s,
        )

    @app.post("/bounds", response_model=BoundsResponse)
    async def bounds(req: BoundsRequest):
        dist = parse_distribution(req.dist)
        fmt = FpFormat(req.precision, req.exponent_bits)
        kl = kl_bound_report(dist, fmt, abs_tol=req.abs_tol)
        sm = smoothing_report(dist, fmt)
        return BoundsResponse(
            dist=kl.dist,
            precision=fmt.precision,
            exponent_bits=fmt.exponent_bits,
            kl=KlBlock(
                kl_bits=kl.kl_bits,
                lower_bits=kl.lower_bits,
                upper_bits=kl.upper_bits,
                t_star=kl.t_star,
                one_peak_bits=(
                    None if math.isinf(kl.one_peak_bits) else kl.one_peak_bits
                ),
                unbounded_ratio_bins=kl.unbounded_ratio_bins,
            ),
            smoothing=SmoothingBlock(
                tilde_bits=sm.tilde_bits,
                smooth_bits=sm.smooth_bits,
                gap_bits=sm.gap_bits,
                epsilon_bits=sm.epsilon_bits,
                bound_bits=sm.bound_bits,
                holds=sm.holds,
            ),
        )

    @app.post("/mc", response_model=McResponse)
    async def mc(req: McRequest):
        if (req.dist is None) == (req.cov is None):
            raise ValueError("provide exactly one of dist or cov")
        if req.cov is not None:
            target = MultivariateGaussian(np.asarray(req.cov))
        else:
            target = parse_distribution(req.dist)
        fmt = FpFormat(req.precision, req.exponent_bits)
        rep = mc_entropy(
            target,
            fmt,
            req.n_samples,
            seed=req.seed,
            chunk_size=req.chunk_size,
            miller_madow=req.miller_madow,
        )
        return McResponse(**rep.__dict__)

    @app.post("/sweep", response_model=SweepResponse)
    async def sweep(req: SweepRequest):
        specs = [
            SweepSpec(
                dist=d,
                mode=req.mode,
                precision=req.precision,
                exponent_bits=req.exponent_bits,
                lo=req.lo,
                hi=req.hi,
                num_points=req.num_points,
            )
            for d in req.dists
        ]
        result = run_multi_sweep(specs)
        return SweepResponse(
            rows=[SweepRowModel(**r._asdict()) for r in result.rows],
            csv=sweep_csv_text(result),
        )

    @app.post("/mvg", response_model=MvgResponse)
    async def mvg(req: MvgRequest):
        m = MultivariateGaussian(np.asarray(req.cov))
        fmt = FpFormat(req.precision, req.exponent_bits)
        return MvgResponse(
            dim=m.dim,
            precision=fmt.precision,
            exponent_bits=fmt.exponent_bits,
            smooth_bits=mvg_smooth_entropy(m, fmt),
            marginal_form_bits=mvg_smooth_entropy_marginal_form(m, fmt),
        )

    return app
