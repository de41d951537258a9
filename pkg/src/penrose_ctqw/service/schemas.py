"""Request and response bodies for the HTTP service."""

from __future__ import annotations

from pydantic import BaseModel, Field


class ModelParams(BaseModel):
    a: float = 1.0
    b: float = 0.0
    c: float = 0.0


class GenerateRequest(BaseModel):
    depth: int = Field(default=4, ge=0, le=8)


class LatticeSummary(BaseModel):
    depth: int
    n: int
    edges: int
    thin_diagonals: int
    fat_diagonals: int
    degree_histogram: dict[int, int]
    interior: int


class SpectrumRequest(ModelParams):
    depth: int = Field(default=4, ge=0, le=8)
    tol_eig: float | None = Field(default=None, gt=0)


class EfficiencyBody(BaseModel):
    n: int
    chi_bar: float
    d0: int
    d0_over_n: float
    d0_upper_bound: float
    alpha_sq_lta: float
    alpha_bar_series: list[tuple[float, float]] | None = None


class SpectrumResponse(BaseModel):
    depth: int
    n: int
    model: ModelParams
    tol: float
    eigenvalues: list[float]
    cluster_ids: list[int]
    report: EfficiencyBody


class EvolveRequest(ModelParams):
    depth: int = Field(default=4, ge=0, le=8)
    node: int | str = "max-degree"
    t: float = Field(default=1000.0, ge=0)
    tol_eig: float | None = Field(default=None, gt=0)


class EvolveResponse(BaseModel):
    depth: int
    node_id: int
    t: float
    xs: list[float]
    ys: list[float]
    probabilities: list[float]


class SeriesRequest(ModelParams):
    depth: int = Field(default=4, ge=0, le=8)
    node: int | str = "max-degree"
    t_max: float = Field(default=1000.0, gt=0)
    samples: int = Field(default=10_000, ge=2, le=2_000_000)
    tol_eig: float | None = Field(default=None, gt=0)


class SeriesResponse(BaseModel):
    depth: int
    node_id: int
    times: list[float]
    values: list[float]
    chi_jj: float
    bound_quartic: float
    bound_projector: float


class LtaRequest(ModelParams):
    depth: int = Field(default=4, ge=0, le=8)
    tol_eig: float | None = Field(default=None, gt=0)


class LtaResponse(BaseModel):
    depth: int
    n: int
    model: ModelParams
    xs: list[float]
    ys: list[float]
    degrees: list[int]
    chi_jj: list[float]
    bound_quartic: list[float]
    bound_projector: list[float]
    chi_bar: float


class TableRequest(BaseModel):
    depth: int = Field(default=4, ge=0, le=8)
    thresholds: list[float] = Field(
        default=[0.015, 0.030, 0.045, 0.060, 0.075, 0.090], min_length=1
    )
    models: list[ModelParams] | None = None
    tol_eig: float | None = Field(default=None, gt=0)


class TableResponse(BaseModel):
    depth: int
    n: int
    thresholds: list[float]
    models: list[ModelParams]
    proportions: list[list[float]]


class SweepRequest(BaseModel):
    depth: int = Field(default=4, ge=0, le=8)
    a: float = 1.0
    b_axis: list[float] | None = None
    c_axis: list[float] | None = None
    threads: int | None = Field(default=None, ge=1)
    tol_eig: float | None = Field(default=None, gt=0)


class SweepError(BaseModel):
    b: float
    c: float
    error: str


class SweepResponse(BaseModel):
    depth: int
    n: int
    a: float
    b_values: list[float]
    c_values: list[float]
    chi_bar: list[list[float | None]]
    errors: list[SweepError]


class VerifyStateRequest(ModelParams):
    depth: int = Field(default=4, ge=0, le=8)
    amplitudes: dict[int, float]


class VerifyStateResponse(BaseModel):
    depth: int
    residual: float
    threshold: float
    accepted: bool
    support: int
