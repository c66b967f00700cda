"""Pydantic models for the machine-readable reports written by the CLI."""

from pydantic import BaseModel, ConfigDict, Field


class ReportModel(BaseModel):
    """Base for reports; infinities serialize as ``Infinity``."""

    model_config = ConfigDict(ser_json_inf_nan="constants")


class ValidityReport(ReportModel):
    """Bound constant, validity radius and diffeomorphism check for one width."""

    geometry: str
    epsilon: float
    kappa_sup: float
    gauss_sup: float
    c_eps: float | None = Field(description="None when eps^2 ||K|| >= 2")
    eps_tilde: float
    c_eps_monotone: bool
    min_f: float | None = None
    max_f: float | None = None
    valid: bool


class AsymptoticRate(ReportModel):
    """Sup norms of one f-derivative across widths with its fitted log-log slope."""

    observable: str
    expected_order: int
    epsilons: list[float]
    sup_norms: list[float]
    slope: float | None
    degenerate: bool
    within_bound: bool | None = None


class UniformClassReport(ReportModel):
    """Left-hand side of the uniform-class bound sampled on (0, L) x (-eps, eps)."""

    geometry: str
    length: float
    epsilon: float
    bound: float


class ExtremaReport(ReportModel):
    """Location verdicts for the n-th eigenfunction at one width.

    Nodes are ``(s_index, t_index)`` pairs.
    """

    n: int
    epsilon: float
    delta: float
    max_value: float
    min_value: float
    max_nodes: list[tuple[int, int]]
    min_nodes: list[tuple[int, int]]
    stationary_nodes: list[tuple[int, int]]
    forbidden_extrema: list[tuple[int, int]]
    verdict_max: bool
    verdict_min: bool
    verdict_stationary: bool
    verdict_forbidden: bool
    boundary_verdict: bool | None = Field(
        default=None, description="Hot-spots check, only evaluated for n = 2"
    )

    @property
    def passed(self) -> bool:
        verdicts = [
            self.verdict_max,
            self.verdict_min,
            self.verdict_stationary,
            self.verdict_forbidden,
        ]
        if self.boundary_verdict is not None:
            verdicts.append(self.boundary_verdict)
        return all(verdicts)


class LocationStudy(ReportModel):
    """Extrema reports for one mode across the configured widths."""

    geometry: str
    n: int
    reports: list[ExtremaReport]
    onset_epsilon: float | None = Field(
        default=None,
        description="Largest width from which every smaller width passes",
    )

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)


class ConvergencePoint(ReportModel):
    epsilon: float
    error: float
    n_s: int


class ConvergenceReport(ReportModel):
    """Error table and least-squares log-log fit for one observable."""

    observable: str
    geometry: str
    n: int
    reference: str
    points: list[ConvergencePoint]
    status: str = Field(description="'fitted' or 'exact, fit skipped'")
    slope: float | None = None
    intercept: float | None = None
    fit_residual: float | None = None
    floor_warning: bool = False
    min_slope: float = 0.9

    @property
    def verdict(self) -> bool:
        if self.slope is None:
            return True
        return self.slope >= self.min_slope


class GeometryValidation(ReportModel):
    """Everything the ``validate`` command reports for one geometry."""

    run_id: str
    geometry: str
    reports: list[ValidityReport]
    uniform_class: UniformClassReport | None = None
    asymptotics: list[AsymptoticRate] = Field(default_factory=list)

    @property
    def valid(self) -> bool:
        return all(r.valid for r in self.reports)
