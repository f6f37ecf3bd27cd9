"""Metric report documents."""

from enum import Enum

from pydantic import BaseModel, Field, field_validator


class MetricUnit(str, Enum):
    MM = "mm"
    PX = "px"


class MetricSpace(str, Enum):
    """Pixel grid distances were measured on."""

    NATIVE = "native"
    RESIZED = "resized"


class DomainMetrics(BaseModel):
    """MRE, population STD and SDR for one domain (or the mixed set)."""

    domain_id: str
    unit: MetricUnit
    space: MetricSpace
    mre: float = Field(ge=0.0)
    std: float = Field(ge=0.0)
    sdr: dict[float, float] = Field(description="Threshold -> % of errors <= threshold")
    n_images: int = Field(ge=0)
    n_landmarks: int = Field(ge=0, description="Landmarks per image")
    n_errors: int = Field(ge=1)

    @field_validator("sdr")
    @classmethod
    def _sdr_range(cls, value: dict[float, float]) -> dict[float, float]:
        for threshold, rate in value.items():
            if not 0.0 <= rate <= 100.0:
                raise ValueError(f"SDR at {threshold} must lie in [0, 100], got {rate}")
        return dict(sorted(value.items()))


class MetricsReport(BaseModel):
    """Per-domain metrics plus the aggregate over every evaluated image."""

    checkpoint: str | None = None
    variant: str | None = None
    split: str = "test"
    domains: list[DomainMetrics]
    aggregate: DomainMetrics | None = None

    def domain(self, domain_id: str) -> DomainMetrics:
        for metrics in self.domains:
            if metrics.domain_id == domain_id:
                return metrics
        raise KeyError(domain_id)
