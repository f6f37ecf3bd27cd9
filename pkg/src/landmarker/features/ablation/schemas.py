"""Documents written by the ``ablation`` command."""

from pathlib import Path

from pydantic import BaseModel, Field

from src.landmarker.services.metrics.schemas import DomainMetrics
from src.landmarker.services.models.schemas import VariantKind


class AblationRow(BaseModel):
    """One variant: its size, parameter kinds and mixed-set accuracy."""

    variant: VariantKind
    checkpoint: Path
    params: int = Field(ge=0)
    parameter_type: str = Field(description="theta_d / theta_s kinds, output heads ignored")
    aggregate: DomainMetrics


class AblationReport(BaseModel):
    """Variant comparison over the same split of the same domains."""

    split: str
    domains: list[str]
    rows: list[AblationRow] = Field(min_length=1)

    def row(self, variant: VariantKind) -> AblationRow:
        for row in self.rows:
            if row.variant is variant:
                return row
        raise KeyError(variant.value)
