"""Architecture hyperparameters and parameter accounting records."""

from enum import Enum

from pydantic import BaseModel, Field, field_validator, model_validator

from src.landmarker.services.data.schemas import DomainSpec
from src.landmarker.services.models.exceptions import UnknownDomainError


class VariantKind(str, Enum):
    """Architectures that can be built from a ModelConfig."""

    GU2NET = "gu2net"
    UNET = "unet"
    TRI_UNET = "tri_unet"
    LOCAL_ONLY = "local_only"
    GLOBAL_ONLY = "global_only"


class ArchitectureConfig(BaseModel):
    """
    Hyperparameters shared by every variant, independent of the domain list.

    The U-Net widths double per level starting at ``base_channels``; the global
    branch runs at ``1/global_downsample`` resolution with ``global_channels``
    feature maps per dilated layer.
    """

    depth: int = Field(default=4, ge=2)
    base_channels: int = Field(default=32, ge=4)
    leaky_slope: float = Field(default=0.01, ge=0.0)
    dilations: list[int] = Field(default_factory=lambda: [1, 2, 5, 2, 1], min_length=1)
    sigma: float = Field(default=3.0, gt=0.0)
    global_downsample: int = Field(default=4, ge=1)
    global_channels: int = Field(default=64, ge=1)

    @field_validator("dilations")
    @classmethod
    def _positive_dilations(cls, value: list[int]) -> list[int]:
        if any(d < 1 for d in value):
            raise ValueError(f"dilations must be >= 1, got {value}")
        return value


class ModelConfig(ArchitectureConfig):
    """Architecture hyperparameters plus the ordered domains the model serves."""

    domains: list[DomainSpec] = Field(min_length=1)

    @model_validator(mode="after")
    def _domains_consistent(self) -> "ModelConfig":
        ids = [d.domain_id for d in self.domains]
        if len(set(ids)) != len(ids):
            raise ValueError(f"domain ids must be unique, got {ids}")
        channels = {d.in_channels for d in self.domains}
        if len(channels) != 1:
            raise ValueError(f"all domains must share in_channels, got {sorted(channels)}")
        divisor = 2 ** (self.depth - 1)
        for domain in self.domains:
            height, width = domain.resize_to
            if height % divisor or width % divisor:
                raise ValueError(
                    f"domain '{domain.domain_id}' resize_to {domain.resize_to} must be "
                    f"divisible by 2^(depth-1) = {divisor}"
                )
            if height % self.global_downsample or width % self.global_downsample:
                raise ValueError(
                    f"domain '{domain.domain_id}' resize_to {domain.resize_to} must be "
                    f"divisible by global_downsample = {self.global_downsample}"
                )
        return self

    @property
    def num_domains(self) -> int:
        return len(self.domains)

    @property
    def domain_ids(self) -> list[str]:
        return [d.domain_id for d in self.domains]

    @property
    def in_channels(self) -> int:
        return self.domains[0].in_channels

    @property
    def widths(self) -> list[int]:
        return [self.base_channels * 2**level for level in range(self.depth)]

    def domain_index(self, domain_id: str) -> int:
        """Position of ``domain_id`` in the domain list."""
        try:
            return self.domain_ids.index(domain_id)
        except ValueError:
            raise UnknownDomainError(f"Unknown domain '{domain_id}'. Known: {self.domain_ids}") from None


class BlockAudit(BaseModel):
    """Convolution weight count of one separable block against 9NT + NM."""

    name: str
    in_channels: int
    out_channels: int
    num_domains: int
    conv_weights: int
    expected: int

    @property
    def ok(self) -> bool:
        return self.conv_weights == self.expected


class ParamCount(BaseModel):
    """Learnable scalars of a model partitioned into domain-specific and shared."""

    variant: VariantKind
    total: int
    domain_specific: int
    shared: int
    conv_weights: int = Field(description="Convolution kernel scalars, output heads excluded")
    head_weights: int = Field(description="Kernel scalars of the per-domain output heads")
    head_params: int = Field(default=0, description="All learnable scalars of the output heads")
    blocks: list[BlockAudit] = Field(default_factory=list)

    @property
    def parameter_type(self) -> str:
        """Table-style label: which kinds of parameters the model carries."""
        kinds = [
            label
            for label, count in (("theta_d", self.domain_specific), ("theta_s", self.shared))
            if count
        ]
        return ",".join(kinds)

    @property
    def backbone_type(self) -> str:
        """Like ``parameter_type`` but ignoring the per-domain output heads every variant has."""
        kinds = [
            label
            for label, count in (
                ("theta_d", self.domain_specific - self.head_params),
                ("theta_s", self.shared),
            )
            if count
        ]
        return ",".join(kinds)


class ParameterAudit(BaseModel):
    """Parameter counts of every variant for one config, plus any violated invariant."""

    num_domains: int
    counts: list[ParamCount]
    receptive_field: int
    violations: list[str] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def count(self, variant: VariantKind) -> ParamCount:
        for count in self.counts:
            if count.variant == variant:
                return count
        raise KeyError(variant)
