"""Pydantic request/response models for the HTTP service.

Field names and units match the config-file schema (ordinary Hz, SI).
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field, model_validator

from ..configio import config_from_dict, config_to_dict
from ..params import ChainConfig


class ResonatorModel(BaseModel):
    mass_kg: float = Field(gt=0)
    omega_m_hz: float = Field(gt=0)
    gamma_m_hz: float = Field(ge=0)
    omega_c_hz: float = Field(gt=0)
    kappa_in_hz: float = Field(ge=0)
    radius_m: float = Field(gt=0)
    refractive_index: float = Field(ge=1)
    dn_dlambda_per_m: float = 0.0
    spin_rate_hz: float = 0.0
    xi_hz_per_m: float = 0.0


class DriveModel(BaseModel):
    omega_l_hz: float = Field(gt=0)
    pump_power_w: float = Field(ge=0)
    probe_power_w: float = Field(ge=0)
    kappa_ex_hz: float = Field(gt=0)
    probe_direction: Literal["forward", "backward"] = "forward"
    pump_all: bool = True


class ChainModel(BaseModel):
    resonators: list[ResonatorModel] = Field(min_length=1)
    coupling_j_hz: list[float] = Field(default_factory=list)
    drive: DriveModel

    @model_validator(mode="after")
    def _check_couplings(self) -> "ChainModel":
        if len(self.coupling_j_hz) != len(self.resonators) - 1:
            raise ValueError(
                f"coupling_j_hz must have {len(self.resonators) - 1} entries "
                f"for {len(self.resonators)} resonators"
            )
        if any(j < 0 for j in self.coupling_j_hz):
            raise ValueError("couplings must be nonnegative")
        return self

    def to_config(self) -> ChainConfig:
        return config_from_dict(self.model_dump())

    @classmethod
    def from_config(cls, config: ChainConfig) -> "ChainModel":
        return cls.model_validate(config_to_dict(config))


class SpectrumRequest(BaseModel):
    config: ChainModel
    dp_min_hz: float
    dp_max_hz: float
    points: int = Field(ge=3)

    @model_validator(mode="after")
    def _check_range(self) -> "SpectrumRequest":
        if not self.dp_max_hz > self.dp_min_hz:
            raise ValueError("dp_max_hz must exceed dp_min_hz")
        return self


class SpectrumResponse(BaseModel):
    delta_p_hz: list[float]
    transmission: list[float]
    phase_rad: list[float]
    tau_g_s: list[float]
    meta: dict


class MetricsRequest(BaseModel):
    config: ChainModel
    delta_p_hz: float
    omega_min_hz: float = Field(ge=0)
    omega_max_hz: float
    points: int = Field(ge=2)
    mode: Literal["ef", "gd", "tau"]

    @model_validator(mode="after")
    def _check_range(self) -> "MetricsRequest":
        if not self.omega_max_hz > self.omega_min_hz:
            raise ValueError("omega_max_hz must exceed omega_min_hz")
        return self


class MetricsResponse(BaseModel):
    omega_hz: list[float]
    value: list[float]
    mode: str
    meta: dict


class CurvePayload(BaseModel):
    label: str
    columns: list[str]
    data: dict[str, list[float]]
    config: ChainModel


class ReproduceRequest(BaseModel):
    figure_id: str


class ReproduceResponse(BaseModel):
    figure_id: str
    kind: Literal["spectrum", "metrics"]
    description: str
    curves: list[CurvePayload]


class PresetInfo(BaseModel):
    figure_id: str
    kind: str
    description: str


class PresetsResponse(BaseModel):
    figures: list[PresetInfo]


class HealthResponse(BaseModel):
    status: str
    version: str
