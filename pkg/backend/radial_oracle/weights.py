"""
Weights on [0, ∞) of Steiner form  scale·(c·sinh t + cosh t).

    steiner(c)       c ≥ 0
    sinh_shift(b)    sinh(b+t)/sinh b = cosh t + coth b·sinh t
    cosh_shift(b)    cosh(b+t)/cosh b = cosh t + tanh b·sinh t
    exp_shift(b)     e^{b+t}/e^{b}    = cosh t + sinh t
"""

import math
from enum import Enum
from typing import Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


class WeightKind(str, Enum):
    STEINER = "steiner"
    SINH_SHIFT = "sinh_shift"
    COSH_SHIFT = "cosh_shift"
    EXP_SHIFT = "exp_shift"


class WeightSpec(BaseModel):
    """1D weight plus the factor multiplying α|ψ(0)|² (equal to w(0))"""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    kind: WeightKind
    param: float = 0.0
    scale: float = Field(1.0, gt=0.0)

    @model_validator(mode="after")
    def _check_param(self) -> "WeightSpec":
        if self.kind in (WeightKind.STEINER, WeightKind.COSH_SHIFT) and self.param < 0.0:
            raise ValueError(f"{self.kind.value} needs a nonnegative parameter")
        if self.kind in (WeightKind.SINH_SHIFT, WeightKind.EXP_SHIFT) and self.param <= 0.0:
            raise ValueError(f"{self.kind.value} needs a positive parameter")
        return self

    @classmethod
    def steiner(cls, c: float, scale: float = 1.0) -> "WeightSpec":
        return cls(kind=WeightKind.STEINER, param=c, scale=scale)

    @classmethod
    def sinh_shift(cls, b: float) -> "WeightSpec":
        return cls(kind=WeightKind.SINH_SHIFT, param=b)

    @classmethod
    def cosh_shift(cls, b: float) -> "WeightSpec":
        return cls(kind=WeightKind.COSH_SHIFT, param=b)

    @classmethod
    def exp_shift(cls, b: float) -> "WeightSpec":
        return cls(kind=WeightKind.EXP_SHIFT, param=b)

    @property
    def steiner_coefficient(self) -> float:
        if self.kind is WeightKind.STEINER:
            return self.param
        if self.kind is WeightKind.SINH_SHIFT:
            return 1.0 / math.tanh(self.param)
        if self.kind is WeightKind.COSH_SHIFT:
            return math.tanh(self.param)
        return 1.0

    @property
    def boundary_weight(self) -> float:
        return self.scale

    def scaled_value(self, t: np.ndarray, shift: np.ndarray) -> np.ndarray:
        """w(t)·e^{-shift}, finite for t and shift of any size"""
        c = self.steiner_coefficient
        return 0.5 * self.scale * ((1.0 + c) * np.exp(t - shift) + (1.0 - c) * np.exp(-t - shift))

    def __call__(self, t: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
        c = self.steiner_coefficient
        return self.scale * (c * np.sinh(t) + np.cosh(t))
