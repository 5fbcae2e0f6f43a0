"""
Run configuration: defaults < config file < ROBIN_* environment < flags.

The config file is a flat dotenv-style file, one `key=value` per line,
`#` starts a comment, lists are comma separated:

    # sweep.env
    alphas=-3,-2,-1
    radii=0.5,1,2
    truncation=60
    precision=10

Keys are the long flag names with '-' replaced by '_'.
"""

import math
import os
from enum import Enum
from typing import Any, Dict, List, Literal, Mapping, Optional

from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, field_validator

from backend.numerics import Numerics
from backend.radial_oracle.fem import PoincareKind
from backend.verifier.suites import SUITE_NAMES

SCHEMA_VERSION = "robin-exterior/1"
ENV_PREFIX = "ROBIN_"
LIST_KEYS = {"alphas", "radii", "truncations"}


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"


class OutputConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    format: OutputFormat = OutputFormat.JSON
    path: Optional[str] = None
    precision: int = Field(12, ge=1, le=17)


class _Params(BaseModel):
    model_config = ConfigDict(frozen=True, extra="ignore", allow_inf_nan=False)


class DiskEigenParams(_Params):
    alpha: float
    radius: PositiveFloat


class AlphaStarParams(_Params):
    radius: PositiveFloat


class SweepParams(_Params):
    alphas: List[float] = Field(min_length=1)
    radii: List[PositiveFloat] = Field(min_length=1)
    workers: int = Field(1, ge=1)


class OracleCompareParams(_Params):
    alpha: float
    radius: PositiveFloat


class PoincareParams(_Params):
    kind: PoincareKind
    b: float = Field(ge=0.0)
    alpha: Optional[float] = None


class VerifyParams(_Params):
    suite: str = "all"

    @field_validator("suite")
    @classmethod
    def _known_suite(cls, value: str) -> str:
        if value not in SUITE_NAMES:
            raise ValueError(f"unknown suite '{value}' (choose from {', '.join(SUITE_NAMES)})")
        return value


class GeometryParams(_Params):
    query: Literal["disk", "parallel", "comparison", "validate"]
    radius: Optional[PositiveFloat] = None
    perimeter: Optional[float] = None
    area: Optional[float] = None
    t: Optional[float] = Field(None, ge=0.0)


PARAMS = {
    "disk-eigen": DiskEigenParams,
    "alpha-star": AlphaStarParams,
    "sweep": SweepParams,
    "oracle-compare": OracleCompareParams,
    "poincare-check": PoincareParams,
    "verify": VerifyParams,
    "geometry": GeometryParams,
}


class RunConfig(BaseModel):
    """Fully resolved configuration, embedded in every artefact"""

    model_config = ConfigDict(frozen=True)

    schema_version: str = SCHEMA_VERSION
    subcommand: str
    parameters: Dict[str, Any]
    numerics: Numerics
    output: OutputConfig


def _normalize_key(key: str) -> str:
    return key.strip().lower().replace("-", "_")


def _split_list(value: Any) -> Any:
    if isinstance(value, str):
        return [item.strip() for item in value.split(",") if item.strip()]
    return value


def read_config_file(path: Optional[str]) -> Dict[str, Any]:
    if not path:
        return {}
    if not os.path.isfile(path):
        raise FileNotFoundError(f"config file not found: {path}")
    return {_normalize_key(k): v for k, v in dotenv_values(path).items() if v is not None}


def read_environment(environ: Optional[Mapping[str, str]] = None) -> Dict[str, Any]:
    environ = os.environ if environ is None else environ
    return {
        _normalize_key(key[len(ENV_PREFIX):]): value
        for key, value in environ.items()
        if key.startswith(ENV_PREFIX)
    }


def resolve(subcommand: str, flags: Mapping[str, Any], config_path: Optional[str] = None,
            environ: Optional[Mapping[str, str]] = None) -> RunConfig:
    """
    Merge all configuration layers and validate.

    Raises:
        pydantic.ValidationError: any field outside its documented range
    """
    merged: Dict[str, Any] = {}
    merged.update(read_config_file(config_path))
    merged.update(read_environment(environ))
    merged.update({_normalize_key(k): v for k, v in flags.items() if v is not None})
    for key in LIST_KEYS & merged.keys():
        merged[key] = _split_list(merged[key])

    numeric_keys = set(Numerics.model_fields)
    numerics = Numerics(**{k: v for k, v in merged.items() if k in numeric_keys})
    output = OutputConfig(
        format=merged.get("format", OutputFormat.JSON),
        path=merged.get("out"),
        precision=merged.get("precision", 12),
    )
    params = PARAMS[subcommand](**merged)
    return RunConfig(
        subcommand=subcommand,
        parameters=params.model_dump(mode="json"),
        numerics=numerics,
        output=output,
    )


def round_sig(value: float, precision: int) -> float:
    """Round to `precision` significant digits (shortest repr afterwards)"""
    if not math.isfinite(value):
        return value
    return float(format(value, f".{precision}g"))


def normalize(obj: Any, precision: int) -> Any:
    """Recursively round floats so equal configs give byte-identical output"""
    if isinstance(obj, float):
        return round_sig(obj, precision)
    if isinstance(obj, dict):
        return {k: normalize(v, precision) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [normalize(v, precision) for v in obj]
    return obj
