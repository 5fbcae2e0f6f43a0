"""
Numerics - discretization and tolerance settings shared by the oracle,
the verifier, the CLI and the API.

Defaults: T=40, N=8000, grading 1.01, Dirichlet far end.
"""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field


class FarBC(str, Enum):
    DIRICHLET = "dirichlet"
    NEUMANN = "neumann"


class Numerics(BaseModel):
    """Discretization knobs and comparison tolerances"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    truncation: float = Field(40.0, ge=10.0)
    grid_points: int = Field(8000, ge=100)
    grading_ratio: float = Field(1.01, ge=1.0)
    far_bc: FarBC = FarBC.DIRICHLET

    # Near-threshold truncation growth (ground state decays like e^{-(ν+½)t})
    decay_target: float = Field(1e-7, gt=0.0, lt=1.0)
    max_truncation: float = Field(600.0, ge=10.0)
    max_grid_points: int = Field(50000, ge=100)

    oracle_tolerance: float = Field(5e-4, gt=0.0)
    closed_form_tolerance: float = Field(1e-10, gt=0.0)
    equivalence_tolerance: float = Field(1e-4, gt=0.0)
    groundstate_tolerance: float = Field(1e-6, gt=0.0)
    essential_gap: float = Field(1e-3, gt=0.0)

    quad_atol: float = Field(1e-12, gt=0.0)
    quad_rtol: float = Field(1e-10, gt=0.0)
    r_min: float = Field(1e-3, gt=0.0)
