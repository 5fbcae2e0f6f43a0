#!/usr/bin/env python3
"""
FastAPI Web Interface - Robin Exterior Toolkit

Endpoints:
- GET /health - Health check
- GET /disk/eigen - Lowest spectral point for (alpha, radius)
- GET /disk/alpha-star - Critical parameter and bounds for a radius
- GET /geometry/disk - Area and perimeter of a geodesic disk
- POST /geometry/domain - Curvature, comparison radii, parallel perimeter of (L, A)
- POST /oracle/compare - Closed form vs FEM oracle
- POST /verify/{suite} - Run a verification suite
"""

import sys
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field, ValidationError

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from backend.cli.config import SCHEMA_VERSION  # noqa: E402
from backend.disk_solver.solver import (  # noqa: E402
    DiskSolver,
    SpectralKind,
    alpha_star_elliptic,
    alpha_star_sharp_bound,
    alpha_star_upper_bound,
)
from backend.errors import (  # noqa: E402
    AccuracyError,
    DomainError,
    InputValidationError,
    SolverError,
)
from backend.geometry.hyperbolic import (  # noqa: E402
    DomainSpec,
    avg_curvature,
    comparison_disks,
    disk_geometry,
    matching_disk_radius,
    parallel_perimeter,
    validate_domain_spec,
)
from backend.numerics import Numerics  # noqa: E402
from backend.radial_oracle.fem import RadialProblem, adapt_numerics, solve  # noqa: E402
from backend.radial_oracle.weights import WeightSpec  # noqa: E402
from backend.verifier.suites import SUITE_NAMES, run_suite  # noqa: E402


# Initialize FastAPI app
app = FastAPI(
    title="Robin Exterior Toolkit API",
    description="Lowest Robin eigenvalue outside hyperbolic disks, with verification suites",
    version="0.2.0"
)

solver = DiskSolver()


class DomainRequest(BaseModel):
    perimeter: float
    area: float
    t: float = Field(0.0, ge=0.0)


class CompareRequest(BaseModel):
    alpha: float
    radius: float = Field(gt=0.0)
    numerics: Numerics = Field(default_factory=Numerics)


class VerifyRequest(BaseModel):
    numerics: Numerics = Field(default_factory=Numerics)


def _raise_http(exc: Exception):
    """Map toolkit errors to HTTP status codes"""
    if isinstance(exc, (DomainError, InputValidationError, ValidationError)):
        raise HTTPException(status_code=400, detail=str(exc))
    if isinstance(exc, (AccuracyError, SolverError)):
        raise HTTPException(status_code=500, detail=str(exc))
    raise exc


@app.get("/health")
async def health():
    """Health check endpoint"""
    return {
        "status": "ok",
        "schema_version": SCHEMA_VERSION,
        "suites": SUITE_NAMES,
    }


@app.get("/disk/eigen")
def disk_eigen(alpha: float, radius: float):
    """Lowest spectral point of the exterior disk problem"""
    try:
        return solver.lambda1(alpha, radius).as_dict()
    except Exception as e:
        _raise_http(e)


@app.get("/disk/alpha-star")
def disk_alpha_star(radius: float):
    """Critical parameter with its closed-form cross-check and bounds"""
    try:
        return {
            "radius": radius,
            "alpha_star": solver.alpha_star(radius),
            "alpha_star_elliptic": alpha_star_elliptic(radius),
            "sharp_bound": alpha_star_sharp_bound(radius),
            "upper_bound": alpha_star_upper_bound(radius),
        }
    except Exception as e:
        _raise_http(e)


@app.get("/geometry/disk")
def geometry_disk(radius: float):
    try:
        area, perimeter = disk_geometry(radius)
        return {"radius": radius, "area": area, "perimeter": perimeter}
    except Exception as e:
        _raise_http(e)


@app.post("/geometry/domain")
def geometry_domain(request: DomainRequest):
    """Admissibility, averaged curvature and comparison disks of (L, A)"""
    spec = DomainSpec(perimeter=request.perimeter, area=request.area)
    check = validate_domain_spec(spec)
    if not check.valid:
        raise HTTPException(status_code=400, detail=check.message)
    try:
        r_area, r_perimeter = comparison_disks(spec)
        return {
            "valid": True,
            "relative_deficit": check.relative_deficit,
            "avg_curvature": avg_curvature(spec),
            "matching_radius": matching_disk_radius(spec),
            "R_area": r_area,
            "R_perimeter": r_perimeter,
            "parallel_perimeter": parallel_perimeter(spec, request.t),
        }
    except Exception as e:
        _raise_http(e)


@app.post("/oracle/compare")
def oracle_compare(request: CompareRequest):
    """Closed-form value against the FEM oracle on the same disk"""
    try:
        disk_solver = DiskSolver.from_numerics(request.numerics)
        closed = disk_solver.lambda1(request.alpha, request.radius)
        numerics = request.numerics
        if closed.kind is SpectralKind.DISCRETE:
            numerics = adapt_numerics(numerics, closed.nu)
        oracle = solve(RadialProblem.from_numerics(
            WeightSpec.sinh_shift(request.radius), request.alpha, numerics))
        return {
            "closed_form": closed.as_dict(),
            "oracle": oracle.model_dump(mode="json"),
            "abs_diff": abs(oracle.value - closed.lambda_),
        }
    except Exception as e:
        _raise_http(e)


@app.post("/verify/{suite}")
def verify(suite: str, request: Optional[VerifyRequest] = None):
    """Run a verification suite and return its reports"""
    if suite not in SUITE_NAMES:
        raise HTTPException(status_code=404, detail=f"Unknown suite '{suite}'")
    request = request or VerifyRequest()
    try:
        reports = run_suite(suite, request.numerics, progress=False)
    except Exception as e:
        _raise_http(e)
    return {
        "schema_version": SCHEMA_VERSION,
        "checks": [r.model_dump(mode="json", by_alias=True) for r in reports],
        "pass": all(r.passed for r in reports),
    }


if __name__ == "__main__":
    import uvicorn

    print("📐 Robin Exterior Toolkit API")
    print("=" * 50)
    print("Starting server...")
    print("Open http://localhost:8000/docs in your browser")
    print()

    uvicorn.run(app, host="0.0.0.0", port=8000, log_level="info")
