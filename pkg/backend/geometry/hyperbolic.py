#!/usr/bin/env python3
"""
Hyperbolic Geometry - convex domains reduced to (perimeter, area)

Handles:
- Geodesic disk area/perimeter
- Steiner formula for outer parallel sets
- Averaged geodesic curvature (A + 2π)/L
- Threshold and comparison disk radii
- Isoperimetric admissibility of domain descriptors

Curvature is normalized to -1. Inverse hyperbolic functions use the
logarithmic forms
    arcoth c       = ½ log1p(2/(c - 1))
    arcosh(1 + y)  = log1p(y + sqrt(y(y + 2)))
    arsinh p       = log1p(p + p²/(1 + sqrt(1 + p²)))
which stay accurate when the argument is close to its branch point.
"""

import logging
import math
from typing import Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from backend.errors import DomainError, InputValidationError

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
DEFAULT_ISOPERIMETRIC_SLACK = 1e-12


class DomainSpec(BaseModel):
    """Bounded geodesically convex domain, known only through L and A.

    Construction accepts any finite pair so that validate_domain_spec can
    answer about it; every geometric operation rejects invalid specs.
    """

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    perimeter: float
    area: float


class DiskSpec(BaseModel):
    """Geodesic disk of radius R"""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    radius: float = Field(gt=0)


class DomainCheck(BaseModel):
    """Outcome of validate_domain_spec"""

    valid: bool
    deficit: float
    relative_deficit: float
    message: str


def _cosh_minus_one(r: float) -> float:
    return 2.0 * math.sinh(0.5 * r) ** 2


def arcoth(c: float) -> float:
    if c <= 1.0:
        raise DomainError(f"arcoth needs an argument > 1, got {c}")
    return 0.5 * math.log1p(2.0 / (c - 1.0))


def arcosh1p(y: float) -> float:
    """arcosh(1 + y) for y >= 0"""
    if y < 0.0:
        raise DomainError(f"arcosh(1 + y) needs y >= 0, got {y}")
    return math.log1p(y + math.sqrt(y * (y + 2.0)))


def arsinh(p: float) -> float:
    if p < 0.0:
        return -arsinh(-p)
    return math.log1p(p + p * p / (1.0 + math.sqrt(1.0 + p * p)))


def isoperimetric_deficit(spec: DomainSpec) -> float:
    """L² - A² - 4πA (zero for geodesic disks)"""
    L, A = spec.perimeter, spec.area
    return L * L - A * A - 2.0 * TWO_PI * A


def validate_domain_spec(spec: DomainSpec,
                         slack: float = DEFAULT_ISOPERIMETRIC_SLACK) -> DomainCheck:
    """
    Check positivity and the hyperbolic isoperimetric inequality.

    Args:
        spec: domain descriptor
        slack: relative tolerance on L² for the inequality

    Returns:
        DomainCheck with the deficit L² - A² - 4πA and its L²-normalized value
    """
    L, A = spec.perimeter, spec.area
    if L <= 0.0 or A <= 0.0:
        return DomainCheck(
            valid=False,
            deficit=float("nan"),
            relative_deficit=float("nan"),
            message=f"perimeter and area must be positive (L={L}, A={A})",
        )

    deficit = isoperimetric_deficit(spec)
    relative = deficit / (L * L)
    if relative < -slack:
        return DomainCheck(
            valid=False,
            deficit=deficit,
            relative_deficit=relative,
            message="violates L² ≥ A² + 4πA",
        )
    return DomainCheck(valid=True, deficit=deficit, relative_deficit=relative, message="ok")


def require_valid(spec: DomainSpec,
                  slack: float = DEFAULT_ISOPERIMETRIC_SLACK) -> DomainSpec:
    """Raise InputValidationError unless spec is admissible"""
    check = validate_domain_spec(spec, slack)
    if not check.valid:
        raise InputValidationError(
            f"invalid domain spec (L={spec.perimeter}, A={spec.area}): {check.message}"
        )
    return spec


def disk_geometry(R: Union[float, DiskSpec]) -> Tuple[float, float]:
    """
    Area and perimeter of a geodesic disk.

    Args:
        R: radius, or a DiskSpec

    Returns:
        (2π(cosh R - 1), 2π sinh R)

    Raises:
        DomainError: nonpositive or non-finite radius, or one whose area
            does not fit in a double (R beyond about 710)
    """
    if isinstance(R, DiskSpec):
        disk = R
    else:
        try:
            disk = DiskSpec(radius=R)
        except ValidationError as exc:
            raise DomainError(f"disk radius must be positive and finite, got {R}") from exc
    try:
        area = TWO_PI * _cosh_minus_one(disk.radius)
        perimeter = TWO_PI * math.sinh(disk.radius)
    except OverflowError:
        area = perimeter = math.inf
    if not math.isfinite(area):
        raise DomainError(f"disk radius {disk.radius:g} too large: area overflows")
    return area, perimeter


def disk_spec(R: Union[float, DiskSpec]) -> DomainSpec:
    area, perimeter = disk_geometry(R)
    return DomainSpec(perimeter=perimeter, area=area)


def parallel_perimeter(spec: DomainSpec,
                       t: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """
    Perimeter of the outer parallel set at distance t (Steiner formula).

    Args:
        spec: valid domain descriptor
        t: distance(s) >= 0

    Returns:
        cosh(t)·L + sinh(t)·(2π + A), same shape as t
    """
    require_valid(spec)
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0.0):
        raise DomainError("parallel distance must be nonnegative")
    with np.errstate(over="ignore"):
        value = np.cosh(t_arr) * spec.perimeter + np.sinh(t_arr) * (TWO_PI + spec.area)
    if not np.all(np.isfinite(value)):
        raise DomainError("parallel perimeter overflows a double at this distance")
    if np.ndim(t) == 0:
        return float(value)
    return value


def avg_curvature(spec: DomainSpec) -> float:
    """Averaged geodesic curvature (A + 2π)/L; equals coth R for a disk"""
    require_valid(spec)
    return (spec.area + TWO_PI) / spec.perimeter


def matching_disk_radius(spec: DomainSpec) -> Optional[float]:
    """
    Largest radius R with coth R ≥ avg_curvature(spec).

    Returns:
        arcoth(c_Ω) when c_Ω > 1, otherwise None (every R > 0 qualifies)
    """
    c = avg_curvature(spec)
    if c <= 1.0:
        logger.debug("avg curvature %.6g <= 1: every radius is admissible", c)
        return None
    return arcoth(c)


def comparison_disks(spec: DomainSpec) -> Tuple[float, float]:
    """
    Radii of the disks with the same area and the same perimeter.

    Returns:
        (R_area, R_perimeter) with R_area ≤ R_perimeter
    """
    require_valid(spec)
    r_area = arcosh1p(spec.area / TWO_PI)
    r_perimeter = arsinh(spec.perimeter / TWO_PI)
    # Equality case can flip by an ulp through the two inverse functions
    if r_area > r_perimeter and r_area - r_perimeter <= 1e-12 * r_perimeter:
        r_area = r_perimeter
    return r_area, r_perimeter


if __name__ == "__main__":
    print("📐 Hyperbolic Geometry")
    print("=" * 50)
    area, perimeter = disk_geometry(1.0)
    print(f"✓ Disk R=1: area={area:.6f}, perimeter={perimeter:.6f}")
    spec = DomainSpec(perimeter=10.0, area=3.0)
    print(f"✓ (L=10, A=3): c_Ω={avg_curvature(spec):.6f}, "
          f"threshold={matching_disk_radius(spec)}")
    r_a, r_p = comparison_disks(spec)
    print(f"✓ Comparison disks: R_area={r_a:.6f}, R_perimeter={r_p:.6f}")
