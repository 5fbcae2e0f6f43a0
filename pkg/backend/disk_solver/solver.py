#!/usr/bin/env python3
"""
Disk Solver - (α, R) -> lowest spectral point of the exterior Robin problem

The radial ground state outside B_R is y(r) = Q_ν(cosh r) with
k = -ν(ν+1). The Robin condition y'(R) = α y(R) and the recurrence for
Q_ν' give the boundary equation

    α(ν, R) = (ν+1)·[Q_{ν+1}(cosh R)/(sinh R·Q_ν(cosh R)) - coth R]

A discrete eigenvalue exists iff α < α⋆(R) = α(-½, R); otherwise the
lowest spectral point is the essential-spectrum bottom ¼.
"""

import logging
import math
from enum import Enum
from typing import List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy.optimize import brentq
from scipy.special import ellipe, ellipk

from backend.errors import DomainError, SolverError
from backend.numerics import Numerics
from backend.specfun.legendre import LegendreQ, default_context

logger = logging.getLogger(__name__)

ESSENTIAL_BOTTOM = 0.25
R_MIN = 1e-3
THRESHOLD_CONVENTION = "alpha_star_is_essential"


class SpectralKind(str, Enum):
    DISCRETE = "discrete_eigenvalue"
    ESSENTIAL = "essential_bottom"


class SpectralResult(BaseModel):
    """Lowest spectral point of the exterior disk problem"""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    lambda_: float = Field(alias="lambda")
    nu: Optional[float] = None
    kind: SpectralKind
    residual: float = Field(default=0.0, ge=0.0)
    threshold_convention: Optional[str] = None

    @model_validator(mode="after")
    def _check_kind(self) -> "SpectralResult":
        if self.kind is SpectralKind.ESSENTIAL:
            if self.lambda_ != ESSENTIAL_BOTTOM or self.nu is not None:
                raise ValueError("essential_bottom requires lambda = 1/4 and no degree")
        else:
            if self.nu is None or not self.nu > -0.5:
                raise ValueError("discrete eigenvalue requires nu > -1/2")
            if not self.lambda_ < ESSENTIAL_BOTTOM:
                raise ValueError("discrete eigenvalue must lie below 1/4")
            expected = -self.nu * (self.nu + 1.0)
            if abs(self.lambda_ - expected) > 1e-12 * max(1.0, abs(expected)):
                raise ValueError("lambda and nu violate lambda = -nu(nu+1)")
        return self

    def as_dict(self) -> dict:
        return self.model_dump(by_alias=True, mode="json")


def nu_from_lambda(lam: float) -> float:
    """ν = (-1 + √(1 - 4λ))/2 for λ ≤ ¼"""
    if lam > ESSENTIAL_BOTTOM:
        raise DomainError(f"no real degree for lambda > 1/4 (got {lam})")
    return 0.5 * (-1.0 + math.sqrt(1.0 - 4.0 * lam))


def lambda_from_nu(nu: float) -> float:
    """-ν(ν+1), written as ¼ - (ν+½)²"""
    return ESSENTIAL_BOTTOM - (nu + 0.5) ** 2


def alpha_star_upper_bound(R: float) -> float:
    """½(e^{-R} - coth R); tends to -∞ as R -> 0 and to -½ as R -> ∞"""
    if not R > 0.0:
        raise DomainError(f"radius must be positive, got {R}")
    return 0.5 * (math.exp(-R) - 1.0 / math.tanh(R))


def alpha_star_sharp_bound(R: float) -> float:
    """Uniform bound α⋆(R) ≤ -½ implied by Q_{ν+1}/Q_ν ≤ e^{-R}"""
    if not R > 0.0:
        raise DomainError(f"radius must be positive, got {R}")
    return -0.5


def alpha_star_elliptic(R: float) -> float:
    """
    α⋆(R) through complete elliptic integrals.

    Q_{-½} and Q_{½} reduce to K and E with parameter m = sech²(R/2),
    giving α⋆ = -E(m) / (2 tanh(R/2) K(m)).
    """
    if not R > 0.0:
        raise DomainError(f"radius must be positive, got {R}")
    q = math.exp(-R)
    m = 4.0 * q / (1.0 + q) ** 2
    return -float(ellipe(m)) / (2.0 * math.tanh(0.5 * R) * float(ellipk(m)))


class DiskSolver:
    """Closed-form solver for the exterior of a geodesic disk"""

    def __init__(self, context: Optional[LegendreQ] = None, r_min: float = R_MIN,
                 tie_tol: float = 1e-12, xtol: float = 1e-13, max_doublings: int = 64):
        self.context = context or default_context()
        self.r_min = r_min
        self.tie_tol = tie_tol
        self.xtol = xtol
        self.max_doublings = max_doublings

    @classmethod
    def from_numerics(cls, numerics: Numerics) -> "DiskSolver":
        context = LegendreQ(atol=numerics.quad_atol, rtol=numerics.quad_rtol)
        return cls(context=context, r_min=numerics.r_min)

    def _check_radius(self, R: float) -> float:
        R = float(R)
        if not math.isfinite(R) or R < self.r_min:
            raise DomainError(f"radius must be finite and >= {self.r_min:g}, got {R}")
        return R

    def alpha_of_nu(self, nu: float, R: float) -> float:
        """
        Robin parameter whose ground state has degree ν.

        Args:
            nu: degree, ≥ -½ (-½ gives α⋆)
            R: disk radius, ≥ r_min

        Returns:
            (ν+1)(Q_{ν+1}/(sinh R·Q_ν) - coth R), always ≤ -(ν+1)
        """
        R = self._check_radius(R)
        if not nu >= -0.5:
            raise DomainError(f"degree must satisfy nu >= -1/2, got {nu}")
        ratio = float(self.context.ratio_theta(nu, R))
        inv_sinh = 2.0 * math.exp(-R) / -math.expm1(-2.0 * R)
        return (nu + 1.0) * (ratio * inv_sinh - 1.0 / math.tanh(R))

    def alpha_star(self, R: float) -> float:
        return self.alpha_of_nu(-0.5, R)

    def lambda1(self, alpha: float, R: float) -> SpectralResult:
        """
        Lowest spectral point for Robin parameter α outside B_R.

        Returns:
            SpectralResult; essential_bottom when α ≥ α⋆(R) - tie_tol
        """
        alpha = float(alpha)
        if not math.isfinite(alpha):
            raise DomainError(f"alpha must be finite, got {alpha}")
        R = self._check_radius(R)
        a_star = self.alpha_star(R)
        if alpha >= a_star - self.tie_tol:
            return self._essential()

        def gap(nu: float) -> float:
            return self.alpha_of_nu(nu, R) - alpha

        lo, hi = -0.5, 1.0
        g_hi = gap(hi)
        doublings = 0
        while g_hi > 0.0:
            if doublings >= self.max_doublings:
                raise SolverError(
                    f"no sign change for alpha={alpha} at R={R} after {doublings} doublings",
                    bracket=(lo, hi),
                )
            lo, hi = hi, 2.0 * hi
            g_hi = gap(hi)
            doublings += 1
        logger.debug("bracket [%g, %g] after %d doublings (alpha=%g, R=%g)",
                     lo, hi, doublings, alpha, R)

        nu, info = brentq(gap, lo, hi, xtol=self.xtol, full_output=True)
        if not info.converged:
            raise SolverError(f"brentq failed: {info.flag}", bracket=(lo, hi))

        lam = lambda_from_nu(nu)
        if not lam < ESSENTIAL_BOTTOM or not nu > -0.5:
            logger.debug("root at nu=%r is indistinguishable from the threshold", nu)
            return self._essential()
        return SpectralResult(
            lambda_=lam,
            nu=nu,
            kind=SpectralKind.DISCRETE,
            residual=abs(gap(nu)),
        )

    def alpha_slope_samples(self, R: float,
                            nus: Sequence[float]) -> Tuple[List[Tuple[float, float]], List[int]]:
        """
        Sample α(ν, R) on increasing ν and flag non-decreasing steps.

        Returns:
            ([(ν, α), ...], indices i where α_{i+1} ≥ α_i)
        """
        nus = sorted(float(v) for v in nus)
        samples = [(nu, self.alpha_of_nu(nu, R)) for nu in nus]
        violations = [i for i in range(len(samples) - 1)
                      if samples[i + 1][1] >= samples[i][1]]
        for i in violations:
            logger.warning("alpha(nu) not decreasing at R=%g between nu=%g and nu=%g",
                           R, samples[i][0], samples[i + 1][0])
        return samples, violations

    @staticmethod
    def _essential() -> SpectralResult:
        return SpectralResult(
            lambda_=ESSENTIAL_BOTTOM,
            nu=None,
            kind=SpectralKind.ESSENTIAL,
            residual=0.0,
            threshold_convention=THRESHOLD_CONVENTION,
        )


_DEFAULT = DiskSolver()


def alpha_of_nu(nu: float, R: float) -> float:
    return _DEFAULT.alpha_of_nu(nu, R)


def alpha_star_disk(R: float) -> float:
    """Critical parameter α⋆(B_R^ext) = α(-½, R)"""
    return _DEFAULT.alpha_star(R)


def lambda1_disk(alpha: float, R: float) -> SpectralResult:
    return _DEFAULT.lambda1(alpha, R)


def alpha_slope_samples(R: float, nus: Sequence[float]):
    return _DEFAULT.alpha_slope_samples(R, nus)



if __name__ == "__main__":
    print("⭕ Disk Solver")
    print("=" * 50)
    for R in (0.5, 1.0, 2.0):
        print(f"✓ R={R}: alpha_star={alpha_star_disk(R):.8f} "
              f"(elliptic {alpha_star_elliptic(R):.8f}, printed bound {alpha_star_upper_bound(R):.8f})")
    result = lambda1_disk(-2.0, 1.0)
    print(f"✓ lambda1(-2, 1) = {result.lambda_:.10f} (nu={result.nu:.10f}, kind={result.kind.value})")
