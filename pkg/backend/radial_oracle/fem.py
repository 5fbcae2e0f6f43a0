#!/usr/bin/env python3
"""
Radial FEM Oracle - smallest eigenvalue of a weighted 1D Robin pencil

Minimizes

    [∫₀^T |ψ'|² w dt + α·w(0)·|ψ(0)|²] / ∫₀^T |ψ|² w dt

over continuous piecewise-linear ψ on a graded grid of [0, T]. Stiffness
and mass are tridiagonal (two-point Gauss per cell). The smallest
generalized eigenvalue is bracketed by Sturm counts of A - λM, so the
returned interval is certified for the discrete problem.

Rows/columns are scaled by e^{-t_i/2} (a congruence, inertia unchanged)
so entries stay O(1/h) even when w(T) ~ e^T.
"""

import logging
import math
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from backend.errors import DomainError, SolverError
from backend.numerics import FarBC, Numerics
from backend.radial_oracle.weights import WeightKind, WeightSpec

logger = logging.getLogger(__name__)

ESSENTIAL_BOTTOM = 0.25
DISCRETE_MARGIN = 1e-6
MAX_GRADING_SPREAD = math.log(10.0)
GAUSS_OFFSET = 0.5 / math.sqrt(3.0)
EPS = np.finfo(float).eps


class RadialProblem(BaseModel):
    """Weight, Robin parameter and discretization of one radial problem"""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    weight: WeightSpec
    alpha: float
    truncation: float = Field(40.0, ge=10.0)
    grid_points: int = Field(8000, ge=100)
    far_bc: FarBC = FarBC.DIRICHLET
    grading_ratio: float = Field(1.01, ge=1.0)

    @classmethod
    def from_numerics(cls, weight: WeightSpec, alpha: float,
                      numerics: Numerics) -> "RadialProblem":
        return cls(
            weight=weight,
            alpha=alpha,
            truncation=numerics.truncation,
            grid_points=numerics.grid_points,
            far_bc=numerics.far_bc,
            grading_ratio=numerics.grading_ratio,
        )


class OracleResult(BaseModel):
    """Smallest discrete eigenvalue with its Sturm bracket"""

    value: float
    lower: float
    upper: float
    truncation: float
    grid_points: int
    far_bc: FarBC
    discrete_detected: bool
    note: Optional[str] = None


def graded_grid(truncation: float, grid_points: int, grading_ratio: float) -> np.ndarray:
    """
    Nodes t_i = T·(e^{βi/N} - 1)/(e^β - 1), clustered near t = 0.

    β = min(N·ln(ratio), ln 10): neighbouring cells grow by at most the
    configured ratio and the largest/smallest cell ratio stays ≤ 10.
    """
    xi = np.arange(grid_points + 1, dtype=float) / grid_points
    beta = min(grid_points * math.log(grading_ratio), MAX_GRADING_SPREAD)
    if beta <= 0.0:
        return truncation * xi
    grid = truncation * np.expm1(beta * xi) / math.expm1(beta)
    grid[-1] = truncation
    return grid


def assemble(problem: RadialProblem) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """
    Scaled tridiagonal stiffness and mass.

    Returns:
        (A diagonal, A off-diagonal, M diagonal, M off-diagonal); the far
        node is dropped for the Dirichlet condition
    """
    t = graded_grid(problem.truncation, problem.grid_points, problem.grading_ratio)
    h = np.diff(t)
    mid = 0.5 * (t[:-1] + t[1:])
    w1 = problem.weight.scaled_value(mid - GAUSS_OFFSET * h, mid)
    w2 = problem.weight.scaled_value(mid + GAUSS_OFFSET * h, mid)

    p = 0.5 + GAUSS_OFFSET
    q = 0.5 - GAUSS_OFFSET
    half = 0.5 * h
    stiff = half * (w1 + w2) / (h * h)
    mass_ll = half * (w1 * p * p + w2 * q * q)
    mass_lr = half * p * q * (w1 + w2)
    mass_rr = half * (w1 * q * q + w2 * p * p)

    grow = np.exp(0.5 * h)
    shrink = 1.0 / grow

    n = t.size
    a_diag = np.zeros(n)
    m_diag = np.zeros(n)
    a_diag[:-1] += stiff * grow
    a_diag[1:] += stiff * shrink
    m_diag[:-1] += mass_ll * grow
    m_diag[1:] += mass_rr * shrink
    a_off = -stiff
    m_off = mass_lr.copy()

    a_diag[0] += problem.alpha * problem.weight.boundary_weight

    if problem.far_bc is FarBC.DIRICHLET:
        return a_diag[:-1], a_off[:-1], m_diag[:-1], m_off[:-1]
    return a_diag, a_off, m_diag, m_off


class SturmCounter:
    """Counts generalized eigenvalues below a shift via LDLᵀ pivots"""

    def __init__(self, a_diag: np.ndarray, a_off: np.ndarray,
                 m_diag: np.ndarray, m_off: np.ndarray):
        self.a_diag: List[float] = a_diag.tolist()
        self.m_diag: List[float] = m_diag.tolist()
        self.a_off: List[float] = [0.0] + a_off.tolist()
        self.m_off: List[float] = [0.0] + m_off.tolist()

    def __call__(self, lam: float) -> int:
        count = 0
        pivot = 1.0
        for ad, md, ao, mo in zip(self.a_diag, self.m_diag, self.a_off, self.m_off):
            e = ao - lam * mo
            d = ad - lam * md - e * e / pivot
            if d == 0.0:
                d = EPS * (abs(ad) + abs(lam * md)) or 1e-300
            if d < 0.0:
                count += 1
            pivot = d
        return count

    def rayleigh_of_ones(self) -> float:
        num = sum(self.a_diag) + 2.0 * sum(self.a_off)
        den = sum(self.m_diag) + 2.0 * sum(self.m_off)
        return num / den


def _smallest_eigenvalue(counter: SturmCounter, max_steps: int = 400) -> Tuple[float, float]:
    hi = counter.rayleigh_of_ones()
    hi += 1e-12 * max(1.0, abs(hi))
    step = max(1.0, abs(hi))
    steps = 0
    while counter(hi) < 1:
        hi += step
        step *= 2.0
        steps += 1
        if steps > max_steps:
            raise SolverError("could not place an upper eigenvalue bracket", bracket=(-math.inf, hi))

    step = 1.0
    lo = hi - step
    while counter(lo) > 0:
        step *= 2.0
        lo = hi - step
        steps += 1
        if steps > max_steps:
            raise SolverError("could not place a lower eigenvalue bracket", bracket=(lo, hi))

    while hi - lo > 1e-13 + 4.0 * EPS * max(abs(lo), abs(hi)):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if counter(mid) >= 1:
            hi = mid
        else:
            lo = mid
        steps += 1
        if steps > max_steps:
            raise SolverError("Sturm bisection did not converge", bracket=(lo, hi))
    return lo, hi


def solve(problem: RadialProblem) -> OracleResult:
    """
    Smallest eigenvalue of the discretized quotient.

    Returns:
        OracleResult; discrete_detected is False when the value is not
        below ¼ - 1e-6
    """
    counter = SturmCounter(*assemble(problem))
    lo, hi = _smallest_eigenvalue(counter)
    value = 0.5 * (lo + hi)
    discrete = value < ESSENTIAL_BOTTOM - DISCRETE_MARGIN
    logger.debug("oracle %s(%g) alpha=%g T=%g N=%d -> %.15g",
                 problem.weight.kind.value, problem.weight.param, problem.alpha,
                 problem.truncation, problem.grid_points, value)
    return OracleResult(
        value=value,
        lower=lo,
        upper=hi,
        truncation=problem.truncation,
        grid_points=problem.grid_points,
        far_bc=problem.far_bc,
        discrete_detected=discrete,
        note=None if discrete else "no discrete eigenvalue detected at this truncation",
    )


def min_rayleigh(problem: RadialProblem) -> float:
    return solve(problem).value


def adapt_numerics(numerics: Numerics, nu: float) -> Numerics:
    """
    Stretch T (and N with it) so e^{-2(ν+½)T} ≤ decay_target.

    Capped at numerics.max_truncation / max_grid_points.
    """
    kappa = nu + 0.5
    if kappa <= 0.0:
        needed = numerics.max_truncation
    else:
        needed = math.log(1.0 / numerics.decay_target) / (2.0 * kappa)
    truncation = min(max(numerics.truncation, needed), numerics.max_truncation)
    if truncation <= numerics.truncation:
        return numerics
    grid_points = min(
        int(math.ceil(numerics.grid_points * truncation / numerics.truncation)),
        numerics.max_grid_points,
    )
    logger.warning("nu=%.6g is near threshold: truncation %g -> %g, grid %d -> %d",
                   nu, numerics.truncation, truncation, numerics.grid_points, grid_points)
    return numerics.model_copy(update={"truncation": truncation, "grid_points": grid_points})


def richardson_limit(t1: float, lam1: float, t2: float, lam2: float) -> float:
    """Eliminate the c/T² Dirichlet-truncation term from two truncations"""
    return (t2 * t2 * lam2 - t1 * t1 * lam1) / (t2 * t2 - t1 * t1)


class PoincareKind(str, Enum):
    SINH = "sinh"
    COSH = "cosh"
    EXP = "exp"


def poincare_threshold(kind: PoincareKind, b: float) -> float:
    """Smallest α for which the weighted Poincaré bound ≥ ¼ holds"""
    kind = PoincareKind(kind)
    if (kind is PoincareKind.COSH and b < 0.0) or (kind is not PoincareKind.COSH and not b > 0.0):
        raise DomainError(f"{kind.value} threshold needs b > 0 (b >= 0 for cosh), got {b}")
    if kind is PoincareKind.SINH:
        return 0.5 * (1.0 / b - 1.0 / math.tanh(b))
    if kind is PoincareKind.COSH:
        return -0.5 * math.tanh(b)
    return -0.5


def poincare_weight(kind: PoincareKind, b: float) -> WeightSpec:
    kind = PoincareKind(kind)
    if kind is PoincareKind.SINH:
        return WeightSpec(kind=WeightKind.SINH_SHIFT, param=b)
    if kind is PoincareKind.COSH:
        return WeightSpec(kind=WeightKind.COSH_SHIFT, param=b)
    return WeightSpec(kind=WeightKind.EXP_SHIFT, param=b)


def poincare_solve(kind: PoincareKind, b: float, alpha: float,
                   numerics: Optional[Numerics] = None) -> OracleResult:
    """
    Weighted quotient on [b, ∞) with weight sinh, cosh or e^t, shifted to [0, ∞).

    Raises:
        ValidationError: b ≤ 0 for sinh/exp, b < 0 for cosh
    """
    numerics = numerics or Numerics()
    problem = RadialProblem.from_numerics(poincare_weight(kind, b), alpha, numerics)
    return solve(problem)


def poincare_min(kind: PoincareKind, b: float, alpha: float,
                 numerics: Optional[Numerics] = None) -> float:
    return poincare_solve(kind, b, alpha, numerics).value


if __name__ == "__main__":
    print("🧮 Radial FEM Oracle")
    print("=" * 50)
    numerics = Numerics(grid_points=2000)
    for alpha in (-2.0, 0.0):
        problem = RadialProblem.from_numerics(WeightSpec.sinh_shift(1.0), alpha, numerics)
        result = solve(problem)
        print(f"✓ sinh_shift(1), alpha={alpha}: {result.value:.8f} "
              f"(discrete={result.discrete_detected})")
