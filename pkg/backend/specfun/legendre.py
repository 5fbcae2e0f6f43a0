#!/usr/bin/env python3
"""
Legendre Q - Q_ν(x) for real degree ν > -1 and argument x > 1

Representation (normalization prefactor π^{1/2}/Γ(1/2) = 1):

    Q_ν(x) = ∫₀^∞ (x + √(x²-1) cosh t)^{-(ν+1)} dt

With x = cosh θ, q = e^{-2θ} and u = e^{-t} this becomes

    Q_ν(cosh θ) = (4 e^{-θ})^{ν+1} ∫₀¹ u^ν (a + 2bu + au²)^{-(ν+1)} du,
    a = 1 - q,  b = 1 + q

Since a + b = 2, the factor w = 4u/(a + 2bu + au²) increases on [0, 1]
to w(1) = 1, so the integrand is carried as w^ν · 4/(a + 2bu + au²),
which peaks at 4/4 = 1 at u = 1 for every ν and θ:

    log Q_ν(cosh θ) = -(ν+1)θ + log ∫₀¹ w^ν · 4/(a + 2bu + au²) du

Near u = 1 the integrand behaves like exp(-νa(1-u)²/4), so for large ν
the panels next to 1 are subdivided on the scale √(2/(ν+1)).

The integral is split into geometric panels [r^{k+1}, r^k], each with a
16-point Gauss-Legendre rule, plus a two-term analytic expansion on
[0, u_tail]. Levels refine r -> √r until two successive levels agree.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple, Union

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import gammaln

from backend.errors import AccuracyError, DomainError

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

GAUSS_POINTS = 16
TAIL_FRACTION = 1e-6
NEAR_ONE = 1e-8
PEAK_SPAN = 16


@dataclass(frozen=True)
class QValue:
    """Q_ν(x) together with its a-posteriori error estimate"""

    value: np.ndarray
    error: np.ndarray
    level: int


@lru_cache(maxsize=None)
def _gauss_rule() -> Tuple[np.ndarray, np.ndarray]:
    nodes, weights = leggauss(GAUSS_POINTS)
    return nodes, weights


@lru_cache(maxsize=64)
def _panel_rule(level: int, u_tail: float,
                peak_width: float = 0.0) -> Tuple[np.ndarray, np.ndarray]:
    """
    Composite Gauss nodes/weights on [u_tail, 1] with geometric panels.

    A positive peak_width replaces the panels on [1 - PEAK_SPAN·peak_width, 1]
    by uniform ones of width peak_width / 2^level.
    """
    ratio = 0.5 ** (1.0 / 2 ** level)
    n_panels = int(math.ceil(math.log(u_tail) / math.log(ratio)))
    edges = ratio ** np.arange(n_panels + 1, dtype=float)
    edges[-1] = u_tail
    if peak_width > 0.0:
        start = 1.0 - PEAK_SPAN * peak_width
        fine = np.linspace(1.0, start, PEAK_SPAN * 2 ** level + 1)
        edges = np.concatenate((fine, edges[edges < start]))
    left, right = edges[1:], edges[:-1]
    half = 0.5 * (right - left)
    mid = 0.5 * (right + left)
    x, w = _gauss_rule()
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def _tail(nu: float, a: np.ndarray, b: np.ndarray, u_tail: float) -> np.ndarray:
    """4^{ν+1} ∫₀^{u_tail} u^ν (a + 2bu)^{-(ν+1)} du to second order in u_tail"""
    nu1 = nu + 1.0
    with np.errstate(under="ignore"):
        scale = np.exp(nu1 * np.log(4.0 * u_tail / a))
    lead = 1.0 / nu1
    corr = nu1 * (2.0 * b / a) * u_tail / (nu1 + 1.0)
    return scale * (lead - corr)


def _peak_width(nu: float) -> float:
    """Power-of-two panel width resolving the peak at u = 1, or 0 when not needed"""
    width = math.sqrt(2.0 / (nu + 1.0))
    if PEAK_SPAN * width >= 0.5:
        return 0.0
    return 2.0 ** math.floor(math.log2(width))


def _check_degree(nu: float) -> float:
    nu = float(nu)
    if not math.isfinite(nu) or nu <= -1.0:
        raise DomainError(f"degree must satisfy nu > -1, got {nu}")
    return nu


def _theta_from_x(x: ArrayLike) -> np.ndarray:
    x_arr = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(x_arr)) or np.any(x_arr <= 1.0):
        raise DomainError("argument must satisfy x > 1")
    if np.any(x_arr <= 1.0 + NEAR_ONE):
        raise AccuracyError(
            f"argument within {NEAR_ONE:g} of 1: logarithmic singularity, refusing",
            estimate=float("inf"),
        )
    xm1 = x_arr - 1.0
    return np.log1p(xm1 + np.sqrt(xm1 * (x_arr + 1.0)))


class LegendreQ:
    """
    Evaluation context for Q_ν on x > 1.

    Holds tolerances and the refinement budget. Instances are immutable
    after construction and can be shared between threads.
    """

    def __init__(self, atol: float = 1e-12, rtol: float = 1e-10,
                 max_level: int = 5, chunk: int = 512):
        self.atol = atol
        self.rtol = rtol
        self.max_level = max_level
        self.chunk = chunk

    # -- core -------------------------------------------------------------

    def _scaled_integrals(self, nu: float, theta: np.ndarray,
                          with_next: bool, relative: bool = False
                          ) -> Tuple[np.ndarray, Optional[np.ndarray], np.ndarray, int]:
        """
        Peak-normalized integrals J_ν = 4^{ν+1} K_ν (and J_{ν+1}) for a 1-D array of θ.

        Ratios and logarithms need relative accuracy however small Q is, so
        with_next or relative drops the absolute tolerance.

        Returns:
            (J_nu, J_next or None, relative error estimate, level reached)
        """
        a = -np.expm1(-2.0 * theta)
        b = 2.0 - a
        u_tail = TAIL_FRACTION * float(np.min(a / b))
        nu1 = nu + 1.0
        peak_width = _peak_width(nu)

        tail = _tail(nu, a, b, u_tail)
        tail_next = _tail(nu + 1.0, a, b, u_tail) if with_next else None

        prev_k = prev_next = None
        rel_err = np.full(theta.shape, np.inf)
        for level in range(self.max_level + 1):
            nodes, weights = _panel_rule(level, u_tail, peak_width)
            poly = a[:, None] + nodes[None, :] * (2.0 * b[:, None] + a[:, None] * nodes[None, :])
            w = np.minimum(4.0 * nodes[None, :] / poly, 1.0)
            with np.errstate(under="ignore"):
                f = w ** nu * (4.0 / poly)
            k_nu = f @ weights + tail
            k_next = None
            if with_next:
                k_next = (f * w) @ weights + tail_next

            if not (np.all(np.isfinite(k_nu)) and np.all(k_nu > 0.0)):
                raise AccuracyError(
                    f"Q_{nu:g} scaled integral left the floating-point range",
                    estimate=float("inf"),
                    tolerance=self.rtol,
                )

            if prev_k is not None:
                rel_err = np.abs(k_nu - prev_k) / k_nu
                if with_next:
                    rel_err = np.maximum(rel_err, np.abs(k_next - prev_next) / k_next)
                if with_next or relative:
                    allowed = self.rtol
                else:
                    log_q = -nu1 * theta + np.log(k_nu)
                    with np.errstate(over="ignore"):
                        allowed = self.rtol + self.atol * np.exp(-log_q)
                if np.all(rel_err <= allowed):
                    logger.debug("Q_%g converged at level %d (max rel err %.2e)",
                                 nu, level, float(np.max(rel_err)))
                    return k_nu, k_next, rel_err, level
            prev_k, prev_next = k_nu, k_next

        worst = float(np.max(rel_err))
        raise AccuracyError(
            f"Q_{nu:g} quadrature did not converge after {self.max_level} refinements",
            estimate=worst,
            tolerance=self.rtol,
        )

    def _evaluate(self, nu: float, theta: np.ndarray,
                  with_next: bool, relative: bool = False) -> Tuple[np.ndarray, np.ndarray, np.ndarray, int]:
        """log Q_ν(cosh θ), ratio Q_{ν+1}/Q_ν (nan when not requested), rel error"""
        flat = np.atleast_1d(theta).ravel()
        log_q = np.empty_like(flat)
        ratio = np.full_like(flat, np.nan)
        rel_err = np.empty_like(flat)
        level = 0
        for start in range(0, flat.size, self.chunk):
            part = flat[start:start + self.chunk]
            k_nu, k_next, err, lev = self._scaled_integrals(nu, part, with_next, relative)
            log_q[start:start + self.chunk] = -(nu + 1.0) * part + np.log(k_nu)
            if with_next:
                ratio[start:start + self.chunk] = np.exp(-part) * k_next / k_nu
            rel_err[start:start + self.chunk] = err
            level = max(level, lev)
        shape = np.shape(theta)
        return log_q.reshape(shape), ratio.reshape(shape), rel_err.reshape(shape), level

    # -- θ-parametrized entry points (x = cosh θ) ---------------------------

    def log_value_theta(self, nu: float, theta: ArrayLike) -> np.ndarray:
        nu = _check_degree(nu)
        log_q, _, _, _ = self._evaluate(nu, np.asarray(theta, dtype=float), False, relative=True)
        return log_q

    def ratio_theta(self, nu: float, theta: ArrayLike) -> np.ndarray:
        """Q_{ν+1}(cosh θ)/Q_ν(cosh θ)"""
        nu = _check_degree(nu)
        _, ratio, _, _ = self._evaluate(nu, np.asarray(theta, dtype=float), True)
        return ratio

    def ground_state(self, nu: float, R: float,
                     t: ArrayLike) -> Tuple[np.ndarray, np.ndarray]:
        """
        φ(t) = Q_ν(cosh(t+R)) / Q_ν(cosh R) and its t-derivative.

        φ'(t) = sinh(t+R)·Q_ν'(cosh(t+R)) / Q_ν(cosh R), evaluated as
        -(ν+1)·φ·(coth θ - ratio/sinh θ) so nothing overflows at large t.
        """
        nu = _check_degree(nu)
        t_arr = np.asarray(t, dtype=float)
        theta = np.concatenate(([R], np.atleast_1d(t_arr).ravel() + R))
        log_q, ratio, _, _ = self._evaluate(nu, theta, True)
        phi = np.exp(log_q[1:] - log_q[0])
        th = theta[1:]
        inv_sinh = 2.0 * np.exp(-th) / -np.expm1(-2.0 * th)
        log_slope = -(nu + 1.0) * (1.0 / np.tanh(th) - ratio[1:] * inv_sinh)
        dphi = phi * log_slope
        return phi.reshape(t_arr.shape), dphi.reshape(t_arr.shape)

    # -- x-parametrized entry points ----------------------------------------

    def value(self, nu: float, x: ArrayLike) -> QValue:
        nu = _check_degree(nu)
        theta = _theta_from_x(x)
        log_q, _, rel_err, level = self._evaluate(nu, theta, False)
        q = np.exp(log_q)
        return QValue(value=q, error=q * rel_err, level=level)

    def pair(self, nu: float, x: ArrayLike) -> Tuple[QValue, QValue]:
        """Q_ν(x) and Q_{ν+1}(x) from one set of nodes"""
        nu = _check_degree(nu)
        theta = _theta_from_x(x)
        log_q, ratio, rel_err, level = self._evaluate(nu, theta, True)
        q = np.exp(log_q)
        q_next = q * ratio
        return (QValue(value=q, error=q * rel_err, level=level),
                QValue(value=q_next, error=q_next * rel_err, level=level))

    def ratio(self, nu: float, x: ArrayLike) -> np.ndarray:
        nu = _check_degree(nu)
        return self._evaluate(nu, _theta_from_x(x), True)[1]

    def deriv(self, nu: float, x: ArrayLike) -> np.ndarray:
        """dQ_ν/dx from (1 - x²)Q' = (ν+1)(x Q_ν - Q_{ν+1})"""
        x_arr = np.asarray(x, dtype=float)
        q, q_next = self.pair(nu, x_arr)
        return -(nu + 1.0) * (x_arr * q.value - q_next.value) / ((x_arr - 1.0) * (x_arr + 1.0))


_DEFAULT = LegendreQ()


def default_context() -> LegendreQ:
    return _DEFAULT


def _unwrap(value: np.ndarray, x: ArrayLike) -> ArrayLike:
    if np.ndim(x) == 0:
        return float(value)
    return value


def legendre_q(nu: float, x: ArrayLike, context: Optional[LegendreQ] = None) -> ArrayLike:
    """
    Legendre function of the second kind Q_ν(x).

    Args:
        nu: degree, > -1
        x: argument(s), > 1 (x ≤ 1 + 1e-8 raises AccuracyError)
        context: evaluation context, default tolerances 1e-12 + 1e-10·Q

    Returns:
        Q_ν(x), strictly positive, same shape as x
    """
    ctx = context or _DEFAULT
    return _unwrap(ctx.value(nu, x).value, x)


def legendre_q_with_error(nu: float, x: ArrayLike,
                          context: Optional[LegendreQ] = None) -> QValue:
    return (context or _DEFAULT).value(nu, x)


def legendre_q_ratio(nu: float, x: ArrayLike, context: Optional[LegendreQ] = None) -> ArrayLike:
    """Q_{ν+1}(x)/Q_ν(x); lies in (0, 1/(x + √(x²-1))]"""
    ctx = context or _DEFAULT
    return _unwrap(ctx.ratio(nu, x), x)


def legendre_q_deriv(nu: float, x: ArrayLike, context: Optional[LegendreQ] = None) -> ArrayLike:
    """dQ_ν/dx, strictly negative"""
    ctx = context or _DEFAULT
    return _unwrap(ctx.deriv(nu, x), x)


def legendre_q_asymptotic(nu: float, x: ArrayLike) -> ArrayLike:
    """Large-x form √π Γ(ν+1) / (Γ(ν+3/2) (2x)^{ν+1})"""
    nu = _check_degree(nu)
    x_arr = np.asarray(x, dtype=float)
    log_val = (0.5 * math.log(math.pi) + gammaln(nu + 1.0) - gammaln(nu + 1.5)
               - (nu + 1.0) * np.log(2.0 * x_arr))
    return _unwrap(np.exp(log_val), x)


if __name__ == "__main__":
    print("∫ Legendre Q")
    print("=" * 50)
    print(f"✓ Q_0(2)        = {legendre_q(0.0, 2.0):.10f}  (½ ln 3 = {0.5 * math.log(3):.10f})")
    print(f"✓ Q_1(2)        = {legendre_q(1.0, 2.0):.10f}  (ln 3 - 1 = {math.log(3) - 1:.10f})")
    print(f"✓ Q_1/Q_0 at 2  = {legendre_q_ratio(0.0, 2.0):.10f}")
    print(f"✓ Q_0'(2)       = {legendre_q_deriv(0.0, 2.0):.10f}  (-1/3)")
