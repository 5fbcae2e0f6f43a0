"""
Ground-state quotient under a Steiner weight.

φ(t) = Q_ν(cosh(t+R)) / Q_ν(cosh R) is the exact disk ground state. Its
quotient under c·sinh t + cosh t is

    g(c) = (c·G_s + G_c + α) / (c·M_s + M_c)

with G_s = ∫φ'² sinh, G_c = ∫φ'² cosh, M_s = ∫φ² sinh, M_c = ∫φ² cosh
over [0, T]. g is monotone in c with the sign of G_s·M_c - (G_c + α)·M_s.
"""

import logging
import math
from functools import lru_cache
from typing import Optional, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss
from pydantic import BaseModel

from backend.errors import DomainError
from backend.numerics import Numerics
from backend.radial_oracle.fem import adapt_numerics
from backend.specfun.legendre import LegendreQ, default_context

logger = logging.getLogger(__name__)

PANEL_WIDTH = 0.5
GAUSS_POINTS = 16


class GroundStateIntegrals(BaseModel):
    nu: float
    radius: float
    truncation: float
    grad_sinh: float
    grad_cosh: float
    mass_sinh: float
    mass_cosh: float

    def quotient(self, c: float, alpha: float) -> float:
        num = c * self.grad_sinh + self.grad_cosh + alpha
        den = c * self.mass_sinh + self.mass_cosh
        return num / den

    def slope_sign(self, alpha: float) -> int:
        """Sign of dg/dc (same for every c ≥ 0)"""
        s = self.grad_sinh * self.mass_cosh - (self.grad_cosh + alpha) * self.mass_sinh
        return int(np.sign(s))


@lru_cache(maxsize=32)
def _composite_rule(truncation: float) -> Tuple[np.ndarray, np.ndarray]:
    n_panels = max(1, int(math.ceil(truncation / PANEL_WIDTH)))
    edges = np.linspace(0.0, truncation, n_panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    x, w = leggauss(GAUSS_POINTS)
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def groundstate_integrals(nu: float, R: float, numerics: Optional[Numerics] = None,
                          context: Optional[LegendreQ] = None) -> GroundStateIntegrals:
    """
    The four weighted integrals of the disk ground state.

    The truncation is stretched near ν = -½ (see adapt_numerics).
    """
    if not nu > -0.5:
        raise DomainError(f"ground state needs nu > -1/2, got {nu}")
    if not R > 0.0:
        raise DomainError(f"radius must be positive, got {R}")
    numerics = adapt_numerics(numerics or Numerics(), nu)
    ctx = context or default_context()

    nodes, weights = _composite_rule(numerics.truncation)
    phi, dphi = ctx.ground_state(nu, R, nodes)
    sinh_t = np.sinh(nodes)
    cosh_t = np.cosh(nodes)
    result = GroundStateIntegrals(
        nu=nu,
        radius=R,
        truncation=numerics.truncation,
        grad_sinh=float(np.dot(weights, dphi * dphi * sinh_t)),
        grad_cosh=float(np.dot(weights, dphi * dphi * cosh_t)),
        mass_sinh=float(np.dot(weights, phi * phi * sinh_t)),
        mass_cosh=float(np.dot(weights, phi * phi * cosh_t)),
    )
    logger.debug("ground state integrals nu=%g R=%g T=%g: %s", nu, R, numerics.truncation, result)
    return result


def groundstate_quotient(c: float, alpha: float, nu: float, R: float,
                         numerics: Optional[Numerics] = None,
                         context: Optional[LegendreQ] = None) -> float:
    """
    Rayleigh quotient of the disk ground state under c·sinh t + cosh t.

    Args:
        c: Steiner coefficient ≥ 0
        alpha: Robin parameter (boundary term α·φ(0)², φ(0) = 1)
        nu: degree of the ground state, > -½
        R: disk radius

    Returns:
        g(c); equals λ₁(B_R) when c = coth R and α = α(ν, R)
    """
    if c < 0.0:
        raise DomainError(f"Steiner coefficient must be nonnegative, got {c}")
    return groundstate_integrals(nu, R, numerics, context).quotient(c, alpha)
