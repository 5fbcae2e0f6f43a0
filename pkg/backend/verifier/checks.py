#!/usr/bin/env python3
"""
Verifier - desk-scale checks of the exterior Robin inequalities

Handles:
- Radius monotonicity of λ₁(B_R) (strict and equality branches)
- Convex-domain comparison chain UB(Ω) ≤ g(c_Ω) ≤ g(coth R) = λ₁(B_R)
- Equal-area / equal-perimeter corollaries
- Critical-parameter bounds and classification flips
- Convergence to the essential bottom ¼
- Closed form vs FEM oracle, weighted Poincaré thresholds, uniform lower bound in R

Every theorem check first runs a gate: the closed-form disk value must
agree with the FEM oracle before it is used in an inequality.
"""

import logging
import math
from typing import Dict, List, Optional, Sequence, Tuple

from backend.disk_solver.solver import (
    ESSENTIAL_BOTTOM,
    DiskSolver,
    SpectralKind,
    SpectralResult,
    alpha_star_elliptic,
    alpha_star_sharp_bound,
    alpha_star_upper_bound,
)
from backend.errors import InputValidationError
from backend.geometry.hyperbolic import (
    DomainSpec,
    avg_curvature,
    comparison_disks,
    matching_disk_radius,
    require_valid,
)
from backend.numerics import Numerics
from backend.radial_oracle.fem import (
    OracleResult,
    PoincareKind,
    RadialProblem,
    adapt_numerics,
    poincare_solve,
    poincare_threshold,
    richardson_limit,
    solve,
)
from backend.radial_oracle.groundstate import groundstate_integrals
from backend.radial_oracle.weights import WeightSpec
from backend.verifier.reports import (
    VerificationReport,
    close,
    flag,
    leq,
    less,
    skipped,
)

logger = logging.getLogger(__name__)

UB_LABEL = "certified upper bound per the comparison-theorem proof"
NU_SAMPLES = (-0.5, -0.25, 0.0, 0.5, 1.0, 2.0, 4.0)
CLASSIFICATION_OFFSET = 0.01
BELOW_THRESHOLD_STEP = 0.1


def _spec_point(spec: DomainSpec) -> Dict[str, float]:
    return {"L": spec.perimeter, "A": spec.area}


class Verifier:
    """Runs verification checks with one set of numerics"""

    def __init__(self, numerics: Optional[Numerics] = None):
        self.numerics = numerics or Numerics()
        self.disk = DiskSolver.from_numerics(self.numerics)

    # -- shared pieces ------------------------------------------------------

    def _numerics_for(self, result: SpectralResult) -> Numerics:
        if result.kind is SpectralKind.DISCRETE:
            return adapt_numerics(self.numerics, result.nu)
        return self.numerics

    def _oracle(self, weight: WeightSpec, alpha: float, numerics: Numerics) -> OracleResult:
        return solve(RadialProblem.from_numerics(weight, alpha, numerics))

    def _equivalence_tolerance(self, lam: float) -> float:
        return self.numerics.equivalence_tolerance * max(1.0, abs(lam))

    def gate(self, report: VerificationReport, alpha: float, R: float,
             result: Optional[SpectralResult] = None) -> Tuple[SpectralResult, Optional[OracleResult]]:
        """Cross-check lambda1_disk against the FEM oracle (discrete results only)"""
        result = result or self.disk.lambda1(alpha, R)
        point = {"alpha": alpha, "R": R}
        if result.kind is SpectralKind.ESSENTIAL:
            report.add(skipped(point, "oracle gate", "essential bottom: no discrete value to compare"))
            return result, None
        numerics = self._numerics_for(result)
        oracle = self._oracle(WeightSpec.sinh_shift(R), alpha, numerics)
        point = {**point, "T": numerics.truncation, "N": numerics.grid_points}
        report.add(close(point, "oracle gate", oracle.value, result.lambda_,
                         self._equivalence_tolerance(result.lambda_)))
        return result, oracle

    # -- radius monotonicity --------------------------------------------------

    def verify_radius_monotonicity(self, alpha: float,
                                   radii: Sequence[float]) -> VerificationReport:
        """
        λ₁(B_R) strictly decreasing in R while discrete; equal to ¼ once
        α ≥ α⋆(B_R).

        Raises:
            InputValidationError: empty, nonpositive or not strictly increasing radii
        """
        radii = [float(r) for r in radii]
        if not radii or any(r <= 0.0 for r in radii):
            raise InputValidationError("radii must be a nonempty list of positive numbers")
        if any(b <= a for a, b in zip(radii, radii[1:])):
            raise InputValidationError("radii must be strictly increasing")

        report = VerificationReport(
            check_name="radius_monotonicity",
            inputs={"alpha": alpha, "radii": radii},
            tolerance=self.numerics.closed_form_tolerance,
        )
        results = []
        for R in radii:
            result, _ = self.gate(report, alpha, R)
            results.append(result)

        for (r1, res1), (r2, res2) in zip(zip(radii, results), zip(radii[1:], results[1:])):
            point = {"alpha": alpha, "R1": r1, "R2": r2}
            if res1.kind is SpectralKind.ESSENTIAL and res2.kind is SpectralKind.ESSENTIAL:
                report.add(close(point, "lambda(R1) == lambda(R2) (both at 1/4)",
                                 res1.lambda_, res2.lambda_, 0.0))
            else:
                report.add(less(point, "lambda(R2) < lambda(R1)", res2.lambda_, res1.lambda_))

        stars = [self.disk.alpha_star(R) for R in radii]
        for r1, r2, s1, s2 in zip(radii, radii[1:], stars, stars[1:]):
            report.add(leq({"R1": r1, "R2": r2}, "alpha_star(R1) <= alpha_star(R2)",
                           s1, s2, self.numerics.closed_form_tolerance))
        for R, s, res in zip(radii, stars, results):
            expected = res.kind is SpectralKind.DISCRETE
            report.add(flag({"alpha": alpha, "R": R}, "kind matches alpha < alpha_star",
                            expected == (alpha < s), lhs=alpha, rhs=s,
                            note=res.kind.value))

        for R in radii:
            samples, violations = self.disk.alpha_slope_samples(R, NU_SAMPLES)
            report.add(flag({"R": R, "nu": list(NU_SAMPLES)}, "alpha(nu) strictly decreasing",
                            not violations,
                            note=None if not violations else f"violations at {violations}"))
        return report

    # -- comparison theorem ---------------------------------------------------

    def _comparison_radii(self, spec: DomainSpec,
                          radii: Optional[Sequence[float]]) -> List[float]:
        if radii is not None:
            return [float(r) for r in radii]
        threshold = matching_disk_radius(spec)
        if threshold is None:
            return [0.5, 1.0, 2.0]
        return [threshold, 0.5 * threshold, 0.25 * threshold]

    def _upper_bound(self, c: float, alpha: float, numerics: Numerics) -> OracleResult:
        return self._oracle(WeightSpec.steiner(c), alpha, numerics)

    def _ub_against_essential(self, report: VerificationReport, point: Dict, link: str,
                              ub: OracleResult) -> None:
        if ub.discrete_detected:
            report.add(leq(point, link, ub.value, ESSENTIAL_BOTTOM,
                           self.numerics.oracle_tolerance, note=UB_LABEL))
        else:
            report.add(flag(point, link, True, informational=True, lhs=ub.value,
                            rhs=ESSENTIAL_BOTTOM,
                            note="disk value is the essential bottom 1/4, which bounds "
                                 "the lowest spectral point of any exterior domain"))

    def verify_main_theorem(self, spec: DomainSpec, alpha: float,
                            radii: Optional[Sequence[float]] = None) -> VerificationReport:
        """
        Check UB(Ω) ≤ g(c_Ω) ≤ g(coth R) = λ₁(B_R) for admissible radii.

        Args:
            spec: domain descriptor (validated)
            alpha: Robin parameter
            radii: radii to test; default is the threshold radius and its
                halves, or {0.5, 1, 2} when c_Ω ≤ 1

        Returns:
            Report whose outcomes are ordered link by link per radius
        """
        require_valid(spec)
        c_omega = avg_curvature(spec)
        sample = self._comparison_radii(spec, radii)
        report = VerificationReport(
            check_name="main_theorem",
            inputs={**_spec_point(spec), "alpha": alpha, "c_omega": c_omega, "radii": sample},
            tolerance=self.numerics.oracle_tolerance,
        )

        admissible = []
        for R in sample:
            if R < self.disk.r_min:
                report.add(skipped({"alpha": alpha, "R": R}, "radius >= r_min",
                                   f"radius below r_min={self.disk.r_min:g}, skipped"))
            elif 1.0 / math.tanh(R) >= c_omega * (1.0 - 1e-12):
                admissible.append(R)
            else:
                report.add(skipped({"alpha": alpha, "R": R}, "hypothesis coth R >= c_omega",
                                   "hypothesis not satisfied, skipped"))
        if not admissible:
            raise InputValidationError(
                f"no sampled radius satisfies coth R >= {c_omega:.6g}"
            )

        for R in admissible:
            point = {"alpha": alpha, "R": R}
            disk, _ = self.gate(report, alpha, R)
            numerics = self._numerics_for(disk)
            ub = self._upper_bound(c_omega, alpha, numerics)

            if disk.kind is SpectralKind.ESSENTIAL:
                self._ub_against_essential(report, point, "UB(Omega) <= lambda1(B_R) = 1/4", ub)
                continue

            integrals = groundstate_integrals(disk.nu, R, self.numerics, self.disk.context)
            g_omega = integrals.quotient(c_omega, alpha)
            g_disk = integrals.quotient(1.0 / math.tanh(R), alpha)
            closed_tol = self.numerics.closed_form_tolerance * max(1.0, abs(g_disk))

            report.add(leq(point, "UB(Omega) <= g(c_omega)", ub.value, g_omega,
                           self.numerics.oracle_tolerance, note=UB_LABEL))
            report.add(leq(point, "g(c_omega) <= g(coth R)", g_omega, g_disk, closed_tol))
            report.add(close(point, "g(coth R) == lambda1(B_R)", g_disk, disk.lambda_,
                             self.numerics.groundstate_tolerance * max(1.0, abs(disk.lambda_))))
            report.add(leq(point, "UB(Omega) <= lambda1(B_R)", ub.value, disk.lambda_,
                           self.numerics.oracle_tolerance, note=UB_LABEL))
            report.add(flag(point, "dg/dc sign", integrals.slope_sign(alpha) >= 0,
                            informational=True,
                            note=f"sign {integrals.slope_sign(alpha)}"))
        return report

    # -- corollaries ------------------------------------------------------------

    def verify_corollaries(self, spec: DomainSpec, alpha: float) -> VerificationReport:
        """
        UB(Ω) ≤ λ₁(B_{R_perimeter}) ≤ λ₁(B_{R_area}) plus one-sided α⋆ evidence.

        α⋆(Ω^ext) itself is not computable here; the report only shows that
        UB(Ω) is a discrete eigenvalue slightly below α⋆(B_{R_perimeter}).
        """
        require_valid(spec)
        c_omega = avg_curvature(spec)
        r_area, r_perimeter = comparison_disks(spec)
        report = VerificationReport(
            check_name="corollaries",
            inputs={**_spec_point(spec), "alpha": alpha,
                    "R_area": r_area, "R_perimeter": r_perimeter},
            tolerance=self.numerics.oracle_tolerance,
        )
        point = {"alpha": alpha, "R_perimeter": r_perimeter, "R_area": r_area}

        lam_p, _ = self.gate(report, alpha, r_perimeter)
        lam_a = self.disk.lambda1(alpha, r_area)
        ub = self._upper_bound(c_omega, alpha, self._numerics_for(lam_p))

        if lam_p.kind is SpectralKind.ESSENTIAL:
            self._ub_against_essential(report, point, "UB(Omega) <= lambda1(B_perimeter) = 1/4", ub)
        else:
            report.add(leq(point, "UB(Omega) <= lambda1(B_perimeter)", ub.value, lam_p.lambda_,
                           self.numerics.oracle_tolerance, note=UB_LABEL))
        report.add(leq(point, "lambda1(B_perimeter) <= lambda1(B_area)", lam_p.lambda_,
                       lam_a.lambda_, self.numerics.closed_form_tolerance))

        star_p = self.disk.alpha_star(r_perimeter)
        star_a = self.disk.alpha_star(r_area)
        report.add(leq(point, "alpha_star(B_area) <= alpha_star(B_perimeter)", star_a, star_p,
                       self.numerics.closed_form_tolerance))

        alpha_below = star_p - BELOW_THRESHOLD_STEP
        below_disk = self.disk.lambda1(alpha_below, r_perimeter)
        below_ub = self._upper_bound(c_omega, alpha_below, self._numerics_for(below_disk))
        report.add(less({**point, "alpha": alpha_below}, "UB(Omega) < 1/4 below alpha_star(B_perimeter)",
                        below_ub.value, ESSENTIAL_BOTTOM, informational=True,
                        note="one-sided evidence that alpha_star(Omega) >= alpha_star(B_perimeter) - "
                             f"{BELOW_THRESHOLD_STEP}"))
        return report

    # -- critical parameter ------------------------------------------------------

    def verify_alpha_star_bounds(self, radii: Sequence[float]) -> VerificationReport:
        """
        α⋆(B_R) < 0, ≤ -½, > -½ coth R, matches the elliptic closed form,
        is nondecreasing in R and flips the classification at ±0.01.

        The printed bound ½(e^{-R} - coth R) is gating only where
        sinh R ≥ 1 and informational below that.
        """
        radii = sorted(float(r) for r in radii)
        if not radii:
            raise InputValidationError("radii must be nonempty")
        tol = self.numerics.closed_form_tolerance
        report = VerificationReport(
            check_name="alpha_star_bounds",
            inputs={"radii": radii},
            tolerance=tol,
        )
        stars = []
        for R in radii:
            point = {"R": R}
            star = self.disk.alpha_star(R)
            stars.append(star)
            report.add(less(point, "alpha_star < 0", star, 0.0))
            report.add(leq(point, "alpha_star <= -1/2", star, alpha_star_sharp_bound(R), tol))
            report.add(less(point, "alpha_star > -coth(R)/2", -0.5 / math.tanh(R), star))
            report.add(close(point, "alpha_star == elliptic closed form", star,
                             alpha_star_elliptic(R), tol * max(1.0, abs(star))))

            printed = alpha_star_upper_bound(R)
            sharp_enough = R >= math.asinh(1.0)
            report.add(leq(point, "alpha_star <= (exp(-R) - coth R)/2", star, printed, tol,
                           informational=not sharp_enough,
                           note=None if sharp_enough else
                           "implied by alpha_star <= -1/2 only when sinh R >= 1; recorded"))

            below = self.disk.lambda1(star - CLASSIFICATION_OFFSET, R)
            above = self.disk.lambda1(star + CLASSIFICATION_OFFSET, R)
            report.add(flag(point, "discrete at alpha_star - 0.01",
                            below.kind is SpectralKind.DISCRETE, lhs=below.lambda_))
            report.add(flag(point, "essential at alpha_star + 0.01",
                            above.kind is SpectralKind.ESSENTIAL, lhs=above.lambda_))

        for r1, r2, s1, s2 in zip(radii, radii[1:], stars, stars[1:]):
            report.add(leq({"R1": r1, "R2": r2}, "alpha_star(R1) <= alpha_star(R2)", s1, s2, tol))
        return report

    # -- essential bottom ----------------------------------------------------------

    def verify_essential_bottom(self, alpha: float, R: float,
                                truncations: Sequence[float] = (20.0, 40.0, 80.0)) -> VerificationReport:
        """
        Dirichlet minima at growing T decrease toward ¼.

        The 1e-3 gap gate applies to the Richardson limit of the two largest
        truncations; the raw gap at the last T is reported for reference.

        Raises:
            InputValidationError: α below α⋆(B_R), or fewer than two truncations
        """
        star = self.disk.alpha_star(R)
        if alpha < star - self.disk.tie_tol:
            raise InputValidationError(
                f"alpha={alpha} lies below alpha_star(B_R)={star:.10g}: a discrete eigenvalue exists"
            )
        truncations = sorted(float(t) for t in truncations)
        if len(truncations) < 2:
            raise InputValidationError("need at least two truncations")

        report = VerificationReport(
            check_name="essential_bottom",
            inputs={"alpha": alpha, "R": R, "truncations": truncations},
            tolerance=self.numerics.essential_gap,
        )
        values = []
        for T in truncations:
            numerics = self.numerics.model_copy(update={"truncation": T})
            values.append(self._oracle(WeightSpec.sinh_shift(R), alpha, numerics).value)

        for T, value in zip(truncations, values):
            report.add(leq({"T": T}, "1/4 <= lambda_T", ESSENTIAL_BOTTOM, value,
                           self.numerics.oracle_tolerance))
        for t1, t2, v1, v2 in zip(truncations, truncations[1:], values, values[1:]):
            report.add(leq({"T1": t1, "T2": t2}, "lambda_T2 <= lambda_T1", v2, v1, 1e-12))

        limit = richardson_limit(truncations[-2], values[-2], truncations[-1], values[-1])
        report.add(close({"T1": truncations[-2], "T2": truncations[-1]},
                         "Richardson limit == 1/4", limit, ESSENTIAL_BOTTOM,
                         self.numerics.essential_gap))
        report.add(leq({"T": truncations[-1]}, "raw gap lambda_T - 1/4", values[-1] - ESSENTIAL_BOTTOM,
                       self.numerics.essential_gap, 0.0, informational=True,
                       note="Dirichlet truncation gap decays like pi^2/T^2"))
        return report

    # -- extra suites ----------------------------------------------------------------

    def verify_oracle_equivalence(self, alphas: Sequence[float],
                                  radii: Sequence[float]) -> VerificationReport:
        """|λ_FEM - λ_closed| ≤ 1e-4·max(1, |λ|) on the (α, R) grid"""
        report = VerificationReport(
            check_name="oracle_equivalence",
            inputs={"alphas": list(alphas), "radii": list(radii)},
            tolerance=self.numerics.equivalence_tolerance,
        )
        for R in radii:
            for alpha in alphas:
                self.gate(report, alpha, R)
            steiner = self._oracle(WeightSpec.steiner(1.0 / math.tanh(R)), alphas[0], self.numerics)
            shifted = self._oracle(WeightSpec.sinh_shift(R), alphas[0], self.numerics)
            report.add(close({"alpha": alphas[0], "R": R}, "steiner(coth R) == sinh_shift(R)",
                             steiner.value, shifted.value, 1e-12))
        return report

    def verify_poincare(self, bs: Sequence[float] = (0.5, 1.0, 2.0)) -> VerificationReport:
        """Weighted minima at the threshold α stay ≥ ¼ - tol"""
        tol = self.numerics.oracle_tolerance
        report = VerificationReport(
            check_name="poincare",
            inputs={"b": list(bs)},
            tolerance=tol,
        )
        cases = [(kind, b) for kind in PoincareKind for b in bs]
        cases.insert(len(bs), (PoincareKind.COSH, 0.0))
        for kind, b in cases:
            alpha = poincare_threshold(kind, b)
            result = poincare_solve(kind, b, alpha, self.numerics)
            report.add(leq({"kind": kind.value, "b": b, "alpha": alpha},
                           "1/4 <= min quotient at threshold", ESSENTIAL_BOTTOM, result.value, tol))

        b_small = min(bs)
        alpha = poincare_threshold(PoincareKind.SINH, b_small) - BELOW_THRESHOLD_STEP
        below = poincare_solve(PoincareKind.SINH, b_small, alpha, self.numerics)
        report.add(less({"kind": "sinh", "b": b_small, "alpha": alpha},
                        "min quotient < 1/4 below threshold", below.value, ESSENTIAL_BOTTOM,
                        informational=True, note="recorded only"))
        return report

    def verify_radius_infimum(self, alphas: Sequence[float],
                              radii: Sequence[float]) -> VerificationReport:
        """
        λ₁(B_R) ≥ -(α² + α) for every R (α ≤ -½), and λ₁ nondecreasing in α.
        """
        alphas = sorted(float(a) for a in alphas)
        if any(a > -0.5 for a in alphas):
            raise InputValidationError("uniform bound needs alpha <= -1/2")
        tol = self.numerics.closed_form_tolerance
        report = VerificationReport(
            check_name="radius_infimum",
            inputs={"alphas": alphas, "radii": list(radii)},
            tolerance=tol,
        )
        for R in radii:
            lams = []
            for alpha in alphas:
                lam = self.disk.lambda1(alpha, R).lambda_
                lams.append(lam)
                bound = -(alpha * alpha + alpha)
                report.add(leq({"alpha": alpha, "R": R}, "-(alpha^2 + alpha) <= lambda1(B_R)",
                               bound, lam, tol * max(1.0, abs(bound))))
            for a1, a2, l1, l2 in zip(alphas, alphas[1:], lams, lams[1:]):
                report.add(leq({"R": R, "alpha1": a1, "alpha2": a2},
                               "lambda1 nondecreasing in alpha", l1, l2, tol))
        return report


if __name__ == "__main__":
    print("🔎 Verifier")
    print("=" * 50)
    verifier = Verifier(Numerics(grid_points=2000))
    report = verifier.verify_alpha_star_bounds([0.5, 1.0, 2.0])
    status = "✓" if report.passed else "✗"
    print(f"{status} {report.check_name}: worst margin {report.worst_margin}")
