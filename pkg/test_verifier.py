#!/usr/bin/env python3
"""Verification checks and suites"""

import json

import pytest

from backend.disk_solver.solver import alpha_star_disk
from backend.errors import InputValidationError
from backend.geometry.hyperbolic import DomainSpec, disk_spec
from backend.verifier.reports import VerificationReport, close, leq, skipped
from backend.verifier.suites import SUITE_NAMES, run_suite


def _gating(report):
    return [o for o in report.outcomes if o.gating]


class TestReports:
    def test_pass_ignores_informational_and_skipped(self):
        report = VerificationReport(check_name="demo", tolerance=0.0)
        report.add(leq({}, "a <= b", 1.0, 2.0, 0.0))
        report.add(leq({}, "info", 3.0, 2.0, 0.0, informational=True))
        report.add(skipped({}, "skip", "not applicable"))
        assert report.passed
        assert report.worst_margin == 1.0
        assert report.first_failed_link is None

    def test_first_failed_link_and_alias(self):
        report = VerificationReport(check_name="demo", tolerance=1e-3)
        report.add(close({}, "ok", 1.0, 1.0005, 1e-3))
        report.add(close({}, "bad", 1.0, 1.1, 1e-3))
        assert not report.passed
        assert report.first_failed_link == "bad"
        dumped = report.model_dump(by_alias=True)
        assert dumped["pass"] is False
        assert dumped["outcomes"][0]["pass"] is True


class TestRadiusMonotonicity:
    def test_strict_branch(self, verifier):
        report = verifier.verify_radius_monotonicity(-2.0, [0.5, 1.0, 2.0, 4.0])
        assert report.passed
        strict = [o for o in report.outcomes if o.link == "lambda(R2) < lambda(R1)"]
        assert len(strict) == 3
        assert all(o.margin > 1e-6 for o in strict)

    def test_equality_branch(self, verifier):
        report = verifier.verify_radius_monotonicity(0.0, [0.5, 1.0, 2.0, 4.0])
        assert report.passed
        gates = [o for o in report.outcomes if o.link == "oracle gate"]
        assert all(o.skipped for o in gates)

    def test_mixed_kinds(self, verifier):
        assert verifier.verify_radius_monotonicity(-0.7, [0.5, 1.0, 2.0, 4.0]).passed

    @pytest.mark.parametrize("radii", [[], [1.0, 0.5], [0.0, 1.0], [1.0, 1.0]])
    def test_bad_radii(self, verifier, radii):
        with pytest.raises(InputValidationError):
            verifier.verify_radius_monotonicity(-1.0, radii)


class TestMainTheorem:
    def test_disk_against_itself(self, verifier):
        report = verifier.verify_main_theorem(disk_spec(1.0), -2.0, radii=[1.0])
        assert report.passed
        links = [o.link for o in _gating(report)]
        assert "g(coth R) == lambda1(B_R)" in links
        assert "UB(Omega) <= lambda1(B_R)" in links

    def test_convex_domain_default_radii(self, verifier):
        report = verifier.verify_main_theorem(DomainSpec(perimeter=10.0, area=3.0), -2.0)
        assert report.passed
        assert report.inputs["radii"] == pytest.approx([0.5, 1.0, 2.0])
        assert not any(o.skipped for o in report.outcomes)

    def test_inadmissible_radius_is_skipped(self, verifier):
        report = verifier.verify_main_theorem(disk_spec(1.0), -1.0, radii=[1.5, 0.5])
        skips = [o for o in report.outcomes if o.skipped and o.link.startswith("hypothesis")]
        assert len(skips) == 1
        assert skips[0].note == "hypothesis not satisfied, skipped"
        assert report.passed

    def test_disk_default_radii_sample_threshold_halves(self, verifier):
        report = verifier.verify_main_theorem(disk_spec(1.0), -2.0)
        assert report.inputs["radii"] == pytest.approx([1.0, 0.5, 0.25], rel=1e-10)
        assert not any(o.skipped for o in report.outcomes)
        assert report.passed

    def test_radius_below_r_min_is_skipped(self, verifier):
        report = verifier.verify_main_theorem(disk_spec(0.003), -2.0)
        assert report.inputs["radii"] == pytest.approx([0.003, 0.0015, 0.00075], rel=1e-9)
        skips = [o for o in report.outcomes if o.link == "radius >= r_min"]
        assert len(skips) == 1
        assert skips[0].skipped
        assert skips[0].point["R"] == pytest.approx(0.00075, rel=1e-9)
        assert skips[0].note.startswith("radius below r_min")
        assert report.passed

    def test_no_admissible_radius(self, verifier):
        with pytest.raises(InputValidationError):
            verifier.verify_main_theorem(disk_spec(1.0), -1.0, radii=[1.5])

    def test_invalid_domain(self, verifier):
        with pytest.raises(InputValidationError):
            verifier.verify_main_theorem(DomainSpec(perimeter=5.0, area=10.0), -1.0)


class TestCorollaries:
    def test_disk_chain_is_tight(self, verifier):
        report = verifier.verify_corollaries(disk_spec(1.0), -2.0)
        assert report.passed
        assert report.inputs["R_area"] == pytest.approx(report.inputs["R_perimeter"], abs=1e-10)

    def test_convex_domain(self, verifier):
        assert verifier.verify_corollaries(DomainSpec(perimeter=10.0, area=3.0), -2.0).passed


class TestAlphaStar:
    def test_default_radii(self, verifier):
        report = verifier.verify_alpha_star_bounds([0.25, 0.5, 1.0, 2.0, 5.0, 10.0])
        assert report.passed
        printed = [o for o in report.outcomes if o.link.startswith("alpha_star <= (exp")]
        small = next(o for o in printed if o.point["R"] == 0.25)
        assert small.informational and not small.passed

    def test_empty(self, verifier):
        with pytest.raises(InputValidationError):
            verifier.verify_alpha_star_bounds([])


class TestEssentialBottom:
    def test_neumann(self, verifier):
        report = verifier.verify_essential_bottom(0.0, 1.0)
        assert report.passed

    def test_just_above_threshold(self, verifier):
        assert verifier.verify_essential_bottom(alpha_star_disk(1.0) + 0.05, 1.0).passed

    def test_rejects_discrete_regime(self, verifier):
        with pytest.raises(InputValidationError):
            verifier.verify_essential_bottom(-5.0, 1.0)


class TestOtherChecks:
    def test_oracle_equivalence_subset(self, verifier):
        assert verifier.verify_oracle_equivalence([-2.0, -1.0], [1.0, 2.0]).passed

    def test_poincare(self, verifier):
        report = verifier.verify_poincare([0.5, 1.0, 2.0])
        assert report.passed
        assert len(_gating(report)) == 10

    def test_radius_infimum(self, verifier):
        assert verifier.verify_radius_infimum([-2.0, -1.5, -1.0], [0.25, 0.5, 1.0, 2.0, 4.0, 8.0]).passed

    def test_radius_infimum_needs_strong_attraction(self, verifier):
        with pytest.raises(InputValidationError):
            verifier.verify_radius_infimum([-0.4], [1.0])


class TestSuites:
    def test_unknown_suite(self):
        with pytest.raises(InputValidationError):
            run_suite("bogus", progress=False)

    def test_suite_names(self):
        assert "all" in SUITE_NAMES
        assert "alpha-star-bounds" in SUITE_NAMES

    def test_alpha_star_suite_is_deterministic(self):
        first = run_suite("alpha-star-bounds", progress=False)
        second = run_suite("alpha-star-bounds", progress=False)
        dump = lambda reports: json.dumps([r.model_dump(by_alias=True, mode="json") for r in reports],  # noqa: E731
                                          sort_keys=True)
        assert dump(first) == dump(second)
        assert all(r.passed for r in first)

    @pytest.mark.parametrize("name", ["main-theorem", "corollaries"])
    def test_theorem_suites_pass_on_full_grid(self, name):
        reports = run_suite(name, progress=False)
        assert len(reports) == 6
        assert {r.inputs["alpha"] for r in reports} == {-2.0, -1.0}
        assert all(r.passed for r in reports)

    def test_all_suite_passes_and_is_deterministic(self):
        dump = lambda reports: json.dumps([r.model_dump(by_alias=True, mode="json") for r in reports],  # noqa: E731
                                          sort_keys=True)
        first = run_suite("all", progress=False)
        assert all(r.passed for r in first)
        assert dump(first) == dump(run_suite("all", progress=False))

    def test_radius_infimum_suite(self):
        assert all(r.passed for r in run_suite("radius-infimum", progress=False))
