"""
Named verification suites with their default parameter grids.

Suites run their checks in a fixed order; `all` concatenates every suite
in SUITE_ORDER.
"""

import logging
from typing import Callable, Dict, List, Optional

from tqdm import tqdm

from backend.disk_solver.solver import alpha_star_disk
from backend.errors import InputValidationError
from backend.geometry.hyperbolic import DomainSpec, disk_spec
from backend.numerics import Numerics
from backend.verifier.checks import Verifier
from backend.verifier.reports import VerificationReport

logger = logging.getLogger(__name__)

MONOTONICITY_RADII = [0.5, 1.0, 2.0, 4.0]
MONOTONICITY_ALPHAS = [-2.0, -0.7, 0.0]
THEOREM_ALPHAS = [-2.0, -1.0]
ALPHA_STAR_RADII = [0.25, 0.5, 1.0, 2.0, 5.0, 10.0]
ORACLE_ALPHAS = [-5.0, -2.0, -1.0, -0.6]
ORACLE_RADII = [0.5, 1.0, 2.0, 4.0]
POINCARE_B = [0.5, 1.0, 2.0]
INFIMUM_ALPHAS = [-2.0, -1.5, -1.0]
INFIMUM_RADII = [0.25, 0.5, 1.0, 2.0, 4.0, 8.0]
ESSENTIAL_TRUNCATIONS = [20.0, 40.0, 80.0]


def theorem_specs() -> List[DomainSpec]:
    return [
        disk_spec(1.0),
        DomainSpec(perimeter=10.0, area=3.0),
        DomainSpec(perimeter=20.0, area=10.0),
    ]


Task = Callable[[Verifier], VerificationReport]


def _monotonicity() -> List[Task]:
    return [lambda v, a=a: v.verify_radius_monotonicity(a, MONOTONICITY_RADII)
            for a in MONOTONICITY_ALPHAS]


def _main_theorem() -> List[Task]:
    return [lambda v, s=s, a=a: v.verify_main_theorem(s, a)
            for s in theorem_specs() for a in THEOREM_ALPHAS]


def _corollaries() -> List[Task]:
    return [lambda v, s=s, a=a: v.verify_corollaries(s, a)
            for s in theorem_specs() for a in THEOREM_ALPHAS]


def _alpha_star() -> List[Task]:
    return [lambda v: v.verify_alpha_star_bounds(ALPHA_STAR_RADII)]


def _essential() -> List[Task]:
    return [
        lambda v: v.verify_essential_bottom(0.0, 1.0, ESSENTIAL_TRUNCATIONS),
        lambda v: v.verify_essential_bottom(alpha_star_disk(1.0) + 0.05, 1.0,
                                            ESSENTIAL_TRUNCATIONS),
    ]


def _oracle() -> List[Task]:
    return [lambda v: v.verify_oracle_equivalence(ORACLE_ALPHAS, ORACLE_RADII)]


def _poincare() -> List[Task]:
    return [lambda v: v.verify_poincare(POINCARE_B)]


def _radius_infimum() -> List[Task]:
    return [lambda v: v.verify_radius_infimum(INFIMUM_ALPHAS, INFIMUM_RADII)]


SUITES: Dict[str, Callable[[], List[Task]]] = {
    "monotonicity": _monotonicity,
    "main-theorem": _main_theorem,
    "corollaries": _corollaries,
    "alpha-star-bounds": _alpha_star,
    "essential-bottom": _essential,
    "oracle": _oracle,
    "poincare": _poincare,
    "radius-infimum": _radius_infimum,
}
SUITE_ORDER = list(SUITES)
SUITE_NAMES = SUITE_ORDER + ["all"]


def run_suite(name: str, numerics: Optional[Numerics] = None,
              progress: bool = True) -> List[VerificationReport]:
    """
    Run a named suite (or `all`) and return its reports in fixed order.

    Raises:
        InputValidationError: unknown suite name
    """
    if name == "all":
        tasks = [task for suite in SUITE_ORDER for task in SUITES[suite]()]
    elif name in SUITES:
        tasks = SUITES[name]()
    else:
        raise InputValidationError(f"unknown suite '{name}' (choose from {', '.join(SUITE_NAMES)})")

    verifier = Verifier(numerics)
    reports = []
    for task in tqdm(tasks, desc=f"verify {name}", disable=None if progress else True,
                     leave=False):
        report = task(verifier)
        logger.info("%s: %s", report.check_name, "pass" if report.passed else "FAIL")
        reports.append(report)
    return reports
