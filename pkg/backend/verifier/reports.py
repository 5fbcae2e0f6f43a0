"""
Report records.

An Outcome is one inequality evaluated at one input point; margin is the
signed slack (positive means satisfied). Informational and skipped
outcomes are kept in the report but do not affect `pass`.
"""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, computed_field


class Outcome(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    point: Dict[str, Any]
    link: str
    relation: str
    lhs: Optional[float] = None
    rhs: Optional[float] = None
    margin: Optional[float] = None
    tolerance: float = 0.0
    passed: bool = Field(alias="pass")
    informational: bool = False
    skipped: bool = False
    note: Optional[str] = None

    @property
    def gating(self) -> bool:
        return not (self.informational or self.skipped)


class VerificationReport(BaseModel):
    """Pass/fail record for one check"""

    model_config = ConfigDict(populate_by_name=True)

    check_name: str
    inputs: Dict[str, Any] = Field(default_factory=dict)
    tolerance: float
    outcomes: List[Outcome] = Field(default_factory=list)

    @computed_field(alias="pass")
    @property
    def passed(self) -> bool:
        return all(o.passed for o in self.outcomes if o.gating)

    @computed_field
    @property
    def worst_margin(self) -> Optional[float]:
        margins = [o.margin for o in self.outcomes if o.gating and o.margin is not None]
        return min(margins) if margins else None

    @computed_field
    @property
    def first_failed_link(self) -> Optional[str]:
        for o in self.outcomes:
            if o.gating and not o.passed:
                return o.link
        return None

    def add(self, outcome: Outcome) -> Outcome:
        self.outcomes.append(outcome)
        return outcome


def leq(point: Dict[str, Any], link: str, lhs: float, rhs: float, tolerance: float,
        informational: bool = False, note: Optional[str] = None) -> Outcome:
    """lhs ≤ rhs within tolerance"""
    margin = rhs - lhs
    return Outcome(point=point, link=link, relation="<=", lhs=lhs, rhs=rhs, margin=margin,
                   tolerance=tolerance, passed=margin >= -tolerance,
                   informational=informational, note=note)


def less(point: Dict[str, Any], link: str, lhs: float, rhs: float, min_gap: float = 0.0,
         informational: bool = False, note: Optional[str] = None) -> Outcome:
    """lhs < rhs by more than min_gap"""
    margin = rhs - lhs
    return Outcome(point=point, link=link, relation="<", lhs=lhs, rhs=rhs, margin=margin,
                   tolerance=min_gap, passed=margin > min_gap,
                   informational=informational, note=note)


def close(point: Dict[str, Any], link: str, lhs: float, rhs: float, tolerance: float,
          informational: bool = False, note: Optional[str] = None) -> Outcome:
    """|lhs - rhs| ≤ tolerance"""
    margin = tolerance - abs(lhs - rhs)
    return Outcome(point=point, link=link, relation="==", lhs=lhs, rhs=rhs, margin=margin,
                   tolerance=tolerance, passed=margin >= 0.0,
                   informational=informational, note=note)


def flag(point: Dict[str, Any], link: str, passed: bool, note: Optional[str] = None,
         informational: bool = False, lhs: Optional[float] = None,
         rhs: Optional[float] = None) -> Outcome:
    """Boolean property (classification, sign, ...)"""
    return Outcome(point=point, link=link, relation="holds", lhs=lhs, rhs=rhs,
                   passed=passed, informational=informational, note=note)


def skipped(point: Dict[str, Any], link: str, note: str) -> Outcome:
    return Outcome(point=point, link=link, relation="skipped", passed=True,
                   skipped=True, note=note)
