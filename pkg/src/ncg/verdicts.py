"""Shared verdict vocabulary for all bound/lemma checkers."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any


class Verdict(enum.Enum):
    HOLDS = "holds"
    VIOLATED = "violated"
    PRECONDITION_NOT_MET = "precondition_not_met"


@dataclass(frozen=True)
class CheckResult:
    """One machine-checked claim: id, the inequality checked, verdict, witness.

    Violated verdicts always carry a machine-replayable witness (graph locus
    plus the numbers that broke the inequality).  `nonstandard` marks runs with
    overridden constants or decreed preconditions (negative controls).
    """

    check_id: str
    claim: str
    verdict: Verdict
    witness: dict[str, Any] | None = None
    preconditions: dict[str, Any] = field(default_factory=dict)
    nonstandard: bool = False

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.check_id,
            "claim": self.claim,
            "verdict": self.verdict.value,
            "witness": self.witness,
            "preconditions": self.preconditions,
            "nonstandard": self.nonstandard,
        }


def holds(check_id: str, claim: str, preconditions: dict | None = None, nonstandard: bool = False) -> CheckResult:
    return CheckResult(check_id, claim, Verdict.HOLDS, None, preconditions or {}, nonstandard)


def violated(check_id: str, claim: str, witness: dict, preconditions: dict | None = None, nonstandard: bool = False) -> CheckResult:
    return CheckResult(check_id, claim, Verdict.VIOLATED, witness, preconditions or {}, nonstandard)


def precondition_not_met(check_id: str, claim: str, preconditions: dict, nonstandard: bool = False) -> CheckResult:
    return CheckResult(check_id, claim, Verdict.PRECONDITION_NOT_MET, None, preconditions, nonstandard)
