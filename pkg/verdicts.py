"""Verdict values returned by checks and searches."""
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional


class Status(str, Enum):
    PROVEN = "Proven"
    VERIFIED_UP_TO = "VerifiedUpTo"
    COUNTEREXAMPLE = "Counterexample"
    EQUAL = "Equal"
    DISTINCT = "Distinct"
    AGREE = "Agree"
    INCONCLUSIVE = "Inconclusive"
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"
    PASS = "Pass"
    FAIL = "Fail"
    EMPTY = "Empty"
    NOT_APPLICABLE = "NotApplicable"


_FAILING = {Status.FAIL, Status.COUNTEREXAMPLE}
_UNDECIDED = {Status.UNKNOWN, Status.INCONCLUSIVE}


def exit_code(status: Status) -> int:
    if status in _FAILING:
        return 1
    if status in _UNDECIDED:
        return 2
    return 0


@dataclass(frozen=True)
class Verdict:
    status: Status
    witness: Any = None
    bound: Optional[int] = None
    detail: str = ""
    extra: dict = field(default_factory=dict, compare=False)

    def __bool__(self):
        # truthiness means "positively decided"
        return self.status in (Status.PROVEN, Status.VERIFIED_UP_TO, Status.EQUAL,
                               Status.AGREE, Status.YES, Status.PASS)

    def to_dict(self) -> dict:
        out = {"status": self.status.value}
        if self.witness is not None:
            out["witness"] = render(self.witness)
        if self.bound is not None:
            out["bound"] = self.bound
        if self.detail:
            out["detail"] = self.detail
        return out

    def __str__(self):
        text = self.status.value
        if self.witness is not None:
            text += f"({render(self.witness)})"
        if self.bound is not None:
            text += f" [bound {self.bound}]"
        if self.detail:
            text += f": {self.detail}"
        return text


def render(value) -> str:
    if isinstance(value, (list, tuple)):
        return "(" + ", ".join(render(v) for v in value) + ")"
    return str(value)
