"""
Verdicts of the validity checks and the report that collects them
"""

from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class Criterion(str, Enum):
    COMPOSITIONALITY = "Compositionality"
    NAME_INVARIANCE = "NameInvariance"
    OPERATIONAL_CORRESPONDENCE = "OperationalCorrespondence"
    DIVERGENCE_REFLECTION = "DivergenceReflection"
    SUCCESS_SENSITIVENESS = "SuccessSensitiveness"


class Status(str, Enum):
    PASS = "Pass"
    FAIL = "Fail"
    INCONCLUSIVE = "Inconclusive"


class Verdict(BaseModel):
    """
    Outcome of one criterion on one source unit

    A failing verdict always names a concrete witness.
    """

    model_config = ConfigDict(frozen=True)

    criterion: Criterion
    unit: str
    status: Status
    witness: Optional[str] = None

    @model_validator(mode="after")
    def failure_has_witness(self):
        if self.status == Status.FAIL and not self.witness:
            raise ValueError("a failing verdict needs a witness")
        return self

    def to_line(self):
        fields = [self.unit, self.criterion.value, self.status.value]
        if self.witness:
            fields.append(self.witness.replace("\t", " ").replace("\n", " "))
        return "\t".join(fields)


class Report(BaseModel):
    """All verdicts of one corpus run against one pipeline"""

    pipeline: str
    verdicts: list[Verdict] = Field(default_factory=list)
    skipped: list[str] = Field(default_factory=list)

    def count(self, status):
        return sum(1 for v in self.verdicts if v.status == status)

    @property
    def passed(self):
        return self.count(Status.PASS)

    @property
    def failed(self):
        return self.count(Status.FAIL)

    @property
    def inconclusive(self):
        return self.count(Status.INCONCLUSIVE)

    @property
    def exit_code(self):
        return 0 if self.failed == 0 else 1

    def summary(self):
        return f"PASS {self.passed} / FAIL {self.failed} / INCONCLUSIVE {self.inconclusive}"

    def to_text(self):
        lines = [v.to_line() for v in self.verdicts]
        lines.append(self.summary())
        return "\n".join(lines) + "\n"

    def to_json(self):
        return self.model_dump_json(indent=2)
