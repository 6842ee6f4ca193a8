import json
from dataclasses import dataclass, field

from .serializers import RunReportSerializer


@dataclass
class RunReport:
    """
    Outcome of one command run.

    ``anchor`` names the claim a run exercises; ``passed`` is set by
    verification runs and stays ``None`` elsewhere.
    """

    command: str
    inputs: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)
    anchor: str | None = None
    passed: bool | None = None

    def as_dict(self) -> dict:
        return RunReportSerializer(self).data

    def to_json(self) -> str:
        """Key-sorted JSON; equal reports render to equal bytes."""
        return json.dumps(self.as_dict(), sort_keys=True, indent=2, ensure_ascii=False)
