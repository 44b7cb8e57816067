from dataclasses import dataclass, field


@dataclass(frozen=True)
class Verdict:
    """Outcome of a hypothesis check. Failures carry a witness instead of raising."""

    passed: bool
    detail: str = ""
    witness: tuple = None
    certified_to: int = None
    extra: dict = field(default_factory=dict)

    def to_dict(self):
        data = {"passed": self.passed, "detail": self.detail}
        if self.witness is not None:
            data["witness"] = list(self.witness)
        if self.certified_to is not None:
            data["certified_to"] = self.certified_to
        data.update(self.extra)
        return data
