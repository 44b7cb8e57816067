class PillaiError(Exception):
    """Base error; `stage` names the pipeline step that failed."""

    def __init__(self, message, stage=None):
        super().__init__(message)
        self.stage = stage

    def to_dict(self):
        return {"error": type(self).__name__, "stage": self.stage, "message": str(self)}


class HypothesisFailure(PillaiError):
    """A hypothesis required for the bound does not hold or cannot be certified."""

    def __init__(self, message, stage=None, witness=None):
        super().__init__(message, stage=stage)
        self.witness = witness

    def to_dict(self):
        data = super().to_dict()
        if self.witness is not None:
            data["witness"] = self.witness
        return data


class NoDominantRoot(HypothesisFailure):
    EQUAL_MODULUS = "equal-modulus"
    UNRESOLVED = "unresolved"
    NOT_EXPANDING = "not-expanding"

    def __init__(self, message, reason, witness=None):
        super().__init__(message, stage="dominant root", witness=witness)
        self.reason = reason

    def to_dict(self):
        data = super().to_dict()
        data["reason"] = self.reason
        return data


class EqualDominantModuli(HypothesisFailure):
    def __init__(self, message):
        super().__init__(message, stage="orientation")


class PrecisionExhausted(PillaiError):
    pass


class UnsupportedPlaceStructure(PillaiError):
    pass


class Inconclusive(PillaiError):
    pass


class NonPositiveValue(PillaiError):
    pass


class BoxTooLarge(PillaiError):
    pass


class SpecParseError(PillaiError):
    def __init__(self, path, line, column, message):
        super().__init__(f"{path}:{line}:{column}: {message}", stage="parse")
        self.path = path
        self.line = line
        self.column = column
