"""Exception hierarchy. Every error carries a stable ``code`` used by the CLI."""


class SimpleCurrentError(Exception):
    code = "Error"

    def __init__(self, detail="", **context):
        super().__init__(detail)
        self.detail = detail
        self.context = context

    def to_json(self):
        body = {"code": self.code, "detail": self.detail}
        if self.context:
            body["context"] = self.context
        return body


class DivisionByZero(SimpleCurrentError, ZeroDivisionError):
    code = "DivisionByZero"


class InvalidElement(SimpleCurrentError, ValueError):
    code = "InvalidElement"


class NotASubgroup(SimpleCurrentError, ValueError):
    code = "NotASubgroup"


class TooLarge(SimpleCurrentError):
    code = "TooLarge"


class InvalidForm(SimpleCurrentError, ValueError):
    code = "InvalidForm"


class NotIsotropic(SimpleCurrentError):
    code = "NotIsotropic"


class Degenerate(SimpleCurrentError):
    code = "Degenerate"


class WellDefinednessViolation(SimpleCurrentError):
    code = "WellDefinednessViolation"


class ConstructionFailed(SimpleCurrentError):
    code = "ConstructionFailed"


class NoSolution(SimpleCurrentError):
    code = "NoSolution"


class ModuleRelationViolation(SimpleCurrentError):
    code = "ModuleRelationViolation"


class ClosedFormMismatch(SimpleCurrentError):
    """An exact evaluation disagreed with its expected closed form."""

    code = "AssertionFailed"
