"""Exception types.  Every error carries a stable ``code`` string that the
command-line layer reports verbatim."""


class ModuliError(Exception):
    code = "ModuliError"

    def __init__(self, message=""):
        super().__init__(message)
        self.message = message

    def record(self):
        return {"error": self.code, "message": self.message}


class MalformedTree(ModuliError):
    code = "MalformedTree"


class LabelPartition(ModuliError):
    code = "LabelPartition"


class BubbleTooSmall(ModuliError):
    code = "BubbleTooSmall"


class RootUnstable(ModuliError):
    code = "RootUnstable"


class AnchorViolation(ModuliError):
    code = "AnchorViolation"


class DegenerateSpace(ModuliError):
    code = "DegenerateSpace"


class BadPath(ModuliError):
    code = "BadPath"


class NotFlat(ModuliError):
    code = "NotFlat"


class IsRoot(ModuliError):
    code = "IsRoot"


class CodimOutOfRange(ModuliError):
    code = "CodimOutOfRange"


class UnsupportedM0(ModuliError):
    code = "UnsupportedM0"


class UnsupportedN(ModuliError):
    code = "UnsupportedN"


class CapExceeded(ModuliError):
    code = "CapExceeded"


class NotAChamber(ModuliError):
    code = "NotAChamber"


class TooSmall(ModuliError):
    code = "TooSmall"


class NotGraded(ModuliError):
    code = "NotGraded"


class ChamberMismatch(ModuliError):
    """Raised when an enumerated chamber count disagrees with (m-1)!."""
    code = "ChamberMismatch"


class TheoremHypothesis(ModuliError):
    code = "TheoremHypothesis"
