"""Exception hierarchy.

Every error carries a stable ``code`` string; the CLI prints it in the
error document and maps it to a nonzero exit status.
"""


class RootStabError(Exception):
    code = "ERROR"

    def __init__(self, message="", **details):
        super().__init__(message)
        self.details = details


class ValidationError(RootStabError):
    code = "VALIDATION"


class NonSymmetricGram(ValidationError):
    code = "NON_SYMMETRIC_GRAM"


class WrongSignature(ValidationError):
    code = "WRONG_SIGNATURE"


class NonPositive(ValidationError):
    code = "NON_POSITIVE"


class BadRoot(ValidationError):
    code = "BAD_ROOT"


class DimensionMismatch(RootStabError):
    code = "DIMENSION_MISMATCH"


class BTwistWithGerbeComponent(RootStabError):
    code = "B_TWIST_WITH_GERBE_COMPONENT"


class SectorOutOfRange(RootStabError):
    code = "SECTOR_OUT_OF_RANGE"


class SectorCountMismatch(RootStabError):
    code = "SECTOR_COUNT_MISMATCH"


class RankMismatch(RootStabError):
    code = "RANK_MISMATCH"


class BadWindow(RootStabError):
    code = "BAD_WINDOW"


class ZeroCharge(RootStabError):
    code = "ZERO_CHARGE"


class OutOfSector(RootStabError):
    code = "OUT_OF_SECTOR"


class PreconditionViolated(RootStabError):
    code = "PRECONDITION_VIOLATED"


class HypothesisViolated(RootStabError):
    code = "HYPOTHESIS_VIOLATED"


class BadT(RootStabError):
    code = "BAD_T"


class UnboundedRequest(RootStabError):
    code = "UNBOUNDED_REQUEST"


class ZeroImaginary(RootStabError):
    code = "ZERO_IMAGINARY"


class SingularTransform(RootStabError):
    code = "SINGULAR_TRANSFORM"


class ZeroChargeSample(RootStabError):
    code = "ZERO_CHARGE_SAMPLE"


class NotPositiveDefinite(RootStabError):
    code = "NOT_POSITIVE_DEFINITE"


class WindowViolated(RootStabError):
    code = "WINDOW_VIOLATED"


class ParseError(RootStabError):
    code = "PARSE_ERROR"

    def __init__(self, message="", line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message, line=line, column=column)
        self.line = line
        self.column = column
