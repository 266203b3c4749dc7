"""Exception types. Every error carries a stable ``code`` string."""


class LineFieldError(Exception):
    code = "ERROR"


class NonManifoldError(LineFieldError):
    code = "NON_MANIFOLD"


class DisconnectedError(LineFieldError):
    code = "DISCONNECTED"


class DegenerateFaceError(LineFieldError):
    code = "DEGENERATE_FACE"


class ClosedInputError(LineFieldError):
    code = "CLOSED_INPUT"


class ParseError(LineFieldError):
    code = "PARSE_ERROR"

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class NonTriangularError(ParseError):
    code = "NON_TRIANGULAR"


class DegenerateTriangleError(LineFieldError):
    code = "DEGENERATE_TRIANGLE"


class BranchCutError(LineFieldError):
    code = "BRANCH_CUT"


class RoundingError(LineFieldError):
    code = "ROUNDING"


class BadTopologyError(LineFieldError):
    code = "BAD_TOPOLOGY"


class BadSumError(LineFieldError):
    code = "BAD_SUM"


class PrescriptionOverflowError(LineFieldError):
    code = "PRESCRIPTION_OVERFLOW"


class NotNormalError(LineFieldError):
    code = "NOT_NORMAL"

    def __init__(self, message, faces=()):
        super().__init__(message)
        self.faces = list(faces)


class FixedPointError(LineFieldError):
    code = "HAS_FIXED_POINTS"


class NotInvariantError(LineFieldError):
    code = "NOT_INVARIANT"


class BadParamsError(LineFieldError):
    code = "BAD_PARAMS"


class HolonomyObstructionError(LineFieldError):
    code = "HOLONOMY_OBSTRUCTION"


class NoPositionsError(LineFieldError):
    code = "NO_POSITIONS"
