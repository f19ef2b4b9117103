"""Exception hierarchy.

Each family carries the process exit code the CLI reports for it:
2 for malformed input, 3 for a violated mathematical precondition,
4 for a number-field pipeline failure.
"""


class SolvLckError(Exception):
    exit_code = 1


class ValidationError(SolvLckError, ValueError):
    exit_code = 2


class PreconditionError(SolvLckError, ValueError):
    exit_code = 3


class PipelineError(SolvLckError, RuntimeError):
    exit_code = 4


class DimensionMismatch(ValidationError):
    pass


class BackendMismatch(ValidationError):
    pass


class AntisymmetryViolation(ValidationError):
    def __init__(self, i, j):
        self.i, self.j = i, j
        super().__init__(f"brackets: antisymmetry violated at ({i},{j})")


class JacobiViolation(ValidationError):
    def __init__(self, i, j, k, residual):
        self.i, self.j, self.k, self.residual = i, j, k, residual
        super().__init__(f"brackets: Jacobi identity violated at ({i},{j},{k}), residual {residual}")


class MalformedBlock(ValidationError):
    pass


class SplitInconsistent(ValidationError):
    pass


class NotPositiveDefinite(PreconditionError):
    pass


class ThetaNotClosed(PreconditionError):
    pass


class OmegaNotDThetaClosed(PreconditionError):
    pass


class Degenerate(PreconditionError):
    pass


class NoLeeForm(PreconditionError):
    pass


class LeeFormNotClosed(PreconditionError):
    pass


class NotLCS(PreconditionError):
    pass


class OddDimension(PreconditionError):
    pass


class JNotAlmostComplex(PreconditionError):
    pass


class NotJInvariant(PreconditionError):
    pass


class NotPositive(PreconditionError):
    pass


class NotUnimodular(PreconditionError):
    pass


class CharacterNotRealizable(PreconditionError):
    pass


class SignatureMismatch(PreconditionError):
    pass


class ZeroEmbedding(PreconditionError):
    pass


class InsufficientUnits(PipelineError):
    pass


class SingularProjection(PipelineError):
    pass
