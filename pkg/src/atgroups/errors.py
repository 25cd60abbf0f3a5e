"""Exception hierarchy shared by all modules."""


class PGroupError(Exception):
    """Base class for every error raised by this package."""


class PresentationSyntaxError(PGroupError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class UnknownGenerator(PresentationSyntaxError):
    pass


class NotPrime(PresentationSyntaxError):
    pass


class ExponentOverflow(PresentationSyntaxError):
    pass


class CosetLimitExceeded(PGroupError):
    pass


class NotAPGroup(PGroupError):
    pass


class NotNormal(PGroupError):
    pass


class NotAbelian(PGroupError):
    pass


class LatticeCapExceeded(PGroupError):
    pass


class IsoCapExceeded(PGroupError):
    pass


class BadIdentification(PGroupError):
    pass


class InternalInconsistency(PGroupError):
    """Two independent computations of the same object disagree."""


class PreconditionFailed(PGroupError):
    pass


class DegenerateCommutators(PGroupError):
    pass


class InvalidParameters(PGroupError):
    pass
