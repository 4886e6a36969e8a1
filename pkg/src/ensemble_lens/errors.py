"""Exception hierarchy shared by all ensemble-lens modules."""


class EnsembleLensError(Exception):
    """Base class for all errors raised by this package."""


class MissingFileError(EnsembleLensError):
    pass


class ParseError(EnsembleLensError):
    pass


class ShapeMismatchError(EnsembleLensError):
    pass


class TimeAxisError(EnsembleLensError):
    pass


class TooFewMembersError(EnsembleLensError):
    pass


class ValidationFailedError(EnsembleLensError):
    """Loading produced an ensemble whose validation report is non-empty."""

    def __init__(self, report):
        self.report = report
        lines = "; ".join(str(v) for v in report)
        super().__init__(f"ensemble failed validation: {lines}")


class IndexOutOfRangeError(EnsembleLensError, IndexError):
    pass


class DegenerateEnsembleError(EnsembleLensError):
    pass


class LengthMismatchError(EnsembleLensError):
    pass


class DegeneratePointsError(EnsembleLensError):
    pass


class InvalidBandwidthError(EnsembleLensError):
    pass


class InvalidCoverageError(EnsembleLensError):
    pass


class EmptyLevelSetError(EnsembleLensError):
    pass


class ContainmentViolationError(EnsembleLensError):
    """Band/median nesting broke; indicates a bug upstream, not a data condition."""


class UnknownParamError(EnsembleLensError):
    pass


class TimeOutOfRangeError(EnsembleLensError):
    pass


class InvalidClusterError(EnsembleLensError):
    pass


class SelectionTooSmallError(EnsembleLensError):
    pass
