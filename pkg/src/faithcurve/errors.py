"""Exception types raised across the package.

Every error is a ``ValueError`` subclass (or ``OSError`` for I/O) so callers
that only care about "bad input" can catch one thing.
"""


class FaithcurveError(ValueError):
    """Base class for domain errors."""


class EmptySummary(FaithcurveError):
    pass


class EmptyInput(FaithcurveError):
    pass


class MalformedRecord(FaithcurveError):
    def __init__(self, line, reason, path=None):
        self.line = line
        self.reason = reason
        self.path = path
        where = f"{path}:" if path else ""
        super().__init__(f"{where}line {line}: {reason}")


class DuplicateId(FaithcurveError):
    def __init__(self, record_id, line=None):
        self.record_id = record_id
        self.line = line
        suffix = f" (line {line})" if line is not None else ""
        super().__init__(f"duplicate id {record_id!r}{suffix}")


class NoJudgments(FaithcurveError):
    pass


class MixedSystems(FaithcurveError):
    pass


class MissingCoverage(FaithcurveError):
    def __init__(self, example_id):
        self.example_id = example_id
        super().__init__(f"no coverage for example {example_id!r}")


class DuplicateAnnotation(FaithcurveError):
    pass


class TooFewPoints(FaithcurveError):
    pass


class DuplicateCoverage(FaithcurveError):
    pass


class DegenerateVariance(FaithcurveError):
    pass


class UnitMismatch(FaithcurveError):
    pass


class MissingLabel(FaithcurveError):
    pass


class MissingScore(FaithcurveError):
    pass


class SingleClass(FaithcurveError):
    pass


class NoPositives(FaithcurveError):
    pass


class TooFewExamples(FaithcurveError):
    pass


class ConfigError(FaithcurveError):
    pass


class JoinError(FaithcurveError):
    def __init__(self, keys, what="annotation"):
        self.keys = list(keys)
        shown = ", ".join(f"{i}/{s}" for i, s in self.keys[:5])
        more = f" (+{len(self.keys) - 5} more)" if len(self.keys) > 5 else ""
        super().__init__(f"no {what} for (id/system): {shown}{more}")


class IoFailure(OSError):
    pass
