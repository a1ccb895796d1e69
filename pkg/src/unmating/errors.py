"""Exception types, one per pipeline stage."""


class UnmatingError(Exception):
    pass


class MapfileError(UnmatingError):
    """Structurally malformed input file (bad syntax, references, arity)."""


class ValidationFailure(UnmatingError):
    """Semantic validation failed; carries the report."""

    def __init__(self, report):
        self.report = report
        super().__init__("; ".join(f.check for f in report.findings))


class SpectralError(UnmatingError):
    pass


class ParameterizationError(UnmatingError):
    pass


class PortraitError(UnmatingError):
    pass


class LaminationError(UnmatingError):
    pass
