"""Exception hierarchy shared across the toolkit."""


class PtmfError(Exception):
    """Base class for all toolkit errors."""


class DocumentFormatError(PtmfError):
    """Malformed input document (bad JSON, missing required field)."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column


class ValidationError(PtmfError):
    """A document parsed but violates a structural invariant.

    ``problems`` lists every violation found; the message joins them.
    """

    def __init__(self, problems: list[str] | str):
        if isinstance(problems, str):
            problems = [problems]
        super().__init__("; ".join(problems))
        self.problems = list(problems)


class UnknownThreatError(PtmfError):
    """Requested threat id does not exist in the active taxonomy."""


class EmptyDatasetError(PtmfError):
    """Operation requires at least one retained response."""


class MismatchedThreatError(PtmfError):
    """Inputs that must share a threat id do not."""


class UnknownItemError(PtmfError):
    """Answer or delta references an item id outside the questionnaire."""


class MissingWeightsError(PtmfError):
    """No frequency data available to weight a risk assessment."""


class RevisionConflictError(PtmfError):
    """Optimistic-concurrency check failed on an assessment update."""

    def __init__(self, assessment_id: str, expected: int, got: int):
        super().__init__(
            f"assessment {assessment_id}: stale revision {got}, current is {expected}"
        )
        self.expected = expected
        self.got = got


class DomainError(PtmfError):
    """Numeric argument outside the mathematical domain of the operation."""


class UnachievableError(PtmfError):
    """No parameter value satisfies the requested power-analysis target."""
