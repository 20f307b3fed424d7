"""Exception hierarchy shared by every module."""

from __future__ import annotations


class HypergroupError(Exception):
    """Base class for all errors raised by this package."""


class Violation:
    __slots__ = ("kind", "witness", "message")

    def __init__(self, kind: str, witness: tuple, message: str):
        self.kind = kind
        self.witness = witness
        self.message = message

    def __repr__(self) -> str:
        return f"Violation({self.kind!r}, {self.witness!r})"

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"


class ValidationError(HypergroupError):
    """A table fails the hypergroup axioms.

    ``violations`` lists every violated axiom, each with its first witness.
    The concrete subclass raised is the kind of the first violation.
    """

    kind = "ValidationError"

    def __init__(self, message: str, violations: list[Violation] | None = None):
        super().__init__(message)
        self.violations = list(violations or [])

    @property
    def witness(self):
        return self.violations[0].witness if self.violations else None


class ParseError(ValidationError):
    kind = "ParseError"

    def __init__(self, message: str, line: int | None = None):
        text = f"line {line}: {message}" if line is not None else message
        super().__init__(text, [Violation("ParseError", (line,), message)])
        self.line = line


class MalformedTable(ValidationError):
    kind = "MalformedTable"


class EmptyCell(ValidationError):
    kind = "EmptyCell"


class NoIdentity(ValidationError):
    kind = "NoIdentity"


class NoLeftIdentity(NoIdentity):
    kind = "NoLeftIdentity"


class AssociativityViolation(ValidationError):
    kind = "AssociativityViolation"


class H3Violation(ValidationError):
    kind = "H3Violation"


class StarMissing(H3Violation):
    kind = "StarMissing"


class StarAmbiguous(ValidationError):
    kind = "StarAmbiguous"


VIOLATION_TYPES = {
    cls.kind: cls
    for cls in (
        MalformedTable,
        EmptyCell,
        NoIdentity,
        NoLeftIdentity,
        AssociativityViolation,
        H3Violation,
        StarMissing,
        StarAmbiguous,
    )
}


class EmptySubset(HypergroupError, ValueError):
    pass


class NotClosed(HypergroupError, ValueError):
    pass


class PartitionFailure(HypergroupError):
    pass


class QuotientAxiomFailure(HypergroupError):
    pass


class PreconditionError(HypergroupError, ValueError):
    pass


class MalformedChain(HypergroupError, ValueError):
    pass


class UndefinedForNonRT(HypergroupError):
    """Valency-based notions requested on a hypergroup that is not residually thin."""


class HypothesisViolation(HypergroupError):
    def __init__(self, message: str, report: dict | None = None):
        super().__init__(message)
        self.report = report or {}


class BudgetExceeded(HypergroupError):
    pass


class InvariantViolation(HypergroupError):
    """An internally asserted consequence of the theory did not hold."""
