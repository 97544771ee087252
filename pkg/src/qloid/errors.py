"""Exception hierarchy.

Every validation failure carries ``witnesses``: a list of small tuples that
pin down where the structure breaks, so callers can print or inspect them.
"""

MAX_WITNESSES = 20


class QloidError(Exception):
    """Base class for all library errors."""


class ValidationError(QloidError):
    def __init__(self, message, witnesses=()):
        self.witnesses = list(witnesses)
        if self.witnesses:
            shown = ", ".join(repr(w) for w in self.witnesses[:3])
            more = len(self.witnesses) - 3
            if more > 0:
                shown += f", ... ({more} more)"
            message = f"{message}: {shown}"
        super().__init__(message)

    @property
    def witness(self):
        return self.witnesses[0] if self.witnesses else None


# order structures
class CycleError(ValidationError):
    pass


class NotALattice(ValidationError):
    pass


class IncompleteTable(ValidationError):
    pass


class NotAssociative(ValidationError):
    pass


class NotJoinPreserving(ValidationError):
    pass


class BadUnit(ValidationError):
    pass


class BadIdentity(ValidationError):
    pass


class BadInvolution(ValidationError):
    pass


# enriched categories
class TypeMismatch(ValidationError):
    pass


class NotTransitive(ValidationError):
    pass


class NoIdentity(ValidationError):
    pass


class NotEnriched(ValidationError):
    pass


class NotADistributor(ValidationError):
    pass


class NotAPresheaf(ValidationError):
    pass


# quantale-valued sets
class DivisibilityFails(ValidationError):
    pass


class TransitivityFails(ValidationError):
    pass


class SymmetryFails(ValidationError):
    pass


class MembershipFails(ValidationError):
    pass


class ConeFails(ValidationError):
    pass


class NotACone(ValidationError):
    pass


# lookups and preconditions
class UnknownElement(QloidError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class UnknownObject(QloidError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class NotComposable(QloidError):
    pass


class NoInvolution(QloidError):
    pass


class NotUnital(QloidError):
    pass


class BaseMismatch(QloidError):
    pass


class WrongBase(QloidError):
    pass


class NotLeftAdjoint(QloidError):
    pass


class NotSeparated(QloidError):
    pass


class NotSymmetric(QloidError):
    pass


class NotStable(QloidError):
    pass


class NotApplicable(QloidError):
    pass


class InternalInconsistency(QloidError):
    """A derived identity that must hold failed; points at a library bug."""


class EnumerationBudgetExceeded(QloidError):
    def __init__(self, needed, budget, what="enumeration"):
        self.needed = needed
        self.budget = budget
        super().__init__(f"{what} needs {needed} candidates, budget is {budget}")


# file format
class ParseError(QloidError):
    def __init__(self, message, line=None, column=None, source=None):
        self.line = line
        self.column = column
        self.source = source
        where = ""
        if line is not None:
            where = f"{source or '<input>'}:{line}"
            if column is not None:
                where += f":{column}"
            where += ": "
        super().__init__(where + message)


class UnresolvedReference(QloidError):
    pass
