"""Exception hierarchy shared by all baxterkit modules."""


class BaxterKitError(Exception):
    """Base class for every error raised by the toolkit."""


class DomainError(BaxterKitError, ValueError):
    """An argument lies outside the operation's domain."""


class ResourceError(BaxterKitError):
    """A configured resource cap would be exceeded."""


class UndefinedGcdError(DomainError):
    """gcd(0, 0) was requested."""


class SingularPointError(BaxterKitError, ArithmeticError):
    """The leading recurrence coefficient vanishes at an index needed for extension."""

    def __init__(self, n, message=None):
        self.n = n
        super().__init__(message or f"leading coefficient vanishes at n = {n}")


class UnsupportedClassError(BaxterKitError):
    """The recurrence falls outside the supported expansion class."""


class DegenerateClassError(BaxterKitError):
    """Repeated or tied characteristic roots; the ratio ansatz has no unique solution."""


class CriterionNotApplicable(BaxterKitError):
    """The asymptotic log-convexity criterion needs c > 0 and alpha >= 2."""


class InconclusiveError(BaxterKitError):
    """Every computed coefficient vanished; more expansion terms are needed."""
