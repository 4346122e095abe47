class PslabError(Exception):
    pass


class DomainError(PslabError, ValueError):
    """A precondition on the mathematical inputs was violated."""


class RootFindingError(PslabError):
    def __init__(self, message, roots=None, residuals=None):
        super().__init__(message)
        self.roots = roots
        self.residuals = residuals


class EigensolverError(PslabError):
    pass


class SingularShiftError(DomainError):
    """zI - A is singular to working precision, i.e. z is (numerically) an eigenvalue."""
