"""Exception types raised by lkmatrix."""


class DomainError(ValueError):
    """An argument lies outside the domain where an operation is defined."""


class NumericError(ArithmeticError):
    """A numerical routine failed or produced non-finite output."""


class IllPosedError(DomainError):
    """A recovery problem has no unique solution on the given design."""

    def __init__(self, message, collisions=()):
        super().__init__(message)
        self.collisions = tuple(collisions)


class ModelViolationError(DomainError):
    """Sampled data contradict the model assumed by an estimator."""
