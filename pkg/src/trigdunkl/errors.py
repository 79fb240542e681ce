"""Exception types shared across the library.

The CLI maps these onto its exit-code contract: domain/contract violations
exit 2, numerical failures exit 3.
"""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ContractError(ValueError):
    """A required capability (derivative, compact support) is missing."""


class EvaluationError(RuntimeError):
    """An integrand produced a non-finite value.

    Carries the offending abscissa in ``node``.
    """

    def __init__(self, message, node=None):
        super().__init__(message)
        self.node = node


class NonConvergenceError(RuntimeError):
    """An iterative evaluation did not converge within its budget.

    ``partial`` holds the last partial value, ``est_error`` a crude bound on
    the remaining error.
    """

    def __init__(self, message, partial=None, est_error=None):
        super().__init__(message)
        self.partial = partial
        self.est_error = est_error
