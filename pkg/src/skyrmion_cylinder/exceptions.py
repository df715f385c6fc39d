"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class ConvergenceError(RuntimeError):
    """An iterative scheme (quadrature, root find, integrator, eigensolve)
    failed to reach its requested tolerance."""


class ClassificationError(RuntimeError):
    """Finite-window trajectory data contradicts the sign-of-C prediction.

    This should never happen for correct integrations; it signals an
    integrator or threshold bug rather than interesting dynamics.
    """
