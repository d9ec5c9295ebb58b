"""Exception types raised by the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of a function."""


class ConvergenceError(RuntimeError):
    """A solver failed; keyword diagnostics are kept on ``self.diagnostics``."""

    def __init__(self, message: str, **diagnostics):
        self.diagnostics = diagnostics
        if diagnostics:
            detail = ", ".join(f"{k}={v!r}" for k, v in diagnostics.items())
            message = f"{message} ({detail})"
        super().__init__(message)


class QuadratureError(ConvergenceError):
    """Adaptive quadrature could not reach its tolerance."""
