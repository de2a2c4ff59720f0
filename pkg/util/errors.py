from __future__ import absolute_import, division, print_function


class SubFBMError(Exception):
    pass


class DomainError(SubFBMError, ValueError):
    r"""An input lies outside the range where a formula or sampler is defined."""


class DegenerateError(DomainError):
    r"""The requested quantity does not exist for these inputs (for example the
    rebalancing optimum without transaction costs, or a zero effective volatility).
    """


class ConvergenceError(SubFBMError, ArithmeticError):
    pass


class ResourceLimitError(SubFBMError, RuntimeError):
    pass


class FactorizationError(SubFBMError, ArithmeticError):
    pass


class ValidationError(SubFBMError, ValueError):
    r"""Invalid configuration, reported by the command line before any work is done."""
