"""Exception hierarchy shared by every module of the package."""


class CasimirError(Exception):
    """Base class for all errors raised by boxcasimir."""


class DomainError(CasimirError, ValueError):
    """An argument lies outside the domain of the requested function."""


class UnsupportedOrderError(CasimirError, ValueError):
    """A Bessel order outside the supported set was requested."""


class SeriesNonConvergence(CasimirError, ArithmeticError):
    """A lattice sum hit ``max_index`` before reaching its tolerance.

    The partially summed value is kept on the exception so callers can
    still inspect it.
    """

    def __init__(self, series, value, error_bound, terms_used):
        self.series = series
        self.value = value
        self.error_bound = error_bound
        self.terms_used = terms_used
        super().__init__(
            f"series {series!r} did not converge: value={value!r}, "
            f"error_bound={error_bound!r} after {terms_used} terms"
        )


class QuadratureError(CasimirError, ArithmeticError):
    """Adaptive quadrature failed to reach the requested accuracy."""


class BracketError(CasimirError, ValueError):
    """A root bracket does not enclose a sign change."""
