"""Exception types raised across the package."""


class SixVertexError(Exception):
    """Base class for all package errors."""


class SingularJetDivision(SixVertexError, ZeroDivisionError):
    """Denominator jet has a vanishing constant term after valuation removal."""


class InexactDivision(SixVertexError, ArithmeticError):
    """Polynomial division left a remainder above tolerance."""

    def __init__(self, max_remainder, tolerance):
        self.max_remainder = max_remainder
        self.tolerance = tolerance
        super().__init__(
            f"division is not exact: max |remainder coeff| = {max_remainder} > {tolerance}"
        )


class SingularParameters(SixVertexError, ValueError):
    """Parameters sit on a manifold where a weight or denominator vanishes."""


class DegenerateParameters(SingularParameters):
    """Inhomogeneous parameters coalesce or a weight underflows."""


class InadmissibleParameters(SixVertexError, ValueError):
    """Parameters fall outside the disordered regime without an explicit override."""


class UnsupportedSize(SixVertexError, ValueError):
    pass


class SizeCapExceeded(SixVertexError, ValueError):
    pass


class SingularHankel(SixVertexError, ArithmeticError):
    pass
