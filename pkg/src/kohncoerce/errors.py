"""Exception hierarchy.

Every error raised on purpose by the package derives from
:class:`KohnCoerceError`, so callers (the CLI in particular) can separate
analysis failures from programming errors.
"""


class KohnCoerceError(Exception):
    """Base class for all package errors."""


# -- input ---------------------------------------------------------------

class GammaInputError(KohnCoerceError, ValueError):
    """Invalid exponent-set input."""


class ParseError(GammaInputError):
    """Malformed exponent-set text.

    ``line`` and ``column`` are 1-based and point at the offending token.
    """

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}, column {column})"
        super().__init__(message + where)


class NegativeExponent(GammaInputError):
    pass


class DuplicatePoint(GammaInputError):
    def __init__(self, point, indices):
        self.point = point
        self.indices = tuple(indices)
        super().__init__(f"duplicate point {point} at indices {list(self.indices)}")


class EmptySet(GammaInputError):
    pass


# -- combinatorics / optimization ----------------------------------------

class EmptyPointSet(KohnCoerceError, ValueError):
    """Maximum of a linear functional over an empty set was requested."""


class DegenerateWeight(KohnCoerceError):
    """The derived set Γ⁽¹⁾ is empty, so the minimal eigenvalue vanishes identically."""


class PreconditionFailed(KohnCoerceError):
    pass


class Unsupported(KohnCoerceError):
    """No coercivity multiplier is available for this exponent set."""


class OutOfRegion(KohnCoerceError, ValueError):
    pass


# -- disc laboratory -----------------------------------------------------

class TruncationTooSmall(KohnCoerceError, ValueError):
    pass


class NotHolomorphic(KohnCoerceError, ValueError):
    pass


class ZeroDenominator(KohnCoerceError, ZeroDivisionError):
    pass


# -- quadrature / admissibility ------------------------------------------

class TailBoundViolated(KohnCoerceError):
    pass


class ZeroMass(KohnCoerceError, ZeroDivisionError):
    pass


class NotAdmissible(KohnCoerceError):
    pass
