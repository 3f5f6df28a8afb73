"""Exception hierarchy. Everything raised on purpose derives from ExpoconvError."""


class ExpoconvError(Exception):
    pass


class ImpulseAtPoint(ExpoconvError, ValueError):
    """An analog signal carrying a delta atom was sampled at t = 0."""


class UnsupportedImpulseDerivative(ExpoconvError, ValueError):
    """Differentiating a signal that already holds a delta atom."""


class NotConjugateClosed(ExpoconvError, ValueError):
    """Terms could not be paired into conjugates for the real form."""


class DuplicateRoots(ExpoconvError, ValueError):
    """Two roots that should be distinct fall within the merge tolerance."""


class NumericallySingular(ExpoconvError, ArithmeticError):
    """Elimination met a pivot below the singularity threshold.

    ``pair`` holds the two roots whose proximity is the likely cause.
    """

    def __init__(self, message, pair=None, column=None):
        super().__init__(message)
        self.pair = pair
        self.column = column


class ZeroRootAtom(ExpoconvError, ValueError):
    """Discrete atoms need a nonzero root."""


class NoConvergence(ExpoconvError, ArithmeticError):
    """Root iteration hit its sweep cap; ``roots``/``residuals`` hold the best iterate."""

    def __init__(self, message, roots=None, residuals=None):
        super().__init__(message)
        self.roots = roots
        self.residuals = residuals


class AmbiguousClustering(ExpoconvError, ValueError):
    pass


class InputNotExponential(ExpoconvError, ValueError):
    """An input term cannot be written as polynomial times exponential."""


class InsufficientInitialValues(ExpoconvError, ValueError):
    pass


class DegreeTooHigh(ExpoconvError, ValueError):
    """Polynomial degree beyond the factorial-safe range."""


class BinomialOverflow(ExpoconvError, OverflowError):
    """A binomial coefficient left the signed 64-bit range."""


class ProblemFileError(ExpoconvError, ValueError):
    """Malformed or schema-violating problem file."""
