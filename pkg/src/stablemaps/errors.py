"""Exception hierarchy shared by all kernels."""


class StableMapsError(Exception):
    """Base class for all library errors."""


class ParseError(StableMapsError):
    """Malformed input (JSON schema, polynomial string, rational string)."""


class SingularMatrixError(StableMapsError):
    """A conjugation or change of basis was attempted with det = 0."""


class UnsupportedError(StableMapsError):
    """The operation is outside the supported computational domain.

    Raised for field-extension towers, resultants in dimension >= 3, and
    other cases the kernel deliberately refuses rather than approximates.
    """


class NotNormalizedError(StableMapsError):
    """A local model was used where a normalized model is required."""


class DegenerateFixedLocusError(StableMapsError):
    """Fixed-point form is identically zero or the map is not a morphism."""


class NotPolynomialError(StableMapsError):
    """The map has no totally invariant fixed point."""


class DegenerateConfigurationError(StableMapsError):
    """Repeated fixed points where distinct ones are required."""


class NotACocycleError(StableMapsError):
    """Transition matrix determinant is not a unit of the Laurent ring."""


class ChartMismatchError(StableMapsError):
    """Chart models do not overlap or use incompatible variables."""


class TransitionFailsError(StableMapsError):
    """The proposed transition does not identify the two chart families."""


class BadFiberError(StableMapsError):
    """A chart-interior fiber fails the semistability check."""


class GenericFiberNotSemistableError(StableMapsError):
    """Semistable reduction was requested for a non-semistable generic fiber."""


class RamificationNeededError(StableMapsError):
    """A fractional diagonal step at a place with no supported ramified cover."""


class ResidueExtensionNeededError(StableMapsError):
    """A reduction step requires enlarging the residue field."""


class NonTerminatingError(StableMapsError):
    """The descent loop exhausted its step budget.

    Carries the partial step log as ``diagnostics`` for inspection.
    """

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics


class UndeterminedError(StableMapsError):
    """A stability verdict needed by the caller came back Undetermined."""
