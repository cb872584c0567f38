"""Exception hierarchy shared by every module of the package."""


class QuiverError(Exception):
    """Base class for all errors raised by this package."""


class SchemaError(QuiverError):
    """A document does not have the expected shape."""


class ValidationError(QuiverError):
    """A structurally well-formed input violates one or more invariants."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class NonAdmissible(ValidationError):
    """The relation-avoiding path language is infinite (or exceeds the cap)."""


class StructureFailure(QuiverError):
    """The relations do not decompose into relation cycles."""

    def __init__(self, reason, witness):
        self.reason = reason
        self.witness = witness
        super().__init__(f"{reason}: {witness}")


class NonMonomialDerivative(QuiverError):
    pass


class NotGorenstein(QuiverError):
    pass


class NotGentle(QuiverError):
    pass


class InvalidWalk(QuiverError):
    pass


class NotProjective(QuiverError):
    pass


class ProjectiveSummand(QuiverError):
    """tau was asked for a module that still has a projective direct summand."""


class ResolutionDepthExceeded(QuiverError):
    pass


class DecompositionFailure(QuiverError):
    """Syzygies could not be split into monomial cyclic modules within the cap.

    ``lower_bound`` is the number of syzygies taken without reaching zero, so the
    projective dimension is at least this value.
    """

    def __init__(self, lower_bound):
        self.lower_bound = lower_bound
        super().__init__(f"projective dimension >= {lower_bound} (inexact)")


class NotGorensteinProjective(QuiverError):
    pass


class MethodInapplicable(QuiverError):
    pass


class PropertyViolation(QuiverError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))
