"""Exception hierarchy shared by every module."""


class CatCompError(Exception):
    pass


class CompositionTypeError(CatCompError, TypeError):
    """Two arrows (functions, morphisms, simulations) cannot be composed."""


class UnknownNameError(CatCompError, LookupError):
    pass


class InvalidInputError(CatCompError, ValueError):
    pass


class MonoPreservationError(CatCompError):
    """A functor sends a mono used as a domain-of-definition to a non-injective function."""


class MissingPullbackError(CatCompError):
    def __init__(self, cospan, message=None):
        self.cospan = cospan
        super().__init__(message or f"no pullback exists for cospan {cospan}")


class PreconditionError(CatCompError):
    """A hypothesis required by a construction does not hold."""

    def __init__(self, hypothesis, detail=None):
        self.hypothesis = hypothesis
        self.detail = detail
        msg = hypothesis if detail is None else f"{hypothesis}: {detail}"
        super().__init__(msg)


class TotalityError(PreconditionError):
    pass


class ModelAxiomError(CatCompError):
    """A built model failed CM1/CM2; carries the validation report."""

    def __init__(self, report):
        self.report = report
        super().__init__(f"model axioms violated: {report.violations[:3]}")


class SizeLimitError(CatCompError):
    """A configured size guard was exceeded."""
