"""Exception hierarchy shared by all helpx modules."""


class HelpxError(Exception):
    """Base class for all errors raised by helpx."""


# cyclotomic
class NonCoprimeIndex(HelpxError, ValueError):
    pass


class NotInSubfield(HelpxError, ValueError):
    pass


class ConductorMismatch(HelpxError, ValueError):
    pass


class NotApplicable(HelpxError, ValueError):
    pass


class NotIntegral(HelpxError, ValueError):
    pass


# chartab
class SchemaError(HelpxError, ValueError):
    def __init__(self, message, locus=None):
        self.locus = locus
        if locus:
            message = f"{locus}: {message}"
        super().__init__(message)


class MissingPowerMap(HelpxError, KeyError):
    pass


# groupring
class RingMismatch(HelpxError, ValueError):
    pass


class NonIntegerMultiplicity(HelpxError, ValueError):
    pass


# help
class IncompleteTower(HelpxError, ValueError):
    pass


class BrauerPrimeDividesOrder(HelpxError, ValueError):
    pass


class Unbounded(HelpxError, ValueError):
    def __init__(self, variable, message=None):
        self.variable = variable
        super().__init__(message or f"interval propagation could not bound variable {variable!r}")


class MissingQuotientData(HelpxError, KeyError):
    pass


class MissingBrauerTable(HelpxError, KeyError):
    pass
