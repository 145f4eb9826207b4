"""Exception types shared across the package."""


class NomsubError(Exception):
    pass


class TruncationUnstable(UserWarning):
    """A truncated coend changed when its inner stages were enlarged."""


class LawViolation(NomsubError):
    def __init__(self, law, witness=None):
        super().__init__(f"{law} fails" + ("" if witness is None else f" at {witness!r}"))
        self.law = law
        self.witness = witness


class FreshnessViolation(NomsubError):
    pass


class DomainMismatch(NomsubError):
    pass


class NonEquivariant(NomsubError):
    pass


class InsufficientTuple(NomsubError):
    pass


class NotSupportPreserving(NomsubError):
    pass


class NotRelevant(NomsubError):
    pass


class ParseError(NomsubError):
    def __init__(self, msg, pos=None):
        super().__init__(msg if pos is None else f"{msg} at position {pos}")
        self.pos = pos


class UnknownSuite(NomsubError):
    pass


class UnknownObject(NomsubError):
    pass
