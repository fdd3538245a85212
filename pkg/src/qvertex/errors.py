"""Exception types raised across qvertex."""


class QVertexError(Exception):
    """Base class for all library errors."""


class DivisionByZero(QVertexError, ZeroDivisionError):
    pass


class ZeroLeadingWindow(QVertexError):
    """Every stored coefficient is zero, so no leading term can be found."""


class TowerMismatch(QVertexError):
    pass


class IllegalSubstitution(QVertexError):
    pass


class MatchFailure(QVertexError):
    pass


class ZeroDenominator(QVertexError, ZeroDivisionError):
    pass


class NonInvertibleAtOrder(QVertexError):
    pass


class IdentityFailure(QVertexError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class CertificateFailure(QVertexError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class WindowTooSmall(QVertexError):
    pass


class WitnessDisagreement(QVertexError):
    pass


class LocalityFailure(QVertexError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NoKWithinWindow(QVertexError):
    pass


class AxiomFailure(QVertexError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class TPrecisionExhausted(QVertexError):
    pass


class QEqualsOne(QVertexError):
    pass


class RelationFailure(QVertexError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class RewriteDivergence(QVertexError):
    pass


class ConfigError(QVertexError):
    pass


class ParseError(QVertexError, ValueError):
    pass
