"""Exception types raised by the library."""


class DiffAlgError(Exception):
    """Base class for all library errors."""


class MissingImage(DiffAlgError):
    pass


class ZeroPolynomial(DiffAlgError):
    pass


class UnknownVariable(DiffAlgError):
    pass


class OrderCapExceeded(DiffAlgError):
    pass


class ZeroElement(DiffAlgError):
    pass


class DegreeTooLarge(DiffAlgError):
    pass


class NotUnimodular(DiffAlgError):
    pass


class ZeroScalar(DiffAlgError):
    pass


class ZeroWeight(DiffAlgError):
    pass


class NonConstantRequired(DiffAlgError):
    pass


class NotNilpotent(DiffAlgError):
    pass


class NotCommuting(DiffAlgError):
    pass


class NotClosed(DiffAlgError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class LinearlyDependent(DiffAlgError):
    pass


class InvalidD(DiffAlgError):
    pass


class NotEquivariant(DiffAlgError):
    pass


class NotSurjective(DiffAlgError):
    pass


class NotInjective(DiffAlgError):
    pass


class ZeroVector(DiffAlgError):
    pass


class NonPolynomialInTau(DiffAlgError):
    pass


class SocleNotSimple(DiffAlgError):
    pass


class ZeroOnSocle(DiffAlgError):
    pass


class NotASubmodule(DiffAlgError):
    pass


class NotUnipotentAfterTwist(DiffAlgError):
    pass


class LogExpressionFailure(DiffAlgError):
    pass


class NotTwoStepModule(DiffAlgError):
    pass


class ClassificationFailure(DiffAlgError):
    pass


class MethodDisagreement(DiffAlgError):
    """Pseudo-reduction and the Groebner fallback gave different answers."""
