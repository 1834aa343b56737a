"""Exception hierarchy shared by every module of the workbench."""


class PlaneAutoError(Exception):
    """Base class for all workbench errors."""


class MathematicalNegative(PlaneAutoError):
    """A well-formed question whose answer is negative (CLI exit code 1)."""


# field tower

class DivisionByZero(PlaneAutoError, ZeroDivisionError):
    pass


class IncompatibleTowers(PlaneAutoError):
    """Neither tower embeds in the other."""


class ZeroRadicand(PlaneAutoError, ValueError):
    pass


class NotReal(PlaneAutoError, ValueError):
    """A real-mode tower was asked to adjoin the root of a non-positive element."""


class ResourceLimit(PlaneAutoError):
    pass


class TowerLimit(ResourceLimit):
    pass


# polynomials and maps

class ZeroPolynomial(PlaneAutoError, ValueError):
    pass


class NotKeller(MathematicalNegative):
    """The Jacobian of the map is not a nonzero constant."""


class NotReducible(MathematicalNegative):
    """Degree reduction got stuck on a Keller map.

    In dimension two this would be a counterexample to the Jacobian
    conjecture, so the stuck pair is attached for inspection.
    """

    def __init__(self, message, p=None, q=None):
        super().__init__(message)
        self.p = p
        self.q = q


class CorruptCertificate(PlaneAutoError):
    pass


class NotInvertible(MathematicalNegative):
    pass


# involutions

class NotInvolution(MathematicalNegative):
    pass


class NonConstantJacobian(MathematicalNegative):
    pass


# centralizer

class NonzeroJacobian(MathematicalNegative):
    pass


class NotInSubalgebra(MathematicalNegative):
    pass


class PreconditionSymmetry(MathematicalNegative):
    pass


class JacobianNotZero(PlaneAutoError):
    """q +/- alpha(q) is not Jacobian-orthogonal to p; bad input or a bug."""


# engines

class DegreeMismatch(MathematicalNegative):
    pass


class DegreeTooHigh(MathematicalNegative):
    pass


class Rejected(MathematicalNegative):
    pass


class RealModeUnsupported(MathematicalNegative):
    """The real-field variant of the case table does not cover this input."""


class InternalError(PlaneAutoError):
    """An identity guaranteed by a theorem failed; always a bug."""


class NotApplicable(MathematicalNegative):
    """The parity criterion does not apply (mixed parity on both axes)."""


class NotFound(MathematicalNegative):
    """A bounded search exhausted its depth without reaching the goal."""
